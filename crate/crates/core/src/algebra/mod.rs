//! Exact scalars, polynomials, rational functions, matrices and root-location tools.

pub mod cyclotomic;
pub mod matrix;
pub mod modulus;
pub mod newton;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use cyclotomic::{cyclotomic_poly, unit_root_split, CyclotomicSplit};
pub use matrix::{Matrix, RowBasis};
pub use modulus::{root_modulus_intervals, ModulusInterval};
pub use newton::{newton_polygon, NewtonPolygon};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{height_rational, Rational};
