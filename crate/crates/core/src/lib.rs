//! Exact expansion, linear representations and growth classification for power series
//! satisfying linear Mahler functional equations.

pub mod algebra;
pub mod classify;
pub mod engine;
pub mod equation;
pub mod error;
pub mod linrep;
pub mod semigroup;

pub use algebra::{CyclotomicSplit, Matrix, Polynomial, Rational, RationalFunction};
pub use classify::{classify, ClassificationReport, ClassifyConfig, Confidence, GrowthClass};
pub use equation::{parse_spec, MahlerEquation, SeriesSpec};
pub use error::{AlgebraError, ClassifyError, EngineError, EquationError, LinrepError};
pub use linrep::LinearRepresentation;
pub use semigroup::{analyze_semigroup, SemigroupTask, SemigroupVerdict};
