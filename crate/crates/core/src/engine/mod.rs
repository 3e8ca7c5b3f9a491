//! Exact coefficient expansion, residual checks, height sequences and the built-in catalog.

mod stream;
mod zoo;

pub use stream::CoefficientStream;
pub use zoo::{catalog, homogenize, oracle_csv, zoo, ZooEntry, ZOO_NAMES};

use num_traits::Zero;

use crate::algebra::{height_rational, Rational};
use crate::equation::{residual_coefficient, MahlerEquation, SeriesSpec};
use crate::error::EquationError;

/// `a_0..=a_n`.
pub fn expand(spec: &SeriesSpec, n: usize) -> Result<Vec<Rational>, EquationError> {
    let mut s = CoefficientStream::new(spec)?;
    s.extend_to(n);
    Ok(s.into_coeffs())
}

/// Result of substituting a series into an equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    Pass,
    /// Index of the first nonzero coefficient of the residual.
    FailsAt(usize),
}

/// Checks `sum p_i(z) f(z^{k^i}) = 0` through `z^n` for the spec's own expansion.
pub fn residual_order(spec: &SeriesSpec, n: usize) -> Result<Residual, EquationError> {
    let a = expand(spec, n)?;
    Ok(residual_against(&spec.equation, &a, n))
}

/// Checks an arbitrary equation against given coefficients through `z^n` (`n < a.len()`).
pub fn residual_against(eq: &MahlerEquation, a: &[Rational], n: usize) -> Residual {
    (0..=n.min(a.len().saturating_sub(1)))
        .find(|&t| !residual_coefficient(eq, a, t).is_zero())
        .map_or(Residual::Pass, Residual::FailsAt)
}

/// Pointwise logarithmic height.
pub fn height_sequence(coeffs: &[Rational]) -> Vec<f64> {
    coeffs.iter().map(height_rational).collect()
}
