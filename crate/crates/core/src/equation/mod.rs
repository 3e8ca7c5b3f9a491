//! Mahler equations and the series they define, plus the symbolic transforms used by the
//! classifier: iteration, rebasing to a power of the radix, shifting off leading zeros,
//! reduction of candidate relations and relation search against expanded coefficients.

mod guess;
mod parse;
mod relations;
mod shift;
mod spec;

pub use guess::{find_relation, guess_relation, truncation_order, RelationSearch};
pub use parse::{parse_linear_equation, parse_polynomial};
pub use relations::{iterate_equation, rebase_relation, reduce_relation, Reduction, SteppedEquation};
pub use shift::{shift_spec, ShiftedSpec};
pub use spec::{parse_spec, parse_spec_value, residual_coefficient, SeriesSpec};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{Polynomial, Rational};
use crate::error::EquationError;

/// `p_0(z) f(z) + p_1(z) f(z^k) + ... + p_d(z) f(z^{k^d}) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MahlerEquation {
    k: u64,
    coeffs: Vec<Polynomial>,
}

impl MahlerEquation {
    /// Builds and normalizes an equation.
    pub fn new(k: u64, coeffs: Vec<Polynomial>) -> Result<Self, EquationError> {
        if k < 2 {
            return Err(EquationError::SchemaError(format!("radix must be at least 2, got {k}")));
        }
        normalize_equation(&MahlerEquation { k, coeffs })
    }

    /// Wraps coefficients that are already normalized, without checking.
    pub(crate) fn from_normalized(k: u64, coeffs: Vec<Polynomial>) -> Self {
        MahlerEquation { k, coeffs }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Polynomial {
        &self.coeffs[i]
    }

    /// Valuation of `p_0`.
    pub fn m(&self) -> usize {
        self.coeffs[0].valuation().unwrap_or(0)
    }

    /// `p_0 = 1`, so that `f = -(p_1 f(z^k) + ...)`.
    pub fn is_becker(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// The equation as a candidate relation over radix `base`, when `k` is a power of `base`.
    pub fn as_candidate(&self, base: u64) -> Option<Vec<(usize, Polynomial)>> {
        let mut e = 0;
        let mut pw = 1u64;
        while pw < self.k {
            pw = pw.checked_mul(base)?;
            e += 1;
        }
        (pw == self.k).then(|| {
            self.coeffs.iter().enumerate().map(|(i, p)| (i * e, p.clone())).collect()
        })
    }

    /// Renders `p0*f0 + p1*f1 + ...` in the expression syntax the parser accepts.
    pub fn to_expression(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("({})*f{}", p.to_text(), i))
            .collect();
        parts.join(" + ")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "equation": self.coeffs.iter().map(|p| p.to_text()).collect::<Vec<_>>(),
        })
    }
}

/// Splits `p(z) = sum_r z^r p_r(z^k)` and returns the sections `p_r`.
fn sections(p: &Polynomial, k: usize) -> Vec<Polynomial> {
    let mut parts = vec![Vec::new(); k];
    for (i, c) in p.coeffs().iter().enumerate() {
        let v = &mut parts[i % k];
        v.resize(i / k + 1, Rational::zero());
        v[i / k] = c.clone();
    }
    parts.into_iter().map(Polynomial::new).collect()
}

/// Normal form: coprime coefficients, `p_0 != 0`, `p_d != 0`, lowest coefficient of `p_0` is 1.
///
/// When `p_0 = 0` the relation `sum_{i>=1} p_i f(z^{k^i}) = 0` is split into radix-`k` sections;
/// each section is a relation one step lower, and the first section with a nonzero leading
/// coefficient is kept.
pub fn normalize_equation(eq: &MahlerEquation) -> Result<MahlerEquation, EquationError> {
    let k = eq.k;
    let mut cs = eq.coeffs.clone();
    while cs.last().is_some_and(|p| p.is_zero()) {
        cs.pop();
    }
    if cs.is_empty() {
        return Err(EquationError::AllZero);
    }
    while cs[0].is_zero() {
        let lead = cs.iter().position(|p| !p.is_zero()).unwrap();
        let secs: Vec<Vec<Polynomial>> = cs.iter().map(|p| sections(p, k as usize)).collect();
        let r = secs[lead].iter().position(|s| !s.is_zero()).unwrap();
        cs = secs[1..].iter().map(|s| s[r].clone()).collect();
        while cs.last().is_some_and(|p| p.is_zero()) {
            cs.pop();
        }
    }
    if cs.len() < 2 {
        return Err(EquationError::SchemaError(
            "equation has order zero and only admits the zero series".into(),
        ));
    }
    let g = cs.iter().fold(Polynomial::zero(), |g, p| g.gcd(p));
    if !g.is_one() {
        cs = cs.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
    }
    let low = cs[0].coeff(cs[0].valuation().unwrap());
    if !low.is_one() {
        let inv = Rational::one() / low;
        cs = cs.iter().map(|p| p.scale(&inv)).collect();
    }
    Ok(MahlerEquation { k, coeffs: cs })
}

/// Powers `k^i` saturating at `usize::MAX`.
pub(crate) fn radix_powers(k: u64, count: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(count);
    let mut p: usize = 1;
    for _ in 0..count {
        out.push(p);
        p = p.saturating_mul(k as usize);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(k: u64, cs: &[&[i64]]) -> MahlerEquation {
        MahlerEquation { k, coeffs: cs.iter().map(|c| Polynomial::from_i64(c)).collect() }
    }

    #[test]
    fn normalize_examples() {
        let n = normalize_equation(&eq(2, &[&[2, -4], &[-2, 0, 4]])).unwrap();
        assert_eq!(n.coeffs, eq(2, &[&[1, -2], &[-1, 0, 2]]).coeffs);
        // The common factor is z(1 - z), not just z.
        let n = normalize_equation(&eq(2, &[&[0, 1, -1], &[0, -1, 0, 1]])).unwrap();
        assert_eq!(n.coeffs, eq(2, &[&[1], &[-1, -1]]).coeffs);
        let n = normalize_equation(&eq(2, &[&[], &[1, 0, -1], &[-1, 0, 0, 0, 2]])).unwrap();
        assert_eq!(n.coeffs, eq(2, &[&[1, -1], &[-1, 0, 2]]).coeffs);
        assert_eq!(normalize_equation(&eq(2, &[&[], &[], &[]])), Err(EquationError::AllZero));
    }

    #[test]
    fn candidate_exponents_scale_with_radix() {
        let e = eq(8, &[&[1], &[-1]]);
        let c = e.as_candidate(2).unwrap();
        assert_eq!(c.iter().map(|x| x.0).collect::<Vec<_>>(), vec![0, 3]);
        assert!(e.as_candidate(3).is_none());
    }
}
