use num_traits::Zero;
use serde_json::{json, Value};

use super::{find_relation, reduce_relation, MahlerEquation, RelationSearch, SeriesSpec};
use crate::algebra::Polynomial;
use crate::engine::expand;
use crate::error::EquationError;

/// `f(z) = prefix + z^{n0} f_0(z)` with `f_0(0) != 0`.
#[derive(Clone, Debug)]
pub struct ShiftedSpec {
    pub n0: usize,
    pub prefix: Polynomial,
    pub spec: SeriesSpec,
    /// The `f_0` equation follows symbolically from the original one.
    pub certified: bool,
    /// Number of coefficients a guessed equation was matched against.
    pub verification_order: Option<usize>,
}

impl ShiftedSpec {
    pub fn to_json(&self) -> Value {
        json!({
            "n0": self.n0,
            "prefix": self.prefix.to_text(),
            "spec": self.spec.to_json(),
            "certified": self.certified,
            "verification_order": self.verification_order,
        })
    }
}

/// Substitutes `f = z^{n0} f_0` into the equation and cancels the common power of `z`.
fn substituted(eq: &MahlerEquation, n0: usize) -> MahlerEquation {
    let mut kp = 1usize;
    let cs = eq
        .coeffs()
        .iter()
        .map(|p| {
            let q = p.shift(n0 * (kp - 1));
            kp *= eq.k() as usize;
            q
        })
        .collect();
    MahlerEquation::new(eq.k(), cs).expect("substitution keeps p0 nonzero")
}

/// Factors the leading zeros out of a series and finds an equation for the rest whose leading
/// coefficient does not vanish at 0.
pub fn shift_spec(spec: &SeriesSpec) -> Result<ShiftedSpec, EquationError> {
    let n0 = spec.seeds.iter().position(|a| !a.is_zero()).ok_or(EquationError::ZeroSeries)?;
    if n0 == 0 && spec.equation.coeff(0).coeff(0) != Zero::zero() {
        return Ok(ShiftedSpec {
            n0,
            prefix: Polynomial::zero(),
            spec: spec.clone(),
            certified: true,
            verification_order: None,
        });
    }
    let direct = substituted(&spec.equation, n0);
    let (equation, certified, verification_order) = if !direct.coeff(0).coeff(0).is_zero() {
        (direct, true, None)
    } else {
        let d = spec.equation.order();
        let search = RelationSearch {
            min_order: 1,
            max_order: d + 1,
            degrees: vec![1, 2, 4, 8, 16],
            require_unit_constant: true,
        };
        let need = super::guess::truncation_order(spec.k(), d + 1, 16).min(1 << 15);
        let a = expand(spec, n0 + need)?;
        let (g, n) = find_relation(&a[n0..], spec.k(), &search)
            .ok_or(EquationError::NoRelation { order: d + 1, degree: 16 })?;
        let cand = g.as_candidate(spec.k()).unwrap();
        let ok = reduce_relation(&direct, &cand).is_zero();
        (g, ok, if ok { None } else { Some(n) })
    };
    let m = equation.m();
    let a = expand(spec, n0 + m + 1)?;
    let seeds = a[n0..].to_vec();
    let mut shifted = SeriesSpec::new(equation, seeds, spec.name.clone())?;
    shifted.seed_count_certified = certified;
    Ok(ShiftedSpec { n0, prefix: Polynomial::zero(), spec: shifted, certified, verification_order })
}
