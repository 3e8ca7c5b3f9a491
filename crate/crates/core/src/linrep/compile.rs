use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{becker_to_linrep, cauchy_convolution, linrep_of_polynomial, minimize_linrep, sum_linrep, LinearRepresentation};
use crate::algebra::{cyclotomic_poly, unit_root_split, CyclotomicSplit, Polynomial, Rational};
use crate::equation::{iterate_equation, shift_spec, MahlerEquation, SeriesSpec, SteppedEquation};
use crate::error::LinrepError;

/// What the compiler did, for reports.
#[derive(Clone, Debug)]
pub struct CompileTrace {
    pub shift: usize,
    pub steps: usize,
    pub iterated: SteppedEquation,
    pub split: CyclotomicSplit,
    pub becker_equation: MahlerEquation,
    /// `(l, e, a, s)` for each factor `Phi_l^e`, with `Q = Phi_a(z^{k^s})^e`.
    pub factors: Vec<(u64, u32, u64, usize)>,
    pub dims: Vec<usize>,
}

impl CompileTrace {
    pub fn to_json(&self) -> Value {
        json!({
            "shift": self.shift,
            "steps": self.steps,
            "iterated": self.iterated.to_json(),
            "q0_split": serde_json::to_value(&self.split).unwrap(),
            "becker_order": self.becker_equation.order(),
            "factors": self.factors.iter().map(|(l, e, a, s)| json!({"l": l, "e": e, "a": a, "s": s})).collect::<Vec<_>>(),
            "dims": self.dims,
        })
    }
}

/// Becker equation of `g = f prod_{i>=0} q_0(z^{k^i})`, given the iterated relation
/// `q_0 f = sum_j q_j f(z^{k^{J_j}})`: `g = sum_j q_j prod_{i=1}^{J_j - 1} q_0(z^{k^i}) g(z^{k^{J_j}})`.
pub fn dumas_becker_equation(step: &SteppedEquation) -> MahlerEquation {
    let k = step.k as usize;
    let q0 = &step.coeffs[0];
    let d = step.coeffs.len() - 1;
    let top = step.start + d - 1;
    let mut cs = vec![Polynomial::zero(); top + 1];
    cs[0] = Polynomial::one();
    let mut prod = Polynomial::one();
    let mut kp = 1usize;
    for jj in 1..=top {
        if jj >= 2 {
            kp *= k;
            prod = &prod * &q0.compose_power(kp);
        }
        if jj >= step.start {
            cs[jj] = -&(&step.coeffs[jj - step.start + 1] * &prod);
        }
    }
    MahlerEquation::new(step.k, cs).expect("Becker equation is nonzero")
}

/// `r = prod_{p | k} p^{v_p(l)}` and the least `s` with `gcd(l, k^j) = r` for all `j > s`.
fn k_part(l: u64, k: u64) -> (u64, usize) {
    let mut r = 1u64;
    loop {
        let g = (l / r).gcd(&k);
        if g == 1 {
            break;
        }
        r *= g;
    }
    let mut g = l.gcd(&k);
    let mut j = 1usize;
    while g != r {
        g = l.gcd(&(g * k));
        j += 1;
    }
    (r, j - 1)
}

/// Representation of `prod_{i>=0} Phi_l(z^{k^i})^{-e}` for `gcd(l, k) > 1`, built as
/// `G * Q` with `Q = Phi_a(z^{k^s})^e` and `G` Becker of order one.
fn cyclotomic_factor_rep(l: u64, e: u32, k: u64) -> Result<(LinearRepresentation, u64, usize), LinrepError> {
    let (r, s) = k_part(l, k);
    let a = l / r;
    let ks = (k as usize).pow(s as u32);
    let phi_a = cyclotomic_poly(a);
    let q = phi_a.compose_power(ks).pow(e);
    let top = phi_a.compose_power(ks * k as usize).pow(e);
    let den = &cyclotomic_poly(l).pow(e) * &q;
    let c = top.div_exact(&den).ok_or_else(|| {
        LinrepError::DivisionCheckFailed(format!("Phi_{l}^{e} Q does not divide Q(z^{k}) for k = {k}"))
    })?;
    let eq = MahlerEquation::new(k, vec![Polynomial::one(), -c])?;
    let g0 = Rational::one() / q.coeff(0);
    let g = becker_to_linrep(&eq, &g0)?;
    let rep = cauchy_convolution(&g, &linrep_of_polynomial(&q, k))?;
    Ok((minimize_linrep(&rep), a, s))
}

/// Compiles a spec whose iterated leading coefficient (after `steps` iterations) has all its
/// roots among 0 and the roots of unity of order not coprime to `k`.
pub fn regular_compile(spec: &SeriesSpec, steps: usize) -> Result<(LinearRepresentation, CompileTrace), LinrepError> {
    let k = spec.k();
    let shifted = shift_spec(spec)?;
    let iterated = iterate_equation(&shifted.spec.equation, steps.max(1));
    let q0 = iterated.coeffs[0].clone();
    if q0.coeff(0).is_zero() {
        return Err(LinrepError::PreconditionViolated("iterated leading coefficient vanishes at 0".into()));
    }
    let split = unit_root_split(&q0)?;
    if !split.only_unit_roots() {
        return Err(LinrepError::PreconditionViolated(format!(
            "leading coefficient has roots off the unit circle: {}",
            split.remainder.to_text()
        )));
    }
    if let Some(&(n, _)) = split.cyclo.iter().find(|(n, _)| n.gcd(&k) == 1) {
        return Err(LinrepError::PreconditionViolated(format!(
            "cyclotomic factor Phi_{n} has order coprime to {k}"
        )));
    }
    let becker = dumas_becker_equation(&iterated);
    let a0 = shifted.spec.seeds[0].clone();
    let mut rep = minimize_linrep(&becker_to_linrep(&becker, &a0)?);
    let mut dims = vec![rep.dim()];
    let mut factors = Vec::new();
    for &(l, e) in &split.cyclo {
        let (fr, a, s) = cyclotomic_factor_rep(l, e, k)?;
        factors.push((l, e, a, s));
        rep = minimize_linrep(&cauchy_convolution(&rep, &fr)?);
        dims.push(rep.dim());
    }
    if shifted.n0 > 0 {
        let zn = linrep_of_polynomial(&Polynomial::z_pow(shifted.n0), k);
        rep = minimize_linrep(&cauchy_convolution(&zn, &rep)?);
        dims.push(rep.dim());
    }
    if !shifted.prefix.is_zero() {
        rep = minimize_linrep(&sum_linrep(&linrep_of_polynomial(&shifted.prefix, k), &rep)?);
        dims.push(rep.dim());
    }
    let trace = CompileTrace { shift: shifted.n0, steps: steps.max(1), iterated, split, becker_equation: becker, factors, dims };
    Ok((rep, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::engine::{expand, zoo};

    #[test]
    fn k_parts() {
        assert_eq!(k_part(2, 2), (2, 0));
        assert_eq!(k_part(8, 2), (8, 2));
        assert_eq!(k_part(12, 6), (12, 1));
        assert_eq!(k_part(6, 2), (2, 0));
        assert_eq!(k_part(18, 3), (9, 1));
    }

    #[test]
    fn cyclotomic_factor_matches_product() {
        for (l, e, k) in [(2u64, 1u32, 2u64), (4, 1, 2), (6, 2, 2), (3, 1, 3), (12, 1, 6)] {
            let (rep, _, _) = cyclotomic_factor_rep(l, e, k).unwrap();
            let n = 200usize;
            // Truncated power series of prod_i Phi_l(z^{k^i})^{-e}.
            let mut series = vec![Rational::zero(); n + 1];
            series[0] = Rational::one();
            let mut kp = 1usize;
            while kp <= n {
                let pc = cyclotomic_poly(l).compose_power(kp).pow(e);
                let mut out = vec![Rational::zero(); n + 1];
                for i in 0..=n {
                    let mut acc = series[i].clone();
                    for (j, c) in pc.coeffs().iter().enumerate().skip(1).take(i) {
                        acc -= c * &out[i - j];
                    }
                    out[i] = acc / pc.coeff(0);
                }
                series = out;
                kp *= k as usize;
            }
            assert_eq!(rep.eval_range(n as u64), series, "l={l} e={e} k={k}");
        }
    }

    #[test]
    fn neg_product_compiles_to_one_minus_z() {
        let e = zoo("neg_product", 0).unwrap();
        let (rep, trace) = regular_compile(&e.spec, 1).unwrap();
        let vals = rep.eval_range(100);
        assert_eq!(vals[0], rat(1));
        assert_eq!(vals[1], rat(-1));
        assert!(vals[2..].iter().all(Zero::is_zero));
        assert_eq!(trace.factors.len(), 1);
    }

    #[test]
    fn catalog_compiles() {
        for (name, steps) in [("thin_geometric", 1), ("digit_sum", 1), ("thue_morse", 1), ("stern", 1), ("denominator_trap", 3)] {
            let e = zoo(name, 0).unwrap();
            let (rep, _) = regular_compile(&e.spec, steps).unwrap();
            assert_eq!(rep.eval_range(2000), expand(&e.spec, 2000).unwrap(), "{name}");
        }
    }

    #[test]
    fn geometric_is_rejected() {
        let e = zoo("geometric", 0).unwrap();
        assert!(matches!(regular_compile(&e.spec, 2), Err(LinrepError::PreconditionViolated(_))));
    }
}
