use num_traits::Zero;

use super::{radix_powers, MahlerEquation};
use crate::algebra::{Matrix, Polynomial, Rational};

/// Bounds for relation search against expanded coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSearch {
    pub min_order: usize,
    pub max_order: usize,
    /// Coefficient degree bounds tried in turn.
    pub degrees: Vec<usize>,
    /// Only accept relations whose leading coefficient has nonzero constant term.
    pub require_unit_constant: bool,
}

impl Default for RelationSearch {
    fn default() -> Self {
        RelationSearch {
            min_order: 1,
            max_order: 2,
            degrees: vec![1, 2, 4, 8, 16],
            require_unit_constant: false,
        }
    }
}

/// Number of coefficients matched for order `order` and degree bound `degree`.
pub fn truncation_order(k: u64, order: usize, degree: usize) -> usize {
    (k as usize).saturating_pow(order as u32 + 2).saturating_mul(degree + 1).saturating_mul(4)
}

fn equation_row(a: &[Rational], pows: &[usize], degree: usize, t: usize) -> Vec<Rational> {
    let mut row = Vec::with_capacity(pows.len() * (degree + 1));
    for &kp in pows {
        for j in 0..=degree {
            let v = if t >= j && (t - j).is_multiple_of(kp) { a[(t - j) / kp].clone() } else { Rational::zero() };
            row.push(v);
        }
    }
    row
}

fn satisfies(a: &[Rational], pows: &[usize], degree: usize, x: &[Rational], t: usize) -> bool {
    let mut acc = Rational::zero();
    for (i, &kp) in pows.iter().enumerate() {
        for j in 0..=degree.min(t) {
            let c = &x[i * (degree + 1) + j];
            if !c.is_zero() && (t - j).is_multiple_of(kp) {
                acc += c * &a[(t - j) / kp];
            }
        }
    }
    acc.is_zero()
}

/// Searches for `sum_{i<=order} c_i(z) f(z^{k^i}) = 0` with `deg c_i <= degree`, matching the
/// first `n_trunc` coefficients of `a`.
///
/// The linear system is solved on a growing subset of its rows: the kernel of the subset is
/// checked against every row and violated rows are added until the kernel is stable.
pub fn guess_relation(
    a: &[Rational],
    k: u64,
    order: usize,
    degree: usize,
    n_trunc: usize,
    require_unit_constant: bool,
) -> Option<MahlerEquation> {
    let n = n_trunc.min(a.len());
    let pows = radix_powers(k, order + 1);
    let unknowns = (order + 1) * (degree + 1);
    if n < 2 * unknowns + 8 {
        return None;
    }
    let mut active: Vec<usize> = (0..(2 * unknowns + 8)).collect();
    loop {
        let m = Matrix::from_rows(active.iter().map(|&t| equation_row(a, &pows, degree, t)).collect());
        let kernel = m.kernel();
        if kernel.is_empty() {
            return None;
        }
        let mut violated = Vec::new();
        for x in &kernel {
            if let Some(t) = (0..n).find(|&t| !satisfies(a, &pows, degree, x, t)) {
                if !active.contains(&t) {
                    violated.push(t);
                }
            }
        }
        if violated.is_empty() {
            return pick(&kernel, k, order, degree, require_unit_constant);
        }
        violated.sort_unstable();
        violated.dedup();
        active.extend(violated);
    }
}

fn pick(
    kernel: &[Vec<Rational>],
    k: u64,
    order: usize,
    degree: usize,
    require_unit_constant: bool,
) -> Option<MahlerEquation> {
    let mut best: Option<MahlerEquation> = None;
    for x in kernel {
        if require_unit_constant && x[0].is_zero() {
            continue;
        }
        let cs: Vec<Polynomial> =
            (0..=order).map(|i| Polynomial::new(x[i * (degree + 1)..(i + 1) * (degree + 1)].to_vec())).collect();
        let Ok(e) = MahlerEquation::new(k, cs) else { continue };
        let size = |e: &MahlerEquation| (e.order(), e.coeffs().iter().map(Polynomial::deg).sum::<usize>());
        if best.as_ref().is_none_or(|b| size(&e) < size(b)) {
            best = Some(e);
        }
    }
    best
}

/// Runs the escalating search; returns the relation and the number of coefficients it matches.
pub fn find_relation(a: &[Rational], k: u64, search: &RelationSearch) -> Option<(MahlerEquation, usize)> {
    for order in search.min_order.max(1)..=search.max_order {
        for &degree in &search.degrees {
            let n = truncation_order(k, order, degree);
            if n > a.len() {
                break;
            }
            if let Some(e) = guess_relation(a, k, order, degree, n, search.require_unit_constant) {
                return Some((e, n));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn finds_geometric_relation() {
        let a: Vec<Rational> = (0..400).map(|n| Rational::from_integer(num_bigint::BigInt::from(2).pow(n))).collect();
        let (e, _) = find_relation(&a, 2, &RelationSearch::default()).unwrap();
        assert_eq!(e.order(), 1);
        assert_eq!(e.coeffs()[0], Polynomial::from_i64(&[1, -2]));
    }

    #[test]
    fn finds_nothing_for_noise() {
        let mut state = 12345u64;
        let a: Vec<Rational> = (0..400)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                rat((state >> 40) as i64)
            })
            .collect();
        assert!(find_relation(&a, 2, &RelationSearch::default()).is_none());
    }
}
