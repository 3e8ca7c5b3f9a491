use num_traits::{One, Zero};

use super::LinearRepresentation;
use crate::algebra::matrix::dot;
use crate::algebra::{Matrix, Rational, RowBasis};

/// Span of `{start * M(w)}` (or `{M(w) * start}` when `columns`), saturated breadth-first.
fn orbit_span(start: &[Rational], mats: &[Matrix], columns: bool) -> RowBasis {
    let mut basis = RowBasis::new(start.len());
    basis.insert(start.to_vec());
    let mut i = 0;
    while i < basis.len() {
        let x = basis.vectors()[i].clone();
        for m in mats {
            let y = if columns { m.apply(&x) } else { m.left_apply(&x) };
            basis.insert(y);
        }
        i += 1;
    }
    basis
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[i] = Rational::one();
    e
}

/// Restricts to the reachable row space `span{u mu(w)}` and then to the observable column
/// space `span{mu(w) v}`; the result has the least possible dimension.
pub fn minimize_linrep(rep: &LinearRepresentation) -> LinearRepresentation {
    let k = rep.k;
    if rep.dim() == 0 || rep.u.iter().all(Zero::is_zero) || rep.v.iter().all(Zero::is_zero) {
        return LinearRepresentation::zero(k);
    }
    let fwd = orbit_span(&rep.u, &rep.mu, false);
    let m = fwd.len();
    let mu1: Vec<Matrix> = rep
        .mu
        .iter()
        .map(|mat| {
            let mut out = Matrix::zeros(m, m);
            for (i, b) in fwd.vectors().iter().enumerate() {
                let c = fwd.coordinates(&mat.left_apply(b)).expect("reachable span is closed");
                for (j, x) in c.into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            out
        })
        .collect();
    let v1: Vec<Rational> = fwd.vectors().iter().map(|b| dot(b, &rep.v)).collect();
    let u1 = unit(m, 0);
    if v1.iter().all(Zero::is_zero) {
        return LinearRepresentation::zero(k);
    }
    let bwd = orbit_span(&v1, &mu1, true);
    let p = bwd.len();
    let mu2: Vec<Matrix> = mu1
        .iter()
        .map(|mat| {
            let mut out = Matrix::zeros(p, p);
            for (j, c) in bwd.vectors().iter().enumerate() {
                let coords = bwd.coordinates(&mat.apply(c)).expect("observable span is closed");
                for (i, x) in coords.into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            out
        })
        .collect();
    let u2 = bwd.vectors().iter().map(|c| dot(&u1, c)).collect();
    LinearRepresentation { k, u: u2, mu: mu2, v: unit(p, 0) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::linrep::sum_linrep;
    use crate::linrep::tests::thue_morse;

    #[test]
    fn doubled_thue_morse_halves() {
        let tm = thue_morse();
        let big = sum_linrep(&tm, &tm).unwrap();
        let m = minimize_linrep(&big);
        assert_eq!(m.dim(), 2);
        assert_eq!(m.eval_range(10_000), big.eval_range(10_000));
        assert_eq!(minimize_linrep(&tm).dim(), 2);
    }

    #[test]
    fn zero_rep_collapses() {
        let z = LinearRepresentation::new(2, vec![rat(0); 7], vec![Matrix::identity(7); 2], vec![rat(1); 7]).unwrap();
        assert_eq!(minimize_linrep(&z).dim(), 0);
    }
}
