use std::collections::HashMap;

use num_traits::{One, Zero};

use super::LinearRepresentation;
use crate::algebra::{Matrix, Polynomial, Rational, RowBasis};
use crate::equation::MahlerEquation;
use crate::error::LinrepError;

/// Cartier operator on a polynomial: `sum_t c_t z^t -> sum_{t = kn + r} c_t z^n`.
fn cartier(p: &[Rational], k: usize, r: usize) -> Vec<Rational> {
    p.iter().skip(r).step_by(k).cloned().collect()
}

/// Representation of a Becker equation `f = -(p_1 f(z^k) + ... + p_d f(z^{k^d}))` with `f(0) = a0`.
///
/// States are the series `z^i f(z^{k^j})`; `mu(r)` records the Cartier action
/// `Delta_r(z^i f(z^{k^j})) = Delta_r(z^i) f(z^{k^{j-1}})` for `j >= 1` and
/// `Delta_r(z^i f) = -sum_j Delta_r(z^i p_j) f(z^{k^{j-1}})`. Only the states reachable from `f`
/// are kept; all of them satisfy `i <= max deg p_j` and `j < d`.
pub fn becker_to_linrep(eq: &MahlerEquation, a0: &Rational) -> Result<LinearRepresentation, LinrepError> {
    if !eq.is_becker() {
        return Err(LinrepError::MalformedBecker);
    }
    let k = eq.k() as usize;
    let neg: Vec<Vec<Rational>> = eq.coeffs()[1..].iter().map(|p| (-p).into_coeffs()).collect();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states: Vec<(usize, usize)> = vec![(0, 0)];
    index.insert((0, 0), 0);
    // images[b][r] = sparse Delta_r(state b)
    let mut images: Vec<Vec<Vec<((usize, usize), Rational)>>> = Vec::new();
    let mut b = 0;
    while b < states.len() {
        let (i, j) = states[b];
        let mut per_digit = Vec::with_capacity(k);
        for r in 0..k {
            let mut img = Vec::new();
            if j >= 1 {
                if i >= r && (i - r) % k == 0 {
                    img.push((((i - r) / k, j - 1), Rational::one()));
                }
            } else {
                for (jj, p) in neg.iter().enumerate() {
                    let mut shifted = vec![Rational::zero(); i];
                    shifted.extend(p.iter().cloned());
                    for (t, c) in cartier(&shifted, k, r).into_iter().enumerate() {
                        if !c.is_zero() {
                            img.push(((t, jj), c));
                        }
                    }
                }
            }
            for (s, _) in &img {
                if !index.contains_key(s) {
                    index.insert(*s, states.len());
                    states.push(*s);
                }
            }
            per_digit.push(img);
        }
        images.push(per_digit);
        b += 1;
    }
    let d = states.len();
    let mut mu = vec![Matrix::zeros(d, d); k];
    for (b, per_digit) in images.into_iter().enumerate() {
        for (r, img) in per_digit.into_iter().enumerate() {
            for (s, c) in img {
                let col = index[&s];
                let cur = mu[r].get(col, b).clone();
                mu[r].set(col, b, cur + c);
            }
        }
    }
    let u = states.iter().map(|&(i, _)| if i == 0 { a0.clone() } else { Rational::zero() }).collect();
    let mut v = vec![Rational::zero(); d];
    v[0] = Rational::one();
    LinearRepresentation::new(eq.k(), u, mu, v)
}

/// Representation of the finitely supported coefficient sequence of `p`, from the span of its
/// k-kernel.
pub fn linrep_of_polynomial(p: &Polynomial, k: u64) -> LinearRepresentation {
    if p.is_zero() {
        return LinearRepresentation::zero(k);
    }
    let len = p.deg() + 1;
    let kk = k as usize;
    let pad = |mut x: Vec<Rational>| {
        x.resize(len, Rational::zero());
        x
    };
    let mut basis = RowBasis::new(len);
    basis.insert(p.coeffs().to_vec());
    let mut b = 0;
    while b < basis.len() {
        for r in 0..kk {
            let img = pad(cartier(&basis.vectors()[b], kk, r));
            basis.insert(img);
        }
        b += 1;
    }
    let d = basis.len();
    let mut mu = vec![Matrix::zeros(d, d); kk];
    for b in 0..d {
        for (r, m) in mu.iter_mut().enumerate() {
            let img = pad(cartier(&basis.vectors()[b], kk, r));
            let coords = basis.coordinates(&img).expect("kernel span is closed");
            for (c, x) in coords.into_iter().enumerate() {
                m.set(c, b, x);
            }
        }
    }
    let u = basis.vectors().iter().map(|s| s[0].clone()).collect();
    let mut v = vec![Rational::zero(); d];
    v[0] = Rational::one();
    LinearRepresentation { k, u, mu, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::engine::{expand, zoo};

    fn becker(k: u64, ps: &[&[i64]]) -> MahlerEquation {
        let mut cs = vec![Polynomial::one()];
        cs.extend(ps.iter().map(|p| -Polynomial::from_i64(p)));
        MahlerEquation::new(k, cs).unwrap()
    }

    #[test]
    fn becker_examples() {
        let r = becker_to_linrep(&becker(2, &[&[1, 1]]), &rat(1)).unwrap();
        assert!(r.eval_range(100).iter().all(|x| *x == rat(1)));
        let r = becker_to_linrep(&becker(2, &[&[1, 1, 1]]), &rat(1)).unwrap();
        assert_eq!(r.eval_range(512), zoo("stern", 512).unwrap().oracle);
        let r = becker_to_linrep(&becker(2, &[&[1]]), &rat(7)).unwrap();
        let vals = r.eval_range(20);
        assert_eq!(vals[0], rat(7));
        assert!(vals[1..].iter().all(Zero::is_zero));
        assert!(r.is_leading_zero_safe());
    }

    #[test]
    fn becker_rejects_non_unit_leading_coefficient() {
        let e = MahlerEquation::new(2, vec![Polynomial::from_i64(&[1, -2]), Polynomial::from_i64(&[-1])]).unwrap();
        assert_eq!(becker_to_linrep(&e, &rat(1)), Err(LinrepError::MalformedBecker));
    }

    #[test]
    fn becker_order_two_matches_engine() {
        let e = becker(2, &[&[1, 1], &[0, -1, 1]]);
        let spec = crate::equation::SeriesSpec::new(e.clone(), vec![rat(1)], None).unwrap();
        let r = becker_to_linrep(&e, &rat(1)).unwrap();
        assert_eq!(r.eval_range(300), expand(&spec, 300).unwrap());
    }

    #[test]
    fn polynomial_examples() {
        let r = linrep_of_polynomial(&Polynomial::from_i64(&[1, 0, 3]), 2);
        assert_eq!(r.eval_range(6), [1, 0, 3, 0, 0, 0, 0].map(rat).to_vec());
        let z = linrep_of_polynomial(&Polynomial::zero(), 2);
        assert_eq!(z.dim(), 0);
        assert_eq!(z.eval(9), rat(0));
        let r = linrep_of_polynomial(&Polynomial::z_pow(5), 2);
        for n in 0..=64u64 {
            assert_eq!(r.eval(n), rat((n == 5) as i64));
        }
        assert!(r.is_leading_zero_safe());
    }
}
