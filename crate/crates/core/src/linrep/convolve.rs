use num_traits::Zero;

use super::{same_radix, LinearRepresentation};
use crate::algebra::matrix::dot;
use crate::algebra::{Matrix, Rational};
use crate::error::LinrepError;

fn kron_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Evaluates to `sum_{i+j=n} a(i) b(j)`.
///
/// With `C(n) = sum_{i+j=n} A(i) (x) B(j)` for the state vectors `A, B` of the inputs, the pair
/// `(C(n), C(n-1))` is mapped to `(C(kn+r), C(kn+r-1))` by the block matrix
/// `[[S(r), S(r-1)], [S(k+r), S(k+r-1)]]`, where `S(t) = sum_{s+s'=t} kappa(s) (x) lambda(s')`.
pub fn cauchy_convolution(
    a: &LinearRepresentation,
    b: &LinearRepresentation,
) -> Result<LinearRepresentation, LinrepError> {
    same_radix(a, b)?;
    let k = a.k as usize;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(LinearRepresentation::zero(a.k));
    }
    let a = a.leading_zero_normalized();
    let b = b.leading_zero_normalized();
    let big = a.dim() * b.dim();
    let s_of = |t: isize| -> Matrix {
        let mut acc = Matrix::zeros(big, big);
        if t < 0 {
            return acc;
        }
        let t = t as usize;
        for s in t.saturating_sub(k - 1)..=t.min(k - 1) {
            acc = acc.add(&a.mu[s].kronecker(&b.mu[t - s]));
        }
        acc
    };
    let mu = (0..k as isize)
        .map(|r| {
            let mut m = Matrix::zeros(2 * big, 2 * big);
            m.put_block(0, 0, &s_of(r));
            m.put_block(0, big, &s_of(r - 1));
            m.put_block(big, 0, &s_of(k as isize + r));
            m.put_block(big, big, &s_of(k as isize + r - 1));
            m
        })
        .collect();
    let mut u = kron_vec(&a.u, &b.u);
    u.resize(2 * big, Rational::zero());
    let mut v = kron_vec(&a.v, &b.v);
    v.resize(2 * big, Rational::zero());
    Ok(LinearRepresentation { k: a.k, u, mu, v })
}

/// Evaluates to `sum_j a([i_1..i_j]_k) b([i_{j+1}..i_s]_k)` over the split points of `<n>_k`.
pub fn word_convolution(
    a: &LinearRepresentation,
    b: &LinearRepresentation,
) -> Result<LinearRepresentation, LinrepError> {
    same_radix(a, b)?;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(LinearRepresentation::zero(a.k));
    }
    let a = a.leading_zero_normalized();
    let b = b.leading_zero_normalized();
    let (d1, d2) = (a.dim(), b.dim());
    let mu = a
        .mu
        .iter()
        .zip(&b.mu)
        .map(|(m1, m2)| {
            let mut m = Matrix::zeros(d1 + d2, d1 + d2);
            m.put_block(0, 0, m1);
            let col = m1.apply(&a.v);
            for (i, ci) in col.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, uj) in b.u.iter().enumerate() {
                    m.set(i, d1 + j, ci * uj);
                }
            }
            m.put_block(d1, d1, m2);
            m
        })
        .collect();
    let c = dot(&a.u, &a.v);
    let mut u = a.u.clone();
    u.extend(b.u.iter().map(|x| x * &c));
    let mut v = vec![Rational::zero(); d1];
    v.extend(b.v.iter().cloned());
    let raw = LinearRepresentation { k: a.k, u, mu, v };
    Ok(raw.leading_zero_normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::linrep::tests::{identity_of_n, ones, thue_morse};
    use crate::linrep::{digits, LinearRepresentation};

    /// `2^{s_2(n)}`, two to the binary digit sum.
    fn two_to_digit_sum() -> LinearRepresentation {
        let mu = vec![Matrix::from_i64(&[&[1]]), Matrix::from_i64(&[&[2]])];
        LinearRepresentation::new(2, vec![rat(1)], mu, vec![rat(1)]).unwrap()
    }

    #[test]
    fn cauchy_examples() {
        let n = identity_of_n();
        let c = cauchy_convolution(&n, &ones()).unwrap();
        assert_eq!(c.eval(4), rat(10));
        let z = cauchy_convolution(&thue_morse(), &LinearRepresentation::zero(2)).unwrap();
        assert_eq!(z.eval(5), rat(0));
        let p = cauchy_convolution(&two_to_digit_sum(), &ones()).unwrap();
        assert_eq!(p.eval(2), rat(5));
        assert_eq!(p.eval(7), rat(27));
    }

    #[test]
    fn word_examples() {
        let w = word_convolution(&ones(), &ones()).unwrap();
        assert_eq!(w.eval(5), rat(4));
        assert_eq!(w.eval(0), rat(1));
        assert_eq!(w.eval(1), rat(2));
        assert!(w.is_leading_zero_safe());
        for n in 0..40u64 {
            assert_eq!(w.eval(n), rat(digits(n, 2).len() as i64 + 1));
        }
    }
}
