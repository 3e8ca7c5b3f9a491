use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::Polynomial;
use super::rational::{is_prime_u64, valuation, Rational};
use crate::error::AlgebraError;

/// Lower convex hull of `(i, v_p(a_i))`; a segment of slope `s` and length `l` stands for
/// `l` roots of p-adic valuation `-s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: u64,
    pub segments: Vec<(Rational, usize)>,
}

impl NewtonPolygon {
    /// Valuations of the roots, one entry per segment with its multiplicity.
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        self.segments.iter().map(|(s, l)| (-s.clone(), *l)).collect()
    }
}

pub fn newton_polygon(p: &Polynomial, prime: u64) -> Result<NewtonPolygon, AlgebraError> {
    if !is_prime_u64(prime) {
        return Err(AlgebraError::NotPrime(prime));
    }
    let zpow = p.valuation().ok_or(AlgebraError::ZeroPolynomial)?;
    let (_, ints) = p.unshift(zpow).primitive_part();
    let pts: Vec<(i64, i64)> = ints
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c): (usize, &BigInt)| (i as i64, valuation(c, prime)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the segment a -> q
            if (b.1 - a.1) * (q.0 - a.0) >= (q.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            (Rational::new((w[1].1 - w[0].1).into(), len.into()), len as usize)
        })
        .collect();
    Ok(NewtonPolygon { prime, segments })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let np = newton_polygon(&Polynomial::from_i64(&[4, 1, 2]), 2).unwrap();
        let r = |a: i64| Rational::from_integer(a.into());
        assert_eq!(np.segments, vec![(r(-2), 1), (r(1), 1)]);
        let np = newton_polygon(&Polynomial::from_i64(&[-1, 1]), 5).unwrap();
        assert_eq!(np.segments, vec![(r(0), 1)]);
        let np = newton_polygon(&Polynomial::from_i64(&[0, -3, 1]), 3).unwrap();
        assert_eq!(np.segments, vec![(r(-1), 1)]);
        assert!(newton_polygon(&Polynomial::from_i64(&[1, 1]), 6).is_err());
    }
}
