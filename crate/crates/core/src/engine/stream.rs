use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::equation::SeriesSpec;
use crate::error::EquationError;

/// Incremental coefficient expansion of a validated spec.
///
/// With `p_0 = z^m (1 + alpha_1 z + ...)` every `a_n` with `n > m` is determined by earlier
/// coefficients: `a_n = -sum_j alpha_j a_{n-j} + sum_{i,j} beta_{i,j} a_{(n+m-j)/k^i}`,
/// where non-integral indices contribute nothing.
#[derive(Clone, Debug)]
pub struct CoefficientStream {
    spec: SeriesSpec,
    buffer: Vec<Rational>,
    m: usize,
    /// `(j, -alpha_j)`, nonzero entries only.
    alpha: Vec<(usize, Rational)>,
    /// `(k^i, j, beta_{i,j})`, nonzero entries only.
    beta: Vec<(usize, usize, Rational)>,
    integral: Option<IntegralWeights>,
}

#[derive(Clone, Debug)]
struct IntegralWeights {
    alpha: Vec<(usize, BigInt)>,
    beta: Vec<(usize, usize, BigInt)>,
}

impl CoefficientStream {
    pub fn new(spec: &SeriesSpec) -> Result<Self, EquationError> {
        let eq = &spec.equation;
        let m = eq.m();
        if spec.seeds.len() < m + 1 {
            return Err(EquationError::UnderdeterminedSeeds { required: m + 1, given: spec.seeds.len() });
        }
        let p0 = eq.coeff(0);
        let alpha: Vec<(usize, Rational)> = p0
            .coeffs()
            .iter()
            .enumerate()
            .skip(m + 1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j - m, -c))
            .collect();
        let mut beta = Vec::new();
        let mut kp = 1usize;
        for p in &eq.coeffs()[1..] {
            kp = kp.saturating_mul(eq.k() as usize);
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    beta.push((kp, j, -c));
                }
            }
        }
        let all_int = alpha.iter().all(|(_, w)| w.is_integer())
            && beta.iter().all(|(_, _, w)| w.is_integer())
            && spec.seeds.iter().all(Rational::is_integer);
        let integral = all_int.then(|| IntegralWeights {
            alpha: alpha.iter().map(|(j, w)| (*j, w.to_integer())).collect(),
            beta: beta.iter().map(|(kp, j, w)| (*kp, *j, w.to_integer())).collect(),
        });
        Ok(CoefficientStream { spec: spec.clone(), buffer: Vec::new(), m, alpha, beta, integral })
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Coefficients computed so far.
    pub fn coeffs(&self) -> &[Rational] {
        &self.buffer
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.buffer
    }

    /// Makes `a_0..=a_n` available.
    pub fn extend_to(&mut self, n: usize) {
        self.buffer.reserve((n + 1).saturating_sub(self.buffer.len()));
        while self.buffer.len() <= n {
            let i = self.buffer.len();
            let v = if i < self.spec.seeds.len() {
                self.spec.seeds[i].clone()
            } else if let Some(w) = &self.integral {
                Rational::from_integer(self.next_integral(w, i))
            } else {
                self.next_rational(i)
            };
            self.buffer.push(v);
        }
    }

    fn next_rational(&self, n: usize) -> Rational {
        let a = &self.buffer;
        let mut acc = Rational::zero();
        for (j, w) in &self.alpha {
            if *j <= n {
                let x = &a[n - j];
                if !x.is_zero() {
                    acc += w * x;
                }
            }
        }
        let t = n + self.m;
        for (kp, j, w) in &self.beta {
            if *j <= t && (t - j).is_multiple_of(*kp) {
                let x = &a[(t - j) / kp];
                if !x.is_zero() {
                    acc += w * x;
                }
            }
        }
        acc
    }

    fn next_integral(&self, w: &IntegralWeights, n: usize) -> BigInt {
        let a = &self.buffer;
        let mut acc = BigInt::zero();
        let mut add = |c: &BigInt, x: &Rational| {
            let x = x.numer();
            if x.is_zero() {
                return;
            }
            if c.is_one() {
                acc += x;
            } else if (-c).is_one() {
                acc -= x;
            } else {
                acc += c * x;
            }
        };
        for (j, c) in &w.alpha {
            if *j <= n {
                add(c, &a[n - j]);
            }
        }
        let t = n + self.m;
        for (kp, j, c) in &w.beta {
            if *j <= t && (t - j).is_multiple_of(*kp) {
                add(c, &a[(t - j) / kp]);
            }
        }
        acc
    }
}
