//! Linear representations `(u, mu, v)` of k-regular sequences, evaluated on base-k digits most
//! significant first with row vectors acting on the right: `a(n) = u mu(<n>_k) v`.

mod automaton;
mod build;
mod compile;
mod convolve;
mod minimize;

pub use automaton::{to_automaton, Automaton};
pub use build::{becker_to_linrep, linrep_of_polynomial};
pub use compile::{dumas_becker_equation, regular_compile, CompileTrace};
pub use convolve::{cauchy_convolution, word_convolution};
pub use minimize::minimize_linrep;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::matrix::dot;
use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{Matrix, Rational};
use crate::error::LinrepError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub k: u64,
    pub u: Vec<Rational>,
    /// One `dim x dim` matrix per digit.
    pub mu: Vec<Matrix>,
    pub v: Vec<Rational>,
}

/// Base-`k` digits of `n`, most significant first; empty for `n = 0`.
pub fn digits(mut n: u64, k: u64) -> Vec<usize> {
    let mut d = Vec::new();
    while n > 0 {
        d.push((n % k) as usize);
        n /= k;
    }
    d.reverse();
    d
}

impl LinearRepresentation {
    pub fn new(k: u64, u: Vec<Rational>, mu: Vec<Matrix>, v: Vec<Rational>) -> Result<Self, LinrepError> {
        let d = u.len();
        if k < 2 {
            return Err(LinrepError::Malformed(format!("radix {k} is below 2")));
        }
        if mu.len() != k as usize {
            return Err(LinrepError::Malformed(format!("expected {k} digit matrices, got {}", mu.len())));
        }
        if v.len() != d || mu.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(LinrepError::Malformed("dimension mismatch".into()));
        }
        Ok(LinearRepresentation { k, u, mu, v })
    }

    /// Dimension-zero representation of the zero sequence.
    pub fn zero(k: u64) -> Self {
        LinearRepresentation { k, u: vec![], mu: vec![Matrix::zeros(0, 0); k as usize], v: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// `u mu(w)` for a digit word.
    pub fn state(&self, word: &[usize]) -> Vec<Rational> {
        word.iter().fold(self.u.clone(), |x, &r| self.mu[r].left_apply(&x))
    }

    pub fn eval_word(&self, word: &[usize]) -> Rational {
        dot(&self.state(word), &self.v)
    }

    pub fn eval(&self, n: u64) -> Rational {
        self.eval_word(&digits(n, self.k))
    }

    /// `a(0..=n)`, sharing prefix states.
    pub fn eval_range(&self, n: u64) -> Vec<Rational> {
        let k = self.k;
        let mut states: Vec<Vec<Rational>> = Vec::with_capacity(n as usize + 1);
        let mut out = Vec::with_capacity(n as usize + 1);
        for i in 0..=n {
            let s = if i == 0 {
                self.u.clone()
            } else {
                let parent = if i < k { self.u.clone() } else { states[(i / k) as usize].clone() };
                self.mu[(i % k) as usize].left_apply(&parent)
            };
            out.push(dot(&s, &self.v));
            states.push(s);
        }
        out
    }

    /// `u mu(0) = u`, so leading zero digits do not change the value.
    pub fn is_leading_zero_safe(&self) -> bool {
        self.dim() == 0 || self.mu[0].left_apply(&self.u) == self.u
    }

    /// An equivalent representation that ignores leading zero digits. Returns `self` when it
    /// already does; otherwise adds one state that waits for the first nonzero digit.
    pub fn leading_zero_normalized(&self) -> Self {
        if self.is_leading_zero_safe() {
            return self.clone();
        }
        let d = self.dim();
        let mu = (0..self.k as usize)
            .map(|r| {
                let mut m = Matrix::zeros(d + 1, d + 1);
                if r == 0 {
                    m.set(0, 0, Rational::one());
                } else {
                    let row = self.mu[r].left_apply(&self.u);
                    for (j, x) in row.into_iter().enumerate() {
                        m.set(0, j + 1, x);
                    }
                }
                m.put_block(1, 1, &self.mu[r]);
                m
            })
            .collect();
        let mut u = vec![Rational::zero(); d + 1];
        u[0] = Rational::one();
        let mut v = vec![dot(&self.u, &self.v)];
        v.extend(self.v.iter().cloned());
        LinearRepresentation { k: self.k, u, mu, v }
    }

    pub fn to_json(&self) -> Value {
        let rv = |x: &[Rational]| x.iter().map(format_rational).collect::<Vec<_>>();
        json!({
            "k": self.k,
            "u": rv(&self.u),
            "mu": self.mu.iter().map(|m| m.to_rows().iter().map(|r| rv(r)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "v": rv(&self.v),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LinrepError> {
        let bad = |m: &str| LinrepError::Malformed(m.to_string());
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| bad("missing radix \"k\""))?;
        let vec_of = |x: &Value| -> Result<Vec<Rational>, LinrepError> {
            x.as_array()
                .ok_or_else(|| bad("expected a list of rationals"))?
                .iter()
                .map(|e| match e {
                    Value::String(s) => Ok(parse_rational(s)?),
                    Value::Number(n) if n.is_i64() || n.is_u64() => Ok(parse_rational(&n.to_string())?),
                    _ => Err(bad("rationals must be strings")),
                })
                .collect()
        };
        let u = vec_of(v.get("u").ok_or_else(|| bad("missing \"u\""))?)?;
        let w = vec_of(v.get("v").ok_or_else(|| bad("missing \"v\""))?)?;
        let mus = v.get("mu").and_then(Value::as_array).ok_or_else(|| bad("missing \"mu\""))?;
        let d = u.len();
        let mut mu = Vec::new();
        for m in mus {
            let rows = m.as_array().ok_or_else(|| bad("matrix must be a list of rows"))?;
            let rows: Vec<Vec<Rational>> = rows.iter().map(vec_of).collect::<Result<_, _>>()?;
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(bad("matrix dimension mismatch"));
            }
            mu.push(if d == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) });
        }
        Self::new(k, u, mu, w)
    }
}

fn same_radix(a: &LinearRepresentation, b: &LinearRepresentation) -> Result<(), LinrepError> {
    if a.k != b.k {
        return Err(LinrepError::RadixMismatch(a.k, b.k));
    }
    Ok(())
}

/// Direct sum: evaluates to `a(n) + b(n)`.
pub fn sum_linrep(a: &LinearRepresentation, b: &LinearRepresentation) -> Result<LinearRepresentation, LinrepError> {
    same_radix(a, b)?;
    let (d1, d2) = (a.dim(), b.dim());
    let mu = a
        .mu
        .iter()
        .zip(&b.mu)
        .map(|(x, y)| {
            let mut m = Matrix::zeros(d1 + d2, d1 + d2);
            m.put_block(0, 0, x);
            m.put_block(d1, d1, y);
            m
        })
        .collect();
    let cat = |x: &[Rational], y: &[Rational]| x.iter().chain(y).cloned().collect::<Vec<_>>();
    Ok(LinearRepresentation { k: a.k, u: cat(&a.u, &b.u), mu, v: cat(&a.v, &b.v) })
}

/// Evaluates to `c a(n)`.
pub fn scale_linrep(c: &Rational, a: &LinearRepresentation) -> LinearRepresentation {
    if c.is_zero() {
        return LinearRepresentation::zero(a.k);
    }
    LinearRepresentation { u: a.u.iter().map(|x| x * c).collect(), ..a.clone() }
}
