use num_traits::One;
use serde_json::{json, Value};

use super::{normalize_equation, radix_powers, MahlerEquation};
use crate::algebra::rational::{gcd_numerators, lcm_denominators};
use crate::algebra::{Polynomial, Rational, RationalFunction};

/// `q_0(z) f(z) = q_1(z) f(z^{k^{n0}}) + ... + q_d(z) f(z^{k^{n0+d-1}})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteppedEquation {
    pub k: u64,
    pub start: usize,
    pub coeffs: Vec<Polynomial>,
}

impl SteppedEquation {
    /// The same relation as a (sparse) Mahler equation in radix `k`.
    pub fn to_equation(&self) -> MahlerEquation {
        let d = self.coeffs.len() - 1;
        let mut cs = vec![Polynomial::zero(); self.start + d];
        cs[0] = self.coeffs[0].clone();
        for (j, q) in self.coeffs.iter().enumerate().skip(1) {
            cs[self.start + j - 1] = -q;
        }
        normalize_equation(&MahlerEquation::from_normalized(self.k, cs)).expect("q0 is nonzero")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "start": self.start,
            "coeffs": self.coeffs.iter().map(|p| p.to_text()).collect::<Vec<_>>(),
        })
    }
}

/// Clears denominators of a rational-function vector and divides out the polynomial content.
fn to_coprime_polys(v: &[RationalFunction]) -> Vec<Polynomial> {
    let den = v.iter().fold(Polynomial::one(), |l, r| {
        let g = l.gcd(r.den());
        (&l * r.den()).div_exact(&g).unwrap()
    });
    let ps: Vec<Polynomial> = v.iter().map(|r| (r.num() * &den).div_exact(r.den()).unwrap()).collect();
    let g = ps.iter().fold(Polynomial::zero(), |g, p| g.gcd(p));
    let ps: Vec<Polynomial> = ps.iter().map(|p| p.div_exact(&g).unwrap()).collect();
    let all: Vec<Rational> = ps.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    let c = Rational::new(lcm_denominators(&all), gcd_numerators(&all));
    ps.iter().map(|p| p.scale(&c)).collect()
}

/// Iterates the equation `n0` times, expressing `f(z)` through `f(z^{k^{n0}}), ...`.
pub fn iterate_equation(eq: &MahlerEquation, n0: usize) -> SteppedEquation {
    assert!(n0 >= 1, "iteration count must be positive");
    let d = eq.order();
    let k = eq.k() as usize;
    let p0 = RationalFunction::from_poly(eq.coeff(0).clone());
    let c: Vec<RationalFunction> = (1..=d)
        .map(|i| -(&RationalFunction::from_poly(eq.coeff(i).clone()) / &p0))
        .collect();
    // First row of A(z) A(z^k) ... A(z^{k^{t}}), A the companion matrix of f = sum c_i f(z^{k^i}).
    let mut row = c.clone();
    let mut kt = 1usize;
    for _ in 1..n0 {
        kt *= k;
        let ct: Vec<RationalFunction> = c.iter().map(|r| r.compose_power(kt)).collect();
        row = (0..d)
            .map(|j| {
                let head = &row[0] * &ct[j];
                if j + 1 < d {
                    &head + &row[j + 1]
                } else {
                    head
                }
            })
            .collect();
    }
    let mut v = vec![RationalFunction::one()];
    v.extend(row);
    let mut q = to_coprime_polys(&v);
    let low = q[0].coeff(q[0].valuation().unwrap());
    if !low.is_one() {
        let inv = Rational::one() / low;
        q = q.iter().map(|p| p.scale(&inv)).collect();
    }
    SteppedEquation { k: eq.k(), start: n0, coeffs: q }
}

/// Vectors `V_0..=V_top` expressing `f(z^{k^N})` in the basis `f(z), ..., f(z^{k^{d-1}})`.
fn reduction_vectors(eq: &MahlerEquation, top: usize) -> Vec<Vec<RationalFunction>> {
    let d = eq.order();
    let pows = radix_powers(eq.k(), top + 1);
    let pd = RationalFunction::from_poly(eq.coeff(d).clone());
    let ratios: Vec<RationalFunction> =
        (0..d).map(|j| -(&RationalFunction::from_poly(eq.coeff(j).clone()) / &pd)).collect();
    let mut out: Vec<Vec<RationalFunction>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        if n < d {
            let mut e = vec![RationalFunction::zero(); d];
            e[n] = RationalFunction::one();
            out.push(e);
            continue;
        }
        let kp = pows[n - d];
        let mut acc = vec![RationalFunction::zero(); d];
        for (j, r) in ratios.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let w = r.compose_power(kp);
            for (a, b) in acc.iter_mut().zip(&out[n - d + j]) {
                if !b.is_zero() {
                    *a = &*a + &(&w * b);
                }
            }
        }
        out.push(acc);
    }
    out
}

/// A nonzero combination `c` with `sum c_i rows_i = 0`, if the rows are dependent.
fn dependence(rows: &[Vec<RationalFunction>]) -> Option<Vec<RationalFunction>> {
    let n = rows.len();
    let w = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<RationalFunction>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { RationalFunction::one() } else { RationalFunction::zero() }));
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..w {
        let Some(p) = (rank..n).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv();
        let pivot: Vec<RationalFunction> = m[rank].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    (rank < n).then(|| m[rank][w..].to_vec())
}

/// An equation for the same series in radix `k^e`, of the least order the reduction allows.
pub fn rebase_relation(eq: &MahlerEquation, e: usize) -> MahlerEquation {
    assert!(e >= 1, "rebase exponent must be positive");
    if e == 1 {
        return eq.clone();
    }
    let d = eq.order();
    let vs = reduction_vectors(eq, d * e);
    let kk = (eq.k() as usize).pow(e as u32) as u64;
    for big_d in 1..=d {
        let rows: Vec<Vec<RationalFunction>> = (0..=big_d).map(|i| vs[i * e].clone()).collect();
        if let Some(c) = dependence(&rows) {
            let polys = to_coprime_polys(&c);
            return MahlerEquation::new(kk, polys).expect("dependence is nonzero");
        }
    }
    unreachable!("d + 1 vectors in a d-dimensional space are dependent")
}

/// Outcome of rewriting a candidate relation modulo an equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// The candidate is a consequence of the equation.
    Zero,
    /// The candidate reduces to a nonzero combination of the basis.
    NonZero(Vec<RationalFunction>),
    /// The candidate only involves basis terms, so reduction cannot decide it.
    Unresolved(Vec<RationalFunction>),
}

impl Reduction {
    pub fn is_zero(&self) -> bool {
        matches!(self, Reduction::Zero)
    }
}

/// Rewrites `sum c_i f(z^{k^i})` modulo `eq` into the basis `f(z), ..., f(z^{k^{d-1}})`.
pub fn reduce_relation(eq: &MahlerEquation, candidate: &[(usize, Polynomial)]) -> Reduction {
    let d = eq.order();
    let top = candidate.iter().map(|c| c.0).max().unwrap_or(0);
    let vs = reduction_vectors(eq, top);
    let mut acc = vec![RationalFunction::zero(); d];
    for (i, p) in candidate {
        if p.is_zero() {
            continue;
        }
        let w = RationalFunction::from_poly(p.clone());
        for (a, b) in acc.iter_mut().zip(&vs[*i]) {
            if !b.is_zero() {
                *a = &*a + &(&w * b);
            }
        }
    }
    if acc.iter().all(RationalFunction::is_zero) {
        Reduction::Zero
    } else if top < d {
        Reduction::Unresolved(acc)
    } else {
        Reduction::NonZero(acc)
    }
}
