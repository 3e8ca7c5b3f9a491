use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::unit_root_split;
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::AlgebraError;

/// Bracket for the absolute value of one or more roots. `exact_one` marks moduli certified
/// to equal 1 by exact algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub exact_one: bool,
    /// Number of distinct roots whose modulus lies in the bracket.
    pub roots: usize,
}

impl ModulusInterval {
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

pub const DEFAULT_PRECISION_BITS: u32 = 2048;

/// One bracket per cluster of distinct root moduli of `p` (root 0 excluded), each of width
/// at most `eps` or flagged `exact_one`.
pub fn root_modulus_intervals(
    p: &Polynomial,
    eps: &Rational,
    cap_bits: u32,
) -> Result<Vec<ModulusInterval>, AlgebraError> {
    let v = p.valuation().ok_or(AlgebraError::ZeroPolynomial)?;
    let sq = p.unshift(v).squarefree();
    let mut out = Vec::new();
    if sq.is_constant() {
        return Ok(out);
    }
    let split = unit_root_split(&sq)?;
    let rem = split.remainder;
    let n_cyclo: usize = sq.deg() - rem.deg();
    let g = rem.gcd(&rem.reverse());
    let on_circle = if g.deg() > 0 { unit_circle_count(&g) } else { 0 };
    if n_cyclo + on_circle > 0 {
        out.push(ModulusInterval {
            lo: Rational::one(),
            hi: Rational::one(),
            exact_one: true,
            roots: n_cyclo + on_circle,
        });
    }
    if rem.deg() == 0 || rem.deg() == on_circle {
        return Ok(out);
    }
    let counter = DiskCounter::new(&rem);
    let n = rem.deg();
    let upper = dyadic_above(&cauchy_bound(&rem));
    let lower = Rational::one() / dyadic_above(&cauchy_bound(&rem.reverse()));
    let mut pieces = Vec::new();
    let one = Rational::one();
    let (lo_count, hi_count) = (0usize, n);
    if on_circle > 0 {
        let mut bits = 4u32;
        let (a, na, b, nb) = loop {
            if bits > cap_bits {
                return Err(AlgebraError::EscalationCapExceeded { bits: cap_bits });
            }
            let delta = Rational::new(BigInt::one(), BigInt::one() << bits);
            let a = &one - &delta;
            let b = &one + &delta;
            let na = counter.count_near(&a, bits, &lower, &one)?;
            let nb = counter.count_near(&b, bits, &one, &upper)?;
            if nb.1 - na.1 == on_circle {
                break (na.0, na.1, nb.0, nb.1);
            }
            bits *= 2;
        };
        isolate(&counter, (lower, lo_count), (a, na), eps, cap_bits, &mut pieces)?;
        isolate(&counter, (b, nb), (upper, hi_count), eps, cap_bits, &mut pieces)?;
    } else {
        isolate(&counter, (lower, lo_count), (upper, hi_count), eps, cap_bits, &mut pieces)?;
    }
    let mut finished = Vec::new();
    for piece in pieces {
        separate_from_one(&counter, piece, cap_bits, &mut finished)?;
    }
    out.extend(
        finished
            .into_iter()
            .map(|(lo, nlo, hi, nhi)| ModulusInterval { lo, hi, exact_one: false, roots: nhi - nlo }),
    );
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

type Piece = (Rational, usize, Rational, usize);

fn isolate(
    counter: &DiskCounter,
    (a, na): (Rational, usize),
    (b, nb): (Rational, usize),
    eps: &Rational,
    cap_bits: u32,
    out: &mut Vec<Piece>,
) -> Result<(), AlgebraError> {
    let mut stack = vec![(a, na, b, nb)];
    while let Some((a, na, b, nb)) = stack.pop() {
        if nb == na {
            continue;
        }
        let width = &b - &a;
        if &width <= eps {
            out.push((a, na, b, nb));
            continue;
        }
        let bits = dyadic_bits(&width) + 2;
        if bits > cap_bits {
            return Err(AlgebraError::EscalationCapExceeded { bits: cap_bits });
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        let (m, nm) = counter.count_near(&mid, bits, &a, &b)?;
        stack.push((m.clone(), nm, b, nb));
        stack.push((a, na, m, nm));
    }
    Ok(())
}

fn separate_from_one(
    counter: &DiskCounter,
    (lo, nlo, hi, nhi): Piece,
    cap_bits: u32,
    out: &mut Vec<Piece>,
) -> Result<(), AlgebraError> {
    let one = Rational::one();
    let mut stack = vec![(lo, nlo, hi, nhi)];
    while let Some((a, na, b, nb)) = stack.pop() {
        if na == nb {
            continue;
        }
        if !(a < one && one < b) {
            out.push((a, na, b, nb));
            continue;
        }
        let bits = dyadic_bits(&(&b - &a)) + 2;
        if bits > cap_bits {
            return Err(AlgebraError::EscalationCapExceeded { bits: cap_bits });
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        let (m, nm) = counter.count_near(&mid, bits, &a, &b)?;
        stack.push((m.clone(), nm, b, nb));
        stack.push((a, na, m, nm));
    }
    Ok(())
}

/// Counts roots inside discs `|z| < r` with the Schur–Cohn reduction.
struct DiskCounter {
    ints: Vec<BigInt>,
}

impl DiskCounter {
    fn new(p: &Polynomial) -> Self {
        DiskCounter { ints: p.primitive_part().1 }
    }

    fn count_at_exact(&self, r: &Rational) -> Option<usize> {
        let n = self.ints.len() - 1;
        let (num, den) = (r.numer(), r.denom());
        let mut q = Vec::with_capacity(n + 1);
        for (i, c) in self.ints.iter().enumerate() {
            q.push(c * num.pow(i as u32) * den.pow((n - i) as u32));
        }
        schur_cohn(q)
    }

    /// Counts at `r` or at a nearby dyadic point strictly inside `(lo, hi)`.
    fn count_near(
        &self,
        r: &Rational,
        bits: u32,
        lo: &Rational,
        hi: &Rational,
    ) -> Result<(Rational, usize), AlgebraError> {
        if let Some(c) = self.count_at_exact(r) {
            return Ok((r.clone(), c));
        }
        for extra in [8u32, 16, 32, 64] {
            let step = Rational::new(BigInt::one(), BigInt::one() << (bits + extra));
            for j in 1..=8i64 {
                for sgn in [1i64, -1] {
                    let cand = r + &step * Rational::from_integer((sgn * j).into());
                    if &cand <= lo || &cand >= hi {
                        continue;
                    }
                    if let Some(c) = self.count_at_exact(&cand) {
                        return Ok((cand, c));
                    }
                }
            }
        }
        Err(AlgebraError::EscalationCapExceeded { bits: bits + 64 })
    }
}

/// Number of roots strictly inside the unit disc, `None` when a degenerate step occurs
/// (which includes every polynomial with a root on the unit circle).
fn schur_cohn(mut p: Vec<BigInt>) -> Option<usize> {
    let mut count = 0;
    loop {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        if p.is_empty() {
            return None;
        }
        let n = p.len() - 1;
        if n == 0 {
            return Some(count);
        }
        if p[0].is_zero() {
            p.remove(0);
            count += 1;
            continue;
        }
        let (a0, an) = (p[0].clone(), p[n].clone());
        let (m0, mn) = (a0.abs(), an.abs());
        if m0 == mn {
            return None;
        }
        let q: Vec<BigInt> = if m0 > mn {
            (0..=n).map(|i| &a0 * &p[i] - &an * &p[n - i]).collect()
        } else {
            count += 1;
            (1..=n).map(|i| &an * &p[i] - &a0 * &p[n - i]).collect()
        };
        p = primitive(q);
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// Number of roots on the unit circle of a squarefree palindromic polynomial without roots
/// at `±1`, via the substitution `w = z + 1/z` and a Sturm count on `(-2, 2)`.
fn unit_circle_count(g: &Polynomial) -> usize {
    let deg = g.deg();
    let m = deg / 2;
    let two = Rational::from_integer(2.into());
    let w = Polynomial::from_i64(&[0, 1]);
    let mut dj = vec![Polynomial::constant(two.clone()), w.clone()];
    for j in 2..=m {
        let next = &(&w * &dj[j - 1]) - &dj[j - 2];
        dj.push(next);
    }
    let mut h = Polynomial::constant(g.coeff(m));
    for j in 1..=m {
        h = &h + &dj[j].scale(&g.coeff(m + j));
    }
    let h = h.squarefree();
    let seq = sturm_sequence(&h);
    let at = |x: &Rational| sign_changes(seq.iter().map(|s| s.eval(x)));
    2 * (at(&-two.clone()) - at(&two))
}

fn sturm_sequence(h: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![h.clone(), h.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        seq.push(-&r);
    }
    seq.pop();
    seq
}

fn sign_changes<I: Iterator<Item = Rational>>(vals: I) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for v in vals {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

fn cauchy_bound(p: &Polynomial) -> Rational {
    let l = p.lead();
    let m = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| (c / &l).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + m
}

fn dyadic_above(x: &Rational) -> Rational {
    let mut r = Rational::one();
    while &r < x {
        r *= Rational::from_integer(2.into());
    }
    r
}

/// Number of bits needed so that `2^-bits` is below `w`.
fn dyadic_bits(w: &Rational) -> u32 {
    let mut bits = 0u32;
    let mut x = w.clone();
    while x < Rational::one() {
        x *= Rational::from_integer(2.into());
        bits += 1;
    }
    bits
}
