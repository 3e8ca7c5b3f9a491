use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::AlgebraError;

/// `unit * z^zpow * prod Phi_n^e * remainder`, with `remainder` monic and free of roots of
/// unity and of the root 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSplit {
    pub unit: Rational,
    pub zpow: usize,
    pub cyclo: Vec<(u64, u32)>,
    pub remainder: Polynomial,
}

impl CyclotomicSplit {
    pub fn reconstruct(&self) -> Polynomial {
        let mut p = Polynomial::monomial(self.unit.clone(), self.zpow);
        for &(n, e) in &self.cyclo {
            p = &p * &cyclotomic_poly(n).pow(e);
        }
        &p * &self.remainder
    }

    /// True when every nonzero root is a root of unity.
    pub fn only_unit_roots(&self) -> bool {
        self.remainder.is_constant()
    }

    /// Roots of unity whose order shares a factor with `k`.
    pub fn in_rho(&self, k: u64) -> bool {
        self.cyclo.iter().all(|&(n, _)| n.gcd(&k) > 1)
    }
}

#[derive(Serialize)]
struct SplitView {
    unit: String,
    zpow: usize,
    cyclo: Vec<(u64, u32)>,
    remainder: String,
}

impl Serialize for CyclotomicSplit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SplitView {
            unit: super::rational::format_rational(&self.unit),
            zpow: self.zpow,
            cyclo: self.cyclo.clone(),
            remainder: self.remainder.to_text(),
        }
        .serialize(s)
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Polynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Polynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`th cyclotomic polynomial, obtained from `z^n - 1` by exact division by the
/// cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic_poly(n: u64) -> Polynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = &Polynomial::z_pow(n as usize) - &Polynomial::one();
    for d in divisors(n) {
        if d < n {
            p = p.div_exact(&cyclotomic_poly(d)).expect("cyclotomic division is exact");
        }
    }
    cache().lock().unwrap().insert(n, p.clone());
    p
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Multiplicative order of `k` modulo `n` (1 when `n = 1`); requires `gcd(k, n) = 1`.
pub fn multiplicative_order(k: u64, n: u64) -> u64 {
    assert_eq!(k.gcd(&n), 1, "order needs coprime arguments");
    if n == 1 {
        return 1;
    }
    let mut x = k % n;
    let mut j = 1;
    while x != 1 {
        x = x * k % n;
        j += 1;
    }
    j
}

/// Splits off the content, the power of `z` and every cyclotomic factor.
pub fn unit_root_split(p: &Polynomial) -> Result<CyclotomicSplit, AlgebraError> {
    let zpow = p.valuation().ok_or(AlgebraError::ZeroPolynomial)?;
    let mut rem = p.unshift(zpow);
    let unit = rem.lead();
    rem = rem.monic();
    let mut cyclo = Vec::new();
    let mut n = 1u64;
    loop {
        let deg = rem.deg() as u64;
        if deg == 0 || n > 2 * deg * deg {
            break;
        }
        if euler_phi(n) <= deg {
            let phi = cyclotomic_poly(n);
            let mut e = 0;
            while let Some(q) = rem.div_exact(&phi) {
                rem = q;
                e += 1;
            }
            if e > 0 {
                cyclo.push((n, e));
            }
        }
        n += 1;
    }
    Ok(CyclotomicSplit { unit, zpow, cyclo, remainder: rem })
}

/// True when the polynomial is `unit * z^a * prod Phi_n^e`.
pub fn is_unit_root_product(p: &Polynomial) -> bool {
    unit_root_split(p).map(|s| s.only_unit_roots()).unwrap_or(false)
}

pub fn rational_is_unit(x: &Rational) -> bool {
    !x.is_zero() && x.numer().magnitude().is_one() && x.denom().is_one()
}
