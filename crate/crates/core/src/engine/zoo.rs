use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::rational::{format_rational, rat, ratio};
use crate::algebra::{Polynomial, Rational};
use crate::equation::{MahlerEquation, SeriesSpec};
use crate::error::EngineError;

pub const ZOO_NAMES: [&str; 8] = [
    "geometric",
    "prod_inv_cyclo",
    "thin_geometric",
    "digit_sum",
    "thue_morse",
    "neg_product",
    "stern",
    "denominator_trap",
];

/// A catalog series with an independently computed prefix.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub spec: SeriesSpec,
    pub expected_class: u8,
    pub description: &'static str,
    /// `a_0..=a_N` computed without the functional equation.
    pub oracle: Vec<Rational>,
}

/// Turns `sum p_i f(z^{k^i}) = num/den` into a homogeneous equation of order one higher.
pub fn homogenize(k: u64, p: &[Polynomial], num: &Polynomial, den: &Polynomial) -> MahlerEquation {
    let d = p.len() - 1;
    let kk = k as usize;
    // E(z) = den * sum p_i f_i - num; combine num(z^k) E(z) - num(z) E(z^k).
    let nk = num.compose_power(kk);
    let dk = den.compose_power(kk);
    let mut cs = vec![Polynomial::zero(); d + 2];
    for (i, pi) in p.iter().enumerate() {
        cs[i] = &cs[i] + &(&(&nk * den) * pi);
        cs[i + 1] = &cs[i + 1] - &(&(num * &dk) * &pi.compose_power(kk));
    }
    MahlerEquation::new(k, cs).expect("homogenized equation is nonzero")
}

fn poly(cs: &[i64]) -> Polynomial {
    Polynomial::from_i64(cs)
}

fn spec(eq: MahlerEquation, seeds: &[i64], name: &str) -> SeriesSpec {
    SeriesSpec::new(eq, seeds.iter().map(|&s| rat(s)).collect(), Some(name.to_string()))
        .expect("catalog seeds are consistent")
}

fn pow2(n: usize) -> Rational {
    Rational::from_integer(BigInt::one() << n)
}

/// Partitions of `n` into powers of 2.
fn binary_partitions(n: usize) -> Vec<Rational> {
    let mut b = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        b[i] = if i % 2 == 1 { b[i - 1].clone() } else { &b[i - 1] + &b[i / 2] };
    }
    b.into_iter().map(Rational::from_integer).collect()
}

/// Coefficients of `prod_i (1 + z^{2^i} + z^{2^{i+1}})` truncated after `z^n`.
fn stern_product(n: usize) -> Vec<Rational> {
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::one();
    let mut s = 1usize;
    while s <= n {
        let mut next = c.clone();
        for i in 0..=n {
            if i + s <= n {
                next[i + s] += &c[i];
            }
            if i + 2 * s <= n {
                next[i + 2 * s] += &c[i];
            }
        }
        c = next;
        s *= 2;
    }
    c.into_iter().map(Rational::from_integer).collect()
}

/// `prod_i (1 - 8 z^{3^i}) / (1 - 2z)`.
fn trap_series(n: usize) -> Vec<Rational> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    let mut s = 1usize;
    while s <= n {
        for i in (s..=n).rev() {
            let t = &p[i - s] * 8;
            p[i] -= t;
        }
        s *= 3;
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::zero();
    for c in p {
        acc = acc * 2 + c;
        out.push(Rational::from_integer(acc.clone()));
    }
    out
}

/// Looks up a catalog entry and computes its oracle prefix `a_0..=a_n`.
pub fn zoo(name: &str, n: usize) -> Result<ZooEntry, EngineError> {
    let (spec, class, description, oracle): (SeriesSpec, u8, &'static str, Vec<Rational>) = match name {
        "geometric" => {
            let eq = MahlerEquation::new(2, vec![poly(&[1, -2]), poly(&[-1, 0, 2])]).unwrap();
            (spec(eq, &[1], name), 1, "1/(1-2z)", (0..=n).map(pow2).collect())
        }
        "prod_inv_cyclo" => {
            let eq = MahlerEquation::new(2, vec![poly(&[1, -1]), poly(&[-1])]).unwrap();
            (spec(eq, &[1], name), 2, "prod 1/(1-z^(2^i)), binary partitions", binary_partitions(n))
        }
        "thin_geometric" => {
            let half = Polynomial::constant(ratio(-1, 2));
            let eq = homogenize(2, &[Polynomial::one(), half], &poly(&[0, 1]), &Polynomial::one());
            let mut o = vec![Rational::zero(); n + 1];
            let mut e = 0;
            while (1usize << e) <= n {
                o[1 << e] = Rational::new(BigInt::one(), BigInt::one() << e);
                e += 1;
            }
            (spec(eq, &[0, 1], name), 3, "sum 2^(-n) z^(2^n)", o)
        }
        "digit_sum" => {
            let eq = homogenize(2, &[Polynomial::one(), poly(&[-1, -1])], &poly(&[0, 1]), &poly(&[1, 0, -1]));
            (spec(eq, &[0, 1], name), 4, "binary digit sums", (0..=n).map(|i| rat(i.count_ones() as i64)).collect())
        }
        "thue_morse" => {
            let eq = homogenize(2, &[Polynomial::one(), poly(&[-1, 1])], &poly(&[0, 1]), &poly(&[1, 0, -1]));
            (spec(eq, &[0, 1], name), 5, "Thue-Morse sequence", (0..=n).map(|i| rat(i.count_ones() as i64 % 2)).collect())
        }
        "neg_product" => {
            let eq = MahlerEquation::new(2, vec![poly(&[1, 1]), poly(&[-1])]).unwrap();
            let o = (0..=n).map(|i| rat(match i { 0 => 1, 1 => -1, _ => 0 })).collect();
            (spec(eq, &[1], name), 5, "prod 1/(1+z^(2^i)) = 1-z", o)
        }
        "stern" => {
            let eq = MahlerEquation::new(2, vec![poly(&[1]), poly(&[-1, -1, -1])]).unwrap();
            (spec(eq, &[1], name), 3, "Stern diatomic sequence shifted by one", stern_product(n))
        }
        "denominator_trap" => {
            let eq = MahlerEquation::new(3, vec![poly(&[1, -2]), -(&poly(&[1, -8]) * &poly(&[1, 0, 0, -2]))]).unwrap();
            (spec(eq, &[1], name), 3, "prod (1-8z^(3^i)) / (1-2z); the pole at 1/2 cancels", trap_series(n))
        }
        _ => return Err(EngineError::UnknownName(name.to_string())),
    };
    Ok(ZooEntry { name: name.to_string(), spec, expected_class: class, description, oracle })
}

/// Every catalog entry, in catalog order.
pub fn catalog(n: usize) -> Vec<ZooEntry> {
    ZOO_NAMES.iter().map(|name| zoo(name, n).unwrap()).collect()
}

/// `index,numerator,denominator` rows.
pub fn oracle_csv(values: &[Rational]) -> String {
    let mut s = String::from("index,numerator,denominator\n");
    for (i, v) in values.iter().enumerate() {
        s.push_str(&format!("{},{},{}\n", i, v.numer(), v.denom()));
    }
    let _ = format_rational;
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{expand, residual_order, Residual};

    #[test]
    fn oracle_examples() {
        assert_eq!(zoo("thue_morse", 7).unwrap().oracle, [0, 1, 1, 0, 1, 0, 0, 1].map(rat).to_vec());
        assert_eq!(zoo("stern", 8).unwrap().oracle, [1, 1, 2, 1, 3, 2, 3, 1, 4].map(rat).to_vec());
        assert_eq!(zoo("neg_product", 3).unwrap().oracle, [1, -1, 0, 0].map(rat).to_vec());
        assert_eq!(zoo("prod_inv_cyclo", 8).unwrap().oracle, [1, 1, 2, 2, 4, 4, 6, 6, 10].map(rat).to_vec());
        assert_eq!(zoo("digit_sum", 7).unwrap().oracle, [0, 1, 1, 2, 1, 2, 2, 3].map(rat).to_vec());
        assert!(matches!(zoo("nope", 3), Err(EngineError::UnknownName(_))));
    }

    #[test]
    fn homogenized_equations() {
        let t = zoo("thue_morse", 0).unwrap().spec.equation;
        assert_eq!(t.coeffs(), &[poly(&[0, 1]), poly(&[-1, -1]), poly(&[1, 0, 0, 0, -1])]);
        let s = zoo("digit_sum", 0).unwrap().spec.equation;
        assert_eq!(s.coeffs(), &[poly(&[0, 1]), poly(&[-1, -1, -2]), poly(&[1, 0, 2, 0, 1])]);
    }

    #[test]
    fn expansions_match_oracles() {
        for e in catalog(1024) {
            assert_eq!(expand(&e.spec, 1024).unwrap(), e.oracle, "{}", e.name);
            assert_eq!(residual_order(&e.spec, 1024).unwrap(), Residual::Pass, "{}", e.name);
        }
    }
}
