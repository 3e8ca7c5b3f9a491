//! Random inputs and property checks shared by the property and acceptance targets.
#![allow(dead_code)]

use mahler::algebra::cyclotomic::{cyclotomic_poly, unit_root_split};
use mahler::algebra::modulus::DEFAULT_PRECISION_BITS;
use mahler::algebra::rational::{height_rational, rat, ratio, valuation};
use mahler::algebra::{newton_polygon, root_modulus_intervals};
use mahler::linrep::{cauchy_convolution, digits, minimize_linrep, word_convolution};
use mahler::semigroup::{analyze_semigroup, SemigroupTask};
use mahler::{LinearRepresentation, Matrix, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

/// Runs `test` on `cases` deterministic samples of `strategy`.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn small_entry() -> impl Strategy<Value = Rational> + Clone {
    prop_oneof![Just(rat(-1)), Just(rat(0)), Just(ratio(1, 2)), Just(rat(1))]
}

pub fn int_entry() -> impl Strategy<Value = Rational> + Clone {
    (-1i64..=1).prop_map(rat)
}

pub fn matrix(dim: usize, entry: impl Strategy<Value = Rational> + Clone) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(proptest::collection::vec(entry, dim), dim).prop_map(Matrix::from_rows)
}

/// Base-2 representation of dimension `1..=max_dim` with entries in `{-1, 0, 1/2, 1}`.
pub fn rep(max_dim: usize) -> impl Strategy<Value = LinearRepresentation> {
    (1..=max_dim).prop_flat_map(|d| {
        (
            proptest::collection::vec(small_entry(), d),
            proptest::collection::vec(matrix(d, small_entry()), 2),
            proptest::collection::vec(small_entry(), d),
        )
            .prop_map(|(u, mu, v)| LinearRepresentation::new(2, u, mu, v).unwrap())
    })
}

fn value_of(word: &[usize], k: u64) -> u64 {
    word.iter().fold(0, |acc, &r| acc * k + r as u64)
}

/// `sum_{i+j=n} a_i b_j` computed directly.
pub fn cauchy_oracle(a: &[Rational], b: &[Rational], n: usize) -> Rational {
    (0..=n).map(|i| &a[i] * &b[n - i]).sum()
}

/// `sum_j a(prefix) b(suffix)` over the split points of the canonical digits of `n`.
pub fn word_oracle(r1: &LinearRepresentation, r2: &LinearRepresentation, n: u64) -> Rational {
    let w = digits(n, r1.k);
    (0..=w.len()).map(|j| r1.eval(value_of(&w[..j], r1.k)) * r2.eval(value_of(&w[j..], r1.k))).sum()
}

pub fn check_cauchy(r1: &LinearRepresentation, r2: &LinearRepresentation, n: usize) -> Result<(), TestCaseError> {
    let c = cauchy_convolution(r1, r2).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let (a, b, got) = (r1.eval_range(n as u64), r2.eval_range(n as u64), c.eval_range(n as u64));
    for t in 0..=n {
        prop_assert_eq!(&got[t], &cauchy_oracle(&a, &b, t), "cauchy at {}", t);
    }
    Ok(())
}

pub fn check_word(r1: &LinearRepresentation, r2: &LinearRepresentation, n: usize) -> Result<(), TestCaseError> {
    let c = word_convolution(r1, r2).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let got = c.eval_range(n as u64);
    for t in 0..=n {
        prop_assert_eq!(&got[t], &word_oracle(r1, r2, t as u64), "word at {}", t);
    }
    Ok(())
}

/// Rank of `H[i][j] = a(value(w_i w_j))` over the first `size` words in length-lexicographic
/// order, the empty word first.
pub fn hankel_rank(rep: &LinearRepresentation, size: usize) -> usize {
    let k = rep.k as usize;
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut i = 0;
    while words.len() < size {
        for r in 0..k {
            let mut w = words[i].clone();
            w.push(r);
            words.push(w);
        }
        i += 1;
    }
    words.truncate(size);
    let rows = words
        .iter()
        .map(|p| {
            words
                .iter()
                .map(|s| {
                    let mut w = p.clone();
                    w.extend_from_slice(s);
                    rep.eval(value_of(&w, rep.k))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

/// Minimization reaches the Hankel rank and keeps every value through `n`.
pub fn check_minimize(rep: &LinearRepresentation, n: u64) -> Result<(), TestCaseError> {
    let safe = rep.leading_zero_normalized();
    let m = minimize_linrep(&safe);
    prop_assert_eq!(m.dim(), hankel_rank(&safe, 64));
    prop_assert_eq!(m.eval_range(n), rep.eval_range(n));
    prop_assert_eq!(minimize_linrep(rep).eval_range(n), rep.eval_range(n));
    Ok(())
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

pub fn check_height_symmetry(x: Rational) -> Result<(), TestCaseError> {
    prop_assert_eq!(height_rational(&x), height_rational(&(Rational::one() / &x)));
    Ok(())
}

/// Up to four cyclotomic factors with multiplicity at most 3, times an integer cubic that
/// has no cyclotomic factor and does not vanish at 0.
pub fn cyclotomic_product() -> impl Strategy<Value = (Vec<(u64, u32)>, Polynomial)> {
    let cubic = proptest::collection::vec(-5i64..=5, 3)
        .prop_map(|c| Polynomial::from_i64(&[c[0], c[1], c[2], 1]))
        .prop_filter("no unit roots", |p| {
            !p.coeff(0).is_zero() && unit_root_split(p).map(|s| s.cyclo.is_empty()).unwrap_or(false)
        });
    (proptest::collection::vec((1u64..=30, 1u32..=3), 0..=4), cubic)
}

pub fn check_cyclotomic_reconstruction(factors: &[(u64, u32)], cubic: &Polynomial) -> Result<(), TestCaseError> {
    let mut p = cubic.scale(&rat(3));
    for &(n, e) in factors {
        p = &p * &cyclotomic_poly(n).pow(e);
    }
    let s = unit_root_split(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(s.reconstruct(), p);
    prop_assert_eq!(&s.remainder, cubic);
    Ok(())
}

pub fn integer_polynomial() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(-200i64..=200, 1..=7)
        .prop_map(|c| Polynomial::from_i64(&c))
        .prop_filter("nonconstant", |p| p.deg() >= 1)
}

pub fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(11), Just(13)]
}

/// Root valuations weighted by multiplicity add up to `v_p(constant) - v_p(leading)`.
pub fn check_newton(p: &Polynomial, prime: u64) -> Result<(), TestCaseError> {
    let np = newton_polygon(p, prime).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let total: Rational = np.root_valuations().iter().map(|(v, l)| v * rat(*l as i64)).sum();
    let z = p.valuation().unwrap();
    let (_, ints) = p.unshift(z).primitive_part();
    let want = valuation(&ints[0], prime) - valuation(ints.last().unwrap(), prime);
    prop_assert_eq!(total, rat(want));
    Ok(())
}

/// A factor with roots of known modulus: `z - r` (modulus `|r|`) or `z^2 + c` (modulus
/// `sqrt(|c|)`). The value is `(polynomial, squared modulus)`.
pub fn known_factor() -> impl Strategy<Value = (Polynomial, Rational)> {
    prop_oneof![
        (-9i64..=9, 1i64..=9)
            .prop_filter("nonzero", |(a, _)| *a != 0)
            .prop_map(|(a, b)| {
                let r = ratio(a, b);
                (Polynomial::new(vec![-r.clone(), rat(1)]), &r * &r)
            }),
        (-9i64..=9, 1i64..=9).prop_filter("nonzero", |(a, _)| *a != 0).prop_map(|(a, b)| {
            let c = ratio(a, b);
            let m = if c < rat(0) { -c.clone() } else { c.clone() };
            (Polynomial::new(vec![c, rat(0), rat(1)]), m)
        }),
    ]
}

pub fn check_modulus_soundness(factors: &[(Polynomial, Rational)]) -> Result<(), TestCaseError> {
    let p = factors.iter().fold(Polynomial::one(), |acc, (f, _)| &acc * f);
    let eps = ratio(1, 1 << 20);
    let ivs = root_modulus_intervals(&p, &eps, DEFAULT_PRECISION_BITS).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (_, sq) in factors {
        let hits = ivs.iter().filter(|iv| &(&iv.lo * &iv.lo) <= sq && sq <= &(&iv.hi * &iv.hi)).count();
        prop_assert_eq!(hits, 1, "squared modulus {} in {:?}", sq, ivs);
    }
    Ok(())
}

pub fn check_leading_zero(rep: &LinearRepresentation) -> Result<(), TestCaseError> {
    let u0 = rep.mu[0].left_apply(&rep.u);
    prop_assert_eq!(mahler::algebra::matrix::dot(&u0, &rep.v), mahler::algebra::matrix::dot(&rep.u, &rep.v));
    Ok(())
}

/// A random unimodular integer matrix as a product of elementary operations.
pub fn unimodular(dim: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec((0..dim, 0..dim, prop_oneof![Just(-1i64), Just(1)]), 0..=6).prop_map(move |ops| {
        let mut t = Matrix::identity(dim);
        for (i, j, c) in ops {
            if i != j {
                let mut e = Matrix::identity(dim);
                e.set(i, j, rat(c));
                t = t.mul(&e);
            }
        }
        t
    })
}

pub fn semigroup_task() -> impl Strategy<Value = (Vec<Matrix>, Matrix)> {
    (1usize..=3).prop_flat_map(|d| (proptest::collection::vec(matrix(d, int_entry()), 1..=2), unimodular(d)))
}

pub fn check_conjugation(gens: &[Matrix], t: &Matrix) -> Result<(), TestCaseError> {
    let tinv = t.inverse().unwrap();
    let conj: Vec<Matrix> = gens.iter().map(|g| tinv.mul(g).mul(t)).collect();
    let a = analyze_semigroup(&SemigroupTask::new(gens.to_vec()).with_caps(5000, 24));
    let b = analyze_semigroup(&SemigroupTask::new(conj).with_caps(5000, 24));
    prop_assert_eq!(a.kind(), b.kind());
    Ok(())
}
