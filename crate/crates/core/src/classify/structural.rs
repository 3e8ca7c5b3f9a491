use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::GrowthClass;
use crate::algebra::cyclotomic::multiplicative_order;
use crate::algebra::modulus::DEFAULT_PRECISION_BITS;
use crate::algebra::rational::{log_abs, prime_divisors, to_f64};
use crate::algebra::{
    cyclotomic_poly, newton_polygon, root_modulus_intervals, unit_root_split, CyclotomicSplit, Polynomial, Rational,
};
use crate::engine::expand;
use crate::equation::{
    find_relation, iterate_equation, rebase_relation, shift_spec, MahlerEquation, RelationSearch, SeriesSpec,
    ShiftedSpec, SteppedEquation,
};
use crate::equation::truncation_order;
use crate::error::{AlgebraError, ClassifyError};
use crate::linrep::{minimize_linrep, regular_compile, CompileTrace, LinearRepresentation};
use crate::semigroup::{analyze_semigroup, SemigroupTask, SemigroupVerdict, DEFAULT_CLOSURE_CAP, DEFAULT_DEPTH_CAP};

/// Knobs for the structural route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralConfig {
    pub closure_cap: usize,
    pub depth_cap: usize,
    pub precision_bits: u32,
    /// Largest order tried when looking for a shorter equation.
    pub reduction_search: RelationSearch,
}

impl Default for StructuralConfig {
    fn default() -> Self {
        StructuralConfig {
            closure_cap: DEFAULT_CLOSURE_CAP,
            depth_cap: DEFAULT_DEPTH_CAP,
            precision_bits: DEFAULT_PRECISION_BITS,
            reduction_search: RelationSearch { min_order: 1, max_order: 1, degrees: vec![1, 2, 4, 8], require_unit_constant: false },
        }
    }
}

/// One absolute value of a root of `p_0 p_d` below 1.
#[derive(Clone, Debug, Serialize)]
pub struct RootMagnitude {
    /// `"inf"` or the prime.
    pub place: String,
    pub log_lo: f64,
    pub log_hi: f64,
    pub roots: usize,
}

/// Outcome of testing one cyclotomic factor `Phi_n` of `q_0` with `gcd(n, k) = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct CyclotomicCheck {
    pub n: u64,
    pub order: u64,
    /// Leading coefficient of the coprime relation in radix `k^order`.
    pub r0: String,
    pub divides: bool,
}

/// Everything the structural route looked at.
#[derive(Clone, Debug, Default)]
pub struct StructuralEvidence {
    pub reduced_equation: Option<MahlerEquation>,
    pub reduction_verified_to: Option<usize>,
    /// Largest order at which no shorter equation was found.
    pub minimality_verified_to: Option<usize>,
    pub shift: Option<ShiftedSpec>,
    pub magnitudes: Vec<RootMagnitude>,
    pub steps: usize,
    pub iterated: Option<SteppedEquation>,
    pub split: Option<CyclotomicSplit>,
    pub checks: Vec<CyclotomicCheck>,
    pub compile: Option<CompileTrace>,
    pub minimal_dim: Option<usize>,
    pub semigroup: Option<SemigroupVerdict>,
}

impl StructuralEvidence {
    pub fn to_json(&self) -> Value {
        json!({
            "reduced_equation": self.reduced_equation.as_ref().map(MahlerEquation::to_json),
            "reduction_verified_to": self.reduction_verified_to,
            "minimality_verified_to": self.minimality_verified_to,
            "shift": self.shift.as_ref().map(ShiftedSpec::to_json),
            "root_magnitudes": serde_json::to_value(&self.magnitudes).unwrap(),
            "steps": self.steps,
            "iterated": self.iterated.as_ref().map(SteppedEquation::to_json),
            "q0_split": self.split.as_ref().map(|s| serde_json::to_value(s).unwrap()),
            "cyclotomic_checks": serde_json::to_value(&self.checks).unwrap(),
            "relation_rule": "any coprime relation in radix k^order",
            "compile": self.compile.as_ref().map(CompileTrace::to_json),
            "minimal_dim": self.minimal_dim,
            "semigroup": self.semigroup.as_ref().map(SemigroupVerdict::to_json),
        })
    }

    /// Some step relied on matching finitely many coefficients.
    pub fn verified_to(&self) -> Option<usize> {
        let shift = self.shift.as_ref().and_then(|s| s.verification_order);
        [self.reduction_verified_to, shift].into_iter().flatten().max()
    }
}

/// Result of the structural route. `class` is `None` when the semigroup verdict was
/// inconclusive and the 3/4/5 split is left to the empirical route.
#[derive(Clone, Debug)]
pub struct StructuralResult {
    pub class: Option<GrowthClass>,
    pub evidence: StructuralEvidence,
}

fn log_rational(x: &Rational) -> f64 {
    log_abs(x.numer()) - log_abs(x.denom())
}

/// Absolute values below 1 of the nonzero roots of `p`, over the reals and at the primes
/// dividing its extreme coefficients.
pub fn sub_unit_magnitudes(p: &Polynomial, precision_bits: u32) -> Result<Vec<RootMagnitude>, AlgebraError> {
    let mut out = Vec::new();
    let mut bits = 16u32;
    let intervals = loop {
        let eps = Rational::new(BigInt::one(), BigInt::one() << bits);
        let iv = root_modulus_intervals(p, &eps, precision_bits)?;
        let one = Rational::one();
        if iv.iter().all(|i| i.exact_one || !i.contains(&one)) {
            break iv;
        }
        bits *= 2;
        if bits > precision_bits {
            return Err(AlgebraError::EscalationCapExceeded { bits: precision_bits });
        }
    };
    for iv in intervals.iter().filter(|i| !i.exact_one && i.hi < Rational::one()) {
        out.push(RootMagnitude {
            place: "inf".into(),
            log_lo: log_rational(&iv.lo),
            log_hi: log_rational(&iv.hi),
            roots: iv.roots,
        });
    }
    let v = p.valuation().ok_or(AlgebraError::ZeroPolynomial)?;
    let (_, ints) = p.unshift(v).primitive_part();
    let ends = ints[0].clone() * ints.last().unwrap();
    for prime in prime_divisors(&ends) {
        let Some(prime) = prime.to_u64() else { continue };
        for (val, l) in newton_polygon(p, prime)?.root_valuations() {
            if val > Rational::zero() {
                let lg = -to_f64(&val) * (prime as f64).ln();
                out.push(RootMagnitude { place: prime.to_string(), log_lo: lg, log_hi: lg, roots: l });
            }
        }
    }
    Ok(out)
}

/// Least `n >= 1` with `|lambda|^{k^n} < rho` for every listed magnitude, `rho` the smallest.
pub fn iteration_count(mags: &[RootMagnitude], k: u64) -> usize {
    if mags.is_empty() {
        return 1;
    }
    let log_rho = mags.iter().map(|m| m.log_lo).fold(0.0, f64::min);
    let log_top = mags.iter().map(|m| m.log_hi).fold(f64::NEG_INFINITY, f64::max);
    let mut n = 1usize;
    let mut kn = k as f64;
    while kn * log_top >= log_rho - 1e-9 {
        n += 1;
        kn *= k as f64;
    }
    n
}

/// Shift, root bounds, iteration count, minimal compiled representation and its semigroup
/// verdict. Used by both classification and the `compile` command so they agree.
pub struct RegularPipeline {
    pub shifted: ShiftedSpec,
    pub magnitudes: Vec<RootMagnitude>,
    pub steps: usize,
}

pub fn prepare(spec: &SeriesSpec, precision_bits: u32) -> Result<RegularPipeline, ClassifyError> {
    let shifted = shift_spec(spec)?;
    let eq = &shifted.spec.equation;
    let p = eq.coeff(0) * eq.coeff(eq.order());
    let magnitudes = sub_unit_magnitudes(&p, precision_bits)?;
    let steps = iteration_count(&magnitudes, spec.k());
    Ok(RegularPipeline { shifted, magnitudes, steps })
}

/// Compiles and minimizes with the iteration count the classifier would use.
pub fn compile_minimal(spec: &SeriesSpec, precision_bits: u32) -> Result<(LinearRepresentation, CompileTrace), ClassifyError> {
    let pipe = prepare(spec, precision_bits)?;
    let (rep, trace) = regular_compile(spec, pipe.steps)?;
    Ok((minimize_linrep(&rep), trace))
}

/// Looks for an equation of smaller order satisfied by the same coefficients.
fn reduce_order(spec: &SeriesSpec, search: &RelationSearch) -> Result<(SeriesSpec, Option<usize>, usize), ClassifyError> {
    let d = spec.equation.order();
    let k = spec.k();
    let max_order = search.max_order.min(d - 1);
    let need = search
        .degrees
        .iter()
        .map(|&g| truncation_order(k, max_order, g))
        .max()
        .unwrap_or(0)
        .min(1 << 14);
    let a = expand(spec, need)?;
    let s = RelationSearch { max_order, ..search.clone() };
    if let Some((eq, n)) = find_relation(&a, k, &s) {
        let seeds = a[..=eq.m().max(spec.seeds.len() - 1)].to_vec();
        let mut reduced = SeriesSpec::new(eq, seeds, spec.name.clone())?;
        reduced.seed_count_certified = false;
        return Ok((reduced, Some(n), n));
    }
    Ok((spec.clone(), None, a.len()))
}

/// Decides the growth class from the equation alone.
pub fn classify_structural(spec: &SeriesSpec, config: &StructuralConfig) -> Result<StructuralResult, ClassifyError> {
    let mut ev = StructuralEvidence::default();
    let k = spec.k();
    let mut spec = spec.clone();
    if spec.equation.order() >= 2 {
        let (reduced, found, checked) = reduce_order(&spec, &config.reduction_search)?;
        if found.is_some() {
            ev.reduced_equation = Some(reduced.equation.clone());
            ev.reduction_verified_to = found;
            spec = reduced;
        } else {
            ev.minimality_verified_to = Some(checked);
        }
    }
    let pipe = prepare(&spec, config.precision_bits)?;
    ev.magnitudes = pipe.magnitudes;
    ev.steps = pipe.steps;
    let iterated = iterate_equation(&pipe.shifted.spec.equation, pipe.steps);
    let split = unit_root_split(&iterated.coeffs[0])?;
    let eq = pipe.shifted.spec.equation.clone();
    ev.shift = Some(pipe.shifted);
    ev.iterated = Some(iterated);
    ev.split = Some(split.clone());
    if !split.only_unit_roots() {
        return Ok(StructuralResult { class: Some(GrowthClass::C1Linear), evidence: ev });
    }
    let mut not_regular = false;
    for &(n, _) in split.cyclo.iter().filter(|(n, _)| n.gcd(&k) == 1) {
        let order = multiplicative_order(k, n);
        let rel = rebase_relation(&eq, order as usize);
        let r0 = rel.coeff(0);
        let divides = r0.div_exact(&cyclotomic_poly(n)).is_some();
        not_regular |= divides;
        ev.checks.push(CyclotomicCheck { n, order, r0: r0.to_text(), divides });
    }
    if not_regular {
        return Ok(StructuralResult { class: Some(GrowthClass::C2LogSquared), evidence: ev });
    }
    let (rep, trace) = regular_compile(&spec, ev.steps)?;
    let rep = minimize_linrep(&rep);
    ev.compile = Some(trace);
    ev.minimal_dim = Some(rep.dim());
    let task = SemigroupTask::from_linrep(&rep).with_caps(config.closure_cap, config.depth_cap);
    let verdict = analyze_semigroup(&task);
    let class = match verdict {
        SemigroupVerdict::Finite { .. } => Some(GrowthClass::C5Bounded),
        SemigroupVerdict::TameNotFinite => Some(GrowthClass::C4LogLog),
        SemigroupVerdict::NotTame { .. } => Some(GrowthClass::C3Log),
        SemigroupVerdict::Inconclusive { .. } => None,
    };
    ev.semigroup = Some(verdict);
    Ok(StructuralResult { class, evidence: ev })
}
