use serde::Serialize;

use super::GrowthClass;
use crate::error::ClassifyError;

pub const MIN_TERMS: usize = 1 << 12;
pub const DEFAULT_TAU: f64 = 0.35;
const TAIL: usize = 6;
const SLOPE_TAIL: usize = 4;

/// Numbers behind an empirical verdict.
#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalFit {
    pub class: GrowthClass,
    /// `(j, M_j)` for every complete dyadic window kept after burn-in.
    pub windows: Vec<(usize, f64)>,
    /// Relative spread of the last window ratios, indexed C1..C5.
    pub spreads: [f64; 5],
    /// Last window ratios, indexed C1..C5.
    pub ratios: [Vec<f64>; 5],
    /// `(M_{j+1} - M_j) / 2^{j+1}` over the last windows, the growth of `h` per unit of `n`.
    pub slopes: Vec<f64>,
    /// Runner-up spread minus winning spread.
    pub margin: f64,
    pub tau: f64,
}

fn normalizer(class: GrowthClass, j: usize) -> f64 {
    let j = j as f64;
    match class {
        GrowthClass::C1Linear => j.exp2(),
        GrowthClass::C2LogSquared => j * j,
        GrowthClass::C3Log => j,
        GrowthClass::C4LogLog => (j + 1.0).ln(),
        GrowthClass::C5Bounded => 1.0,
    }
}

fn spread(xs: &[f64]) -> f64 {
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo <= 0.0 {
        f64::INFINITY
    } else {
        (hi - lo) / lo
    }
}

/// Fits the windowed maxima of `h(a_n)` against the five growth regimes.
///
/// Each regime's ratio sequence `M_j / g(j)` is scored by its relative spread over the last
/// windows; the regime with the smallest spread below `tau` wins, ties going to the faster
/// regime. Windows whose maxima are all zero count as bounded.
pub fn classify_empirical(heights: &[f64], _k: u64, tau: f64) -> Result<EmpiricalFit, ClassifyError> {
    if heights.len() < MIN_TERMS {
        return Err(ClassifyError::TooFewTerms { given: heights.len(), required: MIN_TERMS });
    }
    let mut all = Vec::new();
    let mut j = 0usize;
    while (2usize << j) <= heights.len() {
        let w = &heights[1 << j..2 << j];
        all.push((j, w.iter().copied().fold(0.0, f64::max)));
        j += 1;
    }
    let windows: Vec<(usize, f64)> = all[all.len() / 4..].to_vec();
    let tail = &windows[windows.len().saturating_sub(TAIL)..];
    let ratios: [Vec<f64>; 5] = GrowthClass::ALL.map(|c| tail.iter().map(|&(j, m)| m / normalizer(c, j)).collect());
    let mut spreads = [0.0; 5];
    for (i, r) in ratios.iter().enumerate() {
        spreads[i] = spread(r);
    }
    let bounded_zero = tail.iter().all(|&(_, m)| m < 1e-12);
    if bounded_zero {
        spreads[4] = 0.0;
    }
    let mut best = 4usize;
    for i in 0..5 {
        if spreads[i] < spreads[best] || (spreads[i] == spreads[best] && i < best) {
            best = i;
        }
    }
    let class = if spreads[best] < tau || bounded_zero { GrowthClass::ALL[best] } else { fallback(&spreads) };
    let idx = class.index();
    let runner = (0..5).filter(|&i| i != idx).map(|i| spreads[i]).fold(f64::INFINITY, f64::min);
    let slopes = windows[windows.len().saturating_sub(SLOPE_TAIL + 1)..]
        .windows(2)
        .map(|p| (p[1].1 - p[0].1) / (p[1].0 as f64).exp2())
        .collect();
    Ok(EmpiricalFit { class, windows, spreads, ratios, slopes, margin: runner - spreads[idx], tau })
}

/// No regime converged: take the best finite spread anyway.
fn fallback(spreads: &[f64; 5]) -> GrowthClass {
    let i = (0..5).min_by(|&a, &b| spreads[a].total_cmp(&spreads[b])).unwrap_or(0);
    GrowthClass::ALL[i]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit(f: impl Fn(usize) -> f64, n: usize) -> GrowthClass {
        let h: Vec<f64> = (0..n).map(f).collect();
        classify_empirical(&h, 2, DEFAULT_TAU).unwrap().class
    }

    #[test]
    fn synthetic_regimes() {
        let n = 1 << 14;
        assert_eq!(fit(|i| i as f64 * 2f64.ln(), n), GrowthClass::C1Linear);
        assert_eq!(fit(|i| ((i + 1) as f64).ln().powi(2) / (2.0 * 2f64.ln()), n), GrowthClass::C2LogSquared);
        assert_eq!(fit(|i| ((i + 1) as f64).log2().floor() * 2f64.ln(), n), GrowthClass::C3Log);
        assert_eq!(fit(|i| (i.count_ones() as f64).ln(), n), GrowthClass::C4LogLog);
        assert_eq!(fit(|i| (i % 3) as f64, n), GrowthClass::C5Bounded);
        assert_eq!(fit(|_| 0.0, n), GrowthClass::C5Bounded);
    }

    #[test]
    fn geometric_slope() {
        let h: Vec<f64> = (0..1 << 14).map(|i| i as f64 * 2f64.ln()).collect();
        let f = classify_empirical(&h, 2, DEFAULT_TAU).unwrap();
        assert_eq!(f.slopes.len(), 4);
        for s in f.slopes {
            assert!((s - 2f64.ln()).abs() < 0.1 * 2f64.ln());
        }
    }

    #[test]
    fn too_few_terms() {
        assert!(matches!(
            classify_empirical(&[0.0; 100], 2, DEFAULT_TAU),
            Err(ClassifyError::TooFewTerms { given: 100, .. })
        ));
    }
}
