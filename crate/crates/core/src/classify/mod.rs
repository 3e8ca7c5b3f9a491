//! Growth classes of `h(a_n)` decided two ways: from the equation, and from the heights of
//! the expanded coefficients.

mod empirical;
mod structural;

pub use empirical::{classify_empirical, EmpiricalFit, DEFAULT_TAU, MIN_TERMS};
pub use structural::{
    classify_structural, compile_minimal, iteration_count, prepare, sub_unit_magnitudes, CyclotomicCheck,
    RegularPipeline, RootMagnitude, StructuralConfig, StructuralEvidence, StructuralResult,
};

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::engine::{expand, height_sequence};
use crate::equation::SeriesSpec;
use crate::semigroup::SemigroupVerdict;

/// Growth regime of the heights. Ordered by growth: `C1Linear` is the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GrowthClass {
    C5Bounded,
    C4LogLog,
    C3Log,
    C2LogSquared,
    C1Linear,
}

impl GrowthClass {
    /// Indexed by class number minus one.
    pub const ALL: [GrowthClass; 5] =
        [GrowthClass::C1Linear, GrowthClass::C2LogSquared, GrowthClass::C3Log, GrowthClass::C4LogLog, GrowthClass::C5Bounded];

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn index(self) -> usize {
        4 - self as usize
    }

    pub fn from_number(n: u8) -> Option<Self> {
        (1..=5).contains(&n).then(|| Self::ALL[n as usize - 1])
    }

    pub fn label(self) -> &'static str {
        match self {
            GrowthClass::C1Linear => "C1_linear",
            GrowthClass::C2LogSquared => "C2_log2",
            GrowthClass::C3Log => "C3_log",
            GrowthClass::C4LogLog => "C4_loglog",
            GrowthClass::C5Bounded => "C5_bounded",
        }
    }
}

impl Serialize for GrowthClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confidence {
    Certified,
    VerifiedToOrder(usize),
    Heuristic,
}

impl Confidence {
    pub fn to_json(self) -> Value {
        match self {
            Confidence::Certified => json!("Certified"),
            Confidence::VerifiedToOrder(n) => json!({ "VerifiedToOrder": n }),
            Confidence::Heuristic => json!("Heuristic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyConfig {
    pub structural: StructuralConfig,
    pub tau: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { structural: StructuralConfig::default(), tau: DEFAULT_TAU }
    }
}

/// Both routes and their reconciliation. Sub-route failures are kept as messages.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub name: Option<String>,
    pub k: u64,
    pub structural: Result<StructuralResult, String>,
    pub empirical: Result<EmpiricalFit, String>,
    pub terms: usize,
}

impl ClassificationReport {
    pub fn structural_class(&self) -> Option<GrowthClass> {
        self.structural.as_ref().ok().and_then(|s| s.class)
    }

    pub fn empirical_class(&self) -> Option<GrowthClass> {
        self.empirical.as_ref().ok().map(|e| e.class)
    }

    /// The structural class, or the empirical one when the structural route left the
    /// decision open.
    pub fn class(&self) -> Option<GrowthClass> {
        self.structural_class().or_else(|| self.empirical_class())
    }

    pub fn agreement(&self) -> bool {
        matches!((self.structural_class(), self.empirical_class()), (Some(a), Some(b)) if a == b)
    }

    pub fn semigroup(&self) -> Option<&SemigroupVerdict> {
        self.structural.as_ref().ok().and_then(|s| s.evidence.semigroup.as_ref())
    }

    pub fn confidence(&self) -> Confidence {
        let Ok(s) = &self.structural else { return Confidence::Heuristic };
        let Some(class) = s.class else { return Confidence::Heuristic };
        if let Some(n) = s.evidence.verified_to() {
            return Confidence::VerifiedToOrder(n);
        }
        if class == GrowthClass::C1Linear {
            if let Some(n) = s.evidence.minimality_verified_to {
                return Confidence::VerifiedToOrder(n);
            }
        }
        Confidence::Certified
    }

    pub fn to_json(&self) -> Value {
        let structural = match &self.structural {
            Ok(s) => json!({
                "class": s.class,
                "label": s.class.map(GrowthClass::label),
                "evidence": s.evidence.to_json(),
            }),
            Err(e) => json!({ "class": null, "error": e }),
        };
        let empirical = match &self.empirical {
            Ok(f) => {
                let mut v = serde_json::to_value(f).unwrap();
                v["label"] = json!(f.class.label());
                v["terms"] = json!(self.terms);
                v
            }
            Err(e) => json!({ "class": null, "error": e }),
        };
        json!({
            "name": self.name,
            "k": self.k,
            "class": self.class(),
            "structural": structural,
            "empirical": empirical,
            "agreement": self.agreement(),
            "confidence": self.confidence().to_json(),
        })
    }
}

/// Runs both routes on the first `n` coefficients.
pub fn classify(spec: &SeriesSpec, n: usize, config: &ClassifyConfig) -> ClassificationReport {
    let (structural, empirical) = std::thread::scope(|s| {
        let st = s.spawn(|| classify_structural(spec, &config.structural).map_err(|e| e.to_string()));
        let em = expand(spec, n.saturating_sub(1))
            .map_err(|e| e.to_string())
            .and_then(|a| classify_empirical(&height_sequence(&a), spec.k(), config.tau).map_err(|e| e.to_string()));
        (st.join().unwrap_or_else(|_| Err("structural route panicked".into())), em)
    });
    ClassificationReport { name: spec.name.clone(), k: spec.k(), structural, empirical, terms: n }
}
