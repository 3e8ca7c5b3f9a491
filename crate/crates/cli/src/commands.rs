use std::fmt::Debug;
use std::fs;
use std::thread;

use mahler::algebra::rational::format_rational;
use mahler::classify::{compile_minimal, StructuralConfig};
use mahler::engine::{catalog, expand, height_sequence, residual_order, zoo, Residual, ZooEntry};
use mahler::{
    analyze_semigroup, classify, ClassificationReport, ClassifyConfig, Confidence, LinearRepresentation, SemigroupTask,
    SemigroupVerdict, SeriesSpec,
};
use serde_json::{json, Value};

use crate::{Command, Format, RunConfig};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_DISAGREE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

/// An input problem, reported as JSON on stderr.
struct Failure {
    kind: String,
    message: String,
}

fn fail<E: Debug + std::fmt::Display>(e: E) -> Failure {
    let dbg = format!("{e:?}");
    let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
    Failure { kind, message: e.to_string() }
}

fn usage(message: &str) -> Failure {
    Failure { kind: "UsageError".into(), message: message.into() }
}

pub fn run(config: &RunConfig) -> u8 {
    match dispatch(config) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            EXIT_INPUT
        }
    }
}

fn dispatch(c: &RunConfig) -> Result<(String, u8), Failure> {
    match c.command {
        Command::Validate => validate(c),
        Command::Coeffs => coeffs(c),
        Command::Heights => heights(c),
        Command::Classify => classify_cmd(c),
        Command::Compile => compile(c),
        Command::Semigroup => semigroup(c),
        Command::Zoo => zoo_table(c),
    }
}

fn load_spec(c: &RunConfig) -> Result<SeriesSpec, Failure> {
    match (&c.input, &c.zoo) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Failure { kind: "IoError".into(), message: e.to_string() })?;
            mahler::parse_spec(&text).map_err(fail)
        }
        (None, Some(name)) => Ok(zoo(name, 0).map_err(fail)?.spec),
        (None, None) => Err(usage("one of --input or --zoo is required")),
    }
}

fn json_out(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

fn classify_config(c: &RunConfig) -> ClassifyConfig {
    ClassifyConfig {
        structural: StructuralConfig {
            closure_cap: c.closure_cap as usize,
            depth_cap: c.depth_cap as usize,
            precision_bits: c.precision_bits,
            ..StructuralConfig::default()
        },
        tau: c.tau,
    }
}

fn validate(c: &RunConfig) -> Result<(String, u8), Failure> {
    let spec = load_spec(c)?;
    let n = c.n as usize;
    let residual = match residual_order(&spec, n).map_err(fail)? {
        Residual::Pass => json!("pass"),
        Residual::FailsAt(t) => json!({ "fails_at": t }),
    };
    let ok = residual == json!("pass");
    let out = json_out(&json!({ "valid": ok, "order": n, "residual": residual, "spec": spec.to_json() }));
    Ok((out, if ok { 0 } else { EXIT_INPUT }))
}

fn coeffs(c: &RunConfig) -> Result<(String, u8), Failure> {
    let spec = load_spec(c)?;
    let a = expand(&spec, c.n as usize - 1).map_err(fail)?;
    let out = match c.format {
        Format::Csv => {
            let mut s = String::from("n,a_n\n");
            for (i, x) in a.iter().enumerate() {
                s.push_str(&format!("{i},{}\n", format_rational(x)));
            }
            s
        }
        Format::Json => json_out(&json!(a.iter().map(format_rational).collect::<Vec<_>>())),
    };
    Ok((out, 0))
}

fn heights(c: &RunConfig) -> Result<(String, u8), Failure> {
    let spec = load_spec(c)?;
    let h = height_sequence(&expand(&spec, c.n as usize - 1).map_err(fail)?);
    let out = match c.format {
        Format::Csv => {
            let mut s = String::from("n,h\n");
            for (i, x) in h.iter().enumerate() {
                s.push_str(&format!("{i},{x}\n"));
            }
            s
        }
        Format::Json => json_out(&json!(h)),
    };
    Ok((out, 0))
}

fn confidence_text(c: Confidence) -> String {
    match c {
        Confidence::Certified => "Certified".into(),
        Confidence::VerifiedToOrder(n) => format!("VerifiedToOrder({n})"),
        Confidence::Heuristic => "Heuristic".into(),
    }
}

fn exit_for(c: &RunConfig, reports: &[&ClassificationReport]) -> u8 {
    if !c.strict {
        return 0;
    }
    if reports.iter().any(|r| matches!(r.semigroup(), Some(SemigroupVerdict::Inconclusive { .. }))) {
        return EXIT_INCONCLUSIVE;
    }
    if reports.iter().any(|r| !r.agreement()) {
        return EXIT_DISAGREE;
    }
    0
}

fn class_text(c: Option<mahler::GrowthClass>) -> String {
    c.map_or_else(|| "-".into(), |c| c.number().to_string())
}

fn classify_cmd(c: &RunConfig) -> Result<(String, u8), Failure> {
    let spec = load_spec(c)?;
    let report = classify(&spec, c.n as usize, &classify_config(c));
    let out = match c.format {
        Format::Json => json_out(&report.to_json()),
        Format::Csv => format!(
            "name,k,class,structural,empirical,agreement,confidence\n{},{},{},{},{},{},{}\n",
            report.name.as_deref().unwrap_or(""),
            report.k,
            class_text(report.class()),
            class_text(report.structural_class()),
            class_text(report.empirical_class()),
            report.agreement(),
            confidence_text(report.confidence())
        ),
    };
    Ok((out, exit_for(c, &[&report])))
}

fn compile(c: &RunConfig) -> Result<(String, u8), Failure> {
    let spec = load_spec(c)?;
    let (rep, _) = compile_minimal(&spec, c.precision_bits).map_err(fail)?;
    Ok((json_out(&rep.to_json()), 0))
}

fn semigroup(c: &RunConfig) -> Result<(String, u8), Failure> {
    let path = c.input.as_ref().ok_or_else(|| usage("semigroup needs --input with a representation file"))?;
    let text = fs::read_to_string(path).map_err(|e| Failure { kind: "IoError".into(), message: e.to_string() })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure { kind: "SchemaError".into(), message: e.to_string() })?;
    let rep = LinearRepresentation::from_json(&v).map_err(fail)?;
    let task = SemigroupTask::from_linrep(&rep).with_caps(c.closure_cap as usize, c.depth_cap as usize);
    let verdict = analyze_semigroup(&task);
    let code = if c.strict && matches!(verdict, SemigroupVerdict::Inconclusive { .. }) { EXIT_INCONCLUSIVE } else { 0 };
    Ok((json_out(&verdict.to_json()), code))
}

fn zoo_table(c: &RunConfig) -> Result<(String, u8), Failure> {
    let entries: Vec<ZooEntry> = match &c.zoo {
        Some(name) => vec![zoo(name, 0).map_err(fail)?],
        None => catalog(0),
    };
    let cfg = classify_config(c);
    let n = c.n as usize;
    let reports: Vec<ClassificationReport> = thread::scope(|s| {
        let handles: Vec<_> = entries.iter().map(|e| s.spawn(|| classify(&e.spec, n, &cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("classification thread")).collect()
    });
    let rows: Vec<Value> = entries
        .iter()
        .zip(&reports)
        .map(|(e, r)| {
            json!({
                "name": e.name,
                "k": r.k,
                "expected": e.expected_class,
                "structural": r.structural_class().map(|x| x.number()),
                "empirical": r.empirical_class().map(|x| x.number()),
                "agreement": r.agreement(),
                "confidence": confidence_text(r.confidence()),
                "matches_expected": r.class().map(|x| x.number()) == Some(e.expected_class),
            })
        })
        .collect();
    let out = match c.format {
        Format::Json => json_out(&json!({ "n": n, "entries": rows })),
        Format::Csv => {
            let mut s = String::from("name,k,expected,structural,empirical,agreement,confidence,matches_expected\n");
            for (e, r) in entries.iter().zip(&reports) {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    e.name,
                    r.k,
                    e.expected_class,
                    class_text(r.structural_class()),
                    class_text(r.empirical_class()),
                    r.agreement(),
                    confidence_text(r.confidence()),
                    r.class().map(|x| x.number()) == Some(e.expected_class)
                ));
            }
            s
        }
    };
    let refs: Vec<&ClassificationReport> = reports.iter().collect();
    Ok((out, exit_for(c, &refs)))
}
