use num_traits::Zero;
use serde_json::{json, Value};

use super::{parse_linear_equation, parse_polynomial, radix_powers, MahlerEquation};
use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{Polynomial, Rational};
use crate::error::EquationError;

/// A Mahler equation together with enough initial coefficients to pin down one solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub equation: MahlerEquation,
    pub seeds: Vec<Rational>,
    pub seed_count_certified: bool,
    pub name: Option<String>,
}

impl SeriesSpec {
    /// Validates the seeds against the equation: at least `m + 1` of them, and every
    /// coefficient of the residual that they alone determine must vanish.
    pub fn new(
        equation: MahlerEquation,
        seeds: Vec<Rational>,
        name: Option<String>,
    ) -> Result<Self, EquationError> {
        let m = equation.m();
        if seeds.len() < m + 1 {
            return Err(EquationError::UnderdeterminedSeeds { required: m + 1, given: seeds.len() });
        }
        let top = seeds.len() - 1 + m;
        for t in 0..=top {
            if !residual_coefficient(&equation, &seeds, t).is_zero() {
                let index = if t >= m { t - m } else { t };
                return Err(EquationError::InconsistentSeeds { index });
            }
        }
        Ok(SeriesSpec { equation, seeds, seed_count_certified: true, name })
    }

    pub fn k(&self) -> u64 {
        self.equation.k()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.equation.to_json();
        v["seeds"] = json!(self.seeds.iter().map(format_rational).collect::<Vec<_>>());
        if let Some(n) = &self.name {
            v["name"] = json!(n);
        }
        v
    }
}

/// Coefficient of `z^t` in `sum_i p_i(z) f(z^{k^i})`, where `a` holds the coefficients of `f`.
/// Indices of `a` beyond its length are treated as unknown; callers keep `t` in range.
pub fn residual_coefficient(eq: &MahlerEquation, a: &[Rational], t: usize) -> Rational {
    let pows = radix_powers(eq.k(), eq.coeffs().len());
    let mut acc = Rational::zero();
    for (p, &kp) in eq.coeffs().iter().zip(&pows) {
        for (j, c) in p.coeffs().iter().enumerate().take(t + 1) {
            if c.is_zero() {
                continue;
            }
            let r = t - j;
            if r.is_multiple_of(kp) {
                if let Some(x) = a.get(r / kp) {
                    acc += c * x;
                }
            }
        }
    }
    acc
}

fn schema(msg: impl Into<String>) -> EquationError {
    EquationError::SchemaError(msg.into())
}

/// Parses a JSON spec document.
pub fn parse_spec(document: &str) -> Result<SeriesSpec, EquationError> {
    let v: Value = serde_json::from_str(document).map_err(|e| schema(format!("invalid JSON: {e}")))?;
    parse_spec_value(&v)
}

pub fn parse_spec_value(v: &Value) -> Result<SeriesSpec, EquationError> {
    let obj = v.as_object().ok_or_else(|| schema("document must be an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "k" | "equation" | "seeds" | "name") {
            return Err(schema(format!("unknown field {key:?}")));
        }
    }
    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .filter(|&k| k >= 2)
        .ok_or_else(|| schema("\"k\" must be an integer at least 2"))?;
    let coeffs = match obj.get("equation") {
        Some(Value::Array(items)) => {
            if items.is_empty() {
                return Err(schema("empty equation list"));
            }
            items
                .iter()
                .map(|it| match it {
                    Value::String(s) => parse_polynomial(s),
                    Value::Number(n) => parse_polynomial(&n.to_string()),
                    _ => Err(schema("equation entries must be polynomial strings")),
                })
                .collect::<Result<Vec<Polynomial>, _>>()?
        }
        Some(Value::String(s)) => parse_linear_equation(s)?,
        _ => return Err(schema("\"equation\" must be a list of polynomials or an expression")),
    };
    let seeds = match obj.get("seeds") {
        Some(Value::Array(items)) => items
            .iter()
            .map(|it| match it {
                Value::String(s) => Ok(parse_rational(s)?),
                Value::Number(n) if n.is_i64() || n.is_u64() => Ok(parse_rational(&n.to_string())?),
                _ => Err(schema("seeds must be rational strings")),
            })
            .collect::<Result<Vec<Rational>, EquationError>>()?,
        _ => return Err(schema("\"seeds\" must be a list")),
    };
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        _ => return Err(schema("\"name\" must be a string")),
    };
    let equation = MahlerEquation::new(k, coeffs)?;
    SeriesSpec::new(equation, seeds, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_spec_parses() {
        let s = parse_spec(r#"{"k":2,"equation":"(1-2*z)*f0 - (1-2*z^2)*f1","seeds":["1"]}"#).unwrap();
        assert_eq!(s.equation.order(), 1);
        assert_eq!(s.seeds.len(), 1);
        let l = parse_spec(r#"{"k":2,"equation":["1-2*z","-(1-2*z^2)"],"seeds":["1"]}"#).unwrap();
        assert_eq!(l.equation, s.equation);
    }

    #[test]
    fn inconsistent_seed_is_located() {
        let e = parse_spec(r#"{"k":2,"equation":"(1-2*z)*f0 - (1-2*z^2)*f1","seeds":["1","3"]}"#);
        assert_eq!(e, Err(EquationError::InconsistentSeeds { index: 1 }));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(
            parse_spec(r#"{"k":2,"equation":[],"seeds":["1"]}"#),
            Err(EquationError::SchemaError(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"k":1,"equation":["1","-1"],"seeds":["1"]}"#),
            Err(EquationError::SchemaError(_))
        ));
        assert!(matches!(
            parse_spec(r#"{"k":2,"equation":["z","-1"],"seeds":["0"]}"#),
            Err(EquationError::UnderdeterminedSeeds { required: 2, given: 1 })
        ));
    }
}
