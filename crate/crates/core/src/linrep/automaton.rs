use std::collections::HashMap;
use std::fmt::Write;

use serde_json::{json, Value};

use super::{digits, LinearRepresentation};
use crate::algebra::matrix::dot;
use crate::algebra::rational::format_rational;
use crate::algebra::Rational;
use crate::error::LinrepError;

/// Deterministic automaton with output, read most significant digit first from state 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub k: u64,
    pub states: Vec<Vec<Rational>>,
    /// `transitions[s][r]` is the successor of state `s` on digit `r`.
    pub transitions: Vec<Vec<usize>>,
    pub outputs: Vec<Rational>,
}

impl Automaton {
    pub fn eval(&self, n: u64) -> Rational {
        let s = digits(n, self.k).into_iter().fold(0, |s, r| self.transitions[s][r]);
        self.outputs[s].clone()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n");
        for (i, o) in self.outputs.iter().enumerate() {
            let _ = writeln!(s, "  q{i} [label=\"q{i} / {}\"];", format_rational(o));
        }
        for (i, tr) in self.transitions.iter().enumerate() {
            for (r, t) in tr.iter().enumerate() {
                let _ = writeln!(s, "  q{i} -> q{t} [label=\"{r}\"];");
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "start": 0,
            "transitions": self.transitions,
            "outputs": self.outputs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

/// Breadth-first closure of the forward orbit `{u mu(w)}`; fails past `cap` states.
pub fn to_automaton(rep: &LinearRepresentation, cap: usize) -> Result<Automaton, LinrepError> {
    let k = rep.k as usize;
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut states = vec![rep.u.clone()];
    index.insert(rep.u.clone(), 0);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(k);
        for r in 0..k {
            let y = rep.mu[r].left_apply(&states[i]);
            let next = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if states.len() >= cap {
                        return Err(LinrepError::OrbitNotFinite { cap });
                    }
                    index.insert(y.clone(), states.len());
                    states.push(y);
                    states.len() - 1
                }
            };
            row.push(next);
        }
        transitions.push(row);
        i += 1;
    }
    let outputs = states.iter().map(|s| dot(s, &rep.v)).collect();
    Ok(Automaton { k: rep.k, states, transitions, outputs })
}
