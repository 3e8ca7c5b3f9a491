//! Finiteness and tameness of the matrix semigroup generated by the digit matrices of a
//! linear representation. Tame means every element has all eigenvalues in 0 and the roots of
//! unity.

mod decompose;

pub use decompose::{algebra_basis, invariant_decomposition, Block, Decomposition};

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{cyclotomic_poly, unit_root_split, Matrix};
use crate::linrep::LinearRepresentation;

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;
pub const DEFAULT_DEPTH_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupTask {
    pub generators: Vec<Matrix>,
    pub closure_cap: usize,
    pub depth_cap: usize,
}

impl SemigroupTask {
    pub fn new(generators: Vec<Matrix>) -> Self {
        SemigroupTask { generators, closure_cap: DEFAULT_CLOSURE_CAP, depth_cap: DEFAULT_DEPTH_CAP }
    }

    pub fn from_linrep(rep: &LinearRepresentation) -> Self {
        Self::new(rep.mu.clone())
    }

    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, Matrix::rows)
    }

    pub fn with_caps(mut self, closure_cap: usize, depth_cap: usize) -> Self {
        self.closure_cap = closure_cap;
        self.depth_cap = depth_cap;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupVerdict {
    Finite { cardinality: usize },
    TameNotFinite,
    /// `witness` is a digit word whose product has an eigenvalue that is neither 0 nor a root
    /// of unity.
    NotTame { witness: Vec<usize> },
    Inconclusive { reason: String, depth: usize },
}

impl SemigroupVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            SemigroupVerdict::Finite { .. } => "finite",
            SemigroupVerdict::TameNotFinite => "tame_not_finite",
            SemigroupVerdict::NotTame { .. } => "not_tame",
            SemigroupVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SemigroupVerdict::Finite { cardinality } => json!({"kind": self.kind(), "cardinality": cardinality}),
            SemigroupVerdict::TameNotFinite => json!({"kind": self.kind()}),
            SemigroupVerdict::NotTame { witness } => json!({"kind": self.kind(), "witness": word_string(witness)}),
            SemigroupVerdict::Inconclusive { reason, depth } => {
                json!({"kind": self.kind(), "reason": reason, "depth": depth})
            }
        }
    }
}

fn word_string(w: &[usize]) -> String {
    w.iter().map(|d| std::char::from_digit(*d as u32, 36).unwrap_or('?')).collect()
}

/// Product of the generators along a word, left to right.
pub fn word_product(generators: &[Matrix], word: &[usize]) -> Matrix {
    let n = generators.first().map_or(0, Matrix::rows);
    word.iter().fold(Matrix::identity(n), |acc, &r| acc.mul(&generators[r]))
}

/// Every eigenvalue is 0 or a root of unity.
pub fn element_is_tame(m: &Matrix) -> bool {
    if m.rows() == 0 {
        return true;
    }
    unit_root_split(&m.char_poly()).map(|s| s.only_unit_roots()).unwrap_or(true)
}

/// Whether the powers of a tame matrix repeat: with `char = z^a prod Phi_n^e` and
/// `N = lcm(n)`, this holds iff `M^{a+N} = M^a`. Non-tame matrices always have infinite order
/// unless nilpotent.
pub fn has_finite_order(m: &Matrix) -> bool {
    if m.rows() == 0 {
        return true;
    }
    let Ok(split) = unit_root_split(&m.char_poly()) else { return true };
    if !split.only_unit_roots() {
        return false;
    }
    let period = split.cyclo.iter().fold(1u64, |l, &(n, _)| num_integer::lcm(l, n));
    let a = split.zpow as u64;
    let base = m.pow(a);
    base.mul(&m.pow(period)) == base
}

/// Result of closing a generator set under products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Elements with the shortest word producing each, in breadth-first order.
    Finite(Vec<(Matrix, Vec<usize>)>),
    Exceeded,
    /// A product with an eigenvalue off 0 and the roots of unity, found while closing.
    NotTame(Vec<usize>),
}

/// Breadth-first closure of `{mu(w) : w nonempty}` with exact hashing, stopping past `cap`
/// elements. Each new element is also tested for tameness.
pub fn bfs_closure(generators: &[Matrix], cap: usize) -> Closure {
    let mut seen: HashMap<Matrix, usize> = HashMap::new();
    let mut elems: Vec<(Matrix, Vec<usize>)> = Vec::new();
    let mut queue = VecDeque::new();
    for (r, g) in generators.iter().enumerate() {
        if !seen.contains_key(g) {
            if !element_is_tame(g) {
                return Closure::NotTame(vec![r]);
            }
            seen.insert(g.clone(), elems.len());
            elems.push((g.clone(), vec![r]));
            queue.push_back(elems.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for (r, g) in generators.iter().enumerate() {
            let p = elems[i].0.mul(g);
            if seen.contains_key(&p) {
                continue;
            }
            let mut w = elems[i].1.clone();
            w.push(r);
            if !element_is_tame(&p) {
                return Closure::NotTame(w);
            }
            if elems.len() >= cap {
                return Closure::Exceeded;
            }
            seen.insert(p.clone(), elems.len());
            elems.push((p, w));
            queue.push_back(elems.len() - 1);
        }
    }
    Closure::Finite(elems)
}

/// Looks for a word whose product satisfies `hit`: all words up to a small length, then seeded
/// random words up to `depth_cap`.
fn sample_words(generators: &[Matrix], depth_cap: usize, hit: impl Fn(&Matrix) -> bool) -> Option<Vec<usize>> {
    let k = generators.len();
    if k == 0 {
        return None;
    }
    let mut frontier: Vec<(Vec<usize>, Matrix)> = vec![(vec![], Matrix::identity(generators[0].rows()))];
    let mut len = 0;
    while len < depth_cap && frontier.len() * k <= 4096 {
        let mut next = Vec::with_capacity(frontier.len() * k);
        for (w, m) in &frontier {
            for (r, g) in generators.iter().enumerate() {
                let p = m.mul(g);
                let mut w2 = w.clone();
                w2.push(r);
                if hit(&p) {
                    return Some(w2);
                }
                next.push((w2, p));
            }
        }
        frontier = next;
        len += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        let l = rng.gen_range(1..=depth_cap.max(1));
        let w: Vec<usize> = (0..l).map(|_| rng.gen_range(0..k)).collect();
        if hit(&word_product(generators, &w)) {
            return Some(w);
        }
    }
    None
}

/// Some product of at most three generators has infinite order.
fn short_infinite_order(generators: &[Matrix]) -> bool {
    let mut layer: Vec<Matrix> = generators.to_vec();
    for _ in 0..3 {
        if layer.iter().any(|m| !has_finite_order(m)) {
            return true;
        }
        if layer.len() * generators.len() > 512 {
            break;
        }
        layer = layer.iter().flat_map(|m| generators.iter().map(move |g| m.mul(g))).collect();
    }
    false
}

/// Decides the semigroup type by tameness tests, closure, and block decomposition.
pub fn analyze_semigroup(task: &SemigroupTask) -> SemigroupVerdict {
    let gens = &task.generators;
    if task.dim() == 0 {
        let card = usize::from(!gens.is_empty());
        return SemigroupVerdict::Finite { cardinality: card };
    }
    for (r, g) in gens.iter().enumerate() {
        if !element_is_tame(g) {
            return SemigroupVerdict::NotTame { witness: vec![r] };
        }
    }
    let infinite = short_infinite_order(gens);
    if !infinite {
        match bfs_closure(gens, task.closure_cap) {
            Closure::Finite(elems) => return SemigroupVerdict::Finite { cardinality: elems.len() },
            Closure::NotTame(w) => return SemigroupVerdict::NotTame { witness: w },
            Closure::Exceeded => {}
        }
    }
    let blocks = match invariant_decomposition(gens) {
        Decomposition::Irreducible => vec![Block { start: 0, generators: gens.clone(), irreducible: true }],
        Decomposition::NoneFound => vec![Block { start: 0, generators: gens.clone(), irreducible: false }],
        Decomposition::Chain { blocks, .. } => blocks,
    };
    let mut unresolved = None;
    for b in &blocks {
        match bfs_closure(&b.generators, task.closure_cap) {
            Closure::Finite(_) => {}
            Closure::NotTame(w) => return SemigroupVerdict::NotTame { witness: w },
            Closure::Exceeded => {
                if let Some(w) = sample_words(&b.generators, task.depth_cap, |m| !element_is_tame(m)) {
                    return SemigroupVerdict::NotTame { witness: w };
                }
                unresolved = Some(if b.irreducible {
                    format!(
                        "irreducible block of size {} at offset {} exceeded {} elements and no non-tame product was found",
                        b.generators[0].rows(),
                        b.start,
                        task.closure_cap
                    )
                } else {
                    format!(
                        "block of size {} at offset {} has no rational invariant subspace and its closure exceeded {} elements",
                        b.generators[0].rows(),
                        b.start,
                        task.closure_cap
                    )
                });
            }
        }
    }
    if let Some(reason) = unresolved {
        return SemigroupVerdict::Inconclusive { reason, depth: task.depth_cap };
    }
    // Tame from here on; finiteness needs an element of infinite order as proof.
    if infinite || sample_words(gens, task.depth_cap, |m| !has_finite_order(m)).is_some() {
        SemigroupVerdict::TameNotFinite
    } else {
        SemigroupVerdict::Inconclusive {
            reason: format!(
                "tame, but the closure exceeded {} elements and no element of infinite order was found",
                task.closure_cap
            ),
            depth: task.depth_cap,
        }
    }
}

/// Re-checks a `NotTame` witness independently of the analyzer.
pub fn witness_replays(generators: &[Matrix], witness: &[usize]) -> bool {
    let p = word_product(generators, witness).char_poly();
    let mut rem = p.unshift(p.valuation().unwrap_or(0));
    for n in 1..=(2 * rem.deg() * rem.deg()).max(1) as u64 {
        while let Some(q) = rem.div_exact(&cyclotomic_poly(n)) {
            rem = q;
        }
    }
    !rem.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn tameness_examples() {
        assert!(element_is_tame(&m(&[&[1, 1], &[0, 1]])));
        assert!(element_is_tame(&m(&[&[0, -1], &[1, 0]])));
        assert!(!element_is_tame(&m(&[&[1, 1], &[1, 0]])));
        assert!(has_finite_order(&m(&[&[0, -1], &[1, 0]])));
        assert!(!has_finite_order(&m(&[&[1, 1], &[0, 1]])));
        assert!(has_finite_order(&m(&[&[0, 1], &[0, 0]])));
    }

    #[test]
    fn closure_examples() {
        let swap = m(&[&[0, 1], &[1, 0]]);
        match bfs_closure(&[Matrix::identity(2), swap.clone()], 100) {
            Closure::Finite(e) => assert_eq!(e.len(), 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(bfs_closure(&[m(&[&[1, 1], &[0, 1]])], 100), Closure::Exceeded);
    }

    #[test]
    fn verdict_examples() {
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            analyze_semigroup(&SemigroupTask::new(vec![Matrix::identity(2), swap])),
            SemigroupVerdict::Finite { cardinality: 2 }
        );
        let uni = vec![m(&[&[1, 0], &[0, 1]]), m(&[&[1, 1], &[0, 1]])];
        assert_eq!(analyze_semigroup(&SemigroupTask::new(uni)), SemigroupVerdict::TameNotFinite);
        let two = vec![m(&[&[1]]), m(&[&[2]])];
        match analyze_semigroup(&SemigroupTask::new(two.clone())) {
            SemigroupVerdict::NotTame { witness } => {
                assert_eq!(witness, vec![1]);
                assert!(witness_replays(&two, &witness));
            }
            other => panic!("{other:?}"),
        }
        // Products of tame unipotents need not be tame.
        let stern = vec![m(&[&[1, 0], &[1, 1]]), m(&[&[1, 1], &[0, 1]])];
        match analyze_semigroup(&SemigroupTask::new(stern.clone())) {
            SemigroupVerdict::NotTame { witness } => assert!(witness_replays(&stern, &witness)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verdict_json() {
        let v = SemigroupVerdict::NotTame { witness: vec![1, 0] };
        assert_eq!(v.to_json()["witness"], "10");
    }
}
