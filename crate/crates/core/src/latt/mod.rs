//! Finite categories given by composition tables, quasi-lattice and lattice
//! validation, chains and null sequences.

mod json;
mod unpointed;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use json::{CategorySpec, ComposeSpec, MorphismSpec, ZERO};
pub use unpointed::{unpointed_version, UnpointedVersion};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub zero: bool,
}

/// One violated axiom, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    DuplicateObject {
        object: String,
    },
    DuplicateMorphism {
        id: String,
    },
    ReservedId,
    UnknownObject {
        name: String,
        context: String,
    },
    UnknownMorphism {
        id: String,
        context: String,
    },
    /// A morphism `u -> u`, or a cycle of morphisms whose composite would be one.
    SelfMap {
        witness: Vec<String>,
    },
    NotComposable {
        first: String,
        then: String,
    },
    WrongEndpoints {
        first: String,
        then: String,
        equals: String,
    },
    ZeroInUnpointed {
        first: String,
        then: String,
    },
    ConflictingEntry {
        first: String,
        then: String,
        equals: Vec<String>,
    },
    MissingEntry {
        first: String,
        then: String,
    },
    /// `(h·g)·f != h·(g·f)` where `f` is applied first.
    Associativity {
        first: String,
        second: String,
        third: String,
        left: String,
        right: String,
    },
    MissingEndpoint {
        which: String,
    },
    NonUniqueMax {
        from: String,
        to: String,
        morphisms: Vec<String>,
    },
    Unreachable {
        object: String,
        from: String,
    },
    NoMapTo {
        object: String,
        to: String,
    },
    MaxNotZero {
        morphism: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} axiom violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {v:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LattError {
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("the category is not pointed")]
    NotPointed,
    #[error("the category is pointed")]
    Pointed,
    #[error("lattice length {0} is too short")]
    TooShort(usize),
}

/// A finite category without identities written out. When pointed, every
/// pair `u ≺ v` carries a zero morphism, appended after the declared ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    table: HashMap<(usize, usize), usize>,
    pointed: bool,
    zeros: BTreeMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    reach: Vec<Vec<bool>>,
}

/// Composable chain in written order: `morphisms[0]` is applied last and
/// `morphisms[k]` first, so the chain runs from `src(morphisms[k])` to
/// `dst(morphisms[0])`. `adjacent[i]` is `morphisms[i] · morphisms[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismChain {
    pub morphisms: Vec<usize>,
    pub composite: usize,
    pub adjacent: Vec<usize>,
}

impl MorphismChain {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn source(&self, c: &FiniteCategory) -> usize {
        c.morphism(*self.morphisms.last().unwrap()).src
    }

    pub fn target(&self, c: &FiniteCategory) -> usize {
        c.morphism(self.morphisms[0]).dst
    }

    pub fn ids(&self, c: &FiniteCategory) -> Vec<String> {
        self.morphisms.iter().map(|&m| c.morphism(m).id.clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthConstraint {
    Any,
    Exact(usize),
    /// Only chains of the greatest length among those admitted.
    Maximal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainQuery {
    pub length: LengthConstraint,
    pub nonzero: bool,
}

impl ChainQuery {
    pub fn nonzero(length: LengthConstraint) -> Self {
        ChainQuery { length, nonzero: true }
    }
}

impl FiniteCategory {
    /// Checks every axiom and reports all violations found.
    #[allow(clippy::needless_range_loop)]
    pub fn from_spec(spec: &CategorySpec) -> Result<FiniteCategory, ValidationReport> {
        let mut v = Vec::new();
        let mut obj_index = HashMap::new();
        for (i, o) in spec.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                v.push(Violation::DuplicateObject { object: o.clone() });
            }
        }
        let mut morphisms = Vec::new();
        let mut mor_index = HashMap::new();
        for m in &spec.morphisms {
            if m.id == ZERO {
                v.push(Violation::ReservedId);
                continue;
            }
            if mor_index.contains_key(&m.id) {
                v.push(Violation::DuplicateMorphism { id: m.id.clone() });
                continue;
            }
            let src = obj_index.get(&m.src).copied();
            let dst = obj_index.get(&m.dst).copied();
            for (name, found) in [(&m.src, src), (&m.dst, dst)] {
                if found.is_none() {
                    v.push(Violation::UnknownObject { name: name.clone(), context: format!("morphism {}", m.id) });
                }
            }
            let (Some(src), Some(dst)) = (src, dst) else { continue };
            if src == dst {
                v.push(Violation::SelfMap { witness: vec![m.id.clone()] });
            }
            mor_index.insert(m.id.clone(), morphisms.len());
            morphisms.push(Morphism { id: m.id.clone(), src, dst, zero: false });
        }
        if !v.is_empty() {
            return Err(ValidationReport { violations: v });
        }

        let n = spec.objects.len();
        let mut outgoing = vec![Vec::new(); n];
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(i);
        }
        let reach = reachability(n, &morphisms);
        for u in 0..n {
            if reach[u][u] {
                v.push(Violation::SelfMap { witness: cycle_witness(u, &morphisms, &outgoing) });
                break;
            }
        }
        if !v.is_empty() {
            return Err(ValidationReport { violations: v });
        }

        let declared = morphisms.len();
        let mut zeros = BTreeMap::new();
        if spec.pointed {
            for u in 0..n {
                for w in 0..n {
                    if reach[u][w] {
                        zeros.insert((u, w), morphisms.len());
                        morphisms.push(Morphism { id: ZERO.to_owned(), src: u, dst: w, zero: true });
                    }
                }
            }
        }

        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for e in &spec.compose {
            let first = mor_index.get(&e.first).copied();
            let then = mor_index.get(&e.then).copied();
            for (id, found) in [(&e.first, first), (&e.then, then)] {
                if found.is_none() {
                    v.push(Violation::UnknownMorphism { id: id.clone(), context: format!("compose {} then {}", e.first, e.then) });
                }
            }
            let (Some(f), Some(g)) = (first, then) else { continue };
            if morphisms[f].dst != morphisms[g].src {
                v.push(Violation::NotComposable { first: e.first.clone(), then: e.then.clone() });
                continue;
            }
            let (s, t) = (morphisms[f].src, morphisms[g].dst);
            let h = if e.equals == ZERO {
                if !spec.pointed {
                    v.push(Violation::ZeroInUnpointed { first: e.first.clone(), then: e.then.clone() });
                    continue;
                }
                zeros[&(s, t)]
            } else {
                match mor_index.get(&e.equals) {
                    Some(&h) => h,
                    None => {
                        v.push(Violation::UnknownMorphism {
                            id: e.equals.clone(),
                            context: format!("compose {} then {}", e.first, e.then),
                        });
                        continue;
                    }
                }
            };
            if morphisms[h].src != s || morphisms[h].dst != t {
                v.push(Violation::WrongEndpoints { first: e.first.clone(), then: e.then.clone(), equals: e.equals.clone() });
                continue;
            }
            if let Some(&old) = table.get(&(f, g)) {
                if old != h {
                    v.push(Violation::ConflictingEntry {
                        first: e.first.clone(),
                        then: e.then.clone(),
                        equals: vec![morphisms[old].id.clone(), e.equals.clone()],
                    });
                }
                continue;
            }
            table.insert((f, g), h);
        }
        for f in 0..declared {
            for &g in &outgoing[morphisms[f].dst] {
                if !table.contains_key(&(f, g)) {
                    v.push(Violation::MissingEntry { first: morphisms[f].id.clone(), then: morphisms[g].id.clone() });
                }
            }
        }
        if !v.is_empty() {
            return Err(ValidationReport { violations: v });
        }

        let mut all_out = outgoing.clone();
        for (&(u, _), &z) in &zeros {
            all_out[u].push(z);
        }
        for (f, mf) in morphisms.iter().enumerate() {
            for &g in &all_out[mf.dst] {
                if mf.zero || morphisms[g].zero {
                    table.insert((f, g), zeros[&(mf.src, morphisms[g].dst)]);
                }
            }
        }

        let cat =
            FiniteCategory { objects: spec.objects.clone(), morphisms, table, pointed: spec.pointed, zeros, outgoing: all_out, reach };
        for f in 0..declared {
            for &g in &cat.outgoing[cat.morphisms[f].dst] {
                for &h in &cat.outgoing[cat.morphisms[g].dst] {
                    if g >= declared || h >= declared {
                        continue;
                    }
                    let left = cat.table[&(cat.table[&(f, g)], h)];
                    let right = cat.table[&(f, cat.table[&(g, h)])];
                    if left != right {
                        v.push(Violation::Associativity {
                            first: cat.morphisms[f].id.clone(),
                            second: cat.morphisms[g].id.clone(),
                            third: cat.morphisms[h].id.clone(),
                            left: cat.morphisms[left].id.clone(),
                            right: cat.morphisms[right].id.clone(),
                        });
                    }
                }
            }
        }
        if !v.is_empty() {
            return Err(ValidationReport { violations: v });
        }
        Ok(cat)
    }

    /// Free category on a linear graph `v_k -> ... -> v_0` with generators
    /// `phi_i: v_i -> v_{i-1}`; composites are named by their generators in
    /// written order, e.g. `phi1.phi2`. When `zero_adjacent` is set the
    /// category is pointed and every composite is zero.
    pub fn linear(k: usize, zero_adjacent: bool) -> FiniteCategory {
        let objects: Vec<String> = (0..=k).rev().map(|i| format!("v{i}")).collect();
        let name = |hi: usize, lo: usize| (lo + 1..=hi).map(|i| format!("phi{i}")).collect::<Vec<_>>().join(".");
        let mut morphisms = Vec::new();
        for hi in 1..=k {
            for lo in (0..hi).rev() {
                if !zero_adjacent || hi == lo + 1 {
                    morphisms.push(MorphismSpec { id: name(hi, lo), src: format!("v{hi}"), dst: format!("v{lo}") });
                }
            }
        }
        let mut compose = Vec::new();
        for a in 2..=k {
            for b in 1..a {
                for c in 0..b {
                    if zero_adjacent {
                        if a == b + 1 && b == c + 1 {
                            compose.push(ComposeSpec { first: name(a, b), then: name(b, c), equals: ZERO.into() });
                        }
                    } else {
                        compose.push(ComposeSpec { first: name(a, b), then: name(b, c), equals: name(a, c) });
                    }
                }
            }
        }
        let spec =
            CategorySpec { objects, morphisms, compose, pointed: zero_adjacent, v_init: Some(format!("v{k}")), v_fin: Some("v0".into()) };
        FiniteCategory::from_spec(&spec).expect("linear categories are valid")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Result<usize, LattError> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| LattError::UnknownObject(name.to_owned()))
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    /// A declared (nonzero) morphism by id.
    pub fn morphism_by_id(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| !m.zero && m.id == id)
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn is_zero(&self, m: usize) -> bool {
        self.morphisms[m].zero
    }

    pub fn zero(&self, u: usize, v: usize) -> Option<usize> {
        self.zeros.get(&(u, v)).copied()
    }

    /// `then ∘ first`, when composable.
    pub fn compose(&self, first: usize, then: usize) -> Option<usize> {
        self.table.get(&(first, then)).copied()
    }

    /// Composite of a nonempty chain in written order.
    pub fn compose_chain(&self, written: &[usize]) -> Option<usize> {
        let mut it = written.iter().rev();
        let mut acc = *it.next()?;
        for &m in it {
            acc = self.compose(acc, m)?;
        }
        Some(acc)
    }

    pub fn outgoing(&self, u: usize) -> &[usize] {
        &self.outgoing[u]
    }

    /// `u ≺ v`: some declared morphism path runs from `u` to `v`.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.reach[u][v]
    }

    /// All morphisms `u -> v`, the zero morphism last when pointed.
    pub fn homset(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m].src == u && self.morphisms[m].dst == v).collect()
    }

    pub fn chain(&self, written: Vec<usize>) -> MorphismChain {
        let composite = self.compose_chain(&written).expect("chain is composable");
        let adjacent = written.windows(2).map(|w| self.compose(w[1], w[0]).expect("chain is composable")).collect();
        MorphismChain { morphisms: written, composite, adjacent }
    }

    /// All composable sequences `u -> v` meeting the query, in lexicographic
    /// order of written-order morphism indices.
    pub fn chains(&self, u: usize, v: usize, q: ChainQuery) -> Vec<MorphismChain> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.sequences(u, v, q.nonzero, &mut stack, &mut out);
        let mut seqs: Vec<Vec<usize>> = out
            .into_iter()
            .map(|mut s| {
                s.reverse();
                s
            })
            .collect();
        match q.length {
            LengthConstraint::Any => {}
            LengthConstraint::Exact(k) => seqs.retain(|s| s.len() == k),
            LengthConstraint::Maximal => {
                let m = seqs.iter().map(Vec::len).max().unwrap_or(0);
                seqs.retain(|s| s.len() == m);
            }
        }
        seqs.sort();
        seqs.into_iter().map(|s| self.chain(s)).collect()
    }

    fn sequences(&self, at: usize, v: usize, nonzero: bool, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for &m in &self.outgoing[at] {
            if nonzero && self.morphisms[m].zero {
                continue;
            }
            stack.push(m);
            let dst = self.morphisms[m].dst;
            if dst == v {
                out.push(stack.clone());
            }
            if self.reach[dst][v] {
                self.sequences(dst, v, nonzero, stack, out);
            }
            stack.pop();
        }
    }

    /// Longest path of declared morphisms `u -> v`, by dynamic programming
    /// over the object order; `None` when `v` is not reachable.
    pub fn longest_path(&self, u: usize, v: usize) -> Option<usize> {
        fn rec(c: &FiniteCategory, x: usize, v: usize, memo: &mut Vec<Option<Option<usize>>>) -> Option<usize> {
            if let Some(r) = memo[x] {
                return r;
            }
            let mut best = None;
            for &m in &c.outgoing[x] {
                if c.morphisms[m].zero {
                    continue;
                }
                let d = c.morphisms[m].dst;
                let tail = if d == v { Some(0) } else { rec(c, d, v, memo) };
                if let Some(t) = tail {
                    best = best.max(Some(t + 1));
                }
            }
            memo[x] = Some(best);
            best
        }
        let mut memo = vec![None; self.objects.len()];
        rec(self, u, v, &mut memo)
    }

    pub fn to_spec(&self) -> CategorySpec {
        let declared: Vec<&Morphism> = self.morphisms.iter().filter(|m| !m.zero).collect();
        let mut compose = Vec::new();
        let mut entries: Vec<(&(usize, usize), &usize)> = self.table.iter().collect();
        entries.sort();
        for (&(f, g), &h) in entries {
            if !self.morphisms[f].zero && !self.morphisms[g].zero {
                compose.push(ComposeSpec {
                    first: self.morphisms[f].id.clone(),
                    then: self.morphisms[g].id.clone(),
                    equals: self.morphisms[h].id.clone(),
                });
            }
        }
        CategorySpec {
            objects: self.objects.clone(),
            morphisms: declared
                .iter()
                .map(|m| MorphismSpec { id: m.id.clone(), src: self.objects[m.src].clone(), dst: self.objects[m.dst].clone() })
                .collect(),
            compose,
            pointed: self.pointed,
            v_init: None,
            v_fin: None,
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn reachability(n: usize, morphisms: &[Morphism]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for m in morphisms {
        r[m.src][m.dst] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

fn cycle_witness(u: usize, morphisms: &[Morphism], outgoing: &[Vec<usize>]) -> Vec<String> {
    let n = outgoing.len();
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut queue = std::collections::VecDeque::from([u]);
    let mut seen = vec![false; n];
    while let Some(x) = queue.pop_front() {
        for &m in &outgoing[x] {
            let d = morphisms[m].dst;
            if d == u {
                let mut path = vec![m];
                let mut y = x;
                while y != u {
                    let pm = prev[y].unwrap();
                    path.push(pm);
                    y = morphisms[pm].src;
                }
                path.reverse();
                return path.into_iter().map(|m| morphisms[m].id.clone()).collect();
            }
            if !seen[d] {
                seen[d] = true;
                prev[d] = Some(m);
                queue.push_back(d);
            }
        }
    }
    Vec::new()
}

/// A validated lattice: weakly initial and final objects and a unique
/// maximal map between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub category: FiniteCategory,
    pub v_init: usize,
    pub v_fin: usize,
    pub phi_max: usize,
    /// Number of arrows in a longest chain `v_init -> v_fin`.
    pub length: usize,
}

impl Lattice {
    pub fn from_spec(spec: &CategorySpec) -> Result<Lattice, ValidationReport> {
        let cat = FiniteCategory::from_spec(spec)?;
        let mut v = Vec::new();
        let find = |which: &str, name: &Option<String>, v: &mut Vec<Violation>| match name {
            None => {
                v.push(Violation::MissingEndpoint { which: which.into() });
                None
            }
            Some(s) => match cat.object_index(s) {
                Ok(i) => Some(i),
                Err(_) => {
                    v.push(Violation::UnknownObject { name: s.clone(), context: which.into() });
                    None
                }
            },
        };
        let vi = find("v_init", &spec.v_init, &mut v);
        let vf = find("v_fin", &spec.v_fin, &mut v);
        match (vi, vf) {
            (Some(vi), Some(vf)) => Lattice::new(cat, vi, vf),
            _ => Err(ValidationReport { violations: v }),
        }
    }

    pub fn new(category: FiniteCategory, v_init: usize, v_fin: usize) -> Result<Lattice, ValidationReport> {
        let c = &category;
        let mut v = Vec::new();
        let maxes = c.homset(v_init, v_fin);
        if maxes.len() != 1 {
            v.push(Violation::NonUniqueMax {
                from: c.objects[v_init].clone(),
                to: c.objects[v_fin].clone(),
                morphisms: maxes.iter().map(|&m| c.morphisms[m].id.clone()).collect(),
            });
        }
        for u in 0..c.num_objects() {
            if u != v_init && !c.precedes(v_init, u) {
                v.push(Violation::Unreachable { object: c.objects[u].clone(), from: c.objects[v_init].clone() });
            }
            if u != v_fin && !c.precedes(u, v_fin) {
                v.push(Violation::NoMapTo { object: c.objects[u].clone(), to: c.objects[v_fin].clone() });
            }
        }
        if let [m] = maxes[..] {
            if c.pointed && !c.is_zero(m) {
                v.push(Violation::MaxNotZero { morphism: c.morphisms[m].id.clone() });
            }
        }
        if !v.is_empty() {
            return Err(ValidationReport { violations: v });
        }
        let length = c.chains(v_init, v_fin, ChainQuery::nonzero(LengthConstraint::Any)).iter().map(MorphismChain::len).max().unwrap_or(0);
        Ok(Lattice { phi_max: maxes[0], category, v_init, v_fin, length })
    }

    /// Length of the lattice recomputed by dynamic programming.
    pub fn length_by_paths(&self) -> usize {
        let c = &self.category;
        c.morphisms
            .iter()
            .filter(|m| !m.zero && m.dst == self.v_fin)
            .filter_map(|m| if m.src == self.v_init { Some(1) } else { c.longest_path(self.v_init, m.src).map(|l| l + 1) })
            .max()
            .unwrap_or(0)
    }

    /// Null sequences of maximal length: chains `v_init -> v_fin` with zero
    /// composite and no zero constituent; reduced ones also have every
    /// adjacent composite zero.
    pub fn null_sequences(&self, reduced: bool) -> Result<Vec<MorphismChain>, LattError> {
        let c = &self.category;
        if !c.pointed {
            return Err(LattError::NotPointed);
        }
        Ok(c.chains(self.v_init, self.v_fin, ChainQuery::nonzero(LengthConstraint::Exact(self.length)))
            .into_iter()
            .filter(|ch| c.is_zero(ch.composite))
            .filter(|ch| !reduced || ch.adjacent.iter().all(|&a| c.is_zero(a)))
            .collect())
    }

    /// `J_Γ`, the reduced null sequences of maximal length.
    pub fn j_gamma(&self) -> Result<Vec<MorphismChain>, LattError> {
        self.null_sequences(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> CategorySpec {
        serde_json::from_str(json).unwrap()
    }

    pub(crate) fn toda3() -> CategorySpec {
        spec(
            r#"{"objects":["v3","v2","v1","v0"],
                "morphisms":[{"id":"phi1","src":"v1","dst":"v0"},{"id":"phi2","src":"v2","dst":"v1"},{"id":"phi3","src":"v3","dst":"v2"}],
                "compose":[{"first":"phi2","then":"phi1","equals":"zero"},{"first":"phi3","then":"phi2","equals":"zero"}],
                "pointed":true,"v_init":"v3","v_fin":"v0"}"#,
        )
    }

    fn square() -> CategorySpec {
        spec(
            r#"{"objects":["a","b1","b2","c"],
                "morphisms":[{"id":"f1","src":"a","dst":"b1"},{"id":"f2","src":"a","dst":"b2"},
                             {"id":"g1","src":"b1","dst":"c"},{"id":"g2","src":"b2","dst":"c"},{"id":"m","src":"a","dst":"c"}],
                "compose":[{"first":"f1","then":"g1","equals":"m"},{"first":"f2","then":"g2","equals":"m"}],
                "v_init":"a","v_fin":"c"}"#,
        )
    }

    #[test]
    fn toda_lattice() {
        let l = Lattice::from_spec(&toda3()).unwrap();
        assert_eq!(l.length, 3);
        assert_eq!(l.length_by_paths(), 3);
        let c = &l.category;
        let h = c.homset(l.v_init, l.v_fin);
        assert_eq!(h.len(), 1);
        assert!(c.is_zero(h[0]));
        assert!(c.homset(l.v_fin, l.v_init).is_empty());
        let j = l.j_gamma().unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].ids(c), vec!["phi1", "phi2", "phi3"]);
    }

    #[test]
    fn commuting_square_lattice() {
        let l = Lattice::from_spec(&square()).unwrap();
        assert_eq!(l.length, 2);
        let c = &l.category;
        assert_eq!(c.homset(l.v_init, l.v_fin), vec![c.morphism_by_id("m").unwrap()]);
        let ch = c.chains(l.v_init, l.v_fin, ChainQuery::nonzero(LengthConstraint::Exact(2)));
        assert_eq!(ch.len(), 2);
        assert!(ch.iter().all(|x| x.composite == l.phi_max));
    }

    #[test]
    fn chain_lengths() {
        let l = Lattice::from_spec(&toda3()).unwrap();
        let c = &l.category;
        let q = |k| ChainQuery::nonzero(LengthConstraint::Exact(k));
        assert_eq!(c.chains(l.v_init, l.v_fin, q(3)).len(), 1);
        assert!(c.chains(l.v_init, l.v_fin, q(4)).is_empty());
        assert_eq!(c.chains(l.v_init, l.v_fin, ChainQuery::nonzero(LengthConstraint::Maximal)).len(), 1);
    }

    #[test]
    fn self_map_rejected() {
        let s = spec(r#"{"objects":["u"],"morphisms":[{"id":"f","src":"u","dst":"u"}]}"#);
        let r = FiniteCategory::from_spec(&s).unwrap_err();
        assert!(matches!(r.violations[0], Violation::SelfMap { .. }));
        let s = spec(r#"{"objects":["u","v"],"morphisms":[{"id":"f","src":"u","dst":"v"},{"id":"g","src":"v","dst":"u"}]}"#);
        let r = FiniteCategory::from_spec(&s).unwrap_err();
        assert_eq!(r.violations, vec![Violation::SelfMap { witness: vec!["f".into(), "g".into()] }]);
    }

    #[test]
    fn associativity_failure_reported() {
        // a -> b -> c -> d with two parallel long maps; both bracketings disagree
        let s = spec(
            r#"{"objects":["a","b","c","d"],
                "morphisms":[{"id":"f","src":"a","dst":"b"},{"id":"g","src":"b","dst":"c"},{"id":"h","src":"c","dst":"d"},
                             {"id":"gf","src":"a","dst":"c"},{"id":"hg","src":"b","dst":"d"},{"id":"x","src":"a","dst":"d"},{"id":"y","src":"a","dst":"d"}],
                "compose":[{"first":"f","then":"g","equals":"gf"},{"first":"g","then":"h","equals":"hg"},
                           {"first":"gf","then":"h","equals":"x"},{"first":"f","then":"hg","equals":"y"}]}"#,
        );
        let r = FiniteCategory::from_spec(&s).unwrap_err();
        assert_eq!(r.violations.len(), 1);
        assert!(
            matches!(&r.violations[0], Violation::Associativity { first, left, right, .. } if first == "f" && left == "x" && right == "y")
        );
    }

    #[test]
    fn missing_entry_and_reserved() {
        let s = spec(r#"{"objects":["a","b","c"],"morphisms":[{"id":"f","src":"a","dst":"b"},{"id":"g","src":"b","dst":"c"}]}"#);
        let r = FiniteCategory::from_spec(&s).unwrap_err();
        assert_eq!(r.violations, vec![Violation::MissingEntry { first: "f".into(), then: "g".into() }]);
        let s = spec(r#"{"objects":["a","b"],"morphisms":[{"id":"zero","src":"a","dst":"b"}]}"#);
        assert_eq!(FiniteCategory::from_spec(&s).unwrap_err().violations, vec![Violation::ReservedId]);
    }

    #[test]
    fn lattice_axioms() {
        let mut s = square();
        s.compose[1].equals = "m".into();
        s.morphisms.push(MorphismSpec { id: "m2".into(), src: "a".into(), dst: "c".into() });
        let r = Lattice::from_spec(&s).unwrap_err();
        assert!(matches!(&r.violations[0], Violation::NonUniqueMax { morphisms, .. } if morphisms.len() == 2));
        let mut s = square();
        s.objects.push("lonely".into());
        let r = Lattice::from_spec(&s).unwrap_err();
        assert_eq!(r.violations.len(), 2);
    }

    #[test]
    fn toda_variants() {
        let mut s = toda3();
        s.morphisms.push(MorphismSpec { id: "psi".into(), src: "v2".into(), dst: "v0".into() });
        s.compose[0].equals = "psi".into();
        s.compose.push(ComposeSpec { first: "phi3".into(), then: "psi".into(), equals: "zero".into() });
        let l = Lattice::from_spec(&s).unwrap();
        assert!(l.null_sequences(true).unwrap().is_empty());
        assert_eq!(l.null_sequences(false).unwrap().len(), 1);
    }

    #[test]
    fn linear_categories() {
        for k in 1..=5 {
            let c = FiniteCategory::linear(k, false);
            assert_eq!(c.morphisms().len(), k * (k + 1) / 2);
            let l = Lattice::new(c.clone(), 0, k).unwrap();
            assert_eq!(l.length, k);
            assert_eq!(l.length_by_paths(), k);
        }
        // a single pointed arrow is not a lattice: its hom-set also holds zero
        assert!(Lattice::new(FiniteCategory::linear(1, true), 0, 1).is_err());
        for k in 2..=5 {
            let z = Lattice::new(FiniteCategory::linear(k, true), 0, k).unwrap();
            assert_eq!(z.length, k);
            assert_eq!(z.j_gamma().unwrap().len(), 1);
        }
    }

    #[test]
    fn homset_of_unknown_object() {
        let c = FiniteCategory::from_spec(&square()).unwrap();
        assert_eq!(c.object_index("nope"), Err(LattError::UnknownObject("nope".into())));
    }
}
