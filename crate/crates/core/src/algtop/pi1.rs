use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use super::matrix::{smith_normal_form, Matrix};
use crate::cubset::{CellId, CubicalSet};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("{0:?} is not a vertex of the complex")]
    NotAVertex(CellId),
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recognized {
    Trivial,
    Free { rank: usize },
    FreeAbelian { rank: usize },
}

/// A finite presentation of `π_1(K, base)`. Generators are named by the
/// edges of `K` they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<CellId>,
    pub relators: Vec<Vec<Letter>>,
    pub recognized: Option<Recognized>,
}

type Word = Vec<Letter>;

fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// A canonical representative of the relator up to rotation and inversion.
fn canonical_relator(w: &[Letter]) -> Word {
    let mut best: Option<Word> = None;
    for cand in [w.to_vec(), invert(w)] {
        for s in 0..cand.len().max(1) {
            let mut r = cand[s..].to_vec();
            r.extend_from_slice(&cand[..s]);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

impl GroupPresentation {
    /// Free and cyclic reduction, then repeated elimination of a generator
    /// occurring exactly once in some relator. Recognition flags are set
    /// afterwards.
    pub fn simplify(&mut self) {
        loop {
            let mut seen = BTreeSet::new();
            self.relators = self
                .relators
                .iter()
                .map(|r| cyclic_reduce(r))
                .filter(|r| !r.is_empty())
                .filter(|r| seen.insert(canonical_relator(r)))
                .collect();
            let mut pick: Option<(usize, usize)> = None;
            for (ri, r) in self.relators.iter().enumerate() {
                for (pos, l) in r.iter().enumerate() {
                    let occurrences = r.iter().filter(|m| m.generator == l.generator).count();
                    if occurrences == 1 && pick.is_none_or(|(pr, _)| r.len() < self.relators[pr].len()) {
                        pick = Some((ri, pos));
                    }
                }
            }
            let Some((ri, pos)) = pick else { break };
            let r = self.relators.remove(ri);
            let l = r[pos];
            let mut rest: Word = r[pos + 1..].to_vec();
            rest.extend_from_slice(&r[..pos]);
            // l · rest = 1, so the generator equals rest^{-1} (or rest when l is inverted)
            let value = if l.inverse { rest } else { invert(&rest) };
            let g = l.generator;
            for rel in &mut self.relators {
                let mut out = Vec::with_capacity(rel.len());
                for &m in rel.iter() {
                    if m.generator == g {
                        if m.inverse {
                            out.extend(invert(&value));
                        } else {
                            out.extend(value.iter().copied());
                        }
                    } else {
                        out.push(m);
                    }
                }
                *rel = out;
            }
            self.generators.remove(g);
            for rel in &mut self.relators {
                for m in rel.iter_mut() {
                    if m.generator > g {
                        m.generator -= 1;
                    }
                }
            }
        }
        self.recognized = self.recognize();
    }

    fn recognize(&self) -> Option<Recognized> {
        let k = self.generators.len();
        if k == 0 {
            return Some(Recognized::Trivial);
        }
        if self.relators.is_empty() {
            return Some(Recognized::Free { rank: k });
        }
        let mut pairs = BTreeSet::new();
        for r in &self.relators {
            let c = canonical_relator(r);
            if c.len() != 4 {
                return None;
            }
            let (a, b) = (c[0], c[1]);
            if a.generator == b.generator || c[2] != a.inv() || c[3] != b.inv() {
                return None;
            }
            pairs.insert((a.generator.min(b.generator), a.generator.max(b.generator)));
        }
        (pairs.len() == k * (k - 1) / 2 && self.relators.len() == pairs.len()).then_some(Recognized::FreeAbelian { rank: k })
    }

    /// True when the group is recognized as `ℤ^k`.
    pub fn is_free_abelian_of_rank(&self, k: usize) -> bool {
        match self.recognized {
            Some(Recognized::Trivial) => k == 0,
            Some(Recognized::Free { rank }) => rank == k && k <= 1,
            Some(Recognized::FreeAbelian { rank }) => rank == k,
            None => false,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.recognized == Some(Recognized::Trivial)
    }

    /// Rank and torsion invariants of the abelianization.
    pub fn abelianization(&self) -> (usize, Vec<BigInt>) {
        let k = self.generators.len();
        let rows: Vec<Vec<BigInt>> = self
            .relators
            .iter()
            .map(|r| {
                let mut v = vec![0i64; k];
                for l in r {
                    v[l.generator] += if l.inverse { -1 } else { 1 };
                }
                v.into_iter().map(BigInt::from).collect()
            })
            .collect();
        let snf = smith_normal_form(&Matrix::from_rows(rows, k));
        let inv = &snf.invariants;
        let torsion = inv.iter().filter(|d| !d.is_unit()).cloned().collect();
        (k - inv.len(), torsion)
    }

    pub fn word_strings(&self, w: &[Letter]) -> Vec<String> {
        w.iter()
            .map(|l| {
                let g = self.generators[l.generator];
                if l.inverse {
                    format!("e{}^-1", g.index)
                } else {
                    format!("e{}", g.index)
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators.iter().map(|g| format!("e{}", g.index)).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(|r| self.word_strings(r)).collect::<Vec<_>>(),
            "recognized": self.recognized,
        })
    }
}

/// Edge-path presentation of `π_1(K, base)`, simplified.
pub fn pi1_presentation(k: &CubicalSet, base: CellId) -> Result<GroupPresentation, Pi1Error> {
    let mut p = raw_presentation(k, base)?;
    p.simplify();
    Ok(p)
}

/// Edge-path presentation of `π_1(K, base)` before simplification.
pub fn raw_presentation(k: &CubicalSet, base: CellId) -> Result<GroupPresentation, Pi1Error> {
    if base.dim != 0 || !k.contains(base) {
        return Err(Pi1Error::NotAVertex(base));
    }
    let comp = k.components().into_iter().find(|c| c.contains(&base)).expect("every vertex lies in a component");
    let generators: Vec<CellId> = comp.iter().copied().filter(|c| c.dim == 1).collect();
    let gen_of = |e: CellId| generators.binary_search(&e).ok();
    let mut relators = Vec::new();

    let mut visited = BTreeSet::from([base]);
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for (gi, &e) in generators.iter().enumerate() {
            let s = k.face(e, 0, false).cell;
            let t = k.face(e, 0, true).cell;
            let other = if s == v {
                t
            } else if t == v {
                s
            } else {
                continue;
            };
            if visited.insert(other) {
                queue.push_back(other);
                relators.push(vec![Letter { generator: gi, inverse: false }]);
            }
        }
    }

    for c in comp.iter().copied().filter(|c| c.dim == 2) {
        let word = [(0, false, false), (1, true, false), (0, true, true), (1, false, true)];
        let mut rel = Vec::new();
        for (axis, sign, inverse) in word {
            let f = k.face(c, axis, sign);
            if !f.is_degenerate() {
                let generator = gen_of(f.cell).expect("faces stay in the component");
                rel.push(Letter { generator, inverse });
            }
        }
        relators.push(rel);
    }
    Ok(GroupPresentation { generators, relators, recognized: None })
}
