//! The W-construction on a finite category as a cubically enriched diagram,
//! the pointed relative model and the obstruction bookkeeping built on it.

mod export;
mod pointed;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::cubset::{CellId, CellMap, CellRef, CubeError, CubicalSet, CubicalSetBuilder};
use crate::latt::{ChainQuery, FiniteCategory, LattError, LengthConstraint};
use crate::monoidal::{tensor, Tensor};

pub use export::{diagram_json, slot_dot};
pub use pointed::{obstruction_complexes, obstruction_domain, pointed_relative_model, ObstructionComplexes, ObstructionDomain, SlotCensus};

#[derive(Debug, Error)]
pub enum WError {
    #[error(transparent)]
    Lattice(#[from] LattError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error("composition into slot {0:?} does not resolve a word")]
    Unresolved((usize, usize)),
    #[error("invariant failed: {0}")]
    Invariant(String),
}

/// A tensor word of chains. `blocks[0]` holds the last-applied morphisms;
/// within a block morphisms are in written order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WCell {
    pub blocks: Vec<Vec<usize>>,
}

impl WCell {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.len() - 1).sum()
    }

    /// All morphisms of the word in written order.
    pub fn flatten(&self) -> Vec<usize> {
        self.blocks.concat()
    }

    /// `(block, local axis)` of a global axis.
    pub fn locate(&self, axis: usize) -> (usize, usize) {
        let mut rest = axis;
        for (j, b) in self.blocks.iter().enumerate() {
            if rest < b.len() - 1 {
                return (j, rest);
            }
            rest -= b.len() - 1;
        }
        panic!("axis {axis} out of range for a {}-cell", self.dim())
    }

    /// The `sign` face on `axis`: sign 0 composes the two morphisms on either
    /// side of the axis, sign 1 splits the block there.
    pub fn face(&self, c: &FiniteCategory, axis: usize, sign: bool) -> WCell {
        let (j, i) = self.locate(axis);
        let b = &self.blocks[j];
        let mut blocks = self.blocks[..j].to_vec();
        if sign {
            blocks.push(b[..=i].to_vec());
            blocks.push(b[i + 1..].to_vec());
        } else {
            let mut nb = b[..i].to_vec();
            nb.push(c.compose(b[i + 1], b[i]).expect("adjacent morphisms compose"));
            nb.extend_from_slice(&b[i + 2..]);
            blocks.push(nb);
        }
        blocks.extend_from_slice(&self.blocks[j + 1..]);
        WCell { blocks }
    }

    pub fn contains_zero(&self, c: &FiniteCategory) -> bool {
        self.blocks.iter().flatten().any(|&m| c.is_zero(m))
    }

    /// Axes whose two neighbouring morphisms have a nonzero composite.
    pub fn nonzero_axes(&self, c: &FiniteCategory) -> Vec<usize> {
        let mut out = Vec::new();
        let mut axis = 0;
        for b in &self.blocks {
            for i in 0..b.len() - 1 {
                if !c.is_zero(c.compose(b[i + 1], b[i]).unwrap()) {
                    out.push(axis);
                }
                axis += 1;
            }
        }
        out
    }

    pub fn concat(&self, later: &WCell) -> WCell {
        let mut blocks = self.blocks.clone();
        blocks.extend(later.blocks.iter().cloned());
        WCell { blocks }
    }

    pub fn composite(&self, c: &FiniteCategory) -> usize {
        c.compose_chain(&self.flatten()).expect("word composes")
    }

    pub fn display(&self, c: &FiniteCategory) -> String {
        self.blocks.iter().map(|b| b.iter().map(|&m| c.morphism(m).id.as_str()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("|")
    }
}

/// One mapping complex with the words naming its cells.
#[derive(Clone, Debug)]
pub struct Slot {
    pub complex: CubicalSet,
    /// A representative word for every nondegenerate cell.
    pub words: Vec<Vec<WCell>>,
    /// Image of every word of the underlying W slot that lands here.
    pub index: HashMap<WCell, CellRef>,
}

impl Slot {
    pub fn empty() -> Slot {
        Slot { complex: CubicalSet::empty(), words: Vec::new(), index: HashMap::new() }
    }

    pub fn word(&self, cell: CellId) -> &WCell {
        &self.words[cell.dim][cell.index]
    }

    /// The subcomplex on a face-closed cell set; words landing outside it
    /// are dropped from the index.
    pub fn restrict(&self, keep: &BTreeSet<CellId>) -> Result<Slot, CubeError> {
        let (complex, incl) = self.complex.subcomplex(keep)?;
        let mut back: HashMap<CellId, CellId> = HashMap::new();
        let mut words: Vec<Vec<WCell>> = vec![Vec::new(); complex.dim().map_or(0, |d| d + 1)];
        for c in complex.all_cells() {
            let orig = incl.image(c).cell;
            back.insert(orig, c);
            words[c.dim].push(self.word(orig).clone());
        }
        let index = self
            .index
            .iter()
            .filter_map(|(w, r)| back.get(&r.cell).map(|&c| (w.clone(), CellRef { cell: c, deleted: r.deleted })))
            .collect();
        Ok(Slot { complex, words, index })
    }
}

/// A composition cell map `S(w,v) ⊗ S(u,w) -> S(u,v)`; the later factor comes first.
#[derive(Clone, Debug)]
pub struct Composition {
    pub tensor: Tensor,
    pub map: CellMap,
}

#[derive(Clone, Debug)]
pub struct EnrichedDiagram {
    pub objects: Vec<String>,
    /// Every ordered pair of distinct objects; empty when no morphism exists.
    pub slots: BTreeMap<(usize, usize), Slot>,
    /// Keyed by `(u, w, v)` for `u ≺ w ≺ v`.
    pub compositions: BTreeMap<(usize, usize, usize), Composition>,
}

impl EnrichedDiagram {
    pub fn slot(&self, u: usize, v: usize) -> &Slot {
        &self.slots[&(u, v)]
    }

    /// Builds composition maps by concatenating representative words.
    pub(crate) fn assemble(objects: Vec<String>, slots: BTreeMap<(usize, usize), Slot>) -> Result<EnrichedDiagram, WError> {
        let n = objects.len();
        let mut compositions = BTreeMap::new();
        for u in 0..n {
            for w in 0..n {
                for v in 0..n {
                    if u == w || w == v || u == v {
                        continue;
                    }
                    let (later, earlier) = (&slots[&(w, v)], &slots[&(u, w)]);
                    if later.complex.is_empty() || earlier.complex.is_empty() {
                        continue;
                    }
                    let target = &slots[&(u, v)];
                    let t = tensor(&later.complex, &earlier.complex);
                    let mut images = Vec::new();
                    for d in 0..t.complex.dim().map_or(0, |d| d + 1) {
                        let mut level = Vec::new();
                        for c in t.complex.cells_of_dim(d) {
                            let (x, y) = t.pair(c);
                            let word = later.word(x).concat(earlier.word(y));
                            level.push(*target.index.get(&word).ok_or(WError::Unresolved((u, v)))?);
                        }
                        images.push(level);
                    }
                    compositions.insert((u, w, v), Composition { tensor: t, map: CellMap::new(images) });
                }
            }
        }
        Ok(EnrichedDiagram { objects, slots, compositions })
    }

    /// `x ∘ y` for cells `x` of `S(w,v)` and `y` of `S(u,w)`.
    pub fn compose_refs(&self, u: usize, w: usize, v: usize, x: &CellRef, y: &CellRef) -> CellRef {
        let comp = &self.compositions[&(u, w, v)];
        comp.map.map_ref(&comp.tensor.ref_of(x, y))
    }

    /// Every composition map is a cubical map.
    pub fn check_compositions(&self) -> Result<(), WError> {
        for (&(u, w, v), comp) in &self.compositions {
            comp.map
                .verify(&comp.tensor.complex, &self.slot(u, v).complex)
                .map_err(|e| WError::Invariant(format!("composition ({u},{w},{v}): {e}")))?;
        }
        Ok(())
    }

    /// The two ways of composing three cells agree.
    pub fn check_associativity(&self) -> Result<(), WError> {
        let n = self.objects.len();
        for u in 0..n {
            for w in 0..n {
                for x in 0..n {
                    for v in 0..n {
                        let keys = [(u, w, x), (w, x, v), (u, w, v), (u, x, v)];
                        if !keys.iter().all(|k| self.compositions.contains_key(k)) {
                            continue;
                        }
                        for a in self.slot(x, v).complex.all_cells() {
                            for b in self.slot(w, x).complex.all_cells() {
                                for c in self.slot(u, w).complex.all_cells() {
                                    let (a, b, c) = (CellRef::nondegenerate(a), CellRef::nondegenerate(b), CellRef::nondegenerate(c));
                                    let left = self.compose_refs(u, w, v, &self.compose_refs(w, x, v, &a, &b), &c);
                                    let right = self.compose_refs(u, x, v, &a, &self.compose_refs(u, w, x, &b, &c));
                                    if left != right {
                                        return Err(WError::Invariant(format!("associativity fails on ({u},{w},{x},{v})")));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Every tensor word from `a` to `b`, by dimension and then word order.
fn words_between(c: &FiniteCategory, a: usize, b: usize) -> Vec<Vec<WCell>> {
    let mut by_dim: Vec<Vec<WCell>> = Vec::new();
    for chain in c.chains(a, b, ChainQuery { length: LengthConstraint::Any, nonzero: false }) {
        let seq = chain.morphisms;
        let gaps = seq.len() - 1;
        for split in 0..1u64 << gaps {
            let mut blocks = vec![vec![seq[0]]];
            for (g, &m) in seq[1..].iter().enumerate() {
                if split >> g & 1 == 1 {
                    blocks.push(vec![m]);
                } else {
                    blocks.last_mut().unwrap().push(m);
                }
            }
            let w = WCell { blocks };
            let d = w.dim();
            while by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(w);
        }
    }
    for level in &mut by_dim {
        level.sort();
    }
    by_dim
}

/// The mapping complex `W(a,b)`.
pub fn w_slot(c: &FiniteCategory, a: usize, b: usize) -> Slot {
    let words = words_between(c, a, b);
    let mut index: HashMap<WCell, CellRef> = HashMap::new();
    let mut builder = CubicalSetBuilder::new();
    for (d, level) in words.iter().enumerate() {
        for w in level {
            let faces = (0..d).flat_map(|axis| [false, true].map(|s| index[&w.face(c, axis, s)])).collect();
            let id = builder.add_cell(d, faces, Some(w.display(c))).expect("faces of words are words");
            index.insert(w.clone(), CellRef::nondegenerate(id));
        }
    }
    let complex = builder.build().expect("word faces are coherent");
    Slot { complex, words, index }
}

/// `W C`: every slot and its composition maps.
pub fn w_construction(c: &FiniteCategory) -> EnrichedDiagram {
    let n = c.num_objects();
    let mut slots = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                slots.insert((a, b), if c.precedes(a, b) { w_slot(c, a, b) } else { Slot::empty() });
            }
        }
    }
    EnrichedDiagram::assemble(c.objects().to_vec(), slots).expect("concatenated words are words")
}

/// `γ: W C -> C` on cells: the total composite of each word.
#[derive(Clone, Debug)]
pub struct Augmentation {
    pub values: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl Augmentation {
    pub fn value(&self, u: usize, v: usize, cell: CellId) -> usize {
        self.values[&(u, v)][cell.dim][cell.index]
    }
}

impl fmt::Display for WCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.blocks)
    }
}

pub fn augmentation(w: &EnrichedDiagram, c: &FiniteCategory) -> Augmentation {
    let values =
        w.slots.iter().map(|(&k, s)| (k, s.words.iter().map(|level| level.iter().map(|x| x.composite(c)).collect()).collect())).collect();
    Augmentation { values }
}

impl Augmentation {
    /// Constant along faces and multiplicative under composition.
    pub fn verify(&self, w: &EnrichedDiagram, c: &FiniteCategory) -> Result<(), WError> {
        for (&(u, v), s) in &w.slots {
            for cell in s.complex.all_cells() {
                let g = self.value(u, v, cell);
                for f in s.complex.faces(cell) {
                    if self.value(u, v, f.cell) != g {
                        return Err(WError::Invariant(format!("augmentation not constant on a face in slot ({u},{v})")));
                    }
                }
            }
        }
        for &(u, m, v) in w.compositions.keys() {
            for x in w.slot(m, v).complex.all_cells() {
                for y in w.slot(u, m).complex.all_cells() {
                    let r = w.compose_refs(u, m, v, &CellRef::nondegenerate(x), &CellRef::nondegenerate(y));
                    let expected = c.compose(self.value(u, m, y), self.value(m, v, x));
                    if expected != Some(self.value(u, v, r.cell)) {
                        return Err(WError::Invariant(format!("augmentation does not respect composition at ({u},{m},{v})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The morphisms hit by each connected component of a slot.
    pub fn component_values(&self, w: &EnrichedDiagram, u: usize, v: usize) -> Vec<BTreeSet<usize>> {
        w.slot(u, v).complex.components().iter().map(|comp| comp.iter().map(|&x| self.value(u, v, x)).collect()).collect()
    }
}
