use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::{w_slot, EnrichedDiagram, Slot, WCell, WError};
use crate::algtop::{cubical_chains, Homology};
use crate::cubset::{CellId, CellRef, CubicalSet};
use crate::latt::{FiniteCategory, LattError, Lattice, MorphismChain};

/// The pointed slot `PW(a,b)`: `W(a,b)` with zero-containing cells collapsed
/// to the zero vertex and each axis with a nonzero adjacent composite
/// collapsed onto its 0-face.
fn pointed_slot(c: &FiniteCategory, a: usize, b: usize) -> Result<Slot, WError> {
    let w = w_slot(c, a, b);
    let zero = c.zero(a, b).expect("pointed slots have a zero morphism");
    let base = w.index[&WCell { blocks: vec![vec![zero]] }].cell;
    let k = w.complex.clone().with_basepoint(Some(base))?;
    let mut pairs = Vec::new();
    for (d, level) in w.words.iter().enumerate() {
        for (i, word) in level.iter().enumerate() {
            let cell = CellId::new(d, i);
            let r = CellRef::nondegenerate(cell);
            if word.contains_zero(c) {
                if cell != base {
                    pairs.push((r, CellRef::collapsed(base, d)));
                }
                continue;
            }
            for axis in word.nonzero_axes(c) {
                pairs.push((r, CubicalSet::degeneracy_of(&k.face(cell, axis, false), axis)));
            }
        }
    }
    let q = k.quotient(&pairs)?;
    let top = q.quotient.dim().map_or(0, |d| d + 1);
    let mut words: Vec<Vec<Option<WCell>>> = (0..top).map(|d| vec![None; q.quotient.num_cells(d)]).collect();
    let mut index = HashMap::new();
    for (d, level) in w.words.iter().enumerate() {
        for (i, word) in level.iter().enumerate() {
            let img = q.map.image(CellId::new(d, i));
            if !img.is_degenerate() {
                let slot = &mut words[img.cell.dim][img.cell.index];
                if slot.is_none() {
                    *slot = Some(word.clone());
                }
            }
            index.insert(word.clone(), img);
        }
    }
    let words = words.into_iter().map(|l| l.into_iter().map(|w| w.expect("every cell has a preimage")).collect()).collect();
    Ok(Slot { complex: q.quotient, words, index })
}

/// The pointed relative model `PW Γ`.
pub fn pointed_relative_model(c: &FiniteCategory) -> Result<EnrichedDiagram, WError> {
    if !c.is_pointed() {
        return Err(LattError::NotPointed.into());
    }
    let n = c.num_objects();
    let mut slots = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                slots.insert((a, b), if c.precedes(a, b) { pointed_slot(c, a, b)? } else { Slot::empty() });
            }
        }
    }
    EnrichedDiagram::assemble(c.objects().to_vec(), slots)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotCensus {
    pub from: String,
    pub to: String,
    pub w_hat: Vec<usize>,
    pub w_rel: Vec<usize>,
    pub isomorphic: bool,
    /// Cells of `W_rel` missing from `W_hat`.
    pub complement: usize,
}

#[derive(Clone, Debug)]
pub struct ObstructionComplexes {
    pub j: Vec<MorphismChain>,
    pub r: EnrichedDiagram,
    pub w_hat: EnrichedDiagram,
    pub w_rel: EnrichedDiagram,
    pub census: Vec<SlotCensus>,
    /// The cell of `W_rel(v_init, v_fin)` carrying each element of `J`.
    pub j_cells: Vec<CellId>,
    /// Cells of `W_rel(v_init, v_fin)` outside `W_hat`.
    pub complement: Vec<CellId>,
}

impl ObstructionComplexes {
    /// Isomorphism off `(v_init, v_fin)` and exactly `|J|` complement cells there,
    /// all of them cubes of elements of `J`.
    pub fn check(&self, l: &Lattice) -> Result<(), WError> {
        let corner = (l.category.objects()[l.v_init].clone(), l.category.objects()[l.v_fin].clone());
        for s in &self.census {
            if (s.from.clone(), s.to.clone()) == corner {
                if s.complement != self.j.len() {
                    return Err(WError::Invariant(format!("complement has {} cells, |J| = {}", s.complement, self.j.len())));
                }
            } else if !s.isomorphic {
                return Err(WError::Invariant(format!("slot ({}, {}) is not isomorphic", s.from, s.to)));
            }
        }
        let missing: BTreeSet<CellId> = self.complement.iter().copied().collect();
        let expected: BTreeSet<CellId> = self.j_cells.iter().copied().collect();
        if expected.len() != self.j.len() || missing != expected {
            return Err(WError::Invariant("complement cells are not the cubes of J".into()));
        }
        Ok(())
    }
}

fn lattice_n(l: &Lattice) -> Result<usize, WError> {
    if !l.category.is_pointed() {
        return Err(LattError::NotPointed.into());
    }
    if l.length < 2 {
        return Err(LattError::TooShort(l.length).into());
    }
    Ok(l.length - 1)
}

fn j_cells(l: &Lattice, w_rel: &EnrichedDiagram, j: &[MorphismChain]) -> Vec<CellRef> {
    let s = w_rel.slot(l.v_init, l.v_fin);
    j.iter().map(|ch| s.index[&WCell { blocks: vec![ch.morphisms.clone()] }]).collect()
}

pub fn obstruction_complexes(l: &Lattice) -> Result<ObstructionComplexes, WError> {
    let n = lattice_n(l)?;
    let c = &l.category;
    let j = l.j_gamma()?;
    let w_rel = pointed_relative_model(c)?;
    let corner = (l.v_init, l.v_fin);
    let jc = j_cells(l, &w_rel, &j);
    if jc.iter().any(CellRef::is_degenerate) {
        return Err(WError::Invariant("a reduced null cube is degenerate in the pointed model".into()));
    }

    let unreduced: Vec<CellRef> = l
        .null_sequences(false)?
        .into_iter()
        .filter(|ch| !ch.adjacent.iter().all(|&a| c.is_zero(a)))
        .map(|ch| w_rel.slot(l.v_init, l.v_fin).index[&WCell { blocks: vec![ch.morphisms] }])
        .collect();

    let mut hat_slots = BTreeMap::new();
    let mut r_slots = BTreeMap::new();
    let mut census = Vec::new();
    let mut complement = Vec::new();
    for (&key, s) in &w_rel.slots {
        let k = &s.complex;
        let mut gens: Vec<CellId> = k.all_cells().filter(|x| x.dim < n).collect();
        if key == corner {
            gens.extend(unreduced.iter().map(|r| r.cell));
        }
        let keep = k.closure(gens);
        let hat = s.restrict(&keep)?;
        if key == corner {
            complement = k.all_cells().filter(|x| !keep.contains(x)).collect();
        }
        census.push(SlotCensus {
            from: c.objects()[key.0].clone(),
            to: c.objects()[key.1].clone(),
            w_hat: hat.complex.counts(),
            w_rel: k.counts(),
            isomorphic: hat.complex.total_cells() == k.total_cells(),
            complement: k.total_cells() - hat.complex.total_cells(),
        });
        hat_slots.insert(key, hat);
        if key == corner {
            let facets: Vec<CellId> = jc.iter().flat_map(|r| k.faces(r.cell).iter().map(|f| f.cell)).chain(k.basepoint()).collect();
            r_slots.insert(key, s.restrict(&k.closure(facets))?);
        } else {
            r_slots.insert(key, Slot::empty());
        }
    }
    let w_hat = EnrichedDiagram::assemble(c.objects().to_vec(), hat_slots)?;
    let r = EnrichedDiagram::assemble(c.objects().to_vec(), r_slots)?;
    Ok(ObstructionComplexes { j_cells: jc.iter().map(|r| r.cell).collect(), complement, j, r, w_hat, w_rel, census })
}

/// The domain of the operation: `R(v_init, v_fin)` with every cube's
/// facets at its minimal vertex collapsed to the basepoint.
#[derive(Clone, Debug)]
pub struct ObstructionDomain {
    pub complex: CubicalSet,
    pub homology: Homology<BigInt>,
    pub n: usize,
    pub wedge_summands: usize,
}

impl ObstructionDomain {
    /// Reduced homology is `ℤ^{|J|}` in degree `n - 1` and zero elsewhere.
    pub fn is_wedge_of_spheres(&self) -> bool {
        let b = self.homology.reduced_bettis();
        let torsion_free = (0..b.len()).all(|d| self.homology.torsion(d).is_empty());
        torsion_free
            && (0..b.len().max(self.n)).all(|d| b.get(d).copied().unwrap_or(0) == if d + 1 == self.n { self.wedge_summands } else { 0 })
    }
}

pub fn obstruction_domain(l: &Lattice) -> Result<ObstructionDomain, WError> {
    let n = lattice_n(l)?;
    let oc = obstruction_complexes(l)?;
    let w_rel = oc.w_rel.slot(l.v_init, l.v_fin);
    let r = oc.r.slot(l.v_init, l.v_fin);
    let base_word = w_rel.word(w_rel.complex.basepoint().expect("pointed slot"));
    let base = r.index[base_word].cell;
    let mut pairs = Vec::new();
    for &cube in &oc.j_cells {
        let word = w_rel.word(cube);
        for axis in 0..n {
            let f = r.index[&word.face(&l.category, axis, false)];
            pairs.push((f, CellRef::collapsed(base, n - 1)));
        }
    }
    let complex = r.complex.clone().with_basepoint(Some(base))?.quotient(&pairs)?.quotient;
    let homology = cubical_chains::<BigInt>(&complex).homology();
    Ok(ObstructionDomain { complex, homology, n, wedge_summands: oc.j.len() })
}
