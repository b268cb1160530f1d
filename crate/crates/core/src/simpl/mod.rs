//! Finite simplicial sets in normalized form, the triangulation functor,
//! levelwise products and a truncated cubical singular functor.
//!
//! A stored nondegenerate `n`-simplex has `n + 1` faces, each a
//! [`SimplexRef`]: a nondegenerate simplex precomposed with a surjection of
//! ordinals. A surjection `[m] -> [k]` is encoded by the bitmask of positions
//! `j < m` with `σ(j) = σ(j + 1)`.

mod product;
mod singular;
mod triangulate;

use std::collections::BTreeSet;
use std::fmt;

pub use crate::cubset::CellId;
pub use product::{simplicial_product, SimplicialProduct};
pub use singular::{adjunction_check, count_cubical_maps, count_simplicial_maps, singular_cub, AdjunctionError, SingularCub};
pub use triangulate::{tensor_triangulation_iso, triangulate, triangulate_map, Triangulation};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimplexRef {
    pub cell: CellId,
    /// Positions `j` where the surjection repeats a vertex.
    pub collapsed: u64,
}

impl SimplexRef {
    pub fn nondegenerate(cell: CellId) -> Self {
        SimplexRef { cell, collapsed: 0 }
    }

    pub fn dim(&self) -> usize {
        self.cell.dim + self.collapsed.count_ones() as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.collapsed != 0
    }

    /// The surjection `[dim] -> [cell.dim]` as its value sequence.
    pub fn surjection(&self) -> Vec<usize> {
        surjection_values(self.collapsed, self.dim())
    }

    /// `self` precomposed with the surjection encoded by `outer`.
    pub fn degenerated_by(&self, outer: u64) -> SimplexRef {
        SimplexRef { cell: self.cell, collapsed: compose_surjections(outer, self.collapsed) }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.collapsed == 0 {
            write!(f, "{}", self.cell)
        } else {
            write!(f, "{}∘{:?}", self.cell, self.surjection())
        }
    }
}

pub(crate) fn surjection_values(mask: u64, m: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(m + 1);
    let mut v = 0;
    out.push(0);
    for j in 0..m {
        if mask >> j & 1 == 0 {
            v += 1;
        }
        out.push(v);
    }
    out
}

/// Encodes a surjective nondecreasing sequence onto `0..=max`.
pub(crate) fn surjection_mask(values: &[usize]) -> u64 {
    let mut mask = 0;
    for j in 0..values.len().saturating_sub(1) {
        debug_assert!(values[j + 1] == values[j] || values[j + 1] == values[j] + 1);
        if values[j] == values[j + 1] {
            mask |= 1 << j;
        }
    }
    mask
}

/// For surjections `σ: [m] -> [p]` (`outer`) and `τ: [p] -> [k]` (`inner`),
/// the encoding of `τ ∘ σ`.
pub(crate) fn compose_surjections(outer: u64, inner: u64) -> u64 {
    if inner == 0 {
        return outer;
    }
    let mut result = outer;
    let mut t = 0;
    let mut j = 0;
    while inner >> t != 0 {
        if outer >> j & 1 == 0 {
            if inner >> t & 1 == 1 {
                result |= 1 << j;
            }
            t += 1;
        }
        j += 1;
    }
    result
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum SimplicialError {
    #[error("simplex of dimension {dim} needs {expected} faces, got {got}")]
    FaceCount { dim: usize, expected: usize, got: usize },
    #[error("face {face} of simplex {cell} has the wrong dimension")]
    FaceDimension { cell: CellId, face: usize },
    #[error("simplex {0} does not exist")]
    MissingCell(CellId),
    #[error("simplicial identity fails on {cell} for faces {i} < {j}")]
    Identity { cell: CellId, i: usize, j: usize },
    #[error("basepoint must be a vertex")]
    BadBasepoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Simplex {
    faces: Vec<SimplexRef>,
    label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialSet {
    cells: Vec<Vec<Simplex>>,
    basepoint: Option<CellId>,
}

#[derive(Clone, Debug, Default)]
pub struct SimplicialSetBuilder {
    cells: Vec<Vec<Simplex>>,
    basepoint: Option<CellId>,
}

impl SimplicialSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    /// Adds a nondegenerate simplex with faces `d_0, ..., d_dim`.
    pub fn add_simplex(&mut self, dim: usize, faces: Vec<SimplexRef>, label: Option<String>) -> Result<CellId, SimplicialError> {
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(SimplicialError::FaceCount { dim, expected, got: faces.len() });
        }
        let id = CellId::new(dim, self.num_cells(dim));
        for (i, f) in faces.iter().enumerate() {
            if f.dim() + 1 != dim {
                return Err(SimplicialError::FaceDimension { cell: id, face: i });
            }
            if f.cell.index >= self.num_cells(f.cell.dim) {
                return Err(SimplicialError::MissingCell(f.cell));
            }
        }
        while self.cells.len() <= dim {
            self.cells.push(Vec::new());
        }
        self.cells[dim].push(Simplex { faces, label });
        Ok(id)
    }

    pub fn set_basepoint(&mut self, base: Option<CellId>) {
        self.basepoint = base;
    }

    pub fn build(self) -> Result<SimplicialSet, SimplicialError> {
        let x = self.build_unchecked()?;
        x.check_identities()?;
        Ok(x)
    }

    pub(crate) fn build_unchecked(mut self) -> Result<SimplicialSet, SimplicialError> {
        while self.cells.last().is_some_and(Vec::is_empty) {
            self.cells.pop();
        }
        if let Some(b) = self.basepoint {
            if b.dim != 0 || b.index >= self.num_cells(0) {
                return Err(SimplicialError::BadBasepoint);
            }
        }
        Ok(SimplicialSet { cells: self.cells, basepoint: self.basepoint })
    }
}

impl SimplicialSet {
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.num_cells(dim)).map(move |i| CellId::new(dim, i))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).flat_map(move |d| self.cells_of_dim(d))
    }

    pub fn contains(&self, cell: CellId) -> bool {
        cell.index < self.num_cells(cell.dim)
    }

    pub fn basepoint(&self) -> Option<CellId> {
        self.basepoint
    }

    pub fn label(&self, cell: CellId) -> Option<&str> {
        self.cells[cell.dim][cell.index].label.as_deref()
    }

    pub fn face(&self, cell: CellId, i: usize) -> SimplexRef {
        self.cells[cell.dim][cell.index].faces[i]
    }

    pub fn faces(&self, cell: CellId) -> &[SimplexRef] {
        &self.cells[cell.dim][cell.index].faces
    }

    /// `r · θ` for a nondecreasing map `θ: [p] -> [dim r]` given by values.
    pub fn act(&self, r: &SimplexRef, theta: &[usize]) -> SimplexRef {
        let sigma = r.surjection();
        let phi: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
        self.act_on_cell(r.cell, phi)
    }

    fn act_on_cell(&self, cell: CellId, mut phi: Vec<usize>) -> SimplexRef {
        let k = cell.dim;
        let mut hit = vec![false; k + 1];
        for &v in &phi {
            hit[v] = true;
        }
        match (0..=k).rev().find(|&v| !hit[v]) {
            None => SimplexRef { cell, collapsed: surjection_mask(&phi) },
            Some(v) => {
                for x in &mut phi {
                    if *x > v {
                        *x -= 1;
                    }
                }
                let f = self.face(cell, v);
                self.act(&f, &phi)
            }
        }
    }

    /// `d_i` applied to an arbitrary simplex.
    pub fn face_of(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let m = r.dim();
        assert!(i <= m && m > 0);
        let theta: Vec<usize> = (0..=m).filter(|&t| t != i).collect();
        self.act(r, &theta)
    }

    /// `s_i` applied to an arbitrary simplex.
    pub fn degeneracy_of(r: &SimplexRef, i: usize) -> SimplexRef {
        r.degenerated_by(1 << i)
    }

    pub fn check_identities(&self) -> Result<(), SimplicialError> {
        for c in self.all_cells().filter(|c| c.dim >= 2) {
            let n = c.dim;
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.face_of(&self.face(c, j), i);
                    let rhs = self.face_of(&self.face(c, i), j - 1);
                    if lhs != rhs {
                        return Err(SimplicialError::Identity { cell: c, i, j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Every `dim`-simplex, degenerate or not, in a fixed order.
    pub fn all_refs_of_dim(&self, dim: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for k in 0..=dim.min(self.cells.len().saturating_sub(1)) {
            for mask in crate::cubset::subsets_of_size(dim, dim - k) {
                for c in self.cells_of_dim(k) {
                    out.push(SimplexRef { cell: c, collapsed: mask });
                }
            }
        }
        out
    }

    pub fn closure(&self, generators: impl IntoIterator<Item = CellId>) -> BTreeSet<CellId> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<CellId> = generators.into_iter().collect();
        while let Some(c) = stack.pop() {
            if seen.insert(c) {
                stack.extend(self.faces(c).iter().map(|f| f.cell));
            }
        }
        seen
    }

    /// The standard simplex `Δ[n]`; simplices are nonempty vertex subsets.
    pub fn standard_simplex(n: usize) -> SimplicialSet {
        simplex_subcomplex(n, |_| true)
    }

    /// `∂Δ[n]`, all proper faces of `Δ[n]`.
    pub fn simplex_boundary(n: usize) -> SimplicialSet {
        simplex_subcomplex(n, move |s| s.count_ones() as usize <= n)
    }

    /// `k` isolated vertices.
    pub fn discrete(k: usize) -> SimplicialSet {
        let mut b = SimplicialSetBuilder::new();
        for _ in 0..k {
            b.add_simplex(0, Vec::new(), None).unwrap();
        }
        b.build_unchecked().unwrap()
    }

    /// Graphviz rendering of the 2-skeleton: vertices and nondegenerate edges.
    pub fn to_dot(&self, name: &str, marked_edges: &dyn Fn(CellId) -> bool) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in self.cells_of_dim(0) {
            let label = self.label(v).map_or_else(|| format!("v{}", v.index), str::to_owned);
            s.push_str(&format!("  v{} [label=\"{}\"];\n", v.index, label.replace('"', "\\\"")));
        }
        for e in self.cells_of_dim(1) {
            let a = self.face(e, 1).cell.index;
            let b = self.face(e, 0).cell.index;
            if marked_edges(e) {
                s.push_str(&format!("  v{a} -- v{b} [style=dashed, diagonal=true];\n"));
            } else {
                s.push_str(&format!("  v{a} -- v{b};\n"));
            }
        }
        let triangles = self.num_cells(2);
        s.push_str(&format!("  // {triangles} nondegenerate 2-simplices\n}}\n"));
        s
    }
}

fn simplex_subcomplex(n: usize, keep: impl Fn(u64) -> bool) -> SimplicialSet {
    let mut by_dim: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for s in 1..(1u64 << (n + 1)) {
        if keep(s) {
            by_dim[s.count_ones() as usize - 1].push(s);
        }
    }
    let mut index = std::collections::HashMap::new();
    let mut b = SimplicialSetBuilder::new();
    for (d, level) in by_dim.iter_mut().enumerate() {
        level.sort_unstable_by_key(|s| (0..=n).filter(|v| s >> v & 1 == 1).collect::<Vec<_>>());
        for &s in level.iter() {
            let verts: Vec<usize> = (0..=n).filter(|v| s >> v & 1 == 1).collect();
            let faces =
                if d == 0 { Vec::new() } else { verts.iter().map(|&v| SimplexRef::nondegenerate(index[&(s & !(1 << v))])).collect() };
            let label = verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
            let id = b.add_simplex(d, faces, Some(label)).unwrap();
            index.insert(s, id);
        }
    }
    b.build_unchecked().unwrap()
}

/// A map of simplicial sets, stored as the image of every nondegenerate simplex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialMap {
    images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    pub fn new(images: Vec<Vec<SimplexRef>>) -> Self {
        SimplicialMap { images }
    }

    pub fn image(&self, cell: CellId) -> SimplexRef {
        self.images[cell.dim][cell.index]
    }

    pub fn map_ref(&self, r: &SimplexRef) -> SimplexRef {
        self.image(r.cell).degenerated_by(r.collapsed)
    }

    pub fn verify(&self, source: &SimplicialSet, target: &SimplicialSet) -> bool {
        if self.images.len() != source.cells.len() || self.images.iter().zip(&source.cells).any(|(a, b)| a.len() != b.len()) {
            return false;
        }
        source.all_cells().all(|c| {
            let img = self.image(c);
            img.dim() == c.dim
                && target.contains(img.cell)
                && (c.dim == 0 || (0..=c.dim).all(|i| self.map_ref(&source.face(c, i)) == target.face_of(&img, i)))
        })
    }

    pub fn is_isomorphism(&self, target: &SimplicialSet) -> bool {
        let mut hit: Vec<Vec<bool>> = target.counts().iter().map(|&n| vec![false; n]).collect();
        for r in self.images.iter().flatten() {
            if r.is_degenerate() || !target.contains(r.cell) || hit[r.cell.dim][r.cell.index] {
                return false;
            }
            hit[r.cell.dim][r.cell.index] = true;
        }
        hit.iter().flatten().all(|&h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|r| !r.is_degenerate() && seen.insert(r.cell))
    }
}
