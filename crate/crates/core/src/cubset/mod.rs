//! Finite cubical sets in normalized form.
//!
//! A [`CubicalSet`] stores only its nondegenerate cells. Each face slot of
//! a stored `n`-cell holds a [`CellRef`]: a nondegenerate target cell
//! together with the set of degenerate axes, which pins down the degeneracy
//! operator uniquely (every cell of a presheaf on the box category is a
//! unique degeneracy of a unique nondegenerate cell). All other faces and
//! degeneracies are computed from the stored table by re-normalization.
//!
//! Axes are 0-based throughout the Rust API. The JSON forms and the CLI use
//! 1-based axes.

pub mod boxmap;
mod json;
mod map;
mod quotient;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use boxmap::{BoxError, BoxMorphism, CanonicalWord, Coord};
pub use json::{CellJson, ComplexJson, FaceJson};
pub use map::{CellMap, MapError};
pub use quotient::QuotientResult;

pub(crate) use boxmap::{insert_axis, low_mask, remove_axis, squeeze};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub fn new(dim: usize, index: usize) -> Self {
        CellId { dim, index }
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

/// A possibly degenerate cell: `cell` precomposed with the projection that
/// forgets the axes in `deleted` (a bitmask over the axes of the ambient
/// cube of dimension [`CellRef::dim`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CellRef {
    pub cell: CellId,
    pub deleted: u64,
}

impl CellRef {
    pub fn nondegenerate(cell: CellId) -> Self {
        CellRef { cell, deleted: 0 }
    }

    /// The totally degenerate `dim`-cell on `cell`'s vertex.
    pub fn collapsed(cell: CellId, dim: usize) -> Self {
        assert_eq!(cell.dim, 0);
        CellRef { cell, deleted: low_mask(dim) }
    }

    pub fn dim(&self) -> usize {
        self.cell.dim + self.deleted.count_ones() as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.deleted != 0
    }

    /// 1-based deleted axes, ascending: the canonical degeneracy word.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        (0..self.dim()).filter(|a| self.deleted >> a & 1 == 1).map(|a| a + 1).collect()
    }

    /// Applies a further projection: `self` composed after the projection
    /// `I^m -> I^{dim}` forgetting the axes of `outer` (bitmask over `m` axes).
    pub fn degenerated_by(&self, outer: u64) -> CellRef {
        CellRef { cell: self.cell, deleted: compose_deleted(outer, self.deleted) }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deleted == 0 {
            write!(f, "{}", self.cell)
        } else {
            write!(f, "s{:?}({})", self.degeneracy_word(), self.cell)
        }
    }
}

/// For projections `I^n -> I^k` (forgetting `outer`) and `I^k -> I^j`
/// (forgetting `inner`), the axes of `I^n` forgotten by the composite.
pub(crate) fn compose_deleted(outer: u64, inner: u64) -> u64 {
    if inner == 0 {
        return outer;
    }
    let mut result = outer;
    let mut axis = 0;
    let mut remaining = inner;
    while remaining != 0 {
        if outer >> axis & 1 == 0 {
            if remaining & 1 == 1 {
                result |= 1 << axis;
            }
            remaining >>= 1;
        }
        axis += 1;
    }
    result
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum CubeError {
    #[error("the 0-cube has no boundary")]
    NoBoundary,
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("cell {0} does not exist")]
    MissingCell(CellId),
    #[error("cell of dimension {dim} needs {expected} faces, got {got}")]
    FaceCount { dim: usize, expected: usize, got: usize },
    #[error("face {face} of cell {cell} has dimension {got}, expected {expected}")]
    FaceDimension { cell: CellId, face: usize, expected: usize, got: usize },
    #[error("face coherence fails on {cell} for axes {i} < {j}, signs ({e}, {f}): {lhs} vs {rhs}")]
    Incoherent { cell: CellId, i: usize, j: usize, e: u8, f: u8, lhs: CellRef, rhs: CellRef },
    #[error("identification pairs cells of dimension {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("cell set is not closed under faces: {0} is missing")]
    NotClosed(CellId),
    #[error("quotient identifies distinct degenerate cells {0} and {1}")]
    InconsistentQuotient(CellRef, CellRef),
    #[error("basepoint must be a 0-cell of the complex")]
    BadBasepoint,
    #[error("dimension {0} exceeds the supported maximum of 63")]
    TooLarge(usize),
    #[error("malformed complex description: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell {
    faces: Vec<CellRef>,
    label: Option<String>,
}

/// A finite cubical set, immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CubicalSet {
    cells: Vec<Vec<Cell>>,
    basepoint: Option<CellId>,
}

/// Incremental construction of a [`CubicalSet`]; [`build`](Self::build)
/// validates face coherence.
#[derive(Clone, Debug, Default)]
pub struct CubicalSetBuilder {
    cells: Vec<Vec<Cell>>,
    basepoint: Option<CellId>,
}

impl CubicalSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    /// Adds a nondegenerate cell whose faces are listed in slot order
    /// `(axis 0, sign 0), (axis 0, sign 1), (axis 1, sign 0), ...`.
    pub fn add_cell(&mut self, dim: usize, faces: Vec<CellRef>, label: Option<String>) -> Result<CellId, CubeError> {
        if dim > 63 {
            return Err(CubeError::TooLarge(dim));
        }
        if faces.len() != 2 * dim {
            return Err(CubeError::FaceCount { dim, expected: 2 * dim, got: faces.len() });
        }
        let id = CellId::new(dim, self.num_cells(dim));
        for (slot, f) in faces.iter().enumerate() {
            if f.dim() + 1 != dim {
                return Err(CubeError::FaceDimension { cell: id, face: slot, expected: dim - 1, got: f.dim() });
            }
            if f.cell.index >= self.num_cells(f.cell.dim) {
                return Err(CubeError::MissingCell(f.cell));
            }
        }
        while self.cells.len() <= dim {
            self.cells.push(Vec::new());
        }
        self.cells[dim].push(Cell { faces, label });
        Ok(id)
    }

    pub fn set_basepoint(&mut self, base: Option<CellId>) {
        self.basepoint = base;
    }

    pub fn build(self) -> Result<CubicalSet, CubeError> {
        let k = self.build_unchecked()?;
        k.check_face_coherence()?;
        Ok(k)
    }

    /// Builds without the face-coherence pass; for constructions whose
    /// coherence holds by construction and is covered by tests.
    pub(crate) fn build_unchecked(mut self) -> Result<CubicalSet, CubeError> {
        while self.cells.last().is_some_and(Vec::is_empty) {
            self.cells.pop();
        }
        if let Some(b) = self.basepoint {
            if b.dim != 0 || b.index >= self.num_cells(0) {
                return Err(CubeError::BadBasepoint);
            }
        }
        Ok(CubicalSet { cells: self.cells, basepoint: self.basepoint })
    }
}

impl CubicalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Top dimension of a nondegenerate cell, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Nondegenerate cell counts per dimension, up to the top dimension.
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

    pub fn with_basepoint(mut self, base: Option<CellId>) -> Result<Self, CubeError> {
        if let Some(b) = base {
            if b.dim != 0 || !self.contains(b) {
                return Err(CubeError::BadBasepoint);
            }
        }
        self.basepoint = base;
        Ok(self)
    }

    pub fn label(&self, cell: CellId) -> Option<&str> {
        self.cells[cell.dim][cell.index].label.as_deref()
    }

    /// The stored `(axis, sign)` face of a nondegenerate cell.
    pub fn face(&self, cell: CellId, axis: usize, sign: bool) -> CellRef {
        self.cells[cell.dim][cell.index].faces[2 * axis + usize::from(sign)]
    }

    pub fn faces(&self, cell: CellId) -> &[CellRef] {
        &self.cells[cell.dim][cell.index].faces
    }

    /// `d_axis^sign` applied to an arbitrary (possibly degenerate) cell.
    pub fn face_of(&self, r: &CellRef, axis: usize, sign: bool) -> CellRef {
        let n = r.dim();
        assert!(axis < n, "face axis {axis} out of range for a {n}-cell");
        if r.deleted >> axis & 1 == 1 {
            return CellRef { cell: r.cell, deleted: remove_axis(r.deleted, axis) };
        }
        let t = axis - (r.deleted & low_mask(axis)).count_ones() as usize;
        let f = self.face(r.cell, t, sign);
        CellRef { cell: f.cell, deleted: compose_deleted(remove_axis(r.deleted, axis), f.deleted) }
    }

    /// `s_axis` applied to a cell: the result forgets the new `axis`.
    pub fn degeneracy_of(r: &CellRef, axis: usize) -> CellRef {
        CellRef { cell: r.cell, deleted: insert_axis(r.deleted, axis, true) }
    }

    /// The action `r · theta` of a box morphism `theta: I^m -> I^{dim r}`.
    pub fn act(&self, r: &CellRef, theta: &BoxMorphism) -> CellRef {
        assert_eq!(theta.target(), r.dim(), "box morphism does not land in the cell's dimension");
        let mut x = *r;
        for (pos, c) in theta.coords().iter().enumerate().rev() {
            if let Coord::Const(b) = *c {
                x = self.face_of(&x, pos, b);
            }
        }
        x.degenerated_by(theta.deleted_inputs())
    }

    pub fn check_face_coherence(&self) -> Result<(), CubeError> {
        for c in self.all_cells() {
            let n = c.dim;
            for j in 1..n {
                for i in 0..j {
                    for e in [false, true] {
                        for f in [false, true] {
                            let lhs = self.face_of(&self.face(c, j, f), i, e);
                            let rhs = self.face_of(&self.face(c, i, e), j - 1, f);
                            if lhs != rhs {
                                return Err(CubeError::Incoherent { cell: c, i, j, e: u8::from(e), f: u8::from(f), lhs, rhs });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every nondegenerate cell lying in the face closure of `generators`.
    pub fn closure(&self, generators: impl IntoIterator<Item = CellId>) -> BTreeSet<CellId> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<CellId> = generators.into_iter().collect();
        while let Some(c) = stack.pop() {
            if !seen.insert(c) {
                continue;
            }
            for f in self.faces(c) {
                if !seen.contains(&f.cell) {
                    stack.push(f.cell);
                }
            }
        }
        seen
    }

    /// The vertex of `cell` at the origin of its cube.
    pub fn first_vertex(&self, cell: CellId) -> CellId {
        let mut r = CellRef::nondegenerate(cell);
        while r.dim() > 0 {
            r = self.face_of(&r, 0, false);
        }
        r.cell
    }

    /// Connected components as face-closed cell sets, ordered by their
    /// lowest vertex.
    pub fn components(&self) -> Vec<BTreeSet<CellId>> {
        let n = self.num_cells(0);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.cells_of_dim(1) {
            let a = find(&mut parent, self.face(e, 0, false).cell.index);
            let b = find(&mut parent, self.face(e, 0, true).cell.index);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = roots.len();
                roots.push(r);
            }
        }
        let mut out = vec![BTreeSet::new(); roots.len()];
        for c in self.all_cells() {
            let v = self.first_vertex(c).index;
            let r = find(&mut parent, v);
            out[slot[r]].insert(c);
        }
        out
    }

    /// The subcomplex on a face-closed set of cells, with its inclusion map.
    /// Cell order within each dimension is preserved.
    pub fn subcomplex(&self, keep: &BTreeSet<CellId>) -> Result<(CubicalSet, CellMap), CubeError> {
        let mut new_index: Vec<Vec<Option<usize>>> = self.cells.iter().map(|v| vec![None; v.len()]).collect();
        let mut counts = vec![0usize; self.cells.len()];
        for c in keep {
            if !self.contains(*c) {
                return Err(CubeError::MissingCell(*c));
            }
        }
        for c in keep {
            new_index[c.dim][c.index] = Some(counts[c.dim]);
            counts[c.dim] += 1;
        }
        let remap = |r: &CellRef| -> Result<CellRef, CubeError> {
            let idx = new_index[r.cell.dim][r.cell.index].ok_or(CubeError::NotClosed(r.cell))?;
            Ok(CellRef { cell: CellId::new(r.cell.dim, idx), deleted: r.deleted })
        };
        let mut b = CubicalSetBuilder::new();
        let mut images: Vec<Vec<CellRef>> = counts.iter().map(|&n| Vec::with_capacity(n)).collect();
        for c in keep {
            let faces = self.faces(*c).iter().map(remap).collect::<Result<Vec<_>, _>>()?;
            b.add_cell(c.dim, faces, self.label(*c).map(str::to_owned))?;
            images[c.dim].push(CellRef::nondegenerate(*c));
        }
        b.set_basepoint(self.basepoint.and_then(|p| new_index[0][p.index].map(|i| CellId::new(0, i))));
        let sub = b.build_unchecked()?;
        images.truncate(sub.cells.len());
        Ok((sub, CellMap::new(images)))
    }

    /// All nondegenerate cells of dimension at most `n`.
    pub fn skeleton(&self, n: usize) -> CubicalSet {
        let mut k = self.clone();
        k.cells.truncate(n + 1);
        k
    }

    /// Disjoint union; cells of `parts[i]` follow those of `parts[..i]`.
    pub fn disjoint_union(parts: &[&CubicalSet]) -> CubicalSet {
        let mut out = CubicalSetBuilder::new();
        let mut offsets: Vec<Vec<usize>> = Vec::new();
        for p in parts {
            let off: Vec<usize> = (0..p.cells.len()).map(|d| out.num_cells(d)).collect();
            for c in p.all_cells() {
                let faces = p
                    .faces(c)
                    .iter()
                    .map(|f| CellRef { cell: CellId::new(f.cell.dim, f.cell.index + off[f.cell.dim]), deleted: f.deleted })
                    .collect();
                out.add_cell(c.dim, faces, p.label(c).map(str::to_owned)).expect("valid parts");
            }
            offsets.push(off);
        }
        out.build_unchecked().expect("no basepoint")
    }

    /// Every `dim`-cell, degenerate or not, in a fixed order.
    pub fn all_refs_of_dim(&self, dim: usize) -> Vec<CellRef> {
        let mut out = Vec::new();
        for k in 0..=dim.min(self.cells.len().saturating_sub(1)) {
            if self.num_cells(k) == 0 {
                continue;
            }
            for mask in subsets_of_size(dim, dim - k) {
                for c in self.cells_of_dim(k) {
                    out.push(CellRef { cell: c, deleted: mask });
                }
            }
        }
        out
    }

    pub fn standard_cube(n: usize) -> CubicalSet {
        cube_subcomplex(n, |_| true)
    }

    /// `∂I^n`, every cell of the standard cube except the top one.
    pub fn boundary(n: usize) -> Result<CubicalSet, CubeError> {
        if n == 0 {
            return Err(CubeError::NoBoundary);
        }
        Ok(CubicalSet::standard_cube(n).skeleton(n - 1))
    }

    /// The horn `∂I^n` minus its `(axis, sign)` facet (0-based axis).
    pub fn horn(n: usize, axis: usize, sign: bool) -> Result<CubicalSet, CubeError> {
        if n == 0 {
            return Err(CubeError::NoBoundary);
        }
        if axis >= n {
            return Err(CubeError::AxisOutOfRange { axis, dim: n });
        }
        let cube = CubicalSet::standard_cube(n);
        let gens = cube.cells_of_dim(n - 1).filter(|&c| {
            let w = cube.label(c).unwrap().as_bytes();
            w[axis] != if sign { b'1' } else { b'0' }
        });
        let keep = cube.closure(gens.collect::<Vec<_>>());
        Ok(cube.subcomplex(&keep)?.0)
    }
}

fn cube_subcomplex(n: usize, keep: impl Fn(&[u8]) -> bool) -> CubicalSet {
    // k-cells of I^n are words over {0,1,*} with k stars; faces substitute a star.
    let mut words: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n + 1];
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut w = vec![b'0'; n];
        for slot in w.iter_mut().rev() {
            *slot = b"01*"[c % 3];
            c /= 3;
        }
        if keep(&w) {
            let k = w.iter().filter(|&&x| x == b'*').count();
            words[k].push(w);
        }
    }
    for ws in &mut words {
        ws.sort();
    }
    let index: std::collections::HashMap<Vec<u8>, CellId> =
        words.iter().enumerate().flat_map(|(k, ws)| ws.iter().enumerate().map(move |(i, w)| (w.clone(), CellId::new(k, i)))).collect();
    let mut b = CubicalSetBuilder::new();
    for ws in words.iter() {
        for w in ws {
            let stars: Vec<usize> = (0..n).filter(|&p| w[p] == b'*').collect();
            let mut faces = Vec::with_capacity(2 * stars.len());
            for &p in &stars {
                for s in *b"01" {
                    let mut f = w.clone();
                    f[p] = s;
                    faces.push(CellRef::nondegenerate(index[&f]));
                }
            }
            b.add_cell(stars.len(), faces, Some(String::from_utf8(w.clone()).unwrap())).unwrap();
        }
    }
    b.build_unchecked().unwrap()
}

/// Bitmasks over `n` axes with exactly `k` bits set, ascending.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out.sort_unstable();
    out
}
