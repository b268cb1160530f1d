//! The cubical tensor product, the levelwise product, and the comparison
//! map `theta: K ⊗ L -> K × L`.
//!
//! A nondegenerate `n`-cell of `K ⊗ L` is a pair `(a, b)` of nondegenerate
//! cells with `dim a + dim b = n`; the first `dim a` axes act on `a`, the
//! rest on `b`. A nondegenerate `n`-cell of `K × L` is a pair of `n`-cells
//! `(a·π_{D1}, b·π_{D2})` with `D1 ∩ D2 = ∅`: a common degenerate axis would
//! make the pair itself degenerate.

use std::collections::HashMap;

use crate::cubset::{compose_deleted, squeeze, subsets_of_size, CellId, CellMap, CellRef, CubicalSet, CubicalSetBuilder};

/// `K ⊗ L` with the pairing that names each cell.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub complex: CubicalSet,
    pairs: Vec<Vec<(CellId, CellId)>>,
    index: HashMap<(CellId, CellId), CellId>,
}

impl Tensor {
    /// The `(K-cell, L-cell)` pair of a cell.
    pub fn pair(&self, cell: CellId) -> (CellId, CellId) {
        self.pairs[cell.dim][cell.index]
    }

    pub fn cell(&self, a: CellId, b: CellId) -> CellId {
        self.index[&(a, b)]
    }

    /// `x ⊗ y` for possibly degenerate cells.
    pub fn ref_of(&self, x: &CellRef, y: &CellRef) -> CellRef {
        CellRef { cell: self.cell(x.cell, y.cell), deleted: x.deleted | y.deleted << x.dim() }
    }
}

pub fn tensor(k: &CubicalSet, l: &CubicalSet) -> Tensor {
    let top = match (k.dim(), l.dim()) {
        (Some(a), Some(b)) => a + b,
        _ => return Tensor { complex: CubicalSet::empty(), pairs: Vec::new(), index: HashMap::new() },
    };
    let mut pairs: Vec<Vec<(CellId, CellId)>> = vec![Vec::new(); top + 1];
    let mut index = HashMap::new();
    for (n, level) in pairs.iter_mut().enumerate() {
        for j in 0..=n {
            for a in k.cells_of_dim(j) {
                for b in l.cells_of_dim(n - j) {
                    index.insert((a, b), CellId::new(n, level.len()));
                    level.push((a, b));
                }
            }
        }
    }
    let mut t = Tensor { complex: CubicalSet::empty(), pairs, index };
    let mut builder = CubicalSetBuilder::new();
    for level in &t.pairs {
        for &(a, b) in level {
            let (j, m) = (a.dim, b.dim);
            let mut faces = Vec::with_capacity(2 * (j + m));
            for axis in 0..j + m {
                for sign in [false, true] {
                    faces.push(if axis < j {
                        t.ref_of(&k.face(a, axis, sign), &CellRef::nondegenerate(b))
                    } else {
                        t.ref_of(&CellRef::nondegenerate(a), &l.face(b, axis - j, sign))
                    });
                }
            }
            let label = match (k.label(a), l.label(b)) {
                (Some(x), Some(y)) => Some(format!("{x}⊗{y}")),
                _ => None,
            };
            builder.add_cell(j + m, faces, label).expect("tensor faces are well formed");
        }
    }
    if let (Some(p), Some(q)) = (k.basepoint(), l.basepoint()) {
        builder.set_basepoint(Some(t.cell(p, q)));
    }
    t.complex = builder.build_unchecked().expect("tensor basepoint is a vertex");
    t
}

/// The cell map `f ⊗ g: K ⊗ L -> K' ⊗ L'`.
pub fn tensor_map(source: &Tensor, target: &Tensor, f: &CellMap, g: &CellMap) -> CellMap {
    CellMap::new(source.pairs.iter().map(|level| level.iter().map(|&(a, b)| target.ref_of(&f.image(a), &g.image(b))).collect()).collect())
}

/// `(K ⊗ L) ⊗ M -> K ⊗ (L ⊗ M)`.
pub fn associator(kl: &Tensor, kl_m: &Tensor, lm: &Tensor, k_lm: &Tensor) -> CellMap {
    let images = kl_m
        .pairs
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|&(ab, c)| {
                    let (a, b) = kl.pair(ab);
                    CellRef::nondegenerate(k_lm.cell(a, lm.cell(b, c)))
                })
                .collect()
        })
        .collect();
    CellMap::new(images)
}

/// `K ⊗ I^0 -> K` and `I^0 ⊗ K -> K`.
pub fn unitor(t: &Tensor, unit_on_left: bool) -> CellMap {
    CellMap::new(
        t.pairs
            .iter()
            .map(|level| level.iter().map(|&(a, b)| CellRef::nondegenerate(if unit_on_left { b } else { a })).collect())
            .collect(),
    )
}

/// The symmetry `K ⊗ L -> L ⊗ K` as a bijection of nondegenerate cells.
///
/// It reorders axes (the `K` block moves behind the `L` block), so it is a
/// bijection of cell names rather than a map of cubical sets.
pub fn tensor_symmetry(kl: &Tensor, lk: &Tensor) -> Vec<Vec<CellId>> {
    kl.pairs.iter().map(|level| level.iter().map(|&(a, b)| lk.cell(b, a)).collect()).collect()
}

/// A cell of a product: a pair of `n`-cells.
pub type ProductPair = (CellRef, CellRef);

/// `K × L` with the pair naming each nondegenerate cell.
#[derive(Clone, Debug)]
pub struct Product {
    pub complex: CubicalSet,
    pairs: Vec<Vec<ProductPair>>,
    index: HashMap<ProductPair, CellId>,
}

impl Product {
    pub fn pair(&self, cell: CellId) -> ProductPair {
        self.pairs[cell.dim][cell.index]
    }

    pub fn cell(&self, x: &CellRef, y: &CellRef) -> Option<CellId> {
        self.index.get(&(*x, *y)).copied()
    }

    /// The normalized form of an arbitrary pair of equal-dimensional cells.
    pub fn normalize(&self, x: &CellRef, y: &CellRef) -> CellRef {
        assert_eq!(x.dim(), y.dim());
        let common = x.deleted & y.deleted;
        let core =
            (CellRef { cell: x.cell, deleted: squeeze(x.deleted, common) }, CellRef { cell: y.cell, deleted: squeeze(y.deleted, common) });
        let cell = self.index[&core];
        debug_assert_eq!(compose_deleted(common, core.0.deleted), x.deleted);
        CellRef { cell, deleted: common }
    }

    pub fn pairs(&self) -> &[Vec<ProductPair>] {
        &self.pairs
    }
}

pub fn product(k: &CubicalSet, l: &CubicalSet) -> Product {
    let top = match (k.dim(), l.dim()) {
        (Some(a), Some(b)) => a + b,
        _ => return Product { complex: CubicalSet::empty(), pairs: Vec::new(), index: HashMap::new() },
    };
    let mut pairs: Vec<Vec<ProductPair>> = vec![Vec::new(); top + 1];
    let mut index = HashMap::new();
    for (n, level) in pairs.iter_mut().enumerate() {
        for a in (0..=n.min(k.dim().unwrap())).flat_map(|d| k.cells_of_dim(d)) {
            for b in (0..=n.min(l.dim().unwrap())).flat_map(|d| l.cells_of_dim(d)) {
                if a.dim + b.dim < n {
                    continue;
                }
                for d1 in subsets_of_size(n, n - a.dim) {
                    for d2 in subsets_of_size(n, n - b.dim) {
                        if d1 & d2 != 0 {
                            continue;
                        }
                        let p = (CellRef { cell: a, deleted: d1 }, CellRef { cell: b, deleted: d2 });
                        index.insert(p, CellId::new(n, level.len()));
                        level.push(p);
                    }
                }
            }
        }
    }
    let mut p = Product { complex: CubicalSet::empty(), pairs, index };
    let mut builder = CubicalSetBuilder::new();
    for (n, level) in p.pairs.iter().enumerate() {
        for (x, y) in level {
            let mut faces = Vec::with_capacity(2 * n);
            for axis in 0..n {
                for sign in [false, true] {
                    faces.push(p.normalize(&k.face_of(x, axis, sign), &l.face_of(y, axis, sign)));
                }
            }
            builder.add_cell(n, faces, None).expect("product faces are well formed");
        }
    }
    if let (Some(a), Some(b)) = (k.basepoint(), l.basepoint()) {
        builder.set_basepoint(p.cell(&CellRef::nondegenerate(a), &CellRef::nondegenerate(b)));
    }
    p.complex = builder.build_unchecked().expect("product basepoint is a vertex");
    p
}

/// The cell map `f × g: K × L -> K' × L'`.
pub fn product_map(source: &Product, target: &Product, f: &CellMap, g: &CellMap) -> CellMap {
    CellMap::new(
        source.pairs.iter().map(|level| level.iter().map(|(x, y)| target.normalize(&f.map_ref(x), &g.map_ref(y))).collect()).collect(),
    )
}

/// The symmetry `K × L -> L × K`; a genuine isomorphism of cubical sets.
pub fn product_symmetry(kl: &Product, lk: &Product) -> CellMap {
    CellMap::new(
        kl.pairs
            .iter()
            .map(|level| level.iter().map(|(x, y)| CellRef::nondegenerate(lk.cell(y, x).expect("swapped pair exists"))).collect())
            .collect(),
    )
}

/// `theta: K ⊗ L -> K × L`, induced by the two projections of the tensor.
pub fn theta(t: &Tensor, p: &Product) -> CellMap {
    CellMap::new(
        t.pairs
            .iter()
            .enumerate()
            .map(|(n, level)| {
                level
                    .iter()
                    .map(|&(a, b)| {
                        let j = a.dim;
                        let first = CellRef { cell: a, deleted: crate::cubset::low_mask(n) & !crate::cubset::low_mask(j) };
                        let second = CellRef { cell: b, deleted: crate::cubset::low_mask(j) };
                        CellRef::nondegenerate(p.cell(&first, &second).expect("theta lands on a nondegenerate pair"))
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Moves the first `j` axes of a mask over `n` axes behind the others.
pub fn rotate_axes(mask: u64, j: usize, n: usize) -> u64 {
    let low = mask & crate::cubset::low_mask(j);
    let high = mask >> j;
    high | low << (n - j)
}
