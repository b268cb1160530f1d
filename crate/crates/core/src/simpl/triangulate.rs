use std::collections::HashMap;

use super::{surjection_mask, CellId, SimplexRef, SimplicialMap, SimplicialProduct, SimplicialSet, SimplicialSetBuilder};
use crate::cubset::{low_mask, squeeze, BoxMorphism, CellMap, CellRef, Coord, CubicalSet};
use crate::monoidal::Tensor;

/// `T K` together with the origin of every simplex.
///
/// A nondegenerate simplex of `T K` is a nondegenerate cell `c` of `K`
/// together with a strict chain `0 = v_0 < ... < v_m = 1` in the vertex
/// poset `{0,1}^{dim c}`: these are the simplices of `Δ[1]^{dim c}` that lie
/// in no proper face of the cube.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub complex: SimplicialSet,
    origin: Vec<Vec<(CellId, Vec<u64>)>>,
    index: HashMap<(CellId, Vec<u64>), CellId>,
}

/// All strict chains from `0` to `1^n` with exactly `m` steps, each vertex a
/// bitmask; ordered by the sequence of vertices.
fn interior_chains(n: usize, m: usize) -> Vec<Vec<u64>> {
    fn rec(n: usize, m: usize, cur: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let full = low_mask(n);
        if acc.len() == m + 1 {
            if cur == full {
                out.push(acc.clone());
            }
            return;
        }
        let rest = full & !cur;
        let mut sub = rest;
        let mut nexts = Vec::new();
        while sub != 0 {
            nexts.push(cur | sub);
            sub = (sub - 1) & rest;
        }
        nexts.sort_unstable();
        for v in nexts {
            acc.push(v);
            rec(n, m, v, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(vec![0]);
        }
        return out;
    }
    if m > n {
        return out;
    }
    rec(n, m, 0, &mut vec![0], &mut out);
    out
}

impl Triangulation {
    pub fn origin(&self, simplex: CellId) -> (CellId, &[u64]) {
        let (c, ch) = &self.origin[simplex.dim][simplex.index];
        (*c, ch)
    }

    pub fn simplex(&self, cell: CellId, chain: &[u64]) -> Option<CellId> {
        self.index.get(&(cell, chain.to_vec())).copied()
    }

    /// The simplex of `T K` named by a cell of `K` and a nondecreasing chain
    /// of vertices of its cube.
    pub fn normalize_chain(&self, k: &CubicalSet, cell: CellId, verts: &[u64]) -> SimplexRef {
        let n = cell.dim;
        let first = verts[0];
        let last = *verts.last().unwrap();
        let fixed = (first | !last) & low_mask(n);
        let mut coords = Vec::with_capacity(n);
        let mut v = 0;
        for i in 0..n {
            if fixed >> i & 1 == 1 {
                coords.push(Coord::Const(first >> i & 1 == 1));
            } else {
                coords.push(Coord::Var(v));
                v += 1;
            }
        }
        let theta = BoxMorphism::new(v, coords).expect("valid face morphism");
        let r = k.act(&CellRef::nondegenerate(cell), &theta);
        let mut chain: Vec<u64> = Vec::with_capacity(verts.len());
        let mut values = Vec::with_capacity(verts.len());
        for &w in verts {
            let w = squeeze(squeeze(w, fixed), r.deleted);
            if chain.last() != Some(&w) {
                chain.push(w);
            }
            values.push(chain.len() - 1);
        }
        let target = self.index[&(r.cell, chain)];
        SimplexRef { cell: target, collapsed: surjection_mask(&values) }
    }

    /// DOT rendering of the 2-skeleton; edges interior to a square or higher
    /// cube are marked as diagonals.
    pub fn to_dot(&self, name: &str) -> String {
        self.complex.to_dot(name, &|e| self.origin(e).0.dim >= 2)
    }
}

pub fn triangulate(k: &CubicalSet) -> Triangulation {
    let top = k.dim().unwrap_or(0);
    let mut origin: Vec<Vec<(CellId, Vec<u64>)>> = vec![Vec::new(); if k.dim().is_some() { top + 1 } else { 0 }];
    let mut index = HashMap::new();
    for (m, level) in origin.iter_mut().enumerate() {
        for c in (m..=top).flat_map(|d| k.cells_of_dim(d)) {
            for ch in interior_chains(c.dim, m) {
                index.insert((c, ch.clone()), CellId::new(m, level.len()));
                level.push((c, ch));
            }
        }
    }
    let mut t = Triangulation { complex: SimplicialSet::default(), origin, index };
    let mut b = SimplicialSetBuilder::new();
    for (m, level) in t.origin.iter().enumerate() {
        for (c, ch) in level {
            let faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let sub: Vec<u64> = ch.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &w)| w).collect();
                        t.normalize_chain(k, *c, &sub)
                    })
                    .collect()
            };
            let label = if m == 0 { Some(k.label(*c).map_or_else(|| format!("v{}", c.index), str::to_owned)) } else { None };
            b.add_simplex(m, faces, label).expect("triangulation faces are well formed");
        }
    }
    if let Some(p) = k.basepoint() {
        b.set_basepoint(t.simplex(p, &[0]));
    }
    t.complex = b.build_unchecked().expect("basepoint is a vertex");
    t
}

/// `T f: T K -> T L` for a cell map `f: K -> L`.
pub fn triangulate_map(tk: &Triangulation, l: &CubicalSet, tl: &Triangulation, f: &CellMap) -> SimplicialMap {
    SimplicialMap::new(
        tk.origin
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(c, ch)| {
                        let img = f.image(*c);
                        let projected: Vec<u64> = ch.iter().map(|&w| squeeze(w, img.deleted)).collect();
                        tl.normalize_chain(l, img.cell, &projected)
                    })
                    .collect()
            })
            .collect(),
    )
}

/// The isomorphism `T(K ⊗ L) -> T K × T L` splitting chain coordinates.
pub fn tensor_triangulation_iso(
    t: &Tensor,
    tkl: &Triangulation,
    k: &CubicalSet,
    tk: &Triangulation,
    l: &CubicalSet,
    tl: &Triangulation,
    prod: &SimplicialProduct,
) -> SimplicialMap {
    SimplicialMap::new(
        tkl.origin
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(c, ch)| {
                        let (a, b) = t.pair(*c);
                        let j = a.dim;
                        let xs: Vec<u64> = ch.iter().map(|&w| w & low_mask(j)).collect();
                        let ys: Vec<u64> = ch.iter().map(|&w| w >> j).collect();
                        let x = tk.normalize_chain(k, a, &xs);
                        let y = tl.normalize_chain(l, b, &ys);
                        prod.normalize(&x, &y)
                    })
                    .collect()
            })
            .collect(),
    )
}
