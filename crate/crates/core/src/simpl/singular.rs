use std::collections::HashMap;

use super::{triangulate, SimplexRef, SimplicialSet};
use crate::cubset::{insert_axis, low_mask, squeeze, CellRef, CubicalSet, CubicalSetBuilder};

/// `S_cub X` truncated at dimension `N`.
///
/// Each `n`-cell is a simplicial map `Δ[1]^n -> X`, stored by its values on
/// the `n!` maximal chains of `{0,1}^n` (permutations in lexicographic
/// order).
#[derive(Clone, Debug)]
pub struct SingularCub {
    pub complex: CubicalSet,
    maps: Vec<Vec<Vec<SimplexRef>>>,
}

impl SingularCub {
    /// The values of a nondegenerate cell on the maximal chains.
    pub fn map_values(&self, cell: crate::cubset::CellId) -> &[SimplexRef] {
        &self.maps[cell.dim][cell.index]
    }
}

/// Maximal chains of `{0,1}^n`, as the order in which coordinates flip.
struct Chains {
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Chains {
    fn new(n: usize) -> Self {
        let mut perms = Vec::new();
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for i in 0..n {
                if !cur.contains(&i) {
                    cur.push(i);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        rec(n, &mut Vec::new(), &mut perms);
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Chains { perms, index }
    }

    fn vertices(&self, p: usize) -> Vec<u64> {
        let mut v = 0u64;
        let mut out = vec![0];
        for &i in &self.perms[p] {
            v |= 1 << i;
            out.push(v);
        }
        out
    }

    /// A maximal chain through the nondecreasing vertices `verts`, and the
    /// positions of `verts` on it.
    fn through(&self, n: usize, verts: &[u64]) -> (usize, Vec<usize>) {
        let mut perm = Vec::with_capacity(n);
        let mut seen = 0u64;
        for &w in verts.iter().chain(std::iter::once(&low_mask(n))) {
            for i in 0..n {
                if w >> i & 1 == 1 && seen >> i & 1 == 0 {
                    perm.push(i);
                    seen |= 1 << i;
                }
            }
        }
        let theta = verts.iter().map(|w| w.count_ones() as usize).collect();
        (self.index[&perm], theta)
    }
}

fn restrict(x: &SimplicialSet, chains: &Chains, n: usize, values: &[SimplexRef], verts: &[u64]) -> SimplexRef {
    let (p, theta) = chains.through(n, verts);
    x.act(&values[p], &theta)
}

/// A later chain, and the common vertex positions on it and on the earlier one.
type Overlap = (usize, Vec<usize>, Vec<usize>);

/// All simplicial maps `Δ[1]^n -> X`, in backtracking order.
fn enumerate_maps(x: &SimplicialSet, chains: &Chains, n: usize) -> Vec<Vec<SimplexRef>> {
    let candidates = x.all_refs_of_dim(n);
    let np = chains.perms.len();
    // for p > q, the positions of their common vertices on each chain
    let verts: Vec<Vec<u64>> = (0..np).map(|p| chains.vertices(p)).collect();
    let mut overlaps: Vec<Vec<Overlap>> = vec![Vec::new(); np];
    for p in 0..np {
        for q in 0..p {
            let (mut tp, mut tq) = (Vec::new(), Vec::new());
            for (t, w) in verts[p].iter().enumerate() {
                if verts[q][t] == *w {
                    tp.push(t);
                    tq.push(t);
                }
            }
            overlaps[p].push((q, tp, tq));
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<SimplexRef> = Vec::with_capacity(np);
    fn rec(
        x: &SimplicialSet,
        candidates: &[SimplexRef],
        overlaps: &[Vec<Overlap>],
        chosen: &mut Vec<SimplexRef>,
        out: &mut Vec<Vec<SimplexRef>>,
    ) {
        let p = chosen.len();
        if p == overlaps.len() {
            out.push(chosen.clone());
            return;
        }
        for c in candidates {
            let ok = overlaps[p].iter().all(|(q, tp, tq)| x.act(c, tp) == x.act(&chosen[*q], tq));
            if ok {
                chosen.push(*c);
                rec(x, candidates, overlaps, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(x, &candidates, &overlaps, &mut chosen, &mut out);
    out
}

/// Values of the face `d_axis^sign f` of an `n`-cube `f`.
fn face_values(x: &SimplicialSet, chains: &[Chains], n: usize, f: &[SimplexRef], axis: usize, sign: bool) -> Vec<SimplexRef> {
    let lower = &chains[n - 1];
    (0..lower.perms.len())
        .map(|p| {
            let embedded: Vec<u64> = lower.vertices(p).iter().map(|&w| insert_axis(w, axis, sign)).collect();
            restrict(x, &chains[n], n, f, &embedded)
        })
        .collect()
}

pub fn singular_cub(x: &SimplicialSet, truncation: usize) -> SingularCub {
    let chains: Vec<Chains> = (0..=truncation).map(Chains::new).collect();
    let mut tables: Vec<HashMap<Vec<SimplexRef>, CellRef>> = Vec::new();
    let mut maps: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    let mut b = CubicalSetBuilder::new();
    for n in 0..=truncation {
        let mut table = HashMap::new();
        let mut level = Vec::new();
        for f in enumerate_maps(x, &chains[n], n) {
            let mut deleted = 0u64;
            for axis in 0..n {
                let g = face_values(x, &chains, n, &f, axis, false);
                let degenerate = (0..chains[n].perms.len()).all(|p| {
                    let projected: Vec<u64> = chains[n].vertices(p).iter().map(|&w| squeeze(w, 1 << axis)).collect();
                    restrict(x, &chains[n - 1], n - 1, &g, &projected) == f[p]
                });
                if degenerate {
                    deleted |= 1 << axis;
                }
            }
            let r = if deleted == 0 {
                let faces = (0..n)
                    .flat_map(|axis| [false, true].map(|s| (axis, s)))
                    .map(|(axis, s)| tables[n - 1][&face_values(x, &chains, n, &f, axis, s)])
                    .collect();
                let id = b.add_cell(n, faces, None).expect("singular faces are well formed");
                level.push(f.clone());
                CellRef::nondegenerate(id)
            } else {
                let k = n - deleted.count_ones() as usize;
                let core: Vec<SimplexRef> = (0..chains[k].perms.len())
                    .map(|p| {
                        let embedded: Vec<u64> = chains[k].vertices(p).iter().map(|&w| spread(w, deleted, n)).collect();
                        restrict(x, &chains[n], n, &f, &embedded)
                    })
                    .collect();
                let c = tables[k][&core];
                debug_assert!(!c.is_degenerate());
                CellRef { cell: c.cell, deleted }
            };
            table.insert(f, r);
        }
        tables.push(table);
        maps.push(level);
    }
    while maps.last().is_some_and(Vec::is_empty) {
        maps.pop();
    }
    if let Some(p) = x.basepoint() {
        let r = tables[0][&vec![SimplexRef::nondegenerate(p)]];
        b.set_basepoint(Some(r.cell));
    }
    SingularCub { complex: b.build_unchecked().expect("basepoint is a vertex"), maps }
}

/// Places the bits of `w` at the positions outside `zeros` among `n`.
fn spread(w: u64, zeros: u64, n: usize) -> u64 {
    let mut out = 0;
    let mut k = 0;
    for i in 0..n {
        if zeros >> i & 1 == 0 {
            if w >> k & 1 == 1 {
                out |= 1 << i;
            }
            k += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AdjunctionError {
    #[error("inputs have {total} cells, above the bound {bound}")]
    BoundExceeded { total: usize, bound: usize },
}

/// Counts cubical maps `K -> Y` by backtracking over nondegenerate cells.
pub fn count_cubical_maps(k: &CubicalSet, y: &CubicalSet) -> u128 {
    let cells: Vec<_> = k.all_cells().collect();
    let top = k.dim().unwrap_or(0);
    let candidates: Vec<Vec<CellRef>> = (0..=top).map(|d| y.all_refs_of_dim(d)).collect();
    let mut assign: Vec<Vec<CellRef>> = k.counts().iter().map(|&n| Vec::with_capacity(n)).collect();
    fn rec(
        k: &CubicalSet,
        y: &CubicalSet,
        cells: &[crate::cubset::CellId],
        at: usize,
        candidates: &[Vec<CellRef>],
        assign: &mut Vec<Vec<CellRef>>,
    ) -> u128 {
        if at == cells.len() {
            return 1;
        }
        let c = cells[at];
        let mut total = 0;
        for cand in &candidates[c.dim] {
            let ok = (0..c.dim).all(|axis| {
                [false, true].iter().all(|&s| {
                    let f = k.face(c, axis, s);
                    assign[f.cell.dim][f.cell.index].degenerated_by(f.deleted) == y.face_of(cand, axis, s)
                })
            });
            if ok {
                assign[c.dim].push(*cand);
                total += rec(k, y, cells, at + 1, candidates, assign);
                assign[c.dim].pop();
            }
        }
        total
    }
    rec(k, y, &cells, 0, &candidates, &mut assign)
}

/// Counts simplicial maps `A -> X` by backtracking over nondegenerate simplices.
pub fn count_simplicial_maps(a: &SimplicialSet, x: &SimplicialSet) -> u128 {
    let cells: Vec<_> = a.all_cells().collect();
    let top = a.dim().unwrap_or(0);
    let candidates: Vec<Vec<SimplexRef>> = (0..=top).map(|d| x.all_refs_of_dim(d)).collect();
    let mut assign: Vec<Vec<SimplexRef>> = a.counts().iter().map(|&n| Vec::with_capacity(n)).collect();
    fn rec(
        a: &SimplicialSet,
        x: &SimplicialSet,
        cells: &[crate::cubset::CellId],
        at: usize,
        candidates: &[Vec<SimplexRef>],
        assign: &mut Vec<Vec<SimplexRef>>,
    ) -> u128 {
        if at == cells.len() {
            return 1;
        }
        let c = cells[at];
        let mut total = 0;
        for cand in &candidates[c.dim] {
            let ok = c.dim == 0
                || (0..=c.dim).all(|i| {
                    let f = a.face(c, i);
                    assign[f.cell.dim][f.cell.index].degenerated_by(f.collapsed) == x.face_of(cand, i)
                });
            if ok {
                assign[c.dim].push(*cand);
                total += rec(a, x, cells, at + 1, candidates, assign);
                assign[c.dim].pop();
            }
        }
        total
    }
    rec(a, x, &cells, 0, &candidates, &mut assign)
}

/// `(#Hom(K, S_cub X), #Hom(T K, X))`.
pub fn adjunction_check(k: &CubicalSet, x: &SimplicialSet, bound: usize) -> Result<(u128, u128), AdjunctionError> {
    let total = k.total_cells() + x.total_cells();
    if total > bound {
        return Err(AdjunctionError::BoundExceeded { total, bound });
    }
    let s = singular_cub(x, k.dim().unwrap_or(0));
    let t = triangulate(k);
    Ok((count_cubical_maps(k, &s.complex), count_simplicial_maps(&t.complex, x)))
}
