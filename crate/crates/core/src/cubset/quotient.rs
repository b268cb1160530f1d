use std::collections::{BTreeMap, HashMap, HashSet};

use super::{CellId, CellMap, CellRef, CubeError, CubicalSet, CubicalSetBuilder};

/// A quotient complex together with the projection onto it.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub quotient: CubicalSet,
    pub map: CellMap,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn push(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl CubicalSet {
    /// The quotient by the smallest congruence containing `pairs`.
    ///
    /// A cell identified with a degenerate cell disappears; every other class
    /// of nondegenerate cells becomes one cell, represented by its member of
    /// lowest index (whose label it keeps).
    pub fn quotient(&self, pairs: &[(CellRef, CellRef)]) -> Result<QuotientResult, CubeError> {
        for (a, b) in pairs {
            if a.dim() != b.dim() {
                return Err(CubeError::DimensionMismatch(a.dim(), b.dim()));
            }
            for r in [a, b] {
                if !self.contains(r.cell) {
                    return Err(CubeError::MissingCell(r.cell));
                }
            }
        }
        let by_dim = self.face_closed_pairs(pairs);
        let top = self.dim().map_or(0, |d| d + 1);
        let mut img: Vec<Vec<CellRef>> = Vec::with_capacity(top);
        let mut b = CubicalSetBuilder::new();
        let map_ref = |img: &Vec<Vec<CellRef>>, r: &CellRef| img[r.cell.dim][r.cell.index].degenerated_by(r.deleted);
        for d in 0..top {
            let n = self.num_cells(d);
            let mut uf = UnionFind::new(n);
            let mut forms: Vec<CellRef> = Vec::new();
            let mut interned: HashMap<CellRef, usize> = HashMap::new();
            let mut node = |uf: &mut UnionFind, img: &Vec<Vec<CellRef>>, r: &CellRef| -> usize {
                if !r.is_degenerate() {
                    return r.cell.index;
                }
                let q = map_ref(img, r);
                *interned.entry(q).or_insert_with(|| {
                    forms.push(q);
                    uf.push()
                })
            };
            for (x, y) in by_dim.get(&d).into_iter().flatten() {
                let nx = node(&mut uf, &img, x);
                let ny = node(&mut uf, &img, y);
                uf.union(nx, ny);
            }
            // class root -> its degenerate form, if any
            let mut degenerate_of: HashMap<usize, CellRef> = HashMap::new();
            for (k, q) in forms.iter().enumerate() {
                let root = uf.find(n + k);
                if let Some(prev) = degenerate_of.insert(root, *q) {
                    if prev != *q {
                        return Err(CubeError::InconsistentQuotient(prev, *q));
                    }
                }
            }
            let mut level = Vec::with_capacity(n);
            let mut new_cell: HashMap<usize, CellId> = HashMap::new();
            for i in 0..n {
                let root = uf.find(i);
                if let Some(q) = degenerate_of.get(&root) {
                    level.push(*q);
                    continue;
                }
                let id = match new_cell.get(&root) {
                    Some(id) => *id,
                    None => {
                        let c = CellId::new(d, i);
                        let faces = self.faces(c).iter().map(|f| map_ref(&img, f)).collect();
                        let id = b.add_cell(d, faces, self.label(c).map(str::to_owned))?;
                        new_cell.insert(root, id);
                        id
                    }
                };
                level.push(CellRef::nondegenerate(id));
            }
            img.push(level);
        }
        if let Some(p) = self.basepoint() {
            b.set_basepoint(Some(img[0][p.index].cell));
        }
        let quotient = b.build_unchecked()?;
        Ok(QuotientResult { quotient, map: CellMap::new(img) })
    }

    /// Collapses the cells of `sub` (given as a face-closed set of cells) to
    /// the vertex `base`, which becomes the basepoint.
    pub fn collapse(&self, sub: &std::collections::BTreeSet<CellId>, base: CellId) -> Result<QuotientResult, CubeError> {
        let pairs: Vec<(CellRef, CellRef)> = sub.iter().map(|&c| (CellRef::nondegenerate(c), CellRef::collapsed(base, c.dim))).collect();
        let q = self.clone().with_basepoint(Some(base))?.quotient(&pairs)?;
        Ok(q)
    }

    fn face_closed_pairs(&self, pairs: &[(CellRef, CellRef)]) -> BTreeMap<usize, Vec<(CellRef, CellRef)>> {
        let mut seen: HashSet<(CellRef, CellRef)> = HashSet::new();
        let mut stack: Vec<(CellRef, CellRef)> = Vec::new();
        for &(a, b) in pairs {
            if a != b {
                stack.push(if a <= b { (a, b) } else { (b, a) });
            }
        }
        let mut out: BTreeMap<usize, Vec<(CellRef, CellRef)>> = BTreeMap::new();
        while let Some((a, b)) = stack.pop() {
            if !seen.insert((a, b)) {
                continue;
            }
            out.entry(a.dim()).or_default().push((a, b));
            for axis in 0..a.dim() {
                for sign in [false, true] {
                    let fa = self.face_of(&a, axis, sign);
                    let fb = self.face_of(&b, axis, sign);
                    if fa != fb {
                        let p = if fa <= fb { (fa, fb) } else { (fb, fa) };
                        if !seen.contains(&p) {
                            stack.push(p);
                        }
                    }
                }
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }
}
