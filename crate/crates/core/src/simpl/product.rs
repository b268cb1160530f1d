use std::collections::HashMap;

use super::{CellId, SimplexRef, SimplicialSet, SimplicialSetBuilder};
use crate::cubset::{squeeze, subsets_of_size};

/// `X × Y` with the pair naming each nondegenerate simplex.
///
/// A nondegenerate `m`-simplex is a pair `(x·σ, y·τ)` of `m`-simplices whose
/// surjections never repeat a vertex at the same position.
#[derive(Clone, Debug)]
pub struct SimplicialProduct {
    pub complex: SimplicialSet,
    pairs: Vec<Vec<(SimplexRef, SimplexRef)>>,
    index: HashMap<(SimplexRef, SimplexRef), CellId>,
}

impl SimplicialProduct {
    pub fn pair(&self, cell: CellId) -> (SimplexRef, SimplexRef) {
        self.pairs[cell.dim][cell.index]
    }

    pub fn normalize(&self, x: &SimplexRef, y: &SimplexRef) -> SimplexRef {
        assert_eq!(x.dim(), y.dim());
        let common = x.collapsed & y.collapsed;
        let core = (
            SimplexRef { cell: x.cell, collapsed: squeeze(x.collapsed, common) },
            SimplexRef { cell: y.cell, collapsed: squeeze(y.collapsed, common) },
        );
        SimplexRef { cell: self.index[&core], collapsed: common }
    }
}

pub fn simplicial_product(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialProduct {
    let top = match (x.dim(), y.dim()) {
        (Some(a), Some(b)) => a + b,
        _ => return SimplicialProduct { complex: SimplicialSet::default(), pairs: Vec::new(), index: HashMap::new() },
    };
    let mut pairs: Vec<Vec<(SimplexRef, SimplexRef)>> = vec![Vec::new(); top + 1];
    let mut index = HashMap::new();
    for (m, level) in pairs.iter_mut().enumerate() {
        for a in (0..=m.min(x.dim().unwrap())).flat_map(|d| x.cells_of_dim(d)) {
            for b in (0..=m.min(y.dim().unwrap())).flat_map(|d| y.cells_of_dim(d)) {
                if a.dim + b.dim < m {
                    continue;
                }
                for s in subsets_of_size(m, m - a.dim) {
                    for t in subsets_of_size(m, m - b.dim) {
                        if s & t == 0 {
                            let p = (SimplexRef { cell: a, collapsed: s }, SimplexRef { cell: b, collapsed: t });
                            index.insert(p, CellId::new(m, level.len()));
                            level.push(p);
                        }
                    }
                }
            }
        }
    }
    let mut p = SimplicialProduct { complex: SimplicialSet::default(), pairs, index };
    let mut builder = SimplicialSetBuilder::new();
    for (m, level) in p.pairs.iter().enumerate() {
        for (a, b) in level {
            let faces = if m == 0 { Vec::new() } else { (0..=m).map(|i| p.normalize(&x.face_of(a, i), &y.face_of(b, i))).collect() };
            builder.add_simplex(m, faces, None).expect("product faces are well formed");
        }
    }
    if let (Some(a), Some(b)) = (x.basepoint(), y.basepoint()) {
        builder.set_basepoint(p.index.get(&(SimplexRef::nondegenerate(a), SimplexRef::nondegenerate(b))).copied());
    }
    p.complex = builder.build_unchecked().expect("basepoint is a vertex");
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_squared() {
        let d1 = SimplicialSet::standard_simplex(1);
        let p = simplicial_product(&d1, &d1);
        assert_eq!(p.complex.counts(), vec![4, 5, 2]);
        p.complex.check_identities().unwrap();
    }

    #[test]
    fn prism_counts() {
        // the nerve of the poset [2] x [1]: 12 comparable pairs, 10 three-chains
        let p = simplicial_product(&SimplicialSet::standard_simplex(2), &SimplicialSet::standard_simplex(1));
        assert_eq!(p.complex.counts(), vec![6, 12, 10, 3]);
        p.complex.check_identities().unwrap();
    }
}
