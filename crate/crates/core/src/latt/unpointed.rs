use std::collections::{BTreeMap, HashMap};

use super::{CategorySpec, ChainQuery, ComposeSpec, FiniteCategory, LattError, LengthConstraint, MorphismSpec};

/// `U_p(Γ)` with the comparison functor `ι: U_p(Γ) -> Γ`.
#[derive(Clone, Debug)]
pub struct UnpointedVersion {
    pub category: FiniteCategory,
    /// `ι` on morphisms.
    pub iota: Vec<usize>,
    /// Normal-form word of each morphism, in written order over `Γ`'s
    /// morphism indices.
    pub words: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Paths of nonzero morphisms modulo the congruence generated by the table
/// entries whose factors and composite are all nonzero.
pub fn unpointed_version(g: &FiniteCategory) -> Result<UnpointedVersion, LattError> {
    if !g.is_pointed() {
        return Err(LattError::NotPointed);
    }
    let n = g.num_objects();
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if g.precedes(u, v) {
                paths.extend(g.chains(u, v, ChainQuery::nonzero(LengthConstraint::Any)).into_iter().map(|c| c.morphisms));
            }
        }
    }
    let index: HashMap<Vec<usize>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind((0..paths.len()).collect());
    for (i, p) in paths.iter().enumerate() {
        for k in 0..p.len().saturating_sub(1) {
            let h = g.compose(p[k + 1], p[k]).expect("paths compose");
            if !g.is_zero(h) {
                let mut q = p[..k].to_vec();
                q.push(h);
                q.extend_from_slice(&p[k + 2..]);
                uf.union(i, index[&q]);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..paths.len() {
        classes.entry(uf.find(i)).or_default().push(i);
    }
    let mut reps: Vec<Vec<usize>> = classes
        .values()
        .map(|members| members.iter().map(|&i| &paths[i]).min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b))).unwrap().clone())
        .collect();
    reps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let class_of: HashMap<usize, usize> = reps.iter().enumerate().map(|(c, w)| (uf.find(index[w]), c)).collect();
    let word_class = |w: &Vec<usize>, uf: &mut UnionFind| class_of[&uf.find(index[w])];

    let name = |w: &[usize]| w.iter().map(|&m| g.morphism(m).id.as_str()).collect::<Vec<_>>().join("*");
    let src = |w: &[usize]| g.morphism(*w.last().unwrap()).src;
    let dst = |w: &[usize]| g.morphism(w[0]).dst;
    let mut compose = Vec::new();
    for x in &reps {
        for y in &reps {
            if dst(x) == src(y) {
                let mut w = y.clone();
                w.extend_from_slice(x);
                let c = word_class(&w, &mut uf);
                compose.push(ComposeSpec { first: name(x), then: name(y), equals: name(&reps[c]) });
            }
        }
    }
    let spec = CategorySpec {
        objects: g.objects().to_vec(),
        morphisms: reps
            .iter()
            .map(|w| MorphismSpec { id: name(w), src: g.objects()[src(w)].clone(), dst: g.objects()[dst(w)].clone() })
            .collect(),
        compose,
        pointed: false,
        v_init: None,
        v_fin: None,
    };
    let category = FiniteCategory::from_spec(&spec).expect("the path category is a valid category");
    let iota = reps.iter().map(|w| g.compose_chain(w).expect("paths compose")).collect();
    Ok(UnpointedVersion { category, iota, words: reps })
}

impl UnpointedVersion {
    /// `ι(y ∘ x) = ι(y) ∘ ι(x)` on every composable pair.
    pub fn is_functorial(&self, g: &FiniteCategory) -> bool {
        let c = &self.category;
        (0..c.morphisms().len()).all(|x| {
            c.outgoing(c.morphism(x).dst).iter().all(|&y| {
                let xy = c.compose(x, y).unwrap();
                g.compose(self.iota[x], self.iota[y]) == Some(self.iota[xy])
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latt::Lattice;

    #[test]
    fn toda_unpointed_is_free() {
        let l = Lattice::new(FiniteCategory::linear(3, true), 0, 3).unwrap();
        let u = unpointed_version(&l.category).unwrap();
        assert_eq!(u.category.morphisms().len(), 6);
        let h = u.category.homset(0, 3);
        assert_eq!(h.len(), 1);
        assert_eq!(u.category.morphism(h[0]).id, "phi1*phi2*phi3");
        assert!(l.category.is_zero(u.iota[h[0]]));
        assert!(u.is_functorial(&l.category));
    }

    #[test]
    fn nonzero_composites_survive() {
        // pointed but with every composite nonzero: nothing new is added
        let spec: CategorySpec = serde_json::from_str(
            r#"{"objects":["a","b","c"],
                "morphisms":[{"id":"f","src":"a","dst":"b"},{"id":"g","src":"b","dst":"c"},{"id":"gf","src":"a","dst":"c"}],
                "compose":[{"first":"f","then":"g","equals":"gf"}],"pointed":true}"#,
        )
        .unwrap();
        let g = FiniteCategory::from_spec(&spec).unwrap();
        let u = unpointed_version(&g).unwrap();
        assert_eq!(u.category.morphisms().len(), 3);
        for (x, &i) in u.iota.iter().enumerate() {
            assert!(!g.is_zero(i));
            assert_eq!(g.morphism(i).id, u.category.morphism(x).id);
        }
        assert!(u.is_functorial(&g));
    }

    #[test]
    fn square_relation_survives() {
        let spec: CategorySpec = serde_json::from_str(
            r#"{"objects":["a","b1","b2","c"],
                "morphisms":[{"id":"f1","src":"a","dst":"b1"},{"id":"f2","src":"a","dst":"b2"},
                             {"id":"g1","src":"b1","dst":"c"},{"id":"g2","src":"b2","dst":"c"},{"id":"m","src":"a","dst":"c"}],
                "compose":[{"first":"f1","then":"g1","equals":"m"},{"first":"f2","then":"g2","equals":"m"}],"pointed":true}"#,
        )
        .unwrap();
        let g = FiniteCategory::from_spec(&spec).unwrap();
        let u = unpointed_version(&g).unwrap();
        assert_eq!(u.category.homset(0, 3).len(), 1);
        assert!(u.is_functorial(&g));
    }

    #[test]
    fn unpointed_input_rejected() {
        assert!(matches!(unpointed_version(&FiniteCategory::linear(2, false)), Err(LattError::NotPointed)));
    }
}
