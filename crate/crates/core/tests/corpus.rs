mod common;

use std::collections::BTreeSet;

use cubhop::algtop::{cubical_chains, pi1_presentation};
use cubhop::latt::{unpointed_version, ChainQuery, FiniteCategory, Lattice, LengthConstraint};
use cubhop::wcat::{augmentation, obstruction_complexes, obstruction_domain, w_construction};
use num_bigint::BigInt;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn corpus_is_large_enough() {
    let all = common::corpus();
    let unpointed = all.iter().filter(|(_, s)| !s.pointed).count();
    assert!(unpointed >= 10, "{unpointed} unpointed files");
    assert!(all.iter().any(|(n, _)| n == "gamma3") && all.iter().any(|(n, _)| n == "square"));
}

#[test]
fn every_slot_resolves_its_homset() {
    for (name, spec) in common::corpus().into_iter().filter(|(_, s)| !s.pointed) {
        let c = FiniteCategory::from_spec(&spec).unwrap();
        let w = w_construction(&c);
        augmentation(&w, &c).verify(&w, &c).unwrap();
        for u in 0..c.num_objects() {
            for v in 0..c.num_objects() {
                if u == v {
                    continue;
                }
                let hom = c.homset(u, v).len();
                let Some(s) = w.slots.get(&(u, v)) else {
                    assert_eq!(hom, 0, "{name}: missing slot");
                    continue;
                };
                let comps = s.complex.components();
                assert_eq!(comps.len(), hom, "{name} {u}->{v}");
                for comp in comps {
                    let (sub, _) = s.complex.subcomplex(&comp).unwrap();
                    assert!(cubical_chains::<BigInt>(&sub).homology().is_point(), "{name} {u}->{v}");
                    let base = sub.cells_of_dim(0).next().unwrap();
                    assert!(pi1_presentation(&sub, base).unwrap().is_trivial(), "{name} {u}->{v}");
                }
            }
        }
    }
}

#[test]
fn top_slot_has_dimension_length_minus_one() {
    for (name, spec) in common::corpus() {
        let Ok(l) = Lattice::from_spec(&spec) else { continue };
        let w = w_construction(&l.category);
        let top = w.slot(l.v_init, l.v_fin).complex.dim().unwrap();
        assert_eq!(top + 1, l.length, "{name}");
        for (&(u, v), s) in &w.slots {
            if (u, v) != (l.v_init, l.v_fin) {
                assert!(s.complex.dim().is_none_or(|d| d < top), "{name} {u}->{v}");
            }
        }
    }
}

#[test]
fn compositions_are_associative_inclusions() {
    for (name, spec) in common::corpus() {
        let c = FiniteCategory::from_spec(&spec).unwrap();
        let w = w_construction(&c);
        w.check_compositions().unwrap_or_else(|e| panic!("{name}: {e}"));
        w.check_associativity().unwrap_or_else(|e| panic!("{name}: {e}"));
        for comp in w.compositions.values() {
            assert!(comp.map.is_injective(), "{name}");
        }
    }
}

#[test]
fn linear_census_is_binomial() {
    for k in 1..=6 {
        let c = FiniteCategory::linear(k, false);
        let l = Lattice::new(c.clone(), 0, k).unwrap();
        let counts = w_construction(&c).slot(l.v_init, l.v_fin).complex.counts();
        let n = k - 1;
        let want: Vec<usize> = (0..=n).map(|j| binomial(n, j) << (n - j)).collect();
        assert_eq!(counts, want, "length {k}");
    }
}

#[test]
fn lengths_agree_between_traversals() {
    for (name, spec) in common::corpus() {
        if let Ok(l) = Lattice::from_spec(&spec) {
            assert_eq!(l.length, l.length_by_paths(), "{name}");
        }
    }
}

#[test]
fn null_sequences_nest() {
    for (name, spec) in common::corpus().into_iter().filter(|(_, s)| s.pointed) {
        let l = Lattice::from_spec(&spec).unwrap();
        let reduced: BTreeSet<Vec<usize>> = l.null_sequences(true).unwrap().into_iter().map(|c| c.morphisms).collect();
        let all: BTreeSet<Vec<usize>> = l.null_sequences(false).unwrap().into_iter().map(|c| c.morphisms).collect();
        assert!(reduced.is_subset(&all), "{name}");
        let chains: BTreeSet<Vec<usize>> = l
            .category
            .chains(l.v_init, l.v_fin, ChainQuery { length: LengthConstraint::Any, nonzero: false })
            .into_iter()
            .map(|c| c.morphisms)
            .collect();
        assert!(all.is_subset(&chains), "{name}");
        let j = l.j_gamma().unwrap();
        assert!(j.iter().all(|ch| reduced.contains(&ch.morphisms) && ch.len() == l.length), "{name}");
    }
}

#[test]
fn unpointed_version_is_functorial() {
    for (name, spec) in common::corpus().into_iter().filter(|(_, s)| s.pointed) {
        let c = FiniteCategory::from_spec(&spec).unwrap();
        assert!(unpointed_version(&c).unwrap().is_functorial(&c), "{name}");
    }
}

#[test]
fn obstruction_bookkeeping() {
    for (name, spec) in common::corpus().into_iter().filter(|(_, s)| s.pointed) {
        let l = Lattice::from_spec(&spec).unwrap();
        let oc = obstruction_complexes(&l).unwrap();
        oc.check(&l).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(oc.j.len(), l.j_gamma().unwrap().len(), "{name}");
    }
}

#[test]
fn obstruction_domain_is_a_wedge_of_spheres() {
    for (name, spec) in common::corpus().into_iter().filter(|(_, s)| s.pointed) {
        let l = Lattice::from_spec(&spec).unwrap();
        let d = obstruction_domain(&l).unwrap();
        let j = l.j_gamma().unwrap().len();
        let mut want = vec![0; d.n];
        want[d.n - 1] = j;
        let mut got = d.homology.reduced_bettis();
        got.resize(d.n, 0);
        assert_eq!(got, want, "{name}");
        assert!(d.homology.groups.iter().all(|g| g.torsion.is_empty()), "{name}");
    }
}
