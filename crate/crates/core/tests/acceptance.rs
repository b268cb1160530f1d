//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::props;
use cubhop::algtop::{cubical_chains, pi1_presentation, simplicial_chains};
use cubhop::cubset::CubicalSet;
use cubhop::latt::{FiniteCategory, Lattice};
use cubhop::monoidal::{product, tensor};
use cubhop::simpl::{adjunction_check, triangulate, SimplicialSet};
use cubhop::toda::{bracket, golden_integer_instance, same_coset, search_mod2};
use cubhop::wcat::{obstruction_complexes, obstruction_domain, w_construction};
use cubhop::IntHomology;
use num_bigint::BigInt;
use proptest::prelude::any;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

struct Outcome {
    passed: bool,
    detail: String,
}

type Suite = (&'static str, fn(u64) -> Result<(), String>);
/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn homology(k: &CubicalSet) -> IntHomology {
    cubical_chains::<BigInt>(k).homology()
}

/// Reduced bettis without trailing zeros, and whether any torsion occurs.
fn reduced_profile(h: &IntHomology) -> (Vec<usize>, bool) {
    let mut b = h.reduced_bettis();
    while b.last() == Some(&0) {
        b.pop();
    }
    (b, h.groups.iter().any(|g| !g.torsion.is_empty()))
}

fn factorial_triangulation() -> Outcome {
    let mut tops = Vec::new();
    let mut census = Vec::new();
    for n in 1..=5 {
        let c = FiniteCategory::linear(n + 1, false);
        let l = Lattice::new(c.clone(), 0, n + 1).expect("linear categories are lattices");
        let t = triangulate(&w_construction(&c).slot(l.v_init, l.v_fin).complex);
        tops.push(t.complex.num_cells(n));
        if n == 2 {
            census = t.complex.counts();
        }
    }
    let want: Vec<usize> = (1..=5).map(|n| (1..=n).product()).collect();
    outcome(tops == want && census == vec![4, 5, 2], format!("top simplices {tops:?}, census at n = 2 {census:?}"))
}

fn tensor_vs_product() -> Outcome {
    let i = CubicalSet::standard_cube(1);
    let hp = homology(&product(&i, &i).complex);
    let ht = homology(&tensor(&i, &i).complex);
    let mut bettis = hp.bettis();
    while bettis.last() == Some(&0) {
        bettis.pop();
    }
    let torsion = hp.groups.iter().any(|g| !g.torsion.is_empty());
    let passed = bettis == vec![1, 1] && !torsion && ht.is_point();
    outcome(passed, format!("product bettis {:?}, tensor is a point: {}", hp.bettis(), ht.is_point()))
}

fn count_convolution() -> Outcome {
    let mut r = common::rng(301);
    let mut bad = 0;
    for _ in 0..200 {
        let k = common::random_cubical_set(&mut r, 20);
        let l = common::random_cubical_set(&mut r, 20);
        let (ck, cl) = (k.counts(), l.counts());
        let t = tensor(&k, &l).complex.counts();
        let top = ck.len() + cl.len() - 1;
        let ok = t.len() == top
            && (0..top)
                .all(|n| t[n] == (0..=n).map(|j| ck.get(j).copied().unwrap_or(0) * cl.get(n - j).copied().unwrap_or(0)).sum::<usize>());
        bad += usize::from(!ok);
    }
    outcome(bad == 0, format!("200 pairs, {bad} mismatches"))
}

fn resolution_shadow() -> Outcome {
    let corpus: Vec<_> = common::corpus().into_iter().filter(|(_, s)| !s.pointed).collect();
    let mut failures = Vec::new();
    let mut slots = 0;
    for (name, spec) in &corpus {
        let c = FiniteCategory::from_spec(spec).expect("corpus files validate");
        if let Ok(l) = Lattice::from_spec(spec) {
            if l.length > 4 {
                failures.push(format!("{name}: length {}", l.length));
            }
        }
        let w = w_construction(&c);
        for u in 0..c.num_objects() {
            for v in 0..c.num_objects() {
                if u == v || !c.precedes(u, v) {
                    continue;
                }
                slots += 1;
                let s = w.slot(u, v);
                let comps = s.complex.components();
                if comps.len() != c.homset(u, v).len() {
                    failures.push(format!("{name} {u}->{v}: {} components", comps.len()));
                }
                for comp in comps {
                    let (sub, _) = s.complex.subcomplex(&comp).expect("components are subcomplexes");
                    let base = sub.cells_of_dim(0).next().expect("components are nonempty");
                    if !homology(&sub).is_point() || !pi1_presentation(&sub, base).is_ok_and(|p| p.is_trivial()) {
                        failures.push(format!("{name} {u}->{v}: component not contractible"));
                    }
                }
            }
        }
    }
    let enough = corpus.len() >= 10 && corpus.iter().any(|(n, _)| n == "gamma3") && corpus.iter().any(|(n, _)| n == "square");
    outcome(enough && failures.is_empty(), format!("{} files, {slots} slots, failures {failures:?}", corpus.len()))
}

fn cofibration_bookkeeping() -> Outcome {
    let pointed: Vec<_> = common::corpus().into_iter().filter(|(_, s)| s.pointed).collect();
    let mut failures = Vec::new();
    for (name, spec) in &pointed {
        let r = Lattice::from_spec(spec)
            .map_err(|e| e.to_string())
            .and_then(|l| obstruction_complexes(&l).and_then(|oc| oc.check(&l)).map_err(|e| e.to_string()));
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    }
    outcome(!pointed.is_empty() && failures.is_empty(), format!("{} pointed lattices, failures {failures:?}", pointed.len()))
}

fn obstruction_domains() -> Outcome {
    let corpus = common::corpus();
    let expected = [("toda3", vec![0, 1]), ("double_bracket", vec![0, 2]), ("toda4", vec![0, 0, 1])];
    let mut report = Vec::new();
    let mut passed = true;
    for (name, want) in expected {
        let spec = &corpus.iter().find(|(n, _)| n == name).expect("corpus file present").1;
        let got = Lattice::from_spec(spec).ok().and_then(|l| obstruction_domain(&l).ok()).map(|d| reduced_profile(&d.homology));
        passed &= got == Some((want, false));
        report.push(format!("{name} {:?}", got.map(|g| g.0)));
    }
    outcome(passed, format!("reduced bettis: {}", report.join(", ")))
}

fn homology_cross_validation() -> Outcome {
    let mut r = common::rng(307);
    let mut bad = 0;
    for _ in 0..100 {
        let k = common::random_cubical_set(&mut r, 30);
        let hs = simplicial_chains::<BigInt>(&triangulate(&k).complex).homology();
        bad += usize::from(!homology(&k).same_as(&hs));
    }
    outcome(bad == 0, format!("100 complexes, {bad} disagreements"))
}

fn adjunction_counts() -> Outcome {
    let cubical = [
        ("I0", CubicalSet::standard_cube(0)),
        ("I1", CubicalSet::standard_cube(1)),
        ("I2", CubicalSet::standard_cube(2)),
        ("dI1", CubicalSet::boundary(1).unwrap()),
        ("dI2", CubicalSet::boundary(2).unwrap()),
        ("horn2", CubicalSet::horn(2, 0, true).unwrap()),
    ];
    let simplicial = [
        ("D0", SimplicialSet::standard_simplex(0)),
        ("D1", SimplicialSet::standard_simplex(1)),
        ("D2", SimplicialSet::standard_simplex(2)),
        ("dD2", SimplicialSet::simplex_boundary(2)),
        ("pts2", SimplicialSet::discrete(2)),
    ];
    let mut pairs = 0;
    let mut failures = Vec::new();
    let mut anchor = None;
    for (kn, k) in &cubical {
        for (xn, x) in &simplicial {
            match adjunction_check(k, x, 64) {
                Ok((a, b)) => {
                    pairs += 1;
                    if a != b {
                        failures.push(format!("({kn}, {xn}): {a} vs {b}"));
                    }
                    if (*kn, *xn) == ("I1", "D1") {
                        anchor = Some((a, b));
                    }
                }
                Err(e) => failures.push(format!("({kn}, {xn}): {e}")),
            }
        }
    }
    let passed = pairs >= 20 && failures.is_empty() && anchor == Some((3, 3));
    outcome(passed, format!("{pairs} pairs, (I1, D1) -> {anchor:?}, failures {failures:?}"))
}

fn bracket_well_definedness() -> Outcome {
    let mut r = common::rng(309);
    let mut bad = 0;
    for _ in 0..50 {
        let d = common::random_int_diagram(&mut r);
        let base = bracket(&d).representative;
        for _ in 0..10 {
            let e = common::perturb(&mut r, &d);
            bad += usize::from(!same_coset(&d, &base, &e.representative()));
        }
    }
    let golden = bracket(&golden_integer_instance());
    let search = search_mod2(6, 6);
    let found = search.found.as_ref().map(|d| !bracket(d).vanishes);
    let passed = bad == 0 && found == Some(true);
    outcome(
        passed,
        format!(
            "500 perturbations, {bad} left the coset; mod-2 search over {} profiles and {} strict diagrams found {}; integer instance class {:?} vanishes = {}",
            search.profiles,
            search.diagrams,
            if found.is_some() { "an instance" } else { "no nonvanishing instance" },
            golden.class.iter().map(ToString::to_string).collect::<Vec<_>>(),
            golden.vanishes
        ),
    )
}

fn property_suites() -> Outcome {
    let suites: [Suite; 4] = [
        ("cubical identities", props::cubical_identities),
        ("boundary squares to zero", props::boundary_squares_to_zero),
        ("face coherence", props::face_coherence),
        ("quotient functoriality", props::quotient_functoriality),
    ];
    let mut report = Vec::new();
    let mut passed = true;
    for (name, check) in suites {
        let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
        let r = runner.run(&any::<u64>(), |seed| check(seed).map_err(TestCaseError::fail));
        passed &= r.is_ok();
        report.push(match r {
            Ok(()) => format!("{name} ok"),
            Err(e) => format!("{name} failed: {e}"),
        });
    }
    outcome(passed, format!("1000 cases each: {}", report.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("factorial triangulation", factorial_triangulation, Some(10)),
        ("tensor vs product", tensor_vs_product, Some(1)),
        ("count convolution", count_convolution, Some(30)),
        ("resolution shadow", resolution_shadow, Some(60)),
        ("cofibration bookkeeping", cofibration_bookkeeping, None),
        ("obstruction domain", obstruction_domains, None),
        ("homology cross-validation", homology_cross_validation, None),
        ("adjunction counts", adjunction_counts, None),
        ("bracket well-definedness", bracket_well_definedness, Some(60)),
        ("property suites", property_suites, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|s| took < Duration::from_secs(s));
        let passed = o.passed && in_time;
        failed += usize::from(!passed);
        let budget = limit.map_or(String::new(), |s| format!(" (limit {s} s)"));
        let late = if in_time { "" } else { ", over the time limit" };
        println!("{} {:>2} {name}: {}; {:.2} s{budget}{late}", if passed { "PASS" } else { "FAIL" }, i + 1, o.detail, took.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
