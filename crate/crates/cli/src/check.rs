use std::path::Path;

use cubhop::algtop::{cubical_chains, pi1_presentation};
use cubhop::latt::{unpointed_version, FiniteCategory, Lattice};
use cubhop::simpl::triangulate;
use cubhop::wcat::{augmentation, obstruction_complexes, obstruction_domain, pointed_relative_model, w_construction, EnrichedDiagram};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::commands::{load_category, load_lattice, simplicial_homology};
use crate::{Failure, Output};

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<String>,
}

fn check(name: &'static str, failures: Vec<String>) -> Check {
    Check { name, passed: failures.is_empty(), failures }
}

fn result(name: &'static str, r: Result<(), impl ToString>) -> Check {
    check(name, r.err().map(|e| e.to_string()).into_iter().collect())
}

fn slot_name(c: &FiniteCategory, u: usize, v: usize) -> String {
    format!("{}->{}", c.objects()[u], c.objects()[v])
}

/// Components of each slot against hom-sets: one component per morphism,
/// each with point homology and trivial fundamental group.
fn resolution_checks(c: &FiniteCategory, w: &EnrichedDiagram) -> Vec<Check> {
    let gamma = augmentation(w, c);
    let (mut comps, mut homology, mut pi1) = (Vec::new(), Vec::new(), Vec::new());
    for (&(u, v), s) in &w.slots {
        let hom = c.homset(u, v);
        let values = gamma.component_values(w, u, v);
        if values.len() != hom.len() || values.iter().any(|x| x.len() != 1) {
            comps.push(format!("{}: {} components for {} morphisms", slot_name(c, u, v), values.len(), hom.len()));
        }
        for comp in s.complex.components() {
            let (sub, _) = match s.complex.subcomplex(&comp) {
                Ok(x) => x,
                Err(e) => {
                    homology.push(format!("{}: {e}", slot_name(c, u, v)));
                    continue;
                }
            };
            if !cubical_chains::<BigInt>(&sub).homology().is_point() {
                homology.push(slot_name(c, u, v));
            }
            let base = sub.cells_of_dim(0).next().expect("components are nonempty");
            if !pi1_presentation(&sub, base).is_ok_and(|p| p.is_trivial()) {
                pi1.push(slot_name(c, u, v));
            }
        }
    }
    vec![
        result("augmentation", gamma.verify(w, c)),
        check("components_match_homsets", comps),
        check("component_homology_point", homology),
        check("component_pi1_trivial", pi1),
    ]
}

fn triangulation_checks(c: &FiniteCategory, w: &EnrichedDiagram) -> Check {
    let mut bad = Vec::new();
    for (&(u, v), s) in &w.slots {
        let t = triangulate(&s.complex);
        if !cubical_chains::<BigInt>(&s.complex).homology().same_as(&simplicial_homology(&t.complex)) {
            bad.push(slot_name(c, u, v));
        }
    }
    check("triangulated_homology_agrees", bad)
}

fn pointed_checks(l: &Lattice) -> Vec<Check> {
    let c = &l.category;
    let mut out = vec![check(
        "length_by_paths",
        if l.length == l.length_by_paths() { vec![] } else { vec![format!("{} != {}", l.length, l.length_by_paths())] },
    )];
    out.push(check(
        "unpointed_version_functorial",
        match unpointed_version(c) {
            Ok(u) if u.is_functorial(c) => vec![],
            Ok(_) => vec!["iota is not functorial".into()],
            Err(e) => vec![e.to_string()],
        },
    ));
    match pointed_relative_model(c) {
        Ok(p) => {
            out.push(result("pointed_compositions", p.check_compositions()));
            out.push(result("pointed_associativity", p.check_associativity()));
        }
        Err(e) => out.push(check("pointed_model", vec![e.to_string()])),
    }
    if l.length >= 2 {
        out.push(result("obstruction_bookkeeping", obstruction_complexes(l).and_then(|oc| oc.check(l))));
        out.push(check(
            "obstruction_domain_wedge",
            match obstruction_domain(l) {
                Ok(d) if d.is_wedge_of_spheres() => vec![],
                Ok(d) => vec![format!("reduced bettis {:?} for {} summands", d.homology.reduced_bettis(), d.wedge_summands)],
                Err(e) => vec![e.to_string()],
            },
        ));
    }
    out
}

pub fn run(path: &Path) -> Result<Output, Failure> {
    let (spec, c) = load_category(path)?;
    let w = w_construction(&c);
    let mut checks = vec![
        check(
            "face_coherence",
            w.slots
                .iter()
                .filter_map(|(&(u, v), s)| s.complex.check_face_coherence().err().map(|e| format!("{}: {e}", slot_name(&c, u, v))))
                .collect(),
        ),
        result("compositions", w.check_compositions()),
        result("associativity", w.check_associativity()),
    ];
    checks.extend(resolution_checks(&c, &w));
    checks.push(triangulation_checks(&c, &w));
    if spec.v_init.is_some() || spec.v_fin.is_some() {
        let l = load_lattice(path)?;
        if c.is_pointed() {
            checks.extend(pointed_checks(&l));
        }
    }
    let passed = checks.iter().all(|x| x.passed);
    let report = json!({ "passed": passed, "checks": checks });
    if passed {
        Ok(Output::Json(report))
    } else {
        let failed: Vec<&str> = checks.iter().filter(|x| !x.passed).map(|x| x.name).collect();
        Err(Failure::internal(format!("failed checks: {}", failed.join(", ")), Some(report)))
    }
}
