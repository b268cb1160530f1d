use std::io::Read;
use std::path::Path;

use cubhop::algtop::{cubical_chains, simplicial_chains, Homology};
use cubhop::cubset::{ComplexJson, CubicalSet};
use cubhop::latt::{CategorySpec, FiniteCategory, LattError, Lattice};
use cubhop::monoidal::{product, tensor};
use cubhop::simpl::triangulate;
use cubhop::toda::{bracket, diagram_from_json, result_json, AnyDiagram, DiagramJson};
use cubhop::wcat::{obstruction_domain, pointed_relative_model, w_slot, Slot, WError};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::{CubeOp, Failure, Format, Output};

pub fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::malformed(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
    }
}

pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        Failure::malformed(format!("{}: malformed input at `{}`: {}", path.display(), at, e.inner()))
    })
}

fn violation_report(r: &impl serde::Serialize) -> Value {
    json!({ "valid": false, "report": r })
}

pub fn load_category(path: &Path) -> Result<(CategorySpec, FiniteCategory), Failure> {
    let spec: CategorySpec = parse(path, &read_input(path)?)?;
    let c = FiniteCategory::from_spec(&spec).map_err(|r| Failure::axiom(format!("{}: {r}", path.display()), violation_report(&r)))?;
    Ok((spec, c))
}

pub fn load_lattice(path: &Path) -> Result<Lattice, Failure> {
    let spec: CategorySpec = parse(path, &read_input(path)?)?;
    Lattice::from_spec(&spec).map_err(|r| Failure::axiom(format!("{}: {r}", path.display()), violation_report(&r)))
}

fn object(c: &FiniteCategory, name: &str) -> Result<usize, Failure> {
    c.object_index(name).map_err(|e| Failure::malformed(e.to_string()))
}

fn endpoints(c: &FiniteCategory, from: &str, to: &str) -> Result<(usize, usize), Failure> {
    let (a, b) = (object(c, from)?, object(c, to)?);
    if a == b {
        return Err(Failure::malformed("--from and --to must name different objects"));
    }
    Ok((a, b))
}

fn latt_failure(e: LattError) -> Failure {
    Failure::axiom(e.to_string(), json!({ "valid": false, "error": e.to_string() }))
}

pub fn w_failure(e: WError) -> Failure {
    match e {
        WError::Lattice(l) => latt_failure(l),
        other => Failure::internal(other.to_string(), None),
    }
}

pub fn scalar(v: &BigInt) -> Value {
    i64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

pub fn homology_json(h: &Homology<BigInt>) -> Value {
    let groups: Vec<Value> = h
        .groups
        .iter()
        .enumerate()
        .map(|(n, g)| json!({ "degree": n, "betti": g.betti, "torsion": g.torsion.iter().map(scalar).collect::<Vec<_>>() }))
        .collect();
    json!({ "groups": groups, "bettis": h.bettis(), "reduced_bettis": h.reduced_bettis() })
}

fn slot(c: &FiniteCategory, a: usize, b: usize) -> Slot {
    if c.precedes(a, b) {
        w_slot(c, a, b)
    } else {
        Slot::empty()
    }
}

pub fn validate(path: &Path) -> Result<Output, Failure> {
    let (spec, c) = load_category(path)?;
    let lattice = if spec.v_init.is_some() || spec.v_fin.is_some() {
        let l = load_lattice(path)?;
        json!({
            "v_init": c.objects()[l.v_init],
            "v_fin": c.objects()[l.v_fin],
            "length": l.length,
            "max": c.morphism(l.phi_max).id,
        })
    } else {
        Value::Null
    };
    let declared = c.morphisms().iter().filter(|m| !m.zero).count();
    Ok(Output::Json(json!({
        "valid": true,
        "objects": c.num_objects(),
        "morphisms": declared,
        "pointed": c.is_pointed(),
        "lattice": lattice,
    })))
}

pub fn homset(path: &Path, from: &str, to: &str) -> Result<Output, Failure> {
    let (_, c) = load_category(path)?;
    let (a, b) = (object(&c, from)?, object(&c, to)?);
    let ids: Vec<&str> = c.homset(a, b).into_iter().map(|m| c.morphism(m).id.as_str()).collect();
    Ok(Output::Json(json!({ "from": from, "to": to, "morphisms": ids })))
}

pub fn w(path: &Path, from: &str, to: &str, cells: bool, counts: bool) -> Result<Output, Failure> {
    let (_, c) = load_category(path)?;
    let (a, b) = endpoints(&c, from, to)?;
    let s = slot(&c, a, b);
    Ok(Output::Json(if counts {
        json!({ "counts": s.complex.counts() })
    } else if cells {
        json!({ "cells": s.complex.to_json().cells })
    } else {
        json!({ "counts": s.complex.counts(), "complex": s.complex.to_json() })
    }))
}

pub fn triangulate_cmd(path: &Path, from: &str, to: &str, format: Format) -> Result<Output, Failure> {
    let (_, c) = load_category(path)?;
    let (a, b) = endpoints(&c, from, to)?;
    let s = slot(&c, a, b);
    let t = triangulate(&s.complex);
    Ok(match format {
        Format::Dot => Output::Text(t.to_dot("w")),
        Format::Json => {
            let x = &t.complex;
            let simplices: Vec<Value> = x
                .all_cells()
                .map(|cell| {
                    let (cube, chain) = t.origin(cell);
                    let faces: Vec<Value> =
                        x.faces(cell).iter().map(|f| json!({ "target": f.cell, "surjection": f.surjection() })).collect();
                    json!({ "dim": cell.dim, "index": cell.index, "cube": cube, "chain": chain, "faces": faces })
                })
                .collect();
            Output::Json(json!({ "counts": x.counts(), "simplices": simplices }))
        }
    })
}

pub fn homology(path: &Path, slot_of: Option<(&str, &str)>, pointed: bool) -> Result<Output, Failure> {
    let text = read_input(path)?;
    let k = match slot_of {
        None => {
            let j: ComplexJson = parse(path, &text)?;
            CubicalSet::from_json(&j).map_err(|e| Failure::axiom(e.to_string(), json!({ "valid": false, "error": e.to_string() })))?
        }
        Some((from, to)) => {
            let spec: CategorySpec = parse(path, &text)?;
            let c = FiniteCategory::from_spec(&spec).map_err(|r| Failure::axiom(r.to_string(), violation_report(&r)))?;
            let (a, b) = endpoints(&c, from, to)?;
            if pointed {
                pointed_relative_model(&c).map_err(w_failure)?.slot(a, b).complex.clone()
            } else {
                slot(&c, a, b).complex
            }
        }
    };
    let h = cubical_chains::<BigInt>(&k).homology();
    Ok(Output::Json(json!({ "counts": k.counts(), "homology": homology_json(&h) })))
}

pub fn jgamma(path: &Path) -> Result<Output, Failure> {
    let l = load_lattice(path)?;
    let j = l.j_gamma().map_err(latt_failure)?;
    let ids: Vec<Vec<String>> = j.iter().map(|ch| ch.ids(&l.category)).collect();
    Ok(Output::Json(json!({ "J": ids })))
}

pub fn domain(path: &Path) -> Result<Output, Failure> {
    let l = load_lattice(path)?;
    let d = obstruction_domain(&l).map_err(w_failure)?;
    Ok(Output::Json(json!({
        "n": d.n,
        "wedge_summands": d.wedge_summands,
        "counts": d.complex.counts(),
        "homology": homology_json(&d.homology),
        "wedge_of_spheres": d.is_wedge_of_spheres(),
    })))
}

fn operand(s: &str) -> Result<CubicalSet, Failure> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(CubicalSet::standard_cube(n));
    }
    let path = Path::new(s);
    let j: ComplexJson = parse(path, &read_input(path)?)?;
    CubicalSet::from_json(&j).map_err(|e| Failure::axiom(e.to_string(), json!({ "valid": false, "error": e.to_string() })))
}

fn usize_arg(args: &[String], i: usize, what: &str) -> Result<usize, Failure> {
    args.get(i)
        .ok_or_else(|| Failure::malformed(format!("missing argument {what}")))?
        .parse()
        .map_err(|_| Failure::malformed(format!("{what} must be a non-negative integer")))
}

pub fn cube(op: CubeOp, args: &[String]) -> Result<Output, Failure> {
    let arity = match op {
        CubeOp::Standard | CubeOp::Boundary => 1,
        CubeOp::Horn => 3,
        CubeOp::Tensor | CubeOp::Product => 2,
    };
    if args.len() != arity {
        return Err(Failure::malformed(format!("--op {op:?} takes {arity} argument(s), got {}", args.len()).to_lowercase()));
    }
    let bad = |e: cubhop::cubset::CubeError| Failure::malformed(e.to_string());
    let k = match op {
        CubeOp::Standard => CubicalSet::standard_cube(usize_arg(args, 0, "n")?),
        CubeOp::Boundary => CubicalSet::boundary(usize_arg(args, 0, "n")?).map_err(bad)?,
        CubeOp::Horn => {
            let n = usize_arg(args, 0, "n")?;
            let axis = usize_arg(args, 1, "axis")?;
            let sign = usize_arg(args, 2, "sign")?;
            if axis == 0 || sign > 1 {
                return Err(Failure::malformed("horn axis is 1-based and sign is 0 or 1"));
            }
            CubicalSet::horn(n, axis - 1, sign == 1).map_err(bad)?
        }
        CubeOp::Tensor => tensor(&operand(&args[0])?, &operand(&args[1])?).complex,
        CubeOp::Product => product(&operand(&args[0])?, &operand(&args[1])?).complex,
    };
    Ok(Output::Json(serde_json::to_value(k.to_json()).expect("complex JSON serializes")))
}

pub fn toda(path: &Path) -> Result<Output, Failure> {
    let j: DiagramJson = parse(path, &read_input(path)?)?;
    let d = diagram_from_json(&j)
        .map_err(|e| Failure::axiom(format!("{}: {e}", path.display()), json!({ "valid": false, "error": e.to_string() })))?;
    let mut out = match &d {
        AnyDiagram::Integer(d) => result_json(&bracket(d)),
        AnyDiagram::Mod2(d) => result_json(&bracket(d)),
    };
    out["coefficients"] = serde_json::to_value(j.coefficients).expect("enum serializes");
    Ok(Output::Json(out))
}

/// Integral homology of a simplicial set, for cross-checks.
pub fn simplicial_homology(x: &cubhop::simpl::SimplicialSet) -> Homology<BigInt> {
    simplicial_chains::<BigInt>(x).homology()
}
