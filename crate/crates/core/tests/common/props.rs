//! Seed-driven structural checks shared by the proptest suites and the
//! acceptance runner. Each returns a description of the first violation.

use cubhop::algtop::{cubical_chains, simplicial_chains};
use cubhop::cubset::{CellId, CellMap, CellRef, CubicalSet};
use cubhop::monoidal::{product, tensor};
use cubhop::simpl::triangulate;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{random_cubical_set, rng};

/// A random set, or a tensor, product or quotient built from random sets.
pub fn random_structure(r: &mut ChaCha8Rng) -> CubicalSet {
    match r.gen_range(0..4) {
        0 => {
            let (a, b) = (random_cubical_set(r, 6), random_cubical_set(r, 6));
            tensor(&a, &b).complex
        }
        1 => {
            let (a, b) = (random_cubical_set(r, 5), random_cubical_set(r, 5));
            product(&a, &b).complex
        }
        2 => {
            let k = random_cubical_set(r, 16);
            let pairs = random_pairs(r, &k);
            k.quotient(&pairs).map(|q| q.quotient).unwrap_or(k)
        }
        _ => random_cubical_set(r, 16),
    }
}

/// One to three same-dimensional identifications, possibly with a
/// degenerate right-hand side.
pub fn random_pairs(r: &mut ChaCha8Rng, k: &CubicalSet) -> Vec<(CellRef, CellRef)> {
    let top = k.dim().unwrap_or(0);
    let n = r.gen_range(1..=3);
    let mut out = Vec::new();
    for _ in 0..n {
        let d = r.gen_range(0..=top.min(2));
        let refs = k.all_refs_of_dim(d);
        let cells: Vec<CellId> = k.cells_of_dim(d).collect();
        if let (Some(&a), Some(&b)) = (cells.choose(r), refs.choose(r)) {
            out.push((CellRef::nondegenerate(a), b));
        }
    }
    out
}

/// Every cell reference of dimension at most one above the top dimension.
fn all_refs(k: &CubicalSet) -> Vec<CellRef> {
    let top = k.dim().map_or(0, |d| d + 1);
    (0..=top).flat_map(|d| k.all_refs_of_dim(d)).collect()
}

pub fn cubical_identities(seed: u64) -> Result<(), String> {
    let k = random_structure(&mut rng(seed));
    for x in all_refs(&k) {
        let n = x.dim();
        for j in 1..n {
            for i in 0..j {
                for e in [false, true] {
                    for f in [false, true] {
                        let lhs = k.face_of(&k.face_of(&x, j, f), i, e);
                        let rhs = k.face_of(&k.face_of(&x, i, e), j - 1, f);
                        if lhs != rhs {
                            return Err(format!("d_{i} d_{j} != d_{} d_{i} on {x:?}", j - 1));
                        }
                    }
                }
            }
        }
        for j in 0..=n {
            let s = CubicalSet::degeneracy_of(&x, j);
            for e in [false, true] {
                if k.face_of(&s, j, e) != x {
                    return Err(format!("d_{j} s_{j} != id on {x:?}"));
                }
                for i in 0..j {
                    if k.face_of(&s, i, e) != CubicalSet::degeneracy_of(&k.face_of(&x, i, e), j - 1) {
                        return Err(format!("d_{i} s_{j} != s_{} d_{i} on {x:?}", j - 1));
                    }
                }
                for i in j + 1..=n {
                    if k.face_of(&s, i, e) != CubicalSet::degeneracy_of(&k.face_of(&x, i - 1, e), j) {
                        return Err(format!("d_{i} s_{j} != s_{j} d_{} on {x:?}", i - 1));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn boundary_squares_to_zero(seed: u64) -> Result<(), String> {
    let k = random_structure(&mut rng(seed));
    let c = cubical_chains::<BigInt>(&k);
    for n in 2..=c.len() {
        if !c.boundary(n - 1).mul_mat(&c.boundary(n)).is_zero() {
            return Err(format!("cubical d_{} d_{n} != 0", n - 1));
        }
    }
    let s = simplicial_chains::<BigInt>(&triangulate(&k).complex);
    for n in 2..=s.len() {
        if !s.boundary(n - 1).mul_mat(&s.boundary(n)).is_zero() {
            return Err(format!("simplicial d_{} d_{n} != 0", n - 1));
        }
    }
    Ok(())
}

pub fn face_coherence(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let k = random_structure(&mut r);
    k.check_face_coherence().map_err(|e| e.to_string())?;
    let pairs = random_pairs(&mut r, &k);
    if let Ok(q) = k.quotient(&pairs) {
        q.quotient.check_face_coherence().map_err(|e| format!("quotient: {e}"))?;
        q.map.verify(&k, &q.quotient).map_err(|e| format!("projection: {e}"))?;
    }
    Ok(())
}

/// Quotienting in two stages agrees with quotienting once, and
/// identifying a cell with itself changes nothing.
pub fn quotient_functoriality(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let k = random_cubical_set(&mut r, 16);
    let trivial = k.all_cells().collect::<Vec<_>>();
    if let Some(&c) = trivial.choose(&mut r) {
        let q = k.quotient(&[(CellRef::nondegenerate(c), CellRef::nondegenerate(c))]).map_err(|e| e.to_string())?;
        if !q.map.is_isomorphism(&q.quotient) {
            return Err("identifying a cell with itself is not an isomorphism".into());
        }
    }
    let (a, b) = (random_pairs(&mut r, &k), random_pairs(&mut r, &k));
    let Ok(once) = k.quotient(&[a.clone(), b.clone()].concat()) else {
        return Ok(());
    };
    let q1 = k.quotient(&a).map_err(|e| format!("first stage failed after the single quotient succeeded: {e}"))?;
    let b1: Vec<(CellRef, CellRef)> = b.iter().map(|(x, y)| (q1.map.map_ref(x), q1.map.map_ref(y))).collect();
    let q2 = q1.quotient.quotient(&b1).map_err(|e| format!("second stage: {e}"))?;
    let staged = q1.map.then(&q2.map);
    staged.verify(&k, &q2.quotient).map_err(|e| format!("staged projection: {e}"))?;
    if once.quotient.counts() != q2.quotient.counts() {
        return Err(format!("counts {:?} vs {:?}", once.quotient.counts(), q2.quotient.counts()));
    }
    // the comparison map sends each cell of the single quotient to the
    // staged image of any preimage
    let mut images: Vec<Vec<Option<CellRef>>> = once.quotient.counts().iter().map(|&n| vec![None; n]).collect();
    for c in k.all_cells() {
        let (x, y) = (once.map.image(c), staged.image(c));
        if x.is_degenerate() != y.is_degenerate() {
            return Err(format!("{c:?} collapses in only one of the quotients"));
        }
        if x.is_degenerate() {
            continue;
        }
        match images[x.cell.dim][x.cell.index] {
            Some(prev) if prev != y => return Err(format!("{c:?} is identified differently")),
            _ => images[x.cell.dim][x.cell.index] = Some(y),
        }
    }
    let cmp = CellMap::new(images.into_iter().map(|v| v.into_iter().map(|x| x.expect("projections are surjective")).collect()).collect());
    cmp.verify(&once.quotient, &q2.quotient).map_err(|e| format!("comparison: {e}"))?;
    if !cmp.is_isomorphism(&q2.quotient) {
        return Err("comparison map is not an isomorphism".into());
    }
    let (h1, h2) = (cubical_chains::<BigInt>(&once.quotient).homology(), cubical_chains::<BigInt>(&q2.quotient).homology());
    if !h1.same_as(&h2) {
        return Err(format!("homology {:?} vs {:?}", h1.bettis(), h2.bettis()));
    }
    Ok(())
}
