#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;
use std::path::PathBuf;

use cubhop::algtop::{ChainComplex, Matrix};
use cubhop::cubset::{CellId, CellRef, CubicalSet};
use cubhop::latt::CategorySpec;
use cubhop::monoidal::tensor;
use cubhop::toda::{ChainDiagram, GradedMap, MappingComplex};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every lattice file of the corpus with its parsed spec, sorted by name.
pub fn corpus() -> Vec<(String, CategorySpec)> {
    let mut out: Vec<(String, CategorySpec)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.extension()? == "json").then_some(p)
        })
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), serde_json::from_str(&text).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn random_piece(r: &mut ChaCha8Rng) -> CubicalSet {
    match r.gen_range(0..4) {
        0 => CubicalSet::standard_cube(r.gen_range(0..=3)),
        1 => CubicalSet::boundary(r.gen_range(1..=3)).unwrap(),
        2 => {
            let n = r.gen_range(2..=3);
            CubicalSet::horn(n, r.gen_range(0..n), r.gen()).unwrap()
        }
        _ => {
            let a = CubicalSet::standard_cube(r.gen_range(0..=1));
            let b = CubicalSet::boundary(r.gen_range(1..=2)).unwrap();
            tensor(&a, &b).complex
        }
    }
}

fn pick_cell(r: &mut ChaCha8Rng, k: &CubicalSet, dim: usize) -> Option<CellId> {
    let cells: Vec<CellId> = k.cells_of_dim(dim).collect();
    cells.choose(r).copied()
}

/// One random gluing, collapse or restriction; `None` if it does not apply.
fn random_step(r: &mut ChaCha8Rng, k: &CubicalSet) -> Option<CubicalSet> {
    match r.gen_range(0..5) {
        0 => {
            let (a, b) = (pick_cell(r, k, 0)?, pick_cell(r, k, 0)?);
            Some(k.quotient(&[(CellRef::nondegenerate(a), CellRef::nondegenerate(b))]).ok()?.quotient)
        }
        1 => {
            let (a, b) = (pick_cell(r, k, 1)?, pick_cell(r, k, 1)?);
            Some(k.quotient(&[(CellRef::nondegenerate(a), CellRef::nondegenerate(b))]).ok()?.quotient)
        }
        2 => {
            let e = pick_cell(r, k, 1)?;
            let v = k.face(e, 0, false).cell;
            Some(k.quotient(&[(CellRef::nondegenerate(e), CellRef::collapsed(v, 1))]).ok()?.quotient)
        }
        3 => {
            let dim = k.dim()?;
            let d = r.gen_range(0..=dim);
            let c = pick_cell(r, k, d)?;
            let sub = k.closure([c]);
            let base = *sub.iter().find(|x| x.dim == 0)?;
            Some(k.collapse(&sub, base).ok()?.quotient)
        }
        _ => {
            let cells: Vec<CellId> = k.all_cells().filter(|_| r.gen_bool(0.7)).collect();
            let keep: BTreeSet<CellId> = k.closure(cells);
            Some(k.subcomplex(&keep).ok()?.0)
        }
    }
}

/// A random finite cubical set with at most `max_cells` nondegenerate
/// cells, built from cubes, boundaries and horns by gluing and collapsing.
pub fn random_cubical_set(r: &mut ChaCha8Rng, max_cells: usize) -> CubicalSet {
    loop {
        let n = r.gen_range(1..=3);
        let pieces: Vec<CubicalSet> = (0..n).map(|_| random_piece(r)).collect();
        let mut k = CubicalSet::disjoint_union(&pieces.iter().collect::<Vec<_>>());
        for _ in 0..r.gen_range(0..6) {
            if let Some(next) = random_step(r, &k) {
                if !next.is_empty() {
                    k = next;
                }
            }
        }
        if !k.is_empty() && k.total_cells() <= max_cells {
            return k;
        }
    }
}

fn unimodular(r: &mut ChaCha8Rng, n: usize) -> (Matrix<BigInt>, Matrix<BigInt>) {
    let (mut u, mut inv) = (Matrix::<BigInt>::identity(n), Matrix::<BigInt>::identity(n));
    for _ in 0..if n > 1 { 2 * n } else { 0 } {
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = BigInt::from(r.gen_range(-2i64..=2));
        let mut e = Matrix::identity(n);
        e.set(i, j, c.clone());
        let mut e_inv = Matrix::identity(n);
        e_inv.set(i, j, -c);
        u = e.mul_mat(&u);
        inv = inv.mul_mat(&e_inv);
    }
    (u, inv)
}

/// A random complex in degrees `0..=2`: free summands and elementary
/// `ℤ --m--> ℤ` pieces, in a randomly changed basis.
pub fn random_complex(r: &mut ChaCha8Rng) -> ChainComplex<BigInt> {
    let degrees = 3;
    let mut ranks = vec![0usize; degrees];
    // pieces as (degree of the source, multiplier); multiplier 0 marks a free summand
    let mut pieces = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        if r.gen_bool(0.5) {
            pieces.push((r.gen_range(0..degrees), 0i64));
        } else {
            pieces.push((r.gen_range(1..degrees), *[1i64, 2, 3].choose(r).unwrap()));
        }
    }
    let mut pos = Vec::new();
    for &(k, m) in &pieces {
        let top = ranks[k];
        ranks[k] += 1;
        let bottom = if m != 0 {
            ranks[k - 1] += 1;
            Some(ranks[k - 1] - 1)
        } else {
            None
        };
        pos.push((k, top, bottom, m));
    }
    let mut ds: Vec<Matrix<BigInt>> = (1..degrees).map(|n| Matrix::zeros(ranks[n - 1], ranks[n])).collect();
    for &(k, top, bottom, m) in &pos {
        if let Some(b) = bottom {
            ds[k - 1].set(b, top, BigInt::from(m));
        }
    }
    let bases: Vec<(Matrix<BigInt>, Matrix<BigInt>)> = ranks.iter().map(|&n| unimodular(r, n)).collect();
    let ds = ds.iter().enumerate().map(|(i, d)| bases[i].0.mul_mat(d).mul_mat(&bases[i + 1].1)).collect();
    ChainComplex::new(ranks, ds).expect("conjugated complexes satisfy d² = 0")
}

fn combination(r: &mut ChaCha8Rng, basis: &[GradedMap<BigInt>], zero: GradedMap<BigInt>) -> GradedMap<BigInt> {
    basis.iter().fold(zero, |acc, b| acc.add(&b.scale(&BigInt::from(r.gen_range(-1i64..=1)))))
}

fn random_map(r: &mut ChaCha8Rng, a: &ChainComplex<BigInt>, b: &ChainComplex<BigInt>, p: isize) -> GradedMap<BigInt> {
    let m = MappingComplex::new(a, b);
    let n = m.dim(p);
    let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(r.gen_range(-1i64..=1))).collect();
    m.unflatten(p, &v)
}

/// A random chain map `a -> b` whose composite with `before` is
/// nullhomotopic, with the nullhomotopy.
fn composable(
    r: &mut ChaCha8Rng,
    a: &ChainComplex<BigInt>,
    b: &ChainComplex<BigInt>,
    src: &ChainComplex<BigInt>,
    before: &GradedMap<BigInt>,
) -> (GradedMap<BigInt>, GradedMap<BigInt>) {
    let cycles = MappingComplex::new(a, b).cycles(0);
    let target = MappingComplex::new(src, b);
    for _ in 0..20 {
        let g = combination(r, &cycles, GradedMap::zero(a, b, 0));
        if let Some(h) = target.solve_boundary(&g.after(before)) {
            return (g, h);
        }
    }
    // a nullhomotopic map always works: D(k)·before = D(k·before)
    let k = random_map(r, a, b, 1);
    let g = k.differential(a, b);
    (g, k.after(before))
}

/// A diagram built from random complexes and maps alone; these are mostly
/// strict and rarely have a nonvanishing bracket.
pub fn plain_int_diagram(r: &mut ChaCha8Rng) -> ChainDiagram<BigInt> {
    let c: Vec<ChainComplex<BigInt>> = (0..4).map(|_| random_complex(r)).collect();
    let (c3, c2, c1, c0) = (&c[0], &c[1], &c[2], &c[3]);
    let h = combination(r, &MappingComplex::new(c3, c2).cycles(0), GradedMap::zero(c3, c2, 0));
    let (g, nh) = composable(r, c2, c1, c3, &h);
    let (f, ng) = composable(r, c1, c0, c2, &g);
    ChainDiagram::from_maps(c3.clone(), c2.clone(), c1.clone(), c0.clone(), h, g, f, nh, ng).expect("generated diagrams are valid")
}

fn int(rows: &[Vec<i64>], cols: usize) -> Matrix<BigInt> {
    Matrix::from_i64_rows(rows, cols)
}

/// `h = m`, `g = a` on `ℤ` in degree 0, `C₁ = (ℤ --m--> ℤ)`, `C₀ = ℤ` in
/// degree 1. The bracket is the class of `a` in `ℤ/m`.
pub fn scaled_golden(m: i64, a: i64) -> ChainDiagram<BigInt> {
    let c3 = ChainComplex::new(vec![1], vec![]).unwrap();
    let c1 = ChainComplex::new(vec![1, 1], vec![int(&[vec![m]], 1)]).unwrap();
    let c0 = ChainComplex::new(vec![0, 1], vec![int(&[], 1)]).unwrap();
    ChainDiagram::new(
        [c3.clone(), c3, c1, c0],
        vec![int(&[vec![m]], 1)],
        vec![int(&[vec![a]], 1)],
        vec![int(&[], 1), int(&[vec![1]], 1)],
        vec![int(&[vec![a]], 1)],
        vec![int(&[vec![0]], 1)],
    )
    .expect("scaled golden diagrams are valid")
}

fn block_diag(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
        }
    }
    m
}

fn sum_complex(a: &ChainComplex<BigInt>, b: &ChainComplex<BigInt>) -> ChainComplex<BigInt> {
    let n = a.len().max(b.len());
    let ranks = (0..n).map(|k| a.rank(k) + b.rank(k)).collect();
    let ds = (1..n).map(|k| block_diag(&a.boundary(k), &b.boundary(k))).collect();
    ChainComplex::new(ranks, ds).expect("sums of complexes are complexes")
}

fn sum_map(x: &GradedMap<BigInt>, y: &GradedMap<BigInt>, src: &ChainComplex<BigInt>, dst: &ChainComplex<BigInt>) -> GradedMap<BigInt> {
    let blocks = (0..src.len() as isize).map(|k| block_diag(&x.block(k), &y.block(k))).collect();
    GradedMap::from_blocks(src, dst, x.degree, blocks, "sum").expect("block shapes add up")
}

pub fn direct_sum(a: &ChainDiagram<BigInt>, b: &ChainDiagram<BigInt>) -> ChainDiagram<BigInt> {
    let c3 = sum_complex(&a.c3, &b.c3);
    let c2 = sum_complex(&a.c2, &b.c2);
    let c1 = sum_complex(&a.c1, &b.c1);
    let c0 = sum_complex(&a.c0, &b.c0);
    let h = sum_map(&a.h, &b.h, &c3, &c2);
    let g = sum_map(&a.g, &b.g, &c2, &c1);
    let f = sum_map(&a.f, &b.f, &c1, &c0);
    let nh = sum_map(&a.null_gh, &b.null_gh, &c3, &c1);
    let ng = sum_map(&a.null_fg, &b.null_fg, &c2, &c0);
    ChainDiagram::from_maps(c3, c2, c1, c0, h, g, f, nh, ng).expect("sums of diagrams are diagrams")
}

type Bases = Vec<(Matrix<BigInt>, Matrix<BigInt>)>;

fn conjugate_complex(c: &ChainComplex<BigInt>, u: &Bases) -> ChainComplex<BigInt> {
    let ds = (1..c.len()).map(|k| u[k - 1].0.mul_mat(&c.boundary(k)).mul_mat(&u[k].1)).collect();
    ChainComplex::new(c.ranks().to_vec(), ds).expect("conjugated complexes satisfy d² = 0")
}

fn conjugate_map(
    x: &GradedMap<BigInt>,
    src: &ChainComplex<BigInt>,
    su: &Bases,
    dst: &ChainComplex<BigInt>,
    du: &Bases,
) -> GradedMap<BigInt> {
    let blocks = (0..src.len())
        .map(|k| {
            let t = k as isize + x.degree;
            let b = x.block(k as isize);
            if t < 0 || t as usize >= dst.len() {
                b
            } else {
                du[t as usize].0.mul_mat(&b).mul_mat(&su[k].1)
            }
        })
        .collect();
    GradedMap::from_blocks(src, dst, x.degree, blocks, "conjugate").expect("conjugation keeps shapes")
}

/// The same diagram written in random bases of every chain group.
pub fn change_basis(r: &mut ChaCha8Rng, d: &ChainDiagram<BigInt>) -> ChainDiagram<BigInt> {
    let old = [&d.c3, &d.c2, &d.c1, &d.c0];
    let u: Vec<Bases> = old.iter().map(|c| c.ranks().iter().map(|&n| unimodular(r, n)).collect()).collect();
    let c: Vec<ChainComplex<BigInt>> = old.iter().zip(&u).map(|(c, b)| conjugate_complex(c, b)).collect();
    let h = conjugate_map(&d.h, &c[0], &u[0], &c[1], &u[1]);
    let g = conjugate_map(&d.g, &c[1], &u[1], &c[2], &u[2]);
    let f = conjugate_map(&d.f, &c[2], &u[2], &c[3], &u[3]);
    let nh = conjugate_map(&d.null_gh, &c[0], &u[0], &c[2], &u[2]);
    let ng = conjugate_map(&d.null_fg, &c[1], &u[1], &c[3], &u[3]);
    let [c3, c2, c1, c0]: [ChainComplex<BigInt>; 4] = c.try_into().unwrap();
    ChainDiagram::from_maps(c3, c2, c1, c0, h, g, f, nh, ng).expect("conjugated diagrams are diagrams")
}

/// A random valid diagram over the integers; composites are zero up to
/// homotopy, not necessarily strictly. Most contain a scaled golden
/// summand, so brackets of every kind occur.
pub fn random_int_diagram(r: &mut ChaCha8Rng) -> ChainDiagram<BigInt> {
    let plain = plain_int_diagram(r);
    if r.gen_bool(0.25) {
        return plain;
    }
    let (m, a) = (r.gen_range(2i64..=4), r.gen_range(0i64..=4));
    let seeded = direct_sum(&scaled_golden(m, a), &plain);
    change_basis(r, &seeded)
}

/// Adds a random degree-1 cycle and a random boundary to each nullhomotopy.
pub fn perturb(r: &mut ChaCha8Rng, d: &ChainDiagram<BigInt>) -> ChainDiagram<BigInt> {
    let shift = |r: &mut ChaCha8Rng, a: &ChainComplex<BigInt>, b: &ChainComplex<BigInt>, hmt: &GradedMap<BigInt>| {
        let m = MappingComplex::new(a, b);
        let z = combination(r, &m.cycles(1), GradedMap::zero(a, b, 1));
        let bd = random_map(r, a, b, 2).differential(a, b);
        hmt.add(&z).add(&bd)
    };
    let nh = shift(r, &d.c3, &d.c1, &d.null_gh);
    let ng = shift(r, &d.c2, &d.c0, &d.null_fg);
    d.with_homotopies(nh, ng).expect("perturbed homotopies are nullhomotopies")
}
