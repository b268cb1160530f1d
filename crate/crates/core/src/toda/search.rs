use std::thread;

use num_bigint::BigInt;

use super::{bracket, ChainDiagram, GradedMap, MappingComplex};
use crate::algtop::{ChainComplex, Matrix};
use crate::scalar::Gf2;

fn int(rows: &[Vec<i64>], cols: usize) -> Matrix<BigInt> {
    Matrix::from_i64_rows(rows, cols)
}

/// `ℤ --2--> ℤ ⊕ Moore(2) --> ℤ[1]`: a nonvanishing bracket whose class
/// generates `H_1 Hom(C₃, C₀) = ℤ` against indeterminacy `2ℤ`.
///
/// `C₃ = ℤx`, `C₂ = ℤy` in degree 0, `h(x) = 2y`; `C₁ = ℤa ⊕ ℤb` with
/// `|b| = 1`, `db = 2a`, `g(y) = a`; `C₀ = ℤe` in degree 1 with `f(b) = e`.
/// `g·h = d∘H` for `H(x) = b`, and `f·g = 0` strictly.
pub fn golden_integer_instance() -> ChainDiagram<BigInt> {
    let c3 = ChainComplex::new(vec![1], vec![]).unwrap();
    let c2 = c3.clone();
    let c1 = ChainComplex::new(vec![1, 1], vec![int(&[vec![2]], 1)]).unwrap();
    let c0 = ChainComplex::new(vec![0, 1], vec![int(&[], 1)]).unwrap();
    ChainDiagram::new(
        [c3, c2, c1, c0],
        vec![int(&[vec![2]], 1)],
        vec![int(&[vec![1]], 1)],
        vec![int(&[], 1), int(&[vec![1]], 1)],
        vec![int(&[vec![1]], 1)],
        vec![int(&[vec![0]], 1)],
    )
    .expect("golden instance is a valid diagram")
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Rank profiles visited, one per 4-tuple of rank vectors.
    pub profiles: u64,
    /// Strict diagrams whose bracket was evaluated.
    pub diagrams: u64,
    /// First nonvanishing diagram in enumeration order.
    pub found: Option<ChainDiagram<Gf2>>,
}

fn bits_matrix(rows: usize, cols: usize, bits: u64) -> Matrix<Gf2> {
    let data = (0..rows).map(|i| (0..cols).map(|j| Gf2(bits >> (i * cols + j) & 1 == 1)).collect()).collect();
    Matrix::from_rows(data, cols)
}

/// Every mod-2 complex with the given ranks.
fn complexes(ranks: &[usize]) -> Vec<ChainComplex<Gf2>> {
    let mut out = vec![Vec::<Matrix<Gf2>>::new()];
    for n in 1..ranks.len() {
        let size = ranks[n - 1] * ranks[n];
        let mut next = Vec::new();
        for ds in &out {
            for bits in 0..1u64 << size {
                let d = bits_matrix(ranks[n - 1], ranks[n], bits);
                if ds.last().is_none_or(|prev: &Matrix<Gf2>| prev.mul_mat(&d).is_zero()) {
                    let mut e = ds.clone();
                    e.push(d);
                    next.push(e);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|ds| ChainComplex::new(ranks.to_vec(), ds).expect("enumerated complexes satisfy d² = 0")).collect()
}

/// All elements of the span of `basis`.
fn span(basis: &[GradedMap<Gf2>], zero: GradedMap<Gf2>) -> Vec<GradedMap<Gf2>> {
    (0..1u64 << basis.len())
        .map(|mask| basis.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(zero.clone(), |acc, (_, b)| acc.add(b)))
        .collect()
}

/// Rank vectors of length `degrees` with entries summing to at most `budget`.
fn rank_vectors(degrees: usize, budget: usize) -> Vec<Vec<usize>> {
    if degrees == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for r in 0..=budget {
        for mut rest in rank_vectors(degrees - 1, budget - r) {
            rest.insert(0, r);
            out.push(rest);
        }
    }
    out
}

fn profiles(max_total_rank: usize, degrees: usize) -> Vec<[Vec<usize>; 4]> {
    let mut out = Vec::new();
    for r3 in rank_vectors(degrees, max_total_rank) {
        let b2 = max_total_rank - r3.iter().sum::<usize>();
        for r2 in rank_vectors(degrees, b2) {
            let b1 = b2 - r2.iter().sum::<usize>();
            for r1 in rank_vectors(degrees, b1) {
                let b0 = b1 - r1.iter().sum::<usize>();
                for r0 in rank_vectors(degrees, b0) {
                    out.push([r3.clone(), r2.clone(), r1.clone(), r0]);
                }
            }
        }
    }
    out
}

type ProfileResult = (u64, Option<ChainDiagram<Gf2>>);

/// Searches one rank profile; returns the number of evaluated diagrams and
/// the first nonvanishing one.
fn search_profile(p: &[Vec<usize>; 4]) -> ProfileResult {
    let mut evaluated = 0;
    let (k3, k2, k1, k0) = (complexes(&p[0]), complexes(&p[1]), complexes(&p[2]), complexes(&p[3]));
    for c3 in &k3 {
        for c0 in &k0 {
            let target = MappingComplex::new(c3, c0);
            if target.dim(1) == 0 || target.window(1).homology().groups[1].betti == 0 {
                continue;
            }
            for c2 in &k2 {
                let hs = span(&MappingComplex::new(c3, c2).cycles(0), GradedMap::zero(c3, c2, 0));
                for c1 in &k1 {
                    let gs = span(&MappingComplex::new(c2, c1).cycles(0), GradedMap::zero(c2, c1, 0));
                    let fs = span(&MappingComplex::new(c1, c0).cycles(0), GradedMap::zero(c1, c0, 0));
                    // with strict composites the admissible H, G are exactly the
                    // degree-1 cycles, and the representative is linear in them
                    let z31 = MappingComplex::new(c3, c1).cycles(1);
                    let z20 = MappingComplex::new(c2, c0).cycles(1);
                    for h in &hs {
                        for g in gs.iter().filter(|g| g.after(h).is_zero()) {
                            for f in fs.iter().filter(|f| f.after(g).is_zero()) {
                                let zero_h = GradedMap::zero(c3, c1, 1);
                                let zero_g = GradedMap::zero(c2, c0, 1);
                                let choices =
                                    z31.iter().map(|z| (z.clone(), zero_g.clone())).chain(z20.iter().map(|z| (zero_h.clone(), z.clone())));
                                for (nh, ng) in choices {
                                    let d = ChainDiagram::from_maps(
                                        c3.clone(),
                                        c2.clone(),
                                        c1.clone(),
                                        c0.clone(),
                                        h.clone(),
                                        g.clone(),
                                        f.clone(),
                                        nh,
                                        ng,
                                    )
                                    .expect("strict enumerated diagrams are valid");
                                    evaluated += 1;
                                    if !bracket(&d).vanishes {
                                        return (evaluated, Some(d));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    (evaluated, None)
}

/// Exhaustive search over strict mod-2 diagrams: complexes in degrees
/// `0..degrees`, total rank at most `max_total_rank`, all chain maps with
/// `g·h = 0` and `f·g = 0`, and every choice of nullhomotopies. Profiles are
/// split across threads; the reported instance is the first in enumeration
/// order.
pub fn search_mod2(max_total_rank: usize, degrees: usize) -> SearchOutcome {
    let all = profiles(max_total_rank, degrees);
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(all.len().max(1));
    let results: Vec<(u64, Option<ChainDiagram<Gf2>>)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let all = &all;
                s.spawn(move || (w..all.len()).step_by(workers).map(|i| (i, search_profile(&all[i]))).collect::<Vec<_>>())
            })
            .collect();
        let mut merged: Vec<(usize, ProfileResult)> = handles.into_iter().flat_map(|h| h.join().expect("search worker panicked")).collect();
        merged.sort_by_key(|(i, _)| *i);
        merged.into_iter().map(|(_, r)| r).collect()
    });
    let diagrams = results.iter().map(|r| r.0).sum();
    let found = results.into_iter().find_map(|r| r.1);
    SearchOutcome { profiles: all.len() as u64, diagrams, found }
}
