use serde::Serialize;

use super::matrix::{smith_normal_form, Matrix, SmithForm};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("boundary in degree {degree} has shape {got:?}, expected {expected:?}")]
    Shape { degree: usize, expected: (usize, usize), got: (usize, usize) },
    #[error("{boundaries} boundaries given for {degrees} degrees")]
    Degrees { degrees: usize, boundaries: usize },
    #[error("the composite of the boundaries in degrees {0} and {} is nonzero", .0 + 1)]
    NotAComplex(usize),
}

/// A bounded chain complex of finitely generated free modules in degrees
/// `0..ranks.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<R> {
    ranks: Vec<usize>,
    /// `d[n]: C_n -> C_{n-1}` as a `ranks[n-1] x ranks[n]` matrix; `d[0]` is `0 x ranks[0]`.
    d: Vec<Matrix<R>>,
}

impl<R: Scalar> ChainComplex<R> {
    /// `boundaries[k]` is the differential out of degree `k + 1`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix<R>>) -> Result<Self, ChainError> {
        let mut d = Vec::with_capacity(ranks.len());
        if let Some(&r0) = ranks.first() {
            d.push(Matrix::zeros(0, r0));
        }
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(ChainError::Degrees { degrees: ranks.len(), boundaries: boundaries.len() });
        }
        for (k, m) in boundaries.into_iter().enumerate() {
            let n = k + 1;
            let expected = (ranks[n - 1], ranks[n]);
            if (m.rows(), m.cols()) != expected {
                return Err(ChainError::Shape { degree: n, expected, got: (m.rows(), m.cols()) });
            }
            d.push(m);
        }
        let c = ChainComplex { ranks, d };
        for n in 2..c.ranks.len() {
            if !c.d[n - 1].mul_mat(&c.d[n]).is_zero() {
                return Err(ChainError::NotAComplex(n - 1));
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        ChainComplex { ranks: Vec::new(), d: Vec::new() }
    }

    /// Number of degrees carried (top degree + 1).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n: C_n -> C_{n-1}`, with zero matrices outside the stored range.
    pub fn boundary(&self, n: usize) -> Matrix<R> {
        if n < self.d.len() {
            self.d[n].clone()
        } else {
            Matrix::zeros(if n == 0 { 0 } else { self.rank(n - 1) }, self.rank(n))
        }
    }

    /// `ΣC`: shifted up one degree with negated boundary.
    pub fn suspension(&self) -> Self {
        if self.ranks.is_empty() {
            return Self::zero();
        }
        let mut ranks = vec![0];
        ranks.extend_from_slice(&self.ranks);
        let mut boundaries = vec![Matrix::zeros(0, self.ranks[0])];
        boundaries.extend(self.d.iter().skip(1).map(Matrix::neg));
        ChainComplex::new(ranks, boundaries).expect("suspension of a complex is a complex")
    }

    pub fn homology(&self) -> Homology<R> {
        let snf: Vec<SmithForm<R>> = (0..=self.ranks.len()).map(|n| smith_normal_form(&self.boundary(n))).collect();
        let groups = (0..self.ranks.len())
            .map(|n| {
                let cycles = self.rank(n) - snf[n].rank;
                let b = &snf[n + 1];
                HomologyGroup { betti: cycles - b.rank, torsion: b.invariants.iter().filter(|d| !d.is_unit()).cloned().collect() }
            })
            .collect();
        Homology { groups }
    }

    /// Coordinates for `H_n` suitable for class and membership computations.
    pub fn presentation(&self, n: usize) -> HomologyPresentation<R> {
        let dn = smith_normal_form(&self.boundary(n));
        let z = dn.kernel_basis();
        let rank_d = dn.rank;
        let to_z = |v: &[R]| -> Vec<R> { dn.q_inv.mul_vec(v)[rank_d..].to_vec() };
        let dn1 = self.boundary(n + 1);
        let bz_cols: Vec<Vec<R>> = (0..dn1.cols()).map(|j| to_z(&dn1.column(j))).collect();
        let bz = Matrix::from_rows(bz_cols, z.cols()).transpose();
        let rel = smith_normal_form(&bz);
        HomologyPresentation { z_rank: z.cols(), dn, cycles: z, boundaries_z: bz, relations: rel }
    }
}

impl<R: Scalar> Default for ChainComplex<R> {
    fn default() -> Self {
        Self::zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup<R> {
    pub betti: usize,
    pub torsion: Vec<R>,
}

impl<R: Scalar> HomologyGroup<R> {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Homology in each degree of a chain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology<R> {
    pub groups: Vec<HomologyGroup<R>>,
}

impl<R: Scalar> Homology<R> {
    pub fn betti(&self, n: usize) -> usize {
        self.groups.get(n).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, n: usize) -> &[R] {
        self.groups.get(n).map_or(&[], |g| &g.torsion)
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_zero_in(&self, n: usize) -> bool {
        self.groups.get(n).is_none_or(HomologyGroup::is_zero)
    }

    /// `H_0 = R`, everything else zero.
    pub fn is_point(&self) -> bool {
        self.betti(0) == 1 && self.torsion(0).is_empty() && (1..self.groups.len()).all(|n| self.is_zero_in(n))
    }

    /// Reduced Betti numbers: `H_0` loses one free summand when nonzero.
    pub fn reduced_bettis(&self) -> Vec<usize> {
        let mut b = self.bettis();
        if let Some(b0) = b.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        b
    }

    /// Compares two homologies degree by degree, extending with zeros.
    pub fn same_as(&self, other: &Homology<R>) -> bool {
        (0..self.groups.len().max(other.groups.len())).all(|n| self.betti(n) == other.betti(n) && self.torsion(n) == other.torsion(n))
    }
}

/// `H_n` as `Z_n / B_n`, with `Z_n` given a basis.
#[derive(Clone, Debug)]
pub struct HomologyPresentation<R> {
    z_rank: usize,
    dn: SmithForm<R>,
    cycles: Matrix<R>,
    boundaries_z: Matrix<R>,
    relations: SmithForm<R>,
}

impl<R: Scalar> HomologyPresentation<R> {
    pub fn cycle_basis(&self) -> &Matrix<R> {
        &self.cycles
    }

    pub fn is_cycle(&self, v: &[R]) -> bool {
        self.z_coordinates(v).is_some()
    }

    /// Coordinates of a cycle in the cycle basis, `None` if `v` is not a cycle.
    pub fn z_coordinates(&self, v: &[R]) -> Option<Vec<R>> {
        let w = self.dn.q_inv.mul_vec(v);
        if w[..self.dn.rank].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(w[self.dn.rank..].to_vec())
    }

    /// Orders of the cyclic summands of `H_n`; `0` marks a free summand.
    /// Unit factors (trivial summands) are omitted.
    pub fn summand_orders(&self) -> Vec<R> {
        let mut out: Vec<R> = self.relations.invariants.iter().filter(|d| !d.is_unit()).cloned().collect();
        out.extend(std::iter::repeat_n(R::zero(), self.z_rank - self.relations.rank));
        out
    }

    /// Coordinates of the class of a cycle against [`summand_orders`](Self::summand_orders).
    pub fn class_of(&self, v: &[R]) -> Option<Vec<R>> {
        let z = self.z_coordinates(v)?;
        let y = self.relations.p.mul_vec(&z);
        let mut out = Vec::new();
        for (i, yi) in y.into_iter().enumerate() {
            if i < self.relations.rank {
                let d = &self.relations.invariants[i];
                if d.is_unit() {
                    continue;
                }
                let mut r = yi % d.clone();
                if r.magnitude_cmp(&R::zero()).is_gt() && r.canonical() != r {
                    r = r + d.clone();
                }
                out.push(r);
            } else {
                out.push(yi);
            }
        }
        Some(out)
    }

    /// Whether the cycle `v` is homologous to a combination of the cycles
    /// `gens` (columns), i.e. lies in their span plus the boundaries.
    pub fn in_span(&self, v: &[R], gens: &[Vec<R>]) -> Option<bool> {
        let z = self.z_coordinates(v)?;
        let mut cols: Vec<Vec<R>> = Vec::with_capacity(gens.len());
        for g in gens {
            cols.push(self.z_coordinates(g)?);
        }
        let g = Matrix::from_rows(cols, self.z_rank).transpose();
        let m = g.hstack(&self.boundaries_z);
        Some(smith_normal_form(&m).solve(&z).is_some())
    }

    /// Whether the cycle `v` is a boundary.
    pub fn is_boundary(&self, v: &[R]) -> Option<bool> {
        self.in_span(v, &[])
    }
}
