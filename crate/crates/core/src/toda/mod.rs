//! The classical triple bracket for diagrams of chain complexes
//!
//! ```text
//!        h        g        f
//!   C3 ----> C2 ----> C1 ----> C0
//! ```
//!
//! with nullhomotopies `H` of `g·h` and `G` of `f·g`. The mapping complex
//! uses `D(φ) = d∘φ − (−1)^{|φ|} φ∘d`, so a nullhomotopy `H` satisfies
//! `dH + Hd = g·h` and the representative `f·H − G·h` is a degree-1 cycle.

mod json;
mod search;

pub use json::{diagram_from_json, result_json, AnyDiagram, Coefficients, ComplexJson, DiagramJson};
pub use search::{golden_integer_instance, search_mod2, SearchOutcome};

use crate::algtop::{smith_normal_form, ChainComplex, ChainError, HomologyPresentation, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TodaError {
    #[error(transparent)]
    Complex(#[from] ChainError),
    #[error("{map}: {blocks} blocks given for a source with {degrees} degrees")]
    Blocks { map: String, blocks: usize, degrees: usize },
    #[error("{map}: block in degree {degree} has shape {got:?}, expected {expected:?}")]
    Shape { map: String, degree: usize, expected: (usize, usize), got: (usize, usize) },
    #[error("{0} is not a chain map")]
    NotChainMap(String),
    #[error("{0} is not a nullhomotopy of the composite")]
    NotNullhomotopy(String),
}

/// A map of graded modules raising degree by `degree`.
///
/// `blocks[k]` sends degree `k` of the source to degree `k + degree` of the
/// target; blocks landing outside the target have zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap<R> {
    pub degree: isize,
    src: Vec<usize>,
    dst: Vec<usize>,
    blocks: Vec<Matrix<R>>,
}

fn rank_at(ranks: &[usize], n: isize) -> usize {
    if n < 0 {
        0
    } else {
        ranks.get(n as usize).copied().unwrap_or(0)
    }
}

fn boundary_at<R: Scalar>(c: &ChainComplex<R>, n: isize) -> Matrix<R> {
    if n < 0 {
        Matrix::zeros(0, 0)
    } else {
        c.boundary(n as usize)
    }
}

impl<R: Scalar> GradedMap<R> {
    pub fn zero(src: &ChainComplex<R>, dst: &ChainComplex<R>, degree: isize) -> Self {
        let (s, d) = (src.ranks().to_vec(), dst.ranks().to_vec());
        let blocks = (0..s.len()).map(|k| Matrix::zeros(rank_at(&d, k as isize + degree), s[k])).collect();
        GradedMap { degree, src: s, dst: d, blocks }
    }

    pub fn identity(c: &ChainComplex<R>) -> Self {
        let blocks = c.ranks().iter().map(|&r| Matrix::identity(r)).collect();
        GradedMap { degree: 0, src: c.ranks().to_vec(), dst: c.ranks().to_vec(), blocks }
    }

    pub fn from_blocks(
        src: &ChainComplex<R>,
        dst: &ChainComplex<R>,
        degree: isize,
        blocks: Vec<Matrix<R>>,
        name: &str,
    ) -> Result<Self, TodaError> {
        let mut m = Self::zero(src, dst, degree);
        if blocks.len() != m.blocks.len() {
            return Err(TodaError::Blocks { map: name.to_string(), blocks: blocks.len(), degrees: m.blocks.len() });
        }
        for (k, b) in blocks.into_iter().enumerate() {
            let expected = (m.blocks[k].rows(), m.blocks[k].cols());
            if (b.rows(), b.cols()) != expected {
                return Err(TodaError::Shape { map: name.to_string(), degree: k, expected, got: (b.rows(), b.cols()) });
            }
            m.blocks[k] = b;
        }
        Ok(m)
    }

    pub fn blocks(&self) -> &[Matrix<R>] {
        &self.blocks
    }

    pub fn src_ranks(&self) -> &[usize] {
        &self.src
    }

    pub fn dst_ranks(&self) -> &[usize] {
        &self.dst
    }

    /// Block out of source degree `k`, zero outside the stored range.
    pub fn block(&self, k: isize) -> Matrix<R> {
        if k >= 0 && (k as usize) < self.blocks.len() {
            self.blocks[k as usize].clone()
        } else {
            Matrix::zeros(rank_at(&self.dst, k + self.degree), rank_at(&self.src, k))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    fn zip(&self, other: &Self, op: impl Fn(&Matrix<R>, &Matrix<R>) -> Matrix<R>) -> Self {
        assert_eq!(self.degree, other.degree, "degrees differ");
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| op(a, b)).collect();
        GradedMap { degree: self.degree, src: self.src.clone(), dst: self.dst.clone(), blocks }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, Matrix::add_mat)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, Matrix::sub_mat)
    }

    pub fn scale(&self, s: &R) -> Self {
        GradedMap { blocks: self.blocks.iter().map(|b| b.scale(s)).collect(), ..self.clone() }
    }

    /// `self ∘ earlier`.
    pub fn after(&self, earlier: &Self) -> Self {
        let degree = self.degree + earlier.degree;
        let blocks = (0..earlier.blocks.len()).map(|k| self.block(k as isize + earlier.degree).mul_mat(&earlier.blocks[k])).collect();
        GradedMap { degree, src: earlier.src.clone(), dst: self.dst.clone(), blocks }
    }

    /// `D(φ) = d∘φ − (−1)^{|φ|} φ∘d`.
    pub fn differential(&self, src: &ChainComplex<R>, dst: &ChainComplex<R>) -> Self {
        let p = self.degree;
        let odd = p.rem_euclid(2) == 1;
        let blocks = (0..self.src.len())
            .map(|k| {
                let k = k as isize;
                let left = boundary_at(dst, k + p).mul_mat(&self.block(k));
                let right = self.block(k - 1).mul_mat(&boundary_at(src, k));
                if odd {
                    left.add_mat(&right)
                } else {
                    left.sub_mat(&right)
                }
            })
            .collect();
        GradedMap { degree: p - 1, src: self.src.clone(), dst: self.dst.clone(), blocks }
    }
}

/// `Hom(A, B)` in a fixed degree range, flattened block by block with
/// row-major entries.
pub struct MappingComplex<'a, R> {
    pub src: &'a ChainComplex<R>,
    pub dst: &'a ChainComplex<R>,
}

impl<'a, R: Scalar> MappingComplex<'a, R> {
    pub fn new(src: &'a ChainComplex<R>, dst: &'a ChainComplex<R>) -> Self {
        MappingComplex { src, dst }
    }

    pub fn dim(&self, p: isize) -> usize {
        (0..self.src.ranks().len()).map(|k| rank_at(self.dst.ranks(), k as isize + p) * self.src.rank(k)).sum()
    }

    pub fn flatten(&self, phi: &GradedMap<R>) -> Vec<R> {
        phi.blocks.iter().flat_map(|b| b.to_rows().into_iter().flatten()).collect()
    }

    pub fn unflatten(&self, p: isize, v: &[R]) -> GradedMap<R> {
        assert_eq!(v.len(), self.dim(p));
        let mut m = GradedMap::zero(self.src, self.dst, p);
        let mut at = 0;
        for b in &mut m.blocks {
            let (r, c) = (b.rows(), b.cols());
            let rows = (0..r).map(|i| v[at + i * c..at + (i + 1) * c].to_vec()).collect();
            *b = Matrix::from_rows(rows, c);
            at += r * c;
        }
        m
    }

    /// `D: Hom_p -> Hom_{p-1}` as a matrix.
    pub fn differential(&self, p: isize) -> Matrix<R> {
        let n = self.dim(p);
        let cols: Vec<Vec<R>> = (0..n)
            .map(|j| {
                let mut e = vec![R::zero(); n];
                e[j] = R::one();
                self.flatten(&self.unflatten(p, &e).differential(self.src, self.dst))
            })
            .collect();
        Matrix::from_rows(cols, self.dim(p - 1)).transpose()
    }

    /// A basis of the degree-`p` cycles.
    pub fn cycles(&self, p: isize) -> Vec<GradedMap<R>> {
        let z = smith_normal_form(&self.differential(p)).kernel_basis();
        (0..z.cols()).map(|j| self.unflatten(p, &z.column(j))).collect()
    }

    /// `Hom_{p-1} <- Hom_p <- Hom_{p+1}` reindexed to degrees `0, 1, 2`, whose
    /// middle homology is `H_p` of the full mapping complex.
    pub fn window(&self, p: isize) -> ChainComplex<R> {
        ChainComplex::new(vec![self.dim(p - 1), self.dim(p), self.dim(p + 1)], vec![self.differential(p), self.differential(p + 1)])
            .expect("D∘D = 0 on mapping complexes")
    }

    /// Solves `D(x) = phi` for `x` of degree `|phi| + 1`.
    pub fn solve_boundary(&self, phi: &GradedMap<R>) -> Option<GradedMap<R>> {
        let snf = smith_normal_form(&self.differential(phi.degree + 1));
        snf.solve(&self.flatten(phi)).map(|x| self.unflatten(phi.degree + 1, &x))
    }
}

/// A validated `Γ₃` diagram.
#[derive(Clone, Debug)]
pub struct ChainDiagram<R> {
    pub c3: ChainComplex<R>,
    pub c2: ChainComplex<R>,
    pub c1: ChainComplex<R>,
    pub c0: ChainComplex<R>,
    pub h: GradedMap<R>,
    pub g: GradedMap<R>,
    pub f: GradedMap<R>,
    /// `H` with `dH + Hd = g·h`.
    pub null_gh: GradedMap<R>,
    /// `G` with `dG + Gd = f·g`.
    pub null_fg: GradedMap<R>,
}

fn check_chain_map<R: Scalar>(m: &GradedMap<R>, a: &ChainComplex<R>, b: &ChainComplex<R>, name: &str) -> Result<(), TodaError> {
    if m.differential(a, b).is_zero() {
        Ok(())
    } else {
        Err(TodaError::NotChainMap(name.to_string()))
    }
}

impl<R: Scalar> ChainDiagram<R> {
    /// Validates degrees, shapes, chain-map identities and nullhomotopies.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c: [ChainComplex<R>; 4],
        h: Vec<Matrix<R>>,
        g: Vec<Matrix<R>>,
        f: Vec<Matrix<R>>,
        null_gh: Vec<Matrix<R>>,
        null_fg: Vec<Matrix<R>>,
    ) -> Result<Self, TodaError> {
        let [c3, c2, c1, c0] = c;
        let h = GradedMap::from_blocks(&c3, &c2, 0, h, "h")?;
        let g = GradedMap::from_blocks(&c2, &c1, 0, g, "g")?;
        let f = GradedMap::from_blocks(&c1, &c0, 0, f, "f")?;
        let null_gh = GradedMap::from_blocks(&c3, &c1, 1, null_gh, "H")?;
        let null_fg = GradedMap::from_blocks(&c2, &c0, 1, null_fg, "G")?;
        Self::from_maps(c3, c2, c1, c0, h, g, f, null_gh, null_fg)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn from_maps(
        c3: ChainComplex<R>,
        c2: ChainComplex<R>,
        c1: ChainComplex<R>,
        c0: ChainComplex<R>,
        h: GradedMap<R>,
        g: GradedMap<R>,
        f: GradedMap<R>,
        null_gh: GradedMap<R>,
        null_fg: GradedMap<R>,
    ) -> Result<Self, TodaError> {
        check_chain_map(&h, &c3, &c2, "h")?;
        check_chain_map(&g, &c2, &c1, "g")?;
        check_chain_map(&f, &c1, &c0, "f")?;
        if null_gh.differential(&c3, &c1) != g.after(&h) {
            return Err(TodaError::NotNullhomotopy("H".into()));
        }
        if null_fg.differential(&c2, &c0) != f.after(&g) {
            return Err(TodaError::NotNullhomotopy("G".into()));
        }
        Ok(ChainDiagram { c3, c2, c1, c0, h, g, f, null_gh, null_fg })
    }

    /// Same maps with different nullhomotopies.
    pub fn with_homotopies(&self, null_gh: GradedMap<R>, null_fg: GradedMap<R>) -> Result<Self, TodaError> {
        let d = self.clone();
        Self::from_maps(d.c3, d.c2, d.c1, d.c0, d.h, d.g, d.f, null_gh, null_fg)
    }

    /// `f·H − G·h`.
    pub fn representative(&self) -> GradedMap<R> {
        self.f.after(&self.null_gh).sub(&self.null_fg.after(&self.h))
    }

    pub fn is_strict(&self) -> bool {
        self.g.after(&self.h).is_zero() && self.f.after(&self.g).is_zero()
    }
}

/// The subgroup `f·[ΣC₃,C₁] + [ΣC₂,C₀]·h` of `H_1 Hom(C₃, C₀)`.
pub struct Indeterminacy<R> {
    presentation: HomologyPresentation<R>,
    /// Flattened degree-1 cycles `f∘z` and `z∘h` generating the subgroup.
    generators: Vec<Vec<R>>,
    window_dims: usize,
}

impl<R: Scalar> Indeterminacy<R> {
    pub fn of(d: &ChainDiagram<R>) -> Self {
        let target = MappingComplex::new(&d.c3, &d.c0);
        let mut generators: Vec<Vec<R>> =
            MappingComplex::new(&d.c3, &d.c1).cycles(1).iter().map(|z| target.flatten(&d.f.after(z))).collect();
        generators.extend(MappingComplex::new(&d.c2, &d.c0).cycles(1).iter().map(|z| target.flatten(&z.after(&d.h))));
        Indeterminacy { presentation: target.window(1).presentation(1), generators, window_dims: target.dim(1) }
    }

    /// Orders of the cyclic summands of `H_1 Hom(C₃, C₀)`.
    pub fn summand_orders(&self) -> Vec<R> {
        self.presentation.summand_orders()
    }

    /// Class coordinates of a degree-1 cycle, `None` if it is not a cycle.
    pub fn class_of(&self, v: &[R]) -> Option<Vec<R>> {
        assert_eq!(v.len(), self.window_dims);
        self.presentation.class_of(v)
    }

    /// Whether a degree-1 cycle lies in the subgroup.
    pub fn contains(&self, v: &[R]) -> Option<bool> {
        self.presentation.in_span(v, &self.generators)
    }

    /// Class coordinates of the nonzero generators, without repeats.
    pub fn generator_classes(&self) -> Vec<Vec<R>> {
        let mut out: Vec<Vec<R>> = Vec::new();
        for g in &self.generators {
            let c = self.presentation.class_of(g).expect("generators are cycles");
            if c.iter().any(|x| !x.is_zero()) && !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct BracketResult<R> {
    pub representative: GradedMap<R>,
    /// Class of the representative against `summand_orders`.
    pub class: Vec<R>,
    pub summand_orders: Vec<R>,
    /// Generators of the indeterminacy subgroup in class coordinates.
    pub indeterminacy: Vec<Vec<R>>,
    pub vanishes: bool,
}

pub fn bracket<R: Scalar>(d: &ChainDiagram<R>) -> BracketResult<R> {
    let rep = d.representative();
    let flat = MappingComplex::new(&d.c3, &d.c0).flatten(&rep);
    let ind = Indeterminacy::of(d);
    let class = ind.class_of(&flat).expect("f·H − G·h is a cycle");
    let vanishes = ind.contains(&flat).expect("f·H − G·h is a cycle");
    BracketResult { representative: rep, class, summand_orders: ind.summand_orders(), indeterminacy: ind.generator_classes(), vanishes }
}

/// Whether two representatives of the same diagram differ by an element of
/// the indeterminacy.
pub fn same_coset<R: Scalar>(d: &ChainDiagram<R>, a: &GradedMap<R>, b: &GradedMap<R>) -> bool {
    let m = MappingComplex::new(&d.c3, &d.c0);
    Indeterminacy::of(d).contains(&m.flatten(&a.sub(b))).unwrap_or(false)
}

/// `ΣC`: degrees shifted up by one, boundary negated.
pub fn suspension_class<R: Scalar>(c: &ChainComplex<R>) -> ChainComplex<R> {
    c.suspension()
}
