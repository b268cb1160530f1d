use std::fmt;
use std::ops::Mul;

use crate::scalar::Scalar;

/// A dense row-major matrix over a Euclidean ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Scalar> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<R>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| R::from_i64(v)).collect()).collect(), cols)
    }

    pub fn column_vector(v: Vec<R>) -> Self {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_mat(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())).collect()
    }

    pub fn add_mat(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn scale(&self, s: &R) -> Matrix<R> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn neg(&self) -> Matrix<R> {
        self.scale(&-R::one())
    }

    pub fn sub_mat(&self, other: &Matrix<R>) -> Matrix<R> {
        self.add_mat(&other.neg())
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// The columns with indices in `range`.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix<R> {
        let mut out = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (k, j) in range.clone().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row `target` += q · row `source`
    fn add_row(&mut self, target: usize, source: usize, q: &R) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j).clone();
            if !s.is_zero() {
                let idx = target * self.cols + j;
                self.data[idx] = self.data[idx].clone() + q.clone() * s;
            }
        }
    }

    /// column `target` += q · column `source`
    fn add_col(&mut self, target: usize, source: usize, q: &R) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source).clone();
            if !s.is_zero() {
                let idx = i * self.cols + target;
                self.data[idx] = self.data[idx].clone() + q.clone() * s;
            }
        }
    }

    fn scale_row(&mut self, i: usize, u: &R) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = self.data[idx].clone() * u.clone();
        }
    }
}

impl<R: Scalar> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.mul_mat(rhs)
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.data[i * self.cols..(i + 1) * self.cols].iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v:?}")?;
            }
        }
        write!(f, "]")
    }
}

/// `P · M · Q = D` with `P`, `Q` invertible and `D` diagonal, the nonzero
/// diagonal entries `d_1 | d_2 | ...` canonical.
#[derive(Clone, Debug)]
pub struct SmithForm<R> {
    pub invariants: Vec<R>,
    pub rank: usize,
    pub p: Matrix<R>,
    pub q: Matrix<R>,
    pub q_inv: Matrix<R>,
}

impl<R: Scalar> SmithForm<R> {
    /// A basis of the kernel of `M`: the last `cols - rank` columns of `Q`.
    pub fn kernel_basis(&self) -> Matrix<R> {
        self.q.columns(self.rank..self.q.cols())
    }

    /// Whether `v` lies in the column span of `M`, and if so a preimage.
    pub fn solve(&self, v: &[R]) -> Option<Vec<R>> {
        let y = self.p.mul_vec(v);
        let mut c = vec![R::zero(); self.q.rows()];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                let d = &self.invariants[i];
                if !(yi.clone() % d.clone()).is_zero() {
                    return None;
                }
                c[i] = yi.clone() / d.clone();
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.q.mul_vec(&c))
    }
}

pub fn smith_normal_form<R: Scalar>(m: &Matrix<R>) -> SmithForm<R> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut p = Matrix::identity(rows);
    let mut q = Matrix::identity(cols);
    let mut q_inv = Matrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot on the smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.magnitude_cmp(a.get(bi, bj)).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        p.swap_rows(t, pi);
        a.swap_cols(t, pj);
        q.swap_cols(t, pj);
        q_inv.swap_rows(t, pj);
        loop {
            let mut dirty = false;
            let pivot = a.get(t, t).clone();
            for i in t + 1..rows {
                let v = a.get(i, t).clone();
                if !v.is_zero() {
                    let quo = v.clone() / pivot.clone();
                    let neg = -quo;
                    a.add_row(i, t, &neg);
                    p.add_row(i, t, &neg);
                    if !a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                let v = a.get(t, j).clone();
                if !v.is_zero() {
                    let quo = v.clone() / pivot.clone();
                    let neg = -quo.clone();
                    a.add_col(j, t, &neg);
                    q.add_col(j, t, &neg);
                    q_inv.add_row(t, j, &quo);
                    if !a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a smaller remainder appeared; move it to the pivot position
                let mut best = (t, t);
                for i in t..rows {
                    let v = a.get(i, t);
                    if !v.is_zero() && v.magnitude_cmp(a.get(best.0, best.1)).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    let v = a.get(t, j);
                    if !v.is_zero() && v.magnitude_cmp(a.get(best.0, best.1)).is_lt() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    p.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    q.swap_cols(t, best.1);
                    q_inv.swap_rows(t, best.1);
                }
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let mut offender = None;
            'search: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(a.get(i, j).clone() % pivot.clone()).is_zero() {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = R::one();
                    a.add_row(t, i, &one);
                    p.add_row(t, i, &one);
                }
                None => break,
            }
        }
        let d = a.get(t, t).clone();
        let c = d.canonical();
        if c != d {
            let u = c / d;
            a.scale_row(t, &u);
            p.scale_row(t, &u);
        }
        t += 1;
    }
    let invariants: Vec<R> = (0..t).map(|i| a.get(i, i).clone()).collect();
    SmithForm { rank: invariants.len(), invariants, p, q, q_inv }
}
