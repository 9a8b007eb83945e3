use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        QMatrix::from_rows_with_cols(rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but keeps the column count when
    /// there are no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        QMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        QMatrix {
            rows,
            cols,
            data: entries.iter().map(|&v| q(v)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = QMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "row count");
        let mut m = QMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> QMatrix {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if !m.get(r, j).is_zero() {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}` as matrix columns.
    pub fn nullspace(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = QMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Q::one());
            for (row, &p) in pivots.iter().enumerate() {
                basis.set(p, k, -r.get(row, f).clone());
            }
        }
        basis
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&QMatrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }
}

/// A subspace of `Q^n` in canonical form: the nonzero rows of the reduced
/// row echelon form of any spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMatrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMatrix::identity(ambient),
        }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &QMatrix) -> Self {
        Subspace::row_span(&m.transpose())
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &QMatrix) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        Subspace {
            ambient: m.cols(),
            basis: r.block(0, 0, k, m.cols()),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        Subspace::row_span(&QMatrix::from_rows_with_cols(vectors.to_vec(), ambient))
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let rows = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            })
            .collect();
        Subspace::row_span(&QMatrix::from_rows_with_cols(rows, ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors (canonical).
    pub fn basis(&self) -> Vec<Vec<Q>> {
        (0..self.basis.rows()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        self.basis.transpose()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut rows = self.basis();
        rows.push(v.to_vec());
        QMatrix::from_rows_with_cols(rows, self.ambient).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut rows = self.basis();
        rows.extend(other.basis());
        Subspace::from_vectors(self.ambient, &rows)
    }

    /// Image under `m` (an `m.rows() x ambient` matrix).
    pub fn image(&self, m: &QMatrix) -> Subspace {
        Subspace::column_span(&m.mul(&self.basis_matrix()))
    }

    /// Direct sum embedded block-diagonally.
    pub fn direct_sum(parts: &[Subspace]) -> Subspace {
        let ambient: usize = parts.iter().map(|p| p.ambient).sum();
        let mut rows = Vec::new();
        let mut offset = 0;
        for p in parts {
            for v in p.basis() {
                let mut w = vec![Q::zero(); ambient];
                w[offset..offset + p.ambient].clone_from_slice(&v);
                rows.push(w);
            }
            offset += p.ambient;
        }
        Subspace::from_vectors(ambient, &rows)
    }

    /// Vectors extending a basis of `sub` (which must lie in `self`) to a
    /// basis of `self`: the basis vectors of `self` whose addition raises the
    /// rank, in canonical order.
    pub fn complement_basis(&self, sub: &Subspace) -> Vec<Vec<Q>> {
        let mut acc = sub.basis();
        let mut out = Vec::new();
        for v in self.basis() {
            let mut trial = acc.clone();
            trial.push(v.clone());
            if QMatrix::from_rows_with_cols(trial.clone(), self.ambient).rank() == trial.len() {
                acc = trial;
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let m = QMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(), 1);
        let n = m.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(m.mul(&n).is_zero());
        assert_eq!(QMatrix::zeros(0, 3).nullspace().cols(), 3);
        assert_eq!(QMatrix::zeros(2, 0).rank(), 0);
    }

    #[test]
    fn solve_examples() {
        let m = QMatrix::from_i64(2, 2, &[2, 1, 1, 3]);
        let x = m.solve(&[q(3), q(4)]).unwrap();
        assert_eq!(m.apply(&x), vec![q(3), q(4)]);
        let singular = QMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(singular.solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn subspace_canonical_form() {
        let a = Subspace::from_vectors(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        let b = Subspace::from_vectors(3, &[vec![q(1), q(2), q(1)], vec![q(1), q(0), q(-1)]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[q(2), q(3), q(1)]));
        assert!(!a.contains(&[q(1), q(0), q(0)]));
        let s = a.sum(&Subspace::coordinate(3, [0]));
        assert_eq!(s, Subspace::full(3));
        let c = s.complement_basis(&a);
        assert_eq!(c.len(), 1);
    }
}
