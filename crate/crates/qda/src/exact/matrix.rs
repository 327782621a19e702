use crate::error::{Error, Result};

use super::scalar::{Mode, Scalar};
use super::sparse::{RowBasis, SparseVec};

/// A dense matrix with exact scalar entries and a single mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    mode: Mode,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(mode: Mode, nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            mode,
            data: vec![Scalar::zero(mode); nrows * ncols],
        }
    }

    pub fn identity(mode: Mode, n: usize) -> Self {
        let mut m = Matrix::zero(mode, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(mode));
        }
        m
    }

    /// Builds a matrix from rows, requiring rectangular shape and a uniform
    /// scalar mode.
    pub fn from_rows(mode: Mode, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    ncols
                )));
            }
            for s in row {
                if s.mode() != mode {
                    return Err(Error::ModeMismatch {
                        expected: mode,
                        got: s.mode(),
                    });
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            nrows,
            ncols,
            mode,
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.mode(), self.mode, "scalar mode mismatch");
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn row_sparse(&self, i: usize) -> SparseVec {
        SparseVec::from_entries(
            self.row(i)
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(j, s)| (j as u32, s.clone())),
        )
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.nrows).map(|i| self.row_sparse(i)).collect()
    }

    pub fn from_sparse_rows(
        mode: Mode,
        ncols: usize,
        rows: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let rows: Vec<SparseVec> = rows.into_iter().collect();
        let mut m = Matrix::zero(mode, rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (c, s) in r.iter() {
                m.set(i, *c as usize, s.clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.mode, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise complex conjugate (identity in rational mode).
    pub fn conj(&self) -> Matrix {
        let mut out = self.clone();
        for s in &mut out.data {
            *s = s.conj();
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for a in &mut out.data {
            *a = -&*a;
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        assert_eq!(k.mode(), self.mode, "scalar mode mismatch");
        let mut out = self.clone();
        for a in &mut out.data {
            *a = &*a * k;
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                expected: self.mode,
                got: other.mode,
            });
        }
        if self.ncols != other.nrows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut out = Matrix::zero(self.mode, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let v = cur + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: (A ⊗ B)[i·p+k][j·q+l] = A[i][j]·B[k][l].
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.mode, other.mode, "scalar mode mismatch");
        let mut out = Matrix::zero(
            self.mode,
            self.nrows * other.nrows,
            self.ncols * other.ncols,
        );
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.nrows {
                    for l in 0..other.ncols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.nrows + k, j * other.ncols + l, a * b);
                    }
                }
            }
        }
        out
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                expected: self.mode,
                got: other.mode,
            });
        }
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Dimension(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        let mut basis = RowBasis::new(self.mode, self.ncols as u32);
        for i in 0..self.nrows {
            basis.insert(self.row_sparse(i));
        }
        basis.rank()
    }

    /// Reduced row echelon form with the textbook leading-pivot convention.
    /// Returns the echelon matrix (rank rows, pivots scaled to 1) and the
    /// pivot columns in ascending order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        // Reuse the trailing-pivot engine by reversing column order.
        let n = self.ncols as u32;
        let flip = |c: u32| n - 1 - c;
        let mut basis = RowBasis::new(self.mode, n);
        for i in 0..self.nrows {
            let rev = SparseVec::from_entries(
                self.row_sparse(i).iter().map(|(c, s)| (flip(*c), s.clone())),
            );
            basis.insert(rev);
        }
        // Trailing pivots in reversed coordinates are leading pivots in the
        // original ones; canonical_rows come out sorted by reversed pivot
        // ascending, i.e. by original leading pivot descending.
        let mut rows: Vec<(usize, SparseVec)> = basis
            .canonical_rows()
            .into_iter()
            .map(|r| {
                let unrev =
                    SparseVec::from_entries(r.iter().map(|(c, s)| (flip(*c), s.clone())));
                let lead = unrev.leading().expect("nonzero row") as usize;
                (lead, unrev)
            })
            .collect();
        rows.sort_by_key(|(lead, _)| *lead);
        let pivots: Vec<usize> = rows.iter().map(|(lead, _)| *lead).collect();
        let m = Matrix::from_sparse_rows(self.mode, self.ncols, rows.into_iter().map(|(_, r)| r));
        (m, pivots)
    }

    /// Canonical basis of the null space {v : M·v = 0}, returned as the rows
    /// of a (dim kernel) × ncols matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let mut basis = RowBasis::new(self.mode, self.ncols as u32);
        for i in 0..self.nrows {
            basis.insert(self.row_sparse(i));
        }
        Matrix::from_sparse_rows(self.mode, self.ncols, basis.kernel_basis())
    }
}

/// Canonical basis of the sum of two row spans.
pub fn span_sum(mode: Mode, ncols: u32, a: &[SparseVec], b: &[SparseVec]) -> RowBasis {
    let mut basis = RowBasis::new(mode, ncols);
    for r in a.iter().chain(b) {
        basis.insert(r.clone());
    }
    basis
}

/// Canonical basis of the intersection of two row spans, by the Zassenhaus
/// double-block construction.
///
/// Stack [u | u] for u in U and [0 | v] for v in V over 2·ncols columns (the
/// second block holds the actual coordinates, the first the U-tracking copy).
/// After reduction, the rows supported entirely in the first block carry
/// exactly a basis of U ∩ V there.
pub fn span_intersection(mode: Mode, ncols: u32, u: &[SparseVec], v: &[SparseVec]) -> Vec<SparseVec> {
    let mut basis = RowBasis::new(mode, 2 * ncols);
    for r in u {
        let doubled = SparseVec::from_entries(
            r.iter()
                .flat_map(|(c, s)| [(*c, s.clone()), (*c + ncols, s.clone())]),
        );
        basis.insert(doubled);
    }
    for r in v {
        basis.insert(r.map_cols(|c| c + ncols));
    }
    let mut out = RowBasis::new(mode, ncols);
    for row in basis.canonical_rows() {
        if row.trailing().is_some_and(|t| t < ncols) {
            out.insert(row);
        }
    }
    out.canonical_rows()
}
