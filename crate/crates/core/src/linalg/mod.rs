//! Dense matrices over a level of a field tower.
//!
//! Level-0 matrices over a base field with at most `2^16` elements are
//! eliminated in the compact base-field representation; everything else runs
//! on top-field words. Both paths perform the same operations in the same
//! order, so results do not depend on which one ran.

pub(crate) mod dense;

use std::fmt;

use thiserror::Error;

use crate::field::{Arith, FieldElement, FieldTower, Repr};
use dense::Dense;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no solution: right-hand side is outside the row space")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({row}, {col}) is not in the level-{level} subfield")]
    LevelViolation { row: usize, col: usize, level: u32 },
}

/// Row-major dense matrix whose entries lie in the level-`level` subfield.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    level: u32,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} (level {})", self.rows, self.cols, self.level)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows.
    pub fn basis(&self) -> Matrix {
        let r = self.rank();
        Matrix::new(
            r,
            self.matrix.cols,
            self.matrix.level,
            self.matrix.data[..r * self.matrix.cols].to_vec(),
        )
    }
}

impl Matrix {
    /// Panics if `data.len() != rows * cols`. Use [`Matrix::check_level`] to
    /// validate untrusted entries.
    pub fn new(rows: usize, cols: usize, level: u32, data: Vec<FieldElement>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        Self {
            rows,
            cols,
            level,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize, level: u32) -> Self {
        Self::new(rows, cols, level, vec![FieldElement::ZERO; rows * cols])
    }

    pub fn identity(n: usize, level: u32) -> Self {
        let mut m = Self::zeros(n, n, level);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize, level: u32) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Self::new(r, cols, level, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.data.chunks_exact(self.cols.max(1)).take(self.rows)
    }

    /// Reinterprets the entries as living in a (larger) level.
    pub fn with_level(mut self, level: u32) -> Self {
        self.level = level;
        self
    }

    /// Checks the level invariant entry by entry.
    pub fn check_level(&self, tower: &FieldTower) -> Result<(), LinalgError> {
        for (idx, &x) in self.data.iter().enumerate() {
            if !tower.is_in_subfield(x, self.level) {
                return Err(LinalgError::LevelViolation {
                    row: idx / self.cols,
                    col: idx % self.cols,
                    level: self.level,
                });
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.level);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Rows `self` followed by rows `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix::new(
            self.rows + other.rows,
            self.cols,
            self.level.max(other.level),
            data,
        ))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix::new(idx.len(), self.cols, self.level, data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn lift<A: Repr>(&self, a: &A) -> Dense<A::Elem> {
        dense::lift(a, self.rows, self.cols, &self.data)
    }

    fn lower<A: Repr>(a: &A, d: &Dense<A::Elem>, level: u32) -> Matrix {
        Matrix::new(d.rows, d.cols, level, dense::lower(a, d))
    }

    pub fn mul(&self, other: &Matrix, tower: &FieldTower) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let level = self.level.max(other.level);
        Ok(match tower.fast_base(level) {
            Some(b) => Self::lower(b, &dense::mul(b, &self.lift(b), &other.lift(b)), level),
            None => Self::lower(tower, &dense::mul(tower, &self.lift(tower), &other.lift(tower)), level),
        })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElement], tower: &FieldTower) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows, "vector length");
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            Arith::axpy(tower, &mut out, c, self.row(i));
        }
        out
    }

    pub fn rref(&self, tower: &FieldTower) -> Rref {
        fn run<A: Repr>(a: &A, m: &Matrix) -> Rref {
            let mut d = m.lift(a);
            let cols = d.cols;
            let pivots = dense::rref(a, &mut d, cols);
            Rref {
                matrix: Matrix::lower(a, &d, m.level),
                pivots,
            }
        }
        match tower.fast_base(self.level) {
            Some(b) => run(b, self),
            None => run(tower, self),
        }
    }

    pub fn rank(&self, tower: &FieldTower) -> usize {
        self.rref(tower).rank()
    }

    /// Rows form a basis of `{x : self * x^T = 0}`.
    pub fn right_kernel(&self, tower: &FieldTower) -> Matrix {
        fn run<A: Repr>(a: &A, m: &Matrix) -> Matrix {
            let mut d = m.lift(a);
            let cols = d.cols;
            let pivots = dense::rref(a, &mut d, cols);
            Matrix::lower(a, &dense::kernel_from_rref(a, &d, &pivots), m.level)
        }
        match tower.fast_base(self.level) {
            Some(b) => run(b, self),
            None => run(tower, self),
        }
    }

    /// Some `D` with `D * self = rhs`.
    pub fn solve_left(&self, rhs: &Matrix, tower: &FieldTower) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "solve with {} and {} columns",
                self.cols, rhs.cols
            )));
        }
        fn run<A: Repr>(a: &A, lhs: &Matrix, rhs: &Matrix, level: u32) -> Option<Matrix> {
            dense::solve_left(a, &lhs.lift(a), &rhs.lift(a)).map(|d| Matrix::lower(a, &d, level))
        }
        let level = self.level.max(rhs.level);
        let d = match tower.fast_base(level) {
            Some(b) => run(b, self, rhs, level),
            None => run(tower, self, rhs, level),
        }
        .ok_or(LinalgError::NoSolution)?;
        debug_assert_eq!(d.mul(self, tower).as_ref(), Ok(rhs));
        Ok(d)
    }

    pub fn inverse(&self, tower: &FieldTower) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rank(tower) < self.rows {
            return Err(LinalgError::Singular);
        }
        self.solve_left(&Matrix::identity(self.rows, self.level), tower)
    }

    pub fn determinant(&self, tower: &FieldTower) -> Result<FieldElement, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(match tower.fast_base(self.level) {
            Some(b) => b.lower(dense::det(b, self.lift(b))),
            None => dense::det(tower, self.lift(tower)),
        })
    }

    pub fn rowspace_equal(&self, other: &Matrix, tower: &FieldTower) -> Result<bool, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "row spaces of length {} and {}",
                self.cols, other.cols
            )));
        }
        let level = self.level.max(other.level);
        let a = self.clone().with_level(level).rref(tower);
        let b = other.clone().with_level(level).rref(tower);
        Ok(a.pivots == b.pivots && a.basis() == b.basis())
    }

    pub fn rowspace_contains(&self, v: &[FieldElement], tower: &FieldTower) -> Result<bool, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let level = if v.iter().all(|&x| tower.is_in_subfield(x, self.level)) {
            self.level
        } else {
            tower.levels()
        };
        let row = Matrix::new(1, self.cols, level, v.to_vec());
        Ok(self.clone().with_level(level).solve_left(&row, tower).is_ok())
    }
}

/// Span accumulator for streams of candidate rows, e.g. Schur products.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    level: u32,
    inner: EchelonInner,
}

#[derive(Clone, Debug)]
enum EchelonInner {
    Small(dense::Echelon<u16>),
    Big(dense::Echelon<FieldElement>),
}

impl EchelonBasis {
    pub fn new(cols: usize, level: u32, tower: &FieldTower) -> Self {
        let inner = match tower.fast_base(level) {
            Some(_) => EchelonInner::Small(dense::Echelon::new(cols)),
            None => EchelonInner::Big(dense::Echelon::new(cols)),
        };
        Self { level, inner }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            EchelonInner::Small(e) => e.rank(),
            EchelonInner::Big(e) => e.rank(),
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[FieldElement], tower: &FieldTower) -> bool {
        match &mut self.inner {
            EchelonInner::Small(e) => {
                let b = tower.base_field();
                e.insert(b, v.iter().map(|&x| b.lift(x)).collect())
            }
            EchelonInner::Big(e) => e.insert(tower, v.to_vec()),
        }
    }

    /// A basis of the span in canonical (reduced) form.
    pub fn into_matrix(self, tower: &FieldTower) -> Matrix {
        let m = match self.inner {
            EchelonInner::Small(e) => {
                let b = tower.base_field();
                let d = e.into_dense(0);
                Matrix::lower(b, &d, self.level)
            }
            EchelonInner::Big(e) => Matrix::lower(tower, &e.into_dense(FieldElement::ZERO), self.level),
        };
        m.rref(tower).basis()
    }
}

#[cfg(test)]
mod tests;
