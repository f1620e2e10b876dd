//! Representation-generic elimination kernels.

use crate::field::{Arith, FieldElement, Repr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Copy> Dense<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let (a, b) = self.data.split_at_mut(hi * self.cols);
        a[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut b[..self.cols]);
    }

    /// `(&mut row i, &row j)` for `i != j`.
    fn pair_mut(&mut self, i: usize, j: usize) -> (&mut [E], &[E]) {
        let c = self.cols;
        if i < j {
            let (a, b) = self.data.split_at_mut(j * c);
            (&mut a[i * c..(i + 1) * c], &b[..c])
        } else {
            let (a, b) = self.data.split_at_mut(i * c);
            (&mut b[..c], &a[j * c..(j + 1) * c])
        }
    }
}

pub(crate) fn lift<A: Repr>(a: &A, rows: usize, cols: usize, data: &[FieldElement]) -> Dense<A::Elem> {
    Dense {
        rows,
        cols,
        data: data.iter().map(|&x| a.lift(x)).collect(),
    }
}

pub(crate) fn lower<A: Repr>(a: &A, m: &Dense<A::Elem>) -> Vec<FieldElement> {
    m.data.iter().map(|&e| a.lower(e)).collect()
}

/// In-place reduced row echelon form, searching pivots only among the first
/// `pivot_cols` columns. Returns the pivot columns.
pub(crate) fn rref<A: Arith>(a: &A, m: &mut Dense<A::Elem>, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(m.cols) {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a.is_zero(m.row(i)[c])) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = a.inv(m.row(r)[c]);
        a.scale(&mut m.row_mut(r)[c..], inv);
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let f = m.row(i)[c];
            if a.is_zero(f) {
                continue;
            }
            let (dst, src) = m.pair_mut(i, r);
            a.axpy(&mut dst[c..], f, &src[c..]);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Determinant by forward elimination (row swaps are free in
/// characteristic 2).
pub(crate) fn det<A: Arith>(a: &A, mut m: Dense<A::Elem>) -> A::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let mut acc = a.one();
    for c in 0..m.cols {
        let Some(p) = (c..m.rows).find(|&i| !a.is_zero(m.row(i)[c])) else {
            return a.zero();
        };
        m.swap_rows(p, c);
        let piv = m.row(c)[c];
        acc = a.mul(acc, piv);
        let inv = a.inv(piv);
        for i in c + 1..m.rows {
            let f = m.row(i)[c];
            if a.is_zero(f) {
                continue;
            }
            let (dst, src) = m.pair_mut(i, c);
            a.axpy(&mut dst[c..], a.mul(f, inv), &src[c..]);
        }
    }
    acc
}

/// Kernel basis of an rref matrix with the given pivots.
pub(crate) fn kernel_from_rref<A: Arith>(a: &A, r: &Dense<A::Elem>, pivots: &[usize]) -> Dense<A::Elem> {
    let mut is_pivot = vec![false; r.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..r.cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = Dense::filled(free.len(), r.cols, a.zero());
    for (row, &f) in free.iter().enumerate() {
        let v = k.row_mut(row);
        v[f] = a.one();
        for (i, &p) in pivots.iter().enumerate() {
            // characteristic 2: -x = x
            v[p] = r.row(i)[f];
        }
    }
    k
}

pub(crate) fn mul<A: Arith>(a: &A, x: &Dense<A::Elem>, y: &Dense<A::Elem>) -> Dense<A::Elem> {
    assert_eq!(x.cols, y.rows, "inner dimensions differ");
    let mut out = Dense::filled(x.rows, y.cols, a.zero());
    for i in 0..x.rows {
        let dst = &mut out.data[i * y.cols..(i + 1) * y.cols];
        for (kk, &c) in x.row(i).iter().enumerate() {
            if !a.is_zero(c) {
                a.axpy(dst, c, y.row(kk));
            }
        }
    }
    out
}

/// Solve `D * lhs = rhs`; `None` when some row of `rhs` is outside the row
/// space of `lhs`.
pub(crate) fn solve_left<A: Arith>(
    a: &A,
    lhs: &Dense<A::Elem>,
    rhs: &Dense<A::Elem>,
) -> Option<Dense<A::Elem>> {
    assert_eq!(lhs.cols, rhs.cols);
    let (r, n) = (lhs.rows, lhs.cols);
    let mut aug = Dense::filled(r, n + r, a.zero());
    for i in 0..r {
        let row = aug.row_mut(i);
        row[..n].copy_from_slice(lhs.row(i));
        row[n + i] = a.one();
    }
    let pivots = rref(a, &mut aug, n);
    let mut out = Dense::filled(rhs.rows, r, a.zero());
    let mut residual = vec![a.zero(); n];
    for b in 0..rhs.rows {
        residual.copy_from_slice(rhs.row(b));
        let d = out.row_mut(b);
        for (i, &p) in pivots.iter().enumerate() {
            let c = residual[p];
            if a.is_zero(c) {
                continue;
            }
            let row = aug.row(i);
            a.axpy(&mut residual[p..], c, &row[p..n]);
            a.axpy(d, c, &row[n..]);
        }
        if residual.iter().any(|&x| !a.is_zero(x)) {
            return None;
        }
    }
    Some(out)
}

/// Row-echelon basis grown one vector at a time.
///
/// Every stored row has a leading one at its pivot and zeros at the pivots
/// of all rows stored before it, so reducing a new vector against the rows
/// in insertion order clears every pivot column.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<E> {
    cols: usize,
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Copy> Echelon<E> {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns whether `v` enlarged the span.
    pub fn insert<A: Arith<Elem = E>>(&mut self, a: &A, mut v: Vec<E>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        for (p, row) in &self.rows {
            let f = v[*p];
            if !a.is_zero(f) {
                a.axpy(&mut v[*p..], f, &row[*p..]);
            }
        }
        let Some(q) = v.iter().position(|&x| !a.is_zero(x)) else {
            return false;
        };
        let inv = a.inv(v[q]);
        a.scale(&mut v[q..], inv);
        self.rows.push((q, v));
        true
    }

    pub fn into_dense(self, zero: E) -> Dense<E> {
        let mut d = Dense::filled(self.rows.len(), self.cols, zero);
        for (i, (_, row)) in self.rows.into_iter().enumerate() {
            d.row_mut(i).copy_from_slice(&row);
        }
        d
    }
}
