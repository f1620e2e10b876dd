//! Reed–Solomon codes over the level-0 subfield of a tower: generators,
//! evaluation and interpolation, unique decoding, Schur squares and
//! subfield subcodes.

mod decode;
mod poly;

use std::collections::HashSet;

use thiserror::Error;

use crate::field::{FieldElement, FieldTower, Repr};
use crate::linalg::dense::{self, Echelon};
use crate::linalg::Matrix;

pub use decode::{Decoded, RsDecoder};
pub(crate) use decode::{error_locator_roots, Berlekamp};
pub use poly::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsError {
    #[error("dimension k={k} out of range for length n={n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("locators {0} and {1} coincide")]
    DuplicateLocator(usize, usize),
    #[error("locator {0} is outside the base field")]
    LocatorOutsideBaseField(usize),
    #[error("cannot draw {n} distinct locators from {available} elements")]
    TooManyLocators { n: usize, available: u128 },
    #[error("no codeword within the unique decoding radius")]
    DecodingFailure,
}

/// Pairwise distinct evaluation points in the level-0 subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locators(Vec<FieldElement>);

impl Locators {
    pub fn new(tower: &FieldTower, alpha: Vec<FieldElement>) -> Result<Self, RsError> {
        let mut seen = std::collections::HashMap::with_capacity(alpha.len());
        for (i, &a) in alpha.iter().enumerate() {
            if !tower.is_in_subfield(a, 0) {
                return Err(RsError::LocatorOutsideBaseField(i));
            }
            if let Some(j) = seen.insert(a, i) {
                return Err(RsError::DuplicateLocator(j, i));
            }
        }
        Ok(Self(alpha))
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a * alpha` for a nonzero level-0 `a`.
    pub fn scaled(&self, tower: &FieldTower, a: FieldElement) -> Self {
        assert!(!a.is_zero() && tower.is_in_subfield(a, 0));
        Self(self.0.iter().map(|&x| tower.mul(x, a)).collect())
    }

    /// `alpha - b * 1` for a level-0 `b`.
    pub fn shifted(&self, tower: &FieldTower, b: FieldElement) -> Self {
        assert!(tower.is_in_subfield(b, 0));
        Self(self.0.iter().map(|&x| x - b).collect())
    }
}

/// `(f(alpha_1), ..., f(alpha_n))`
pub fn evaluate(tower: &FieldTower, f: &Polynomial, alpha: &Locators) -> Vec<FieldElement> {
    alpha.0.iter().map(|&a| f.eval(tower, a)).collect()
}

/// Componentwise powers `alpha^0 .. alpha^(count-1)`, one vector per power.
pub(crate) fn powers(tower: &FieldTower, alpha: &[FieldElement], count: usize) -> Vec<Vec<FieldElement>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = vec![FieldElement::ONE; alpha.len()];
    for _ in 0..count {
        let next = cur.iter().zip(alpha).map(|(&c, &a)| tower.mul(c, a)).collect();
        out.push(std::mem::replace(&mut cur, next));
    }
    out
}

/// `k x n` Vandermonde generator: row `i` is `alpha^i`.
pub fn rs_generator(tower: &FieldTower, alpha: &Locators, k: usize) -> Result<Matrix, RsError> {
    let n = alpha.len();
    if k == 0 || k > n {
        return Err(RsError::DimensionOutOfRange { k, n });
    }
    Ok(Matrix::from_rows(powers(tower, &alpha.0, k), n, 0))
}

/// Generator with the rows `alpha^i` for the listed exponents.
pub fn monomial_generator(tower: &FieldTower, alpha: &Locators, exponents: &[usize]) -> Matrix {
    let max = exponents.iter().copied().max().map_or(0, |m| m + 1);
    let pw = powers(tower, &alpha.0, max);
    Matrix::from_rows(exponents.iter().map(|&e| pw[e].clone()).collect(), alpha.len(), 0)
}

/// Lagrange interpolation with precomputed barycentric weights.
///
/// The weights `w_i = 1 / prod_{j != i} (alpha_i - alpha_j)` also span the
/// dual of every RS code on these locators: `sum_i w_i f(alpha_i) = 0` for
/// `deg f <= n - 2`.
#[derive(Clone, Debug)]
pub struct Interpolator {
    alpha: Vec<FieldElement>,
    weights: Vec<FieldElement>,
    node: Polynomial,
}

impl Interpolator {
    pub fn new(tower: &FieldTower, alpha: &Locators) -> Self {
        Self::from_points(tower, &alpha.0)
    }

    /// Interpolation on arbitrary distinct points of the tower.
    pub(crate) fn from_points(tower: &FieldTower, a: &[FieldElement]) -> Self {
        let mut node = Polynomial::one();
        for &x in a {
            node = node.mul(tower, &Polynomial::from_coeffs(vec![x, FieldElement::ONE]));
        }
        let weights = a
            .iter()
            .enumerate()
            .map(|(i, &ai)| {
                let d = a
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(FieldElement::ONE, |acc, (_, &aj)| tower.mul(acc, ai - aj));
                tower.inv_nonzero(d)
            })
            .collect();
        Self {
            alpha: a.to_vec(),
            weights,
            node,
        }
    }

    pub fn weights(&self) -> &[FieldElement] {
        &self.weights
    }

    /// `prod_i (X - alpha_i)`
    pub fn node(&self) -> &Polynomial {
        &self.node
    }

    /// The unique polynomial of degree `< n` through `(alpha_i, y_i)`.
    pub fn interpolate(&self, tower: &FieldTower, y: &[FieldElement]) -> Result<Polynomial, RsError> {
        let n = self.alpha.len();
        if y.len() != n {
            return Err(RsError::LengthMismatch {
                expected: n,
                got: y.len(),
            });
        }
        let node = self.node.coeffs();
        let mut acc = vec![FieldElement::ZERO; n];
        let mut quot = vec![FieldElement::ZERO; n];
        for i in 0..n {
            let c = tower.mul(y[i], self.weights[i]);
            if c.is_zero() {
                continue;
            }
            // node / (X - alpha_i), synthetic division from the top
            let a = self.alpha[i];
            let mut carry = FieldElement::ZERO;
            for d in (1..=n).rev() {
                carry = node[d] + tower.mul(carry, a);
                quot[d - 1] = carry;
            }
            crate::field::Arith::axpy(tower, &mut acc, c, &quot);
        }
        Ok(Polynomial::from_coeffs(acc))
    }
}

pub fn interpolate(tower: &FieldTower, alpha: &Locators, y: &[FieldElement]) -> Result<Polynomial, RsError> {
    Interpolator::new(tower, alpha).interpolate(tower, y)
}

/// Full-rank generator of the span of all products `g_i * g_j`, `i <= j`.
pub fn schur_square(tower: &FieldTower, g: &Matrix) -> Matrix {
    fn run<A: Repr>(a: &A, g: &Matrix) -> Matrix {
        let (d, n) = (g.rows(), g.cols());
        let m = dense::lift(a, d, n, g.entries());
        let cap = n.min(d * (d + 1) / 2);
        let mut basis = Echelon::new(n);
        'outer: for i in 0..d {
            for j in i..d {
                if basis.rank() == cap {
                    break 'outer;
                }
                let prod = m.row(i).iter().zip(m.row(j)).map(|(&x, &y)| a.mul(x, y)).collect();
                basis.insert(a, prod);
            }
        }
        let out = basis.into_dense(a.zero());
        Matrix::new(out.rows, out.cols, g.level(), dense::lower(a, &out))
    }
    let m = match tower.fast_base(g.level()) {
        Some(b) => run(b, g),
        None => run(tower, g),
    };
    m.rref(tower).basis()
}

/// Generator of `rowspace(g) ∩ F_{q0}^n` via the expanded parity check.
pub fn subfield_subcode(tower: &FieldTower, g: &Matrix) -> Matrix {
    let h = g.right_kernel(tower);
    let ext = tower.base_basis().len();
    let n = g.cols();
    let mut data = vec![FieldElement::ZERO; h.rows() * ext * n];
    for i in 0..h.rows() {
        for (c, &x) in h.row(i).iter().enumerate() {
            for (j, coord) in tower.expand_base(x).into_iter().enumerate() {
                data[(i * ext + j) * n + c] = coord;
            }
        }
    }
    let expanded = Matrix::new(h.rows() * ext, n, 0, data);
    expanded.right_kernel(tower).rref(tower).basis()
}

/// Uniformly random distinct locators (rejection on repeats).
pub fn random_locators<R: rand::Rng + ?Sized>(
    tower: &FieldTower,
    n: usize,
    rng: &mut R,
) -> Result<Locators, RsError> {
    let q0 = 1u128 << tower.base_degree().min(127);
    if n as u128 > q0 {
        return Err(RsError::TooManyLocators { n, available: q0 });
    }
    let mut seen = HashSet::with_capacity(n);
    let mut alpha = Vec::with_capacity(n);
    while alpha.len() < n {
        let x = tower.sample_subfield(0, rng).expect("level 0 exists");
        if seen.insert(x) {
            alpha.push(x);
        }
    }
    Ok(Locators(alpha))
}
