//! Unique decoding up to `floor((n - k) / 2)` errors.

use super::{evaluate, Interpolator, Locators, Polynomial, RsError};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::Matrix;

/// A successful decoding: `y = ev(message) + error`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub message: Polynomial,
    pub error: Vec<FieldElement>,
}

/// Decoder for `RS_{k,n}[alpha]` with per-locator precomputation.
#[derive(Clone, Debug)]
pub struct RsDecoder {
    alpha: Locators,
    k: usize,
    interp: Interpolator,
}

impl RsDecoder {
    pub fn new(tower: &FieldTower, alpha: Locators, k: usize) -> Result<Self, RsError> {
        let n = alpha.len();
        if k == 0 || k >= n {
            return Err(RsError::DimensionOutOfRange { k, n });
        }
        let interp = Interpolator::new(tower, &alpha);
        Ok(Self { alpha, k, interp })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `floor((n - k) / 2)`
    pub fn radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    pub fn locators(&self) -> &Locators {
        &self.alpha
    }

    pub fn interpolator(&self) -> &Interpolator {
        &self.interp
    }

    fn check_len(&self, y: &[FieldElement]) -> Result<(), RsError> {
        if y.len() != self.n() {
            return Err(RsError::LengthMismatch {
                expected: self.n(),
                got: y.len(),
            });
        }
        Ok(())
    }

    /// Accepts `f` if it has degree `< k` and lies within the radius of `y`.
    fn finish(&self, tower: &FieldTower, f: Polynomial, y: &[FieldElement]) -> Result<Decoded, RsError> {
        if f.degree().is_some_and(|d| d >= self.k) {
            return Err(RsError::DecodingFailure);
        }
        let c = evaluate(tower, &f, &self.alpha);
        let error: Vec<FieldElement> = y.iter().zip(&c).map(|(&a, &b)| a - b).collect();
        if error.iter().filter(|e| !e.is_zero()).count() > self.radius() {
            return Err(RsError::DecodingFailure);
        }
        Ok(Decoded { message: f, error })
    }

    /// Gao's decoder: a partial extended Euclidean run on the node
    /// polynomial and the interpolant of `y`.
    pub fn decode(&self, tower: &FieldTower, y: &[FieldElement]) -> Result<Decoded, RsError> {
        self.check_len(y)?;
        let (n, k) = (self.n(), self.k);
        let g1 = self.interp.interpolate(tower, y)?;
        let (mut r0, mut r1) = (self.interp.node().clone(), g1);
        let (mut v0, mut v1) = (Polynomial::zero(), Polynomial::one());
        while r1.degree().is_some_and(|d| 2 * d >= n + k) {
            let (q, r) = r0.div_rem(tower, &r1);
            let v = v0.add(&q.mul(tower, &v1));
            r0 = std::mem::replace(&mut r1, r);
            v0 = std::mem::replace(&mut v1, v);
        }
        let (f, rem) = r1.div_rem(tower, &v1);
        if !rem.is_zero() {
            return Err(RsError::DecodingFailure);
        }
        self.finish(tower, f, y)
    }

    /// Berlekamp–Welch: one linear system for a monic error locator `E` of
    /// degree `tau` and `Q = f E` of degree `< k + tau`.
    pub fn decode_bw(&self, tower: &FieldTower, y: &[FieldElement]) -> Result<Decoded, RsError> {
        self.check_len(y)?;
        let (n, k, tau) = (self.n(), self.k, self.radius());
        let unknowns = tau + k + tau;
        // Column i of the transposed system holds equation i:
        //   sum_j e_j y_i a_i^j + sum_j q_j a_i^j = y_i a_i^tau
        let mut sys = Matrix::zeros(unknowns, n, tower.levels());
        let mut rhs = Matrix::zeros(1, n, tower.levels());
        for (i, (&a, &yi)) in self.alpha.as_slice().iter().zip(y).enumerate() {
            let mut p = FieldElement::ONE;
            for j in 0..k + tau {
                if j < tau {
                    sys.set(j, i, tower.mul(yi, p));
                }
                sys.set(tau + j, i, p);
                if j == tau {
                    rhs.set(0, i, tower.mul(yi, p));
                }
                p = tower.mul(p, a);
            }
        }
        let sol = sys.solve_left(&rhs, tower).map_err(|_| RsError::DecodingFailure)?;
        let mut e = sol.row(0)[..tau].to_vec();
        e.push(FieldElement::ONE);
        let e = Polynomial::from_coeffs(e);
        let q = Polynomial::from_coeffs(sol.row(0)[tau..].to_vec());
        let (f, rem) = q.div_rem(tower, &e);
        if !rem.is_zero() {
            return Err(RsError::DecodingFailure);
        }
        self.finish(tower, f, y)
    }

    /// `S_j = sum_i y_i w_i alpha_i^j` for `j < n - k`; all zero exactly on
    /// codewords.
    pub fn syndromes(&self, tower: &FieldTower, y: &[FieldElement]) -> Vec<FieldElement> {
        let count = self.n() - self.k;
        let mut z: Vec<FieldElement> = y
            .iter()
            .zip(self.interp.weights())
            .map(|(&a, &w)| tower.mul(a, w))
            .collect();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(z.iter().fold(FieldElement::ZERO, |acc, &x| acc + x));
            for (zi, &a) in z.iter_mut().zip(self.alpha.as_slice()) {
                *zi = tower.mul(*zi, a);
            }
        }
        out
    }
}

/// Berlekamp–Massey state that can be cloned mid-sequence and resumed.
#[derive(Clone, Debug)]
pub(crate) struct Berlekamp {
    conn: Vec<FieldElement>,
    prev: Vec<FieldElement>,
    len: usize,
    gap: usize,
    prev_disc: FieldElement,
    processed: usize,
}

impl Berlekamp {
    pub fn new() -> Self {
        Self {
            conn: vec![FieldElement::ONE],
            prev: vec![FieldElement::ONE],
            len: 0,
            gap: 1,
            prev_disc: FieldElement::ONE,
            processed: 0,
        }
    }

    pub fn processed(&self) -> usize {
        self.processed
    }

    /// Linear complexity so far.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Connection polynomial `C(z) = 1 + c_1 z + ... + c_L z^L`.
    pub fn connection(&self) -> &[FieldElement] {
        &self.conn
    }

    /// Consumes `s[self.processed()]`; `s` holds the whole prefix.
    pub fn step(&mut self, tower: &FieldTower, s: &[FieldElement]) {
        let n = self.processed;
        let mut d = s[n];
        for i in 1..=self.len.min(self.conn.len() - 1) {
            d += tower.mul(self.conn[i], s[n - i]);
        }
        self.processed += 1;
        if d.is_zero() {
            self.gap += 1;
            return;
        }
        let coef = tower.div(d, self.prev_disc);
        let old = (2 * self.len <= n).then(|| self.conn.clone());
        let need = self.prev.len() + self.gap;
        if self.conn.len() < need {
            self.conn.resize(need, FieldElement::ZERO);
        }
        for (i, &b) in self.prev.iter().enumerate() {
            self.conn[i + self.gap] += tower.mul(coef, b);
        }
        match old {
            Some(old) => {
                self.len = n + 1 - self.len;
                self.prev = old;
                self.prev_disc = d;
                self.gap = 1;
            }
            None => self.gap += 1,
        }
    }

    pub fn run(tower: &FieldTower, s: &[FieldElement]) -> Self {
        let mut bm = Self::new();
        while bm.processed < s.len() {
            bm.step(tower, s);
        }
        bm
    }
}

/// Positions of the roots of `sigma(z) = z^L C(1/z)` among the locators,
/// provided `sigma` has level-0 coefficients and splits into `L` distinct
/// linear factors over them. This is exactly the shape of the error locator
/// of a pattern with `L` errors.
pub(crate) fn error_locator_roots(
    tower: &FieldTower,
    bm: &Berlekamp,
    alpha: &[FieldElement],
) -> Option<Vec<usize>> {
    let l = bm.len();
    let c = bm.connection();
    let deg_c = c.iter().rposition(|x| !x.is_zero()).unwrap_or(0);
    if deg_c > l || c.iter().any(|&x| !tower.is_in_subfield(x, 0)) {
        return None;
    }
    // sigma_j = coefficient of z^j = c_{L-j}
    let sigma: Vec<FieldElement> = (0..=l)
        .map(|j| c.get(l - j).copied().unwrap_or(FieldElement::ZERO))
        .collect();
    let sigma = Polynomial::from_coeffs(sigma);
    let roots: Vec<usize> = (0..alpha.len())
        .filter(|&i| sigma.eval(tower, alpha[i]).is_zero())
        .collect();
    (roots.len() == l).then_some(roots)
}
