//! Twisted Reed–Solomon codes.
//!
//! A `[t, h, eta]`-twisted polynomial is `f(X) + sum_j eta_j f_{h_j}
//! X^{k-1+t_j}` for `f` of degree `< k`; the code is the evaluation of all
//! such polynomials at the locators.

mod decode;
mod params;

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldTower};
use crate::linalg::{LinalgError, Matrix};
use crate::rs::{self, Locators, Polynomial, RsError};

pub use decode::{TrsDecoder, MAX_GUESS_BITS};
pub use params::{TrsParams, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrsError {
    #[error("invalid parameters: {}", join(.0))]
    InvalidParams(Vec<Violation>),
    #[error("tower (m0={m0}, l={levels}) does not match the parameters")]
    TowerMismatch { m0: u32, levels: u32 },
    #[error("expected {expected} locators, got {got}")]
    LocatorCount { expected: usize, got: usize },
    #[error("expected {expected} twist coefficients, got {got}")]
    EtaCount { expected: usize, got: usize },
    #[error("twist coefficient eta_{0} is not in level {0} minus level {0}-1 of the tower")]
    EtaLevel(usize),
    #[error("scaling factor must be a nonzero base-field element")]
    BadScale,
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("instance too large for exhaustive enumeration (q^k = 2^{0})")]
    InstanceTooLarge(u64),
    #[error("guess space of 2^{bits} exceeds the supported 2^{max}")]
    GuessSpaceTooLarge { bits: u64, max: u64 },
    #[error("no guess leads to a consistent codeword within the decoding radius")]
    DecodingFailure,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Rs(#[from] RsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl From<Vec<Violation>> for TrsError {
    fn from(v: Vec<Violation>) -> Self {
        TrsError::InvalidParams(v)
    }
}

/// A concrete code: parameters, locators and twist coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrsKey {
    pub params: TrsParams,
    pub alpha: Locators,
    pub eta: Vec<FieldElement>,
}

pub(crate) fn check_tower(tower: &FieldTower, params: &TrsParams) -> Result<(), TrsError> {
    if tower.base_degree() != params.base_degree || tower.levels() as usize != params.l {
        return Err(TrsError::TowerMismatch {
            m0: tower.base_degree(),
            levels: tower.levels(),
        });
    }
    Ok(())
}

impl TrsKey {
    /// In strict mode `eta_j` must lie in `F_{q_j} \ F_{q_{j-1}}`; relaxed
    /// parameters accept any top-field value.
    pub fn new(
        tower: &FieldTower,
        params: TrsParams,
        alpha: Locators,
        eta: Vec<FieldElement>,
    ) -> Result<Self, TrsError> {
        check_tower(tower, &params)?;
        if alpha.len() != params.n {
            return Err(TrsError::LocatorCount {
                expected: params.n,
                got: alpha.len(),
            });
        }
        if eta.len() != params.l {
            return Err(TrsError::EtaCount {
                expected: params.l,
                got: eta.len(),
            });
        }
        if params.strict {
            for (j, &e) in eta.iter().enumerate() {
                let level = j as u32 + 1;
                if !tower.is_in_subfield(e, level) || tower.is_in_subfield(e, level - 1) {
                    return Err(TrsError::EtaLevel(j + 1));
                }
            }
        }
        Ok(Self { params, alpha, eta })
    }

    /// Uniform distinct locators and `eta_j` uniform in `F_{q_j} \ F_{q_{j-1}}`.
    pub fn random<R: Rng + ?Sized>(
        tower: &FieldTower,
        params: TrsParams,
        rng: &mut R,
    ) -> Result<Self, TrsError> {
        check_tower(tower, &params)?;
        let alpha = rs::random_locators(tower, params.n, rng)?;
        let eta = (1..=params.l as u32)
            .map(|i| tower.sample_eta(i, rng))
            .collect::<Result<_, _>>()?;
        Self::new(tower, params, alpha, eta)
    }

    /// `f(X) + sum_j eta_j f_{h_j} X^{k-1+t_j}` for coefficients `f` of length `k`.
    pub fn twisted_encode(&self, tower: &FieldTower, f: &[FieldElement]) -> Result<Polynomial, TrsError> {
        let p = &self.params;
        if f.len() != p.k {
            return Err(TrsError::LengthMismatch {
                expected: p.k,
                got: f.len(),
            });
        }
        let top = (0..p.l).map(|j| p.twist_degree(j)).max().unwrap_or(0);
        let mut c = f.to_vec();
        c.resize(top.max(p.k - 1) + 1, FieldElement::ZERO);
        for j in 0..p.l {
            c[p.twist_degree(j)] += tower.mul(self.eta[j], f[p.h[j]]);
        }
        Ok(Polynomial::from_coeffs(c))
    }

    /// `k x n` generator whose row `i` evaluates the twisted image of `X^i`.
    pub fn generator(&self, tower: &FieldTower) -> Matrix {
        let p = &self.params;
        let top = (0..p.l).map(|j| p.twist_degree(j)).max().unwrap_or(0).max(p.k - 1);
        let pw = rs::powers(tower, self.alpha.as_slice(), top + 1);
        let mut rows: Vec<Vec<FieldElement>> = pw[..p.k].to_vec();
        for j in 0..p.l {
            let tw = &pw[p.twist_degree(j)];
            for (x, &y) in rows[p.h[j]].iter_mut().zip(tw) {
                *x += tower.mul(self.eta[j], y);
            }
        }
        Matrix::from_rows(rows, p.n, tower.levels())
    }

    /// The vectors `ev(eta_j X^{k-1+t_j})`, one per twist.
    pub(crate) fn twist_vectors(&self, tower: &FieldTower) -> Vec<Vec<FieldElement>> {
        let p = &self.params;
        (0..p.l)
            .map(|j| {
                let m = Polynomial::monomial(self.eta[j], p.twist_degree(j));
                rs::evaluate(tower, &m, &self.alpha)
            })
            .collect()
    }

    /// The equivalent key `(a alpha, eta_hat)` with
    /// `eta_hat_j = eta_j a^-(k-1+t_j-h_j)`.
    pub fn scale(&self, tower: &FieldTower, a: FieldElement) -> Result<Self, TrsError> {
        if a.is_zero() || !tower.is_in_subfield(a, 0) {
            return Err(TrsError::BadScale);
        }
        let p = &self.params;
        let a_inv = tower.inv(a)?;
        let eta = (0..p.l)
            .map(|j| {
                let e = (p.twist_degree(j) - p.h[j]) as u128;
                tower.mul(self.eta[j], tower.pow(a_inv, e))
            })
            .collect();
        Ok(Self {
            params: p.clone(),
            alpha: self.alpha.scaled(tower, a),
            eta,
        })
    }

    /// Minimum Hamming weight over all nonzero codewords, by enumeration.
    /// Limited to `q^k <= 2^20`.
    pub fn exhaustive_min_distance(&self, tower: &FieldTower) -> Result<usize, TrsError> {
        let bits = tower.degree() as u64 * self.params.k as u64;
        if bits > 20 {
            return Err(TrsError::InstanceTooLarge(bits));
        }
        let g = self.generator(tower);
        let m = tower.degree();
        let mask = (1u128 << m) - 1;
        let mut best = usize::MAX;
        for code in 1u128..1 << bits {
            let msg: Vec<FieldElement> = (0..self.params.k)
                .map(|i| tower.element((code >> (i as u32 * m)) & mask).expect("in range"))
                .collect();
            let w = g.vec_mul(&msg, tower).iter().filter(|x| !x.is_zero()).count();
            best = best.min(w);
        }
        Ok(best)
    }
}
