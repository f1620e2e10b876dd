//! Decoding by guessing the hooked coefficients.
//!
//! Once `g_j = f_{h_j}` is known, subtracting `sum_j g_j ev(eta_j
//! X^{k-1+t_j})` leaves a Reed–Solomon word of dimension `k` with the same
//! error, so each guess costs one RS decoding. Two cheap necessary
//! conditions prune guesses before that:
//!
//! * for a single twist, with exactly `tau` errors the `tau x tau` syndrome
//!   Hankel matrix is invertible and Cramer's rule gives the sum of the
//!   error locators, which must lie in `F_q0`. Both determinants are
//!   polynomials of degree `<= tau` in the guess, so they are interpolated
//!   once per word;
//! * Berlekamp–Massey on the shifted syndromes must produce a locator with
//!   at most `tau` roots among the code locators.

use rayon::prelude::*;

use super::{TrsError, TrsKey};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::Matrix;
use crate::rs::{error_locator_roots, Berlekamp, Interpolator, Polynomial, RsDecoder};

/// Largest guess space, in bits (`log2 q^l`), that [`TrsDecoder::decode`]
/// will enumerate.
pub const MAX_GUESS_BITS: u64 = 32;

#[derive(Clone, Debug)]
pub struct TrsDecoder {
    key: TrsKey,
    rs: RsDecoder,
    twists: Vec<Vec<FieldElement>>,
    twist_syn: Vec<Vec<FieldElement>>,
    /// Syndromes below this index do not depend on the guess.
    prefix: usize,
}

/// Per-word data for the single-twist Hankel screen: `sigma_1(g) =
/// num(g) / den(g)` whenever `den(g) != 0`.
struct Hankel {
    num: Polynomial,
    den: Polynomial,
}

impl TrsDecoder {
    pub fn new(tower: &FieldTower, key: TrsKey) -> Result<Self, TrsError> {
        super::check_tower(tower, &key.params)?;
        let rs = RsDecoder::new(tower, key.alpha.clone(), key.params.k)?;
        let twists = key.twist_vectors(tower);
        let twist_syn: Vec<Vec<FieldElement>> = twists.iter().map(|v| rs.syndromes(tower, v)).collect();
        let r = key.params.n - key.params.k;
        let prefix = (0..r)
            .find(|&i| twist_syn.iter().any(|s| !s[i].is_zero()))
            .unwrap_or(r);
        Ok(Self {
            key,
            rs,
            twists,
            twist_syn,
            prefix,
        })
    }

    pub fn key(&self) -> &TrsKey {
        &self.key
    }

    pub fn radius(&self) -> usize {
        self.rs.radius()
    }

    /// `log2` of the number of guesses.
    pub fn guess_bits(&self, tower: &FieldTower) -> u64 {
        tower.degree() as u64 * self.key.params.l as u64
    }

    fn check_len(&self, y: &[FieldElement]) -> Result<(), TrsError> {
        if y.len() != self.key.params.n {
            return Err(TrsError::LengthMismatch {
                expected: self.key.params.n,
                got: y.len(),
            });
        }
        Ok(())
    }

    fn guess_space(&self, tower: &FieldTower) -> Result<u64, TrsError> {
        let bits = self.guess_bits(tower);
        if bits > MAX_GUESS_BITS {
            return Err(TrsError::GuessSpaceTooLarge {
                bits,
                max: MAX_GUESS_BITS,
            });
        }
        Ok(1 << bits)
    }

    /// Guess `u` as `(g_0, ..., g_{l-1})`, `g_0` in the most significant digit.
    fn guess(&self, tower: &FieldTower, u: u64) -> Vec<FieldElement> {
        let m = tower.degree();
        let l = self.key.params.l;
        (0..l)
            .map(|j| FieldElement(((u >> (m as usize * (l - 1 - j))) & ((1u64 << m) - 1)) as u128))
            .collect()
    }

    /// `y - sum_j g_j ev(eta_j X^{k-1+t_j})`, then RS decoding and the hook
    /// consistency check.
    fn try_full(&self, tower: &FieldTower, y: &[FieldElement], g: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let mut w = y.to_vec();
        for (tw, &gj) in self.twists.iter().zip(g) {
            if gj.is_zero() {
                continue;
            }
            for (x, &t) in w.iter_mut().zip(tw) {
                *x += tower.mul(gj, t);
            }
        }
        let d = self.rs.decode(tower, &w).ok()?;
        let p = &self.key.params;
        if (0..p.l).any(|j| d.message.coeff(p.h[j]) != g[j]) {
            return None;
        }
        Some(d.message.padded(p.k))
    }

    fn hankel(&self, tower: &FieldTower, syn: &[FieldElement]) -> Option<Hankel> {
        let tau = self.radius();
        let q = 1u128 << tower.degree().min(127);
        if self.key.params.l != 1 || tau == 0 || q <= tau as u128 {
            return None;
        }
        let tw = &self.twist_syn[0];
        let level = tower.levels();
        let points: Vec<FieldElement> = (0..=tau as u128).map(FieldElement).collect();
        let mut dens = Vec::with_capacity(tau + 1);
        let mut nums = Vec::with_capacity(tau + 1);
        for &d in &points {
            let s: Vec<FieldElement> = syn.iter().zip(tw).map(|(&a, &b)| a + tower.mul(d, b)).collect();
            let mut h = Matrix::zeros(tau, tau, level);
            for a in 0..tau {
                for b in 0..tau {
                    h.set(a, b, s[a + b]);
                }
            }
            dens.push(h.determinant(tower).ok()?);
            for a in 0..tau {
                h.set(a, tau - 1, s[a + tau]);
            }
            nums.push(h.determinant(tower).ok()?);
        }
        let ip = Interpolator::from_points(tower, &points);
        Some(Hankel {
            num: ip.interpolate(tower, &nums).ok()?,
            den: ip.interpolate(tower, &dens).ok()?,
        })
    }

    fn screen(
        &self,
        tower: &FieldTower,
        syn: &[FieldElement],
        base: &Berlekamp,
        hankel: Option<&Hankel>,
        g: &[FieldElement],
    ) -> bool {
        if let Some(h) = hankel {
            let den = h.den.eval(tower, g[0]);
            if !den.is_zero() {
                let s1 = tower.div(h.num.eval(tower, g[0]), den);
                if !tower.is_in_subfield(s1, 0) {
                    return false;
                }
            }
        }
        let tau = self.radius();
        let mut s = syn.to_vec();
        for (ts, &gj) in self.twist_syn.iter().zip(g) {
            for i in self.prefix..s.len() {
                s[i] += tower.mul(gj, ts[i]);
            }
        }
        let mut bm = base.clone();
        while bm.processed() < s.len() {
            bm.step(tower, &s);
            if bm.len() > tau {
                return false;
            }
        }
        error_locator_roots(tower, &bm, self.key.alpha.as_slice()).is_some()
    }

    /// The message `f` (length `k`) whose twisted codeword is within
    /// `floor((n-k)/2)` of `y`. Guesses are tried in parallel; the result
    /// is the hit with the smallest guess index, as in [`Self::decode_naive`].
    pub fn decode(&self, tower: &FieldTower, y: &[FieldElement]) -> Result<Vec<FieldElement>, TrsError> {
        self.check_len(y)?;
        let total = self.guess_space(tower)?;
        let syn = self.rs.syndromes(tower, y);
        let base = Berlekamp::run(tower, &syn[..self.prefix]);
        if base.len() > self.radius() {
            return Err(TrsError::DecodingFailure);
        }
        let hankel = self.hankel(tower, &syn);
        (0..total)
            .into_par_iter()
            .find_map_first(|u| {
                let g = self.guess(tower, u);
                if !self.screen(tower, &syn, &base, hankel.as_ref(), &g) {
                    return None;
                }
                self.try_full(tower, y, &g)
            })
            .ok_or(TrsError::DecodingFailure)
    }

    /// Reference decoder: a full RS decoding for every guess, in order.
    pub fn decode_naive(&self, tower: &FieldTower, y: &[FieldElement]) -> Result<Vec<FieldElement>, TrsError> {
        self.check_len(y)?;
        let total = self.guess_space(tower)?;
        (0..total)
            .find_map(|u| self.try_full(tower, y, &self.guess(tower, u)))
            .ok_or(TrsError::DecodingFailure)
    }
}
