//! McEliece-style encryption with a scrambled twisted Reed–Solomon code.
//!
//! The private key is `(S, alpha, eta)`; the public key is
//! `G_pub = S * G_TRS`. Ciphertexts are `m * G_pub + e` with exactly
//! `floor((n - k) / 2)` errors. There is no column permutation.

mod wire;

use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use crate::field::{FieldElement, FieldTower};
use crate::linalg::{LinalgError, Matrix};
use crate::trs::{self, TrsDecoder, TrsError, TrsKey, TrsParams};

pub use wire::{parse_elements, write_elements, WireError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CryptoError {
    #[error("scrambling matrix S is singular")]
    SingularScrambler,
    #[error("expected {expected} elements, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element {0} is not in the field")]
    NotInField(usize),
    #[error("decryption failure: {0}")]
    DecryptionFailure(TrsError),
    #[error(transparent)]
    Trs(#[from] TrsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub params: TrsParams,
    pub g_pub: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivateKey {
    pub s: Matrix,
    pub key: TrsKey,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub y: Vec<FieldElement>,
}

fn check_vector(tower: &FieldTower, v: &[FieldElement], expected: usize) -> Result<(), CryptoError> {
    if v.len() != expected {
        return Err(CryptoError::LengthMismatch {
            expected,
            got: v.len(),
        });
    }
    match v.iter().position(|&x| tower.element(x.bits()).is_none()) {
        Some(i) => Err(CryptoError::NotInField(i)),
        None => Ok(()),
    }
}

impl PublicKey {
    pub fn new(tower: &FieldTower, params: TrsParams, g_pub: Matrix) -> Result<Self, CryptoError> {
        trs::check_tower(tower, &params)?;
        if g_pub.rows() != params.k || g_pub.cols() != params.n {
            return Err(LinalgError::DimensionMismatch(format!(
                "public matrix is {}x{}, expected {}x{}",
                g_pub.rows(),
                g_pub.cols(),
                params.k,
                params.n
            ))
            .into());
        }
        let g_pub = g_pub.with_level(tower.levels());
        if g_pub.rank(tower) != params.k {
            return Err(LinalgError::Singular.into());
        }
        Ok(Self { params, g_pub })
    }

    /// `k * n * ceil(m / 8)` bytes of matrix entries.
    pub fn size_bytes(&self) -> usize {
        let m = (self.params.base_degree as usize) << self.params.l;
        self.params.k * self.params.n * m.div_ceil(8)
    }
}

impl PrivateKey {
    pub fn new(tower: &FieldTower, s: Matrix, key: TrsKey) -> Result<Self, CryptoError> {
        trs::check_tower(tower, &key.params)?;
        let k = key.params.k;
        if s.rows() != k || s.cols() != k {
            return Err(LinalgError::DimensionMismatch(format!(
                "scrambler is {}x{}, expected {k}x{k}",
                s.rows(),
                s.cols()
            ))
            .into());
        }
        let s = s.with_level(tower.levels());
        if s.rank(tower) != k {
            return Err(CryptoError::SingularScrambler);
        }
        Ok(Self { s, key })
    }

    pub fn params(&self) -> &TrsParams {
        &self.key.params
    }

    /// `S * G_TRS`
    pub fn public(&self, tower: &FieldTower) -> PublicKey {
        let g_pub = self
            .s
            .mul(&self.key.generator(tower), tower)
            .expect("k x k times k x n");
        PublicKey {
            params: self.key.params.clone(),
            g_pub,
        }
    }
}

/// Random locators and twist coefficients, then a uniform invertible `S`
/// drawn by rejection. The parameters are used as given; strict validation
/// is the caller's choice.
pub fn keygen<R: Rng + ?Sized>(
    tower: &FieldTower,
    params: TrsParams,
    rng: &mut R,
) -> Result<(PublicKey, PrivateKey), CryptoError> {
    let key = TrsKey::random(tower, params, rng)?;
    let k = key.params.k;
    let level = tower.levels();
    let s = loop {
        let data = (0..k * k).map(|_| tower.random(rng)).collect();
        let s = Matrix::new(k, k, level, data);
        if s.rank(tower) == k {
            break s;
        }
    };
    let sk = PrivateKey { s, key };
    Ok((sk.public(tower), sk))
}

/// `m * G_pub + e` with `e` of weight exactly `floor((n - k) / 2)`: uniform
/// support, uniform nonzero values.
pub fn encrypt<R: Rng + ?Sized>(
    tower: &FieldTower,
    m: &[FieldElement],
    pk: &PublicKey,
    rng: &mut R,
) -> Result<Ciphertext, CryptoError> {
    check_vector(tower, m, pk.params.k)?;
    let mut y = pk.g_pub.vec_mul(m, tower);
    for i in sample(rng, pk.params.n, pk.params.error_weight()) {
        y[i] += tower.random_nonzero(rng);
    }
    Ok(Ciphertext { y })
}

/// A private key prepared for repeated decryption.
#[derive(Clone, Debug)]
pub struct Decryptor {
    decoder: TrsDecoder,
    s_inv: Matrix,
}

impl Decryptor {
    pub fn new(tower: &FieldTower, sk: &PrivateKey) -> Result<Self, CryptoError> {
        let s_inv = sk.s.inverse(tower).map_err(|e| match e {
            LinalgError::Singular => CryptoError::SingularScrambler,
            e => e.into(),
        })?;
        let decoder = TrsDecoder::new(tower, sk.key.clone())?;
        Ok(Self { decoder, s_inv })
    }

    /// Decode to `m * S`, then multiply by `S^-1`.
    pub fn decrypt(&self, tower: &FieldTower, ct: &Ciphertext) -> Result<Vec<FieldElement>, CryptoError> {
        let n = self.decoder.key().params.n;
        check_vector(tower, &ct.y, n)?;
        let m_s = self.decoder.decode(tower, &ct.y).map_err(|e| match e {
            TrsError::DecodingFailure => CryptoError::DecryptionFailure(e),
            e => e.into(),
        })?;
        Ok(self.s_inv.vec_mul(&m_s, tower))
    }
}

pub fn decrypt(tower: &FieldTower, ct: &Ciphertext, sk: &PrivateKey) -> Result<Vec<FieldElement>, CryptoError> {
    Decryptor::new(tower, sk)?.decrypt(tower, ct)
}

#[cfg(test)]
mod tests;
