//! Binary extension-field towers `F_{q0} ⊂ F_{q0^2} ⊂ … ⊂ F_{q0^{2^l}}`.
//!
//! Every element of every level lives in the top field; a subfield is just
//! the set of elements fixed by the matching Frobenius power. The top field
//! is `F_2[X]/(f)` with `f` the smallest irreducible polynomial of the top
//! degree, so two towers built from the same `(m0, l)` are bit-identical.

mod arith;
mod base;
pub(crate) mod gf2;
mod tables;

use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use rand::Rng;
use thiserror::Error;

pub use arith::Arith;
pub(crate) use arith::Repr;
pub use base::BaseField;
use gf2::F2Basis;
use tables::LogTables;

/// Largest supported top-field degree.
pub const MAX_DEGREE: u32 = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("base degree {0} is below 2")]
    BaseDegreeTooSmall(u32),
    #[error("top degree {base_degree}*2^{levels} exceeds {MAX_DEGREE}")]
    DegreeTooLarge { base_degree: u32, levels: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("level {level} out of range 0..={levels}")]
    LevelOutOfRange { level: u32, levels: u32 },
}

/// A field element in polynomial-basis coordinates under the tower modulus.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u128);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    /// Raw coordinates; bit `i` is the coefficient of `X^i`.
    #[inline]
    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl SubAssign for FieldElement {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    base_degree: u32,
    levels: u32,
    degree: u32,
    modulus: u128,
    mask: u128,
    tables: Option<LogTables>,
    base: BaseField,
    base_basis: Vec<FieldElement>,
    expander: F2Basis,
}

impl FieldTower {
    pub fn new(base_degree: u32, levels: u32) -> Result<Self, FieldError> {
        if base_degree < 2 {
            return Err(FieldError::BaseDegreeTooSmall(base_degree));
        }
        let degree = 1u32
            .checked_shl(levels)
            .and_then(|s| base_degree.checked_mul(s))
            .filter(|&d| d <= MAX_DEGREE)
            .ok_or(FieldError::DegreeTooLarge {
                base_degree,
                levels,
            })?;
        let modulus = gf2::smallest_irreducible(degree);
        let tables = (degree <= 16).then(|| LogTables::new(degree, modulus));
        let mut tower = Self {
            base_degree,
            levels,
            degree,
            modulus,
            mask: gf2::mask(degree),
            tables,
            // placeholders; only plain multiplication is used until they are set
            base: BaseField::new(1, &[1, 0]),
            base_basis: Vec::new(),
            expander: F2Basis::new(&[]).unwrap(),
        };
        let gamma = tower.base_generator();
        let mut powers = Vec::with_capacity(base_degree as usize + 1);
        let mut p = FieldElement::ONE;
        for _ in 0..=base_degree {
            powers.push(p.0);
            p = tower.mul(p, gamma);
        }
        tower.base = BaseField::new(base_degree, &powers);

        // {1, X, …, X^(2^l - 1)}: X has degree m over F_2, hence degree 2^l
        // over F_{q0}, so its first powers form a basis.
        let ext = 1usize << levels;
        tower.base_basis = (0..ext).map(|j| FieldElement(1u128 << j)).collect();
        let family: Vec<u128> = tower
            .base_basis
            .iter()
            .flat_map(|&b| powers[..base_degree as usize].iter().map(move |&g| (b, g)))
            .map(|(b, g)| tower.mul(b, FieldElement(g)).0)
            .collect();
        tower.expander = F2Basis::new(&family).expect("base basis is F_q0-independent");
        Ok(tower)
    }

    /// A generator of the level-0 subfield as a field over `F_2`.
    fn base_generator(&self) -> FieldElement {
        let m0 = self.base_degree;
        let maximal_divisors: Vec<u32> = gf2::prime_factors(m0 as u64)
            .into_iter()
            .map(|p| m0 / p as u32)
            .collect();
        (1..)
            .map(|j| self.relative_trace(self.pow(FieldElement(2), j), 0))
            .find(|&g| maximal_divisors.iter().all(|&d| self.frobenius(g, d) != g))
            .expect("the trace is onto the level-0 subfield")
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    /// Top degree `m = m0 * 2^l`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Low part of the degree-`m` modulus (the `X^m` term is implicit).
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Degree over `F_2` of the level-`i` subfield.
    pub fn subfield_degree(&self, level: u32) -> u32 {
        self.base_degree << level
    }

    /// Width in hex digits of the element wire encoding.
    pub fn hex_width(&self) -> usize {
        self.degree.div_ceil(4) as usize
    }

    pub fn base_field(&self) -> &BaseField {
        &self.base
    }

    /// The `F_{q0}`-basis of the top field used by [`Self::expand_base`].
    pub fn base_basis(&self) -> &[FieldElement] {
        &self.base_basis
    }

    /// The compact level-0 arithmetic, when it applies to `level`.
    #[inline]
    pub(crate) fn fast_base(&self, level: u32) -> Option<&BaseField> {
        (level == 0 && self.base.has_fast_path()).then_some(&self.base)
    }

    /// Checked constructor from raw coordinates.
    pub fn element(&self, bits: u128) -> Option<FieldElement> {
        (bits & !self.mask == 0).then_some(FieldElement(bits))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.mul(a.0 as u16, b.0 as u16) as u128),
            None => FieldElement(gf2::mulmod(a.0, b.0, self.degree, self.modulus)),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.square(a.0 as u16) as u128),
            None => FieldElement(gf2::mulmod(a.0, a.0, self.degree, self.modulus)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            Err(FieldError::InverseOfZero)
        } else {
            Ok(self.inv_nonzero(a))
        }
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(!a.is_zero());
        match &self.tables {
            Some(t) => FieldElement(t.inv(a.0 as u16) as u128),
            None => {
                // a^(2^m - 2) = prod_{i=1}^{m-1} a^(2^i)
                let mut acc = FieldElement::ONE;
                let mut s = a;
                for _ in 1..self.degree {
                    s = self.square(s);
                    acc = self.mul(acc, s);
                }
                acc
            }
        }
    }

    #[inline]
    pub(crate) fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv_nonzero(b))
    }

    pub fn pow(&self, mut base: FieldElement, mut e: u128) -> FieldElement {
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `x^(2^k)`
    pub fn frobenius(&self, mut x: FieldElement, k: u32) -> FieldElement {
        for _ in 0..k {
            x = self.square(x);
        }
        x
    }

    pub fn in_subfield(&self, x: FieldElement, level: u32) -> Result<bool, FieldError> {
        self.check_level(level)?;
        Ok(self.is_in_subfield(x, level))
    }

    #[inline]
    pub(crate) fn is_in_subfield(&self, x: FieldElement, level: u32) -> bool {
        if level >= self.levels {
            return true;
        }
        if level == 0 && self.base.has_fast_path() {
            return self.base.project(x).is_some();
        }
        self.frobenius(x, self.subfield_degree(level)) == x
    }

    /// Smallest level whose subfield contains `x`.
    pub fn level_of(&self, x: FieldElement) -> u32 {
        (0..self.levels)
            .find(|&i| self.is_in_subfield(x, i))
            .unwrap_or(self.levels)
    }

    /// Trace from the top field down to the level-`i` subfield.
    pub fn relative_trace(&self, x: FieldElement, level: u32) -> FieldElement {
        let step = self.subfield_degree(level);
        let terms = 1u32 << (self.levels - level);
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..terms {
            acc += y;
            y = self.frobenius(y, step);
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen::<u128>() & self.mask)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Uniform element of the level-`i` subfield.
    ///
    /// The relative trace is a surjective linear map, so it pushes the
    /// uniform distribution on the top field to the uniform one below.
    pub fn sample_subfield<R: Rng + ?Sized>(
        &self,
        level: u32,
        rng: &mut R,
    ) -> Result<FieldElement, FieldError> {
        self.check_level(level)?;
        let x = self.random(rng);
        Ok(if level == self.levels {
            x
        } else {
            self.relative_trace(x, level)
        })
    }

    /// Uniform element of `F_{q_i} \ F_{q_{i-1}}`, for `i >= 1`.
    pub fn sample_eta<R: Rng + ?Sized>(
        &self,
        level: u32,
        rng: &mut R,
    ) -> Result<FieldElement, FieldError> {
        if level == 0 {
            return Err(FieldError::LevelOutOfRange {
                level,
                levels: self.levels,
            });
        }
        loop {
            let x = self.sample_subfield(level, rng)?;
            if !self.is_in_subfield(x, level - 1) {
                return Ok(x);
            }
        }
    }

    /// Coordinates of `x` over `F_{q0}` in [`Self::base_basis`].
    pub fn expand_base(&self, x: FieldElement) -> Vec<FieldElement> {
        let combo = self
            .expander
            .decode(x.0)
            .expect("expander spans the top field");
        let m0 = self.base_degree;
        let small_mask = gf2::mask(m0);
        (0..1u32 << self.levels)
            .map(|j| self.base.embed((combo >> (j * m0)) & small_mask))
            .collect()
    }

    /// Inverse of [`Self::expand_base`].
    pub fn contract_base(&self, coords: &[FieldElement]) -> FieldElement {
        assert_eq!(coords.len(), self.base_basis.len());
        coords
            .iter()
            .zip(&self.base_basis)
            .fold(FieldElement::ZERO, |acc, (&c, &b)| acc + self.mul(c, b))
    }

    fn check_level(&self, level: u32) -> Result<(), FieldError> {
        if level > self.levels {
            Err(FieldError::LevelOutOfRange {
                level,
                levels: self.levels,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests;
