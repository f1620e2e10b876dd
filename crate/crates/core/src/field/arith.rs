use super::base::BaseField;
use super::{FieldElement, FieldTower};

/// Scalar arithmetic needed by the dense elimination kernels.
///
/// Implemented by the tower itself (any level, top-field representation) and
/// by the compact base field (level 0 only, `u16` elements with log tables).
pub trait Arith: Sync {
    type Elem: Copy + PartialEq + Send + Sync + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: Self::Elem) -> bool;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// `a` must be nonzero.
    fn inv(&self, a: Self::Elem) -> Self::Elem;

    /// `dst[j] += c * src[j]`
    fn axpy(&self, dst: &mut [Self::Elem], c: Self::Elem, src: &[Self::Elem]) {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    fn scale(&self, row: &mut [Self::Elem], c: Self::Elem) {
        for v in row.iter_mut() {
            *v = self.mul(*v, c);
        }
    }
}

impl Arith for FieldTower {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    #[inline]
    fn is_zero(&self, a: FieldElement) -> bool {
        a.is_zero()
    }
    #[inline]
    fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }
    #[inline]
    fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldTower::mul(self, a, b)
    }
    #[inline]
    fn inv(&self, a: FieldElement) -> FieldElement {
        self.inv_nonzero(a)
    }

    fn axpy(&self, dst: &mut [FieldElement], c: FieldElement, src: &[FieldElement]) {
        if c.is_zero() {
            return;
        }
        match &self.tables {
            Some(t) => {
                let lc = t.log[c.0 as usize] as usize;
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        d.0 ^= t.exp[lc + t.log[s.0 as usize] as usize] as u128;
                    }
                }
            }
            None => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d += FieldTower::mul(self, c, s);
                    }
                }
            }
        }
    }
}

/// Compact level-0 arithmetic; only valid when the base field has tables.
impl Arith for BaseField {
    type Elem = u16;

    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        1
    }
    #[inline]
    fn is_zero(&self, a: u16) -> bool {
        a == 0
    }
    #[inline]
    fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }
    #[inline]
    fn mul(&self, a: u16, b: u16) -> u16 {
        self.tables().expect("fast path").mul(a, b)
    }
    #[inline]
    fn inv(&self, a: u16) -> u16 {
        self.tables().expect("fast path").inv(a)
    }
    fn axpy(&self, dst: &mut [u16], c: u16, src: &[u16]) {
        self.tables().expect("fast path").axpy(dst, c, src)
    }
    fn scale(&self, row: &mut [u16], c: u16) {
        self.tables().expect("fast path").scale(row, c)
    }
}

/// Conversion between tower elements and an [`Arith`] representation.
pub(crate) trait Repr: Arith {
    fn lift(&self, x: FieldElement) -> Self::Elem;
    fn lower(&self, e: Self::Elem) -> FieldElement;
}

impl Repr for FieldTower {
    #[inline]
    fn lift(&self, x: FieldElement) -> FieldElement {
        x
    }
    #[inline]
    fn lower(&self, e: FieldElement) -> FieldElement {
        e
    }
}

impl Repr for BaseField {
    #[inline]
    fn lift(&self, x: FieldElement) -> u16 {
        self.project(x).expect("entry outside the base field") as u16
    }
    #[inline]
    fn lower(&self, e: u16) -> FieldElement {
        self.embed(e as u128)
    }
}
