use crate::field::{FieldElement, FieldTower};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `X^i`.
/// The last stored coefficient is nonzero (the zero polynomial is empty).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(FieldElement::ONE, 0)
    }

    /// `c * X^d`
    pub fn monomial(c: FieldElement, d: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Coefficients `0..len`, zero-padded.
    pub fn padded(&self, len: usize) -> Vec<FieldElement> {
        assert!(self.coeffs.len() <= len, "degree too large for padding");
        let mut v = self.coeffs.clone();
        v.resize(len, FieldElement::ZERO);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn eval(&self, t: &FieldTower, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| t.mul(acc, x) + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut c = long.coeffs.clone();
        for (a, &b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, t: &FieldTower, s: FieldElement) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&c| t.mul(c, s)).collect())
    }

    pub fn mul(&self, t: &FieldTower, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += t.mul(a, b);
            }
        }
        Self::from_coeffs(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, t: &FieldTower, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = t.inv(d.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let q = t.mul(c, lead_inv);
            quot[i - dd] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] += t.mul(q, dc);
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }
}
