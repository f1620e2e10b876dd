use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::field::{FieldError, FieldTower, MAX_DEGREE};

/// A constraint that a parameter tuple fails.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("q0 = {0} is not a power of two with exponent at least 2")]
    BaseFieldSize(u128),
    #[error("top field 2^(m0*2^l) exceeds 2^{MAX_DEGREE}")]
    FieldTooLarge,
    #[error("n <= q0 - 1 fails (n = {n}, q0 = {q0})")]
    LengthAboveField { n: usize, q0: u128 },
    #[error("n <= q0 fails (n = {n}, q0 = {q0})")]
    LengthAboveFieldRelaxed { n: usize, q0: u128 },
    #[error("0 < k < n fails (k = {k}, n = {n})")]
    DimensionRange { k: usize, n: usize },
    #[error("2*sqrt(n) + 6 < k fails")]
    DimensionTooSmall,
    #[error("k <= n/2 - 2 fails")]
    DimensionTooLarge,
    #[error("l >= 1 fails")]
    NoTwist,
    #[error("(n+1)/(k - sqrt(n)) < l + 2 fails")]
    TooFewTwists,
    #[error("l + 2 < k + 3 fails")]
    TwistsVsDimension,
    #[error("l + 2 < 2n/k fails")]
    TwistsVsRate,
    #[error("l + 2 < sqrt(n) - 2 fails")]
    TwistsVsLength,
    #[error("hook and twist lists have lengths {hooks} and {twists}")]
    TwistCount { hooks: usize, twists: usize },
    #[error("hook h_{index} = {value} is outside 0..k")]
    HookRange { index: usize, value: usize },
    #[error("twist t_{index} = {value} is outside 1..=n-k")]
    TwistRange { index: usize, value: usize },
    #[error("hooks are not pairwise distinct")]
    DuplicateHook,
    #[error("twists are not pairwise distinct")]
    DuplicateTwist,
}

/// Public parameters of a twisted Reed–Solomon code family.
///
/// `t[j]`, `h[j]` describe twist `j + 1`; `info` is the sorted set of
/// untwisted exponents `{0..k-1} \ {h}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrsParams {
    pub q0: u128,
    pub base_degree: u32,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// `ceil((n+1)/(l+2)) + 2`; absent for relaxed parameters.
    pub r: Option<usize>,
    pub t: Vec<usize>,
    pub h: Vec<usize>,
    pub info: Vec<usize>,
    pub strict: bool,
}

fn base_degree_of(q0: u128) -> Option<u32> {
    (q0.is_power_of_two() && q0 >= 4).then(|| q0.trailing_zeros())
}

fn field_fits(m0: u32, l: usize) -> bool {
    l < 32 && (m0 as u128) << l <= MAX_DEGREE as u128
}

impl TrsParams {
    /// Checks every setup inequality of the cryptosystem and derives `r`,
    /// `t`, `h`. Square roots are compared by squaring with sign analysis.
    pub fn validate(q0: u128, n: usize, k: usize, l: usize) -> Result<Self, Vec<Violation>> {
        let mut v = Vec::new();
        let m0 = base_degree_of(q0);
        match m0 {
            None => v.push(Violation::BaseFieldSize(q0)),
            Some(m0) if !field_fits(m0, l) => v.push(Violation::FieldTooLarge),
            _ => {}
        }
        let (nn, kk, ll) = (n as i128, k as i128, l as i128);
        if n as u128 > q0.saturating_sub(1) {
            v.push(Violation::LengthAboveField { n, q0 });
        }
        if k == 0 || k >= n {
            v.push(Violation::DimensionRange { k, n });
        }
        // 2 sqrt(n) + 6 < k  <=>  k > 6 and (k-6)^2 > 4n
        if !(kk > 6 && (kk - 6) * (kk - 6) > 4 * nn) {
            v.push(Violation::DimensionTooSmall);
        }
        // k <= n/2 - 2  <=>  2k <= n - 4
        if 2 * kk > nn - 4 {
            v.push(Violation::DimensionTooLarge);
        }
        if l == 0 {
            v.push(Violation::NoTwist);
        }
        // (n+1)/(k - sqrt(n)) < l + 2
        let ok = match (kk * kk).cmp(&nn) {
            // negative left-hand side
            std::cmp::Ordering::Less => true,
            // division by zero
            std::cmp::Ordering::Equal => false,
            std::cmp::Ordering::Greater => {
                // n + 1 < (l+2)(k - sqrt n)  <=>  (l+2) sqrt n < (l+2)k - n - 1 =: a
                let a = (ll + 2) * kk - nn - 1;
                a > 0 && a * a > (ll + 2) * (ll + 2) * nn
            }
        };
        if !ok {
            v.push(Violation::TooFewTwists);
        }
        if ll + 2 >= kk + 3 {
            v.push(Violation::TwistsVsDimension);
        }
        // l + 2 < 2n/k  <=>  (l+2) k < 2n
        if (ll + 2) * kk >= 2 * nn {
            v.push(Violation::TwistsVsRate);
        }
        // l + 2 < sqrt(n) - 2  <=>  (l+4)^2 < n
        if (ll + 4) * (ll + 4) >= nn {
            v.push(Violation::TwistsVsLength);
        }
        if !v.is_empty() {
            return Err(v);
        }
        let r = (n + 1).div_ceil(l + 2) + 2;
        // a negative twist becomes 0 and is reported as out of range
        let t: Vec<usize> = (1..=l)
            .map(|i| (((i + 1) * (r - 2)) as i128 + 2 - kk).max(0) as usize)
            .collect();
        let h: Vec<usize> = (1..=l).map(|i| r - 1 + i).collect();
        let mut p = Self::build(q0, m0.unwrap(), n, k, t, h, true)?;
        p.r = Some(r);
        Ok(p)
    }

    /// Arbitrary hooks and twists, keeping only the code-definition ranges
    /// and `n <= q0`. Meant for tiny test instances.
    pub fn relaxed(
        q0: u128,
        n: usize,
        k: usize,
        t: Vec<usize>,
        h: Vec<usize>,
    ) -> Result<Self, Vec<Violation>> {
        let mut v = Vec::new();
        let m0 = base_degree_of(q0);
        match m0 {
            None => v.push(Violation::BaseFieldSize(q0)),
            Some(m0) if !field_fits(m0, t.len()) => v.push(Violation::FieldTooLarge),
            _ => {}
        }
        if n as u128 > q0 {
            v.push(Violation::LengthAboveFieldRelaxed { n, q0 });
        }
        if k == 0 || k >= n {
            v.push(Violation::DimensionRange { k, n });
        }
        if !v.is_empty() {
            return Err(v);
        }
        Self::build(q0, m0.unwrap(), n, k, t, h, false)
    }

    fn build(
        q0: u128,
        base_degree: u32,
        n: usize,
        k: usize,
        t: Vec<usize>,
        h: Vec<usize>,
        strict: bool,
    ) -> Result<Self, Vec<Violation>> {
        let mut v = Vec::new();
        if t.len() != h.len() {
            v.push(Violation::TwistCount {
                hooks: h.len(),
                twists: t.len(),
            });
        }
        for (j, &x) in h.iter().enumerate() {
            if x >= k {
                v.push(Violation::HookRange { index: j + 1, value: x });
            }
        }
        for (j, &x) in t.iter().enumerate() {
            if x == 0 || x > n - k {
                v.push(Violation::TwistRange { index: j + 1, value: x });
            }
        }
        if h.iter().collect::<HashSet<_>>().len() != h.len() {
            v.push(Violation::DuplicateHook);
        }
        if t.iter().collect::<HashSet<_>>().len() != t.len() {
            v.push(Violation::DuplicateTwist);
        }
        if !v.is_empty() {
            return Err(v);
        }
        let info = (0..k).filter(|i| !h.contains(i)).collect();
        Ok(Self {
            q0,
            base_degree,
            n,
            k,
            l: t.len(),
            r: None,
            t,
            h,
            info,
            strict,
        })
    }

    /// The tower `F_{q0} ⊂ … ⊂ F_{q0^(2^l)}` these parameters live in.
    pub fn tower(&self) -> Result<FieldTower, FieldError> {
        FieldTower::new(self.base_degree, self.l as u32)
    }

    /// Encryption error weight `floor((n - k) / 2)`.
    pub fn error_weight(&self) -> usize {
        (self.n - self.k) / 2
    }

    /// Exponent `k - 1 + t_j` carrying twist `j`.
    pub fn twist_degree(&self, j: usize) -> usize {
        self.k - 1 + self.t[j]
    }

    /// `l <= (sqrt(n) - 3) / 2`, under which the square of the subfield
    /// subcode is a Reed–Solomon code.
    pub fn square_hypothesis(&self) -> bool {
        let need = 2 * self.l as u128 + 3;
        need * need <= self.n as u128
    }

    /// The sumset `I + I` as a sorted list.
    pub fn info_sumset(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .info
            .iter()
            .flat_map(|&a| self.info.iter().map(move |&b| a + b))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        s.sort_unstable();
        s
    }
}

impl fmt::Display for TrsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q0={} n={} k={} l={}",
            self.q0, self.n, self.k, self.l
        )
    }
}
