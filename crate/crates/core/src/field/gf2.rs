//! Polynomials over the two-element field packed into `u128` words.
//!
//! A modulus of degree `m` is carried as its low part (all coefficients below
//! `X^m`); the leading `X^m` term is implicit so that `m = 128` fits.

pub(crate) fn mask(degree: u32) -> u128 {
    if degree >= 128 {
        u128::MAX
    } else {
        (1u128 << degree) - 1
    }
}

pub(crate) fn degree_of(p: u128) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(127 - p.leading_zeros())
    }
}

/// `a * b mod (X^m + low)` for operands already reduced below degree `m`.
pub(crate) fn mulmod(a: u128, b: u128, m: u32, low: u128) -> u128 {
    if m <= 64 {
        return reduce_wide(clmul64(a as u64, b as u64), m, low);
    }
    let top = 1u128 << (m - 1);
    let mask = mask(m);
    let mut r = 0u128;
    let bits = 128 - b.leading_zeros();
    for i in (0..bits).rev() {
        let carry = r & top != 0;
        r = (r << 1) & mask;
        if carry {
            r ^= low;
        }
        if (b >> i) & 1 == 1 {
            r ^= a;
        }
    }
    r
}

/// Carry-less 64x64 -> 128 product, four bits of `b` at a time.
pub(crate) fn clmul64(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16usize {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut r = 0u128;
    let mut shift = 64;
    while shift > 0 {
        shift -= 4;
        r = (r << 4) ^ table[((b >> shift) & 0xf) as usize];
    }
    r
}

/// Reduce a product of degree < 2m (m <= 64) modulo `X^m + low`.
pub(crate) fn reduce_wide(mut r: u128, m: u32, low: u128) -> u128 {
    while r >> m != 0 {
        let i = 127 - r.leading_zeros();
        r ^= (1u128 << i) ^ (low << (i - m));
    }
    r
}

/// Remainder of `a` modulo the nonzero `b`, both fitting a word.
pub(crate) fn rem(mut a: u128, b: u128) -> u128 {
    let db = degree_of(b).expect("division by the zero polynomial");
    while let Some(da) = degree_of(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// `(X^m + low) mod a` for a nonzero `a` of degree below `m`.
fn modulus_rem(m: u32, low: u128, a: u128) -> u128 {
    let da = degree_of(a).expect("nonzero divisor");
    if da == 0 {
        return 0;
    }
    // X^da = a - X^da (mod a); then multiply by X up to X^m.
    let mut x_pow = a ^ (1u128 << da);
    for _ in da..m {
        let carry = x_pow >> (da - 1) & 1 == 1;
        x_pow = (x_pow << 1) & mask(da);
        if carry {
            x_pow ^= a ^ (1u128 << da);
        }
    }
    x_pow ^ rem(low, a)
}

/// Ben-Or irreducibility test for `X^m + low`.
pub(crate) fn is_irreducible(m: u32, low: u128) -> bool {
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if low & 1 == 0 {
        return false;
    }
    // x_pow tracks X^(2^i) mod f.
    let mut x_pow = 2u128;
    for _ in 1..=m / 2 {
        x_pow = mulmod(x_pow, x_pow, m, low);
        let diff = x_pow ^ 2;
        if diff == 0 {
            return false;
        }
        let g = gcd(modulus_rem(m, low, diff), diff);
        if g != 1 {
            return false;
        }
    }
    true
}

/// Smallest (by integer encoding) irreducible polynomial of degree `m`,
/// returned without its leading term.
pub(crate) fn smallest_irreducible(m: u32) -> u128 {
    assert!((1..=128).contains(&m));
    if m == 1 {
        return 0;
    }
    let mut low = 1u128;
    loop {
        if is_irreducible(m, low) {
            return low;
        }
        low += 2;
    }
}

/// Distinct prime factors by trial division (only used for small orders).
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An F2-linearly independent family of words with a decoder that expresses
/// vectors of its span as combinations of the family.
#[derive(Clone, Debug)]
pub(crate) struct F2Basis {
    // (pivot bit, reduced row, combination of the original family)
    rows: Vec<(u32, u128, u128)>,
}

impl F2Basis {
    /// Returns `None` when the family is dependent.
    pub(crate) fn new(family: &[u128]) -> Option<Self> {
        assert!(family.len() <= 128);
        let mut rows: Vec<(u32, u128, u128)> = Vec::with_capacity(family.len());
        for (idx, &v) in family.iter().enumerate() {
            let mut row = v;
            let mut combo = 1u128 << idx;
            for &(p, r, c) in &rows {
                if row >> p & 1 == 1 {
                    row ^= r;
                    combo ^= c;
                }
            }
            let pivot = degree_of(row)?;
            for entry in rows.iter_mut() {
                if entry.1 >> pivot & 1 == 1 {
                    entry.1 ^= row;
                    entry.2 ^= combo;
                }
            }
            rows.push((pivot, row, combo));
        }
        Some(Self { rows })
    }

    /// Coefficients (bit `i` for family member `i`) of `v`, or `None` when
    /// `v` is outside the span.
    pub(crate) fn decode(&self, mut v: u128) -> Option<u128> {
        let mut combo = 0u128;
        for &(p, r, c) in &self.rows {
            if v >> p & 1 == 1 {
                v ^= r;
                combo ^= c;
            }
        }
        (v == 0).then_some(combo)
    }
}
