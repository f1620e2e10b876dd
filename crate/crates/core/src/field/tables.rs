use super::gf2;

/// Log/antilog tables for a binary field of degree at most 16.
#[derive(Clone, Debug)]
pub(crate) struct LogTables {
    pub(crate) order: usize,
    // exp is doubled so that exp[log a + log b] never wraps.
    pub(crate) exp: Vec<u16>,
    pub(crate) log: Vec<u16>,
}

impl LogTables {
    pub(crate) fn new(degree: u32, low: u128) -> Self {
        assert!((1..=16).contains(&degree));
        let order = (1usize << degree) - 1;
        let g = primitive_element(degree, low);
        let mut exp = vec![0u16; 2 * order + 1];
        let mut log = vec![0u16; order + 1];
        let mut x = 1u128;
        for i in 0..order {
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x = gf2::mulmod(x, g, degree, low);
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }
        Self { order, exp, log }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    #[inline]
    pub(crate) fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.exp[self.order - self.log[a as usize] as usize]
    }

    #[inline]
    pub(crate) fn square(&self, a: u16) -> u16 {
        if a == 0 {
            0
        } else {
            self.exp[2 * self.log[a as usize] as usize]
        }
    }

    /// `dst[j] += c * src[j]`
    #[inline]
    pub(crate) fn axpy(&self, dst: &mut [u16], c: u16, src: &[u16]) {
        if c == 0 {
            return;
        }
        let lc = self.log[c as usize] as usize;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d ^= self.exp[lc + self.log[s as usize] as usize];
            }
        }
    }

    #[inline]
    pub(crate) fn scale(&self, row: &mut [u16], c: u16) {
        if c == 0 {
            row.fill(0);
            return;
        }
        let lc = self.log[c as usize] as usize;
        for v in row.iter_mut() {
            if *v != 0 {
                *v = self.exp[lc + self.log[*v as usize] as usize];
            }
        }
    }
}

/// Smallest-encoding element of multiplicative order `2^degree - 1`.
fn primitive_element(degree: u32, low: u128) -> u128 {
    let order = (1u64 << degree) - 1;
    if order == 1 {
        return 1;
    }
    let factors = gf2::prime_factors(order);
    (2u128..)
        .find(|&g| {
            factors
                .iter()
                .all(|&p| pow(g, order / p, degree, low) != 1)
        })
        .expect("a finite field has a primitive element")
}

fn pow(mut base: u128, mut e: u64, degree: u32, low: u128) -> u128 {
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf2::mulmod(acc, base, degree, low);
        }
        base = gf2::mulmod(base, base, degree, low);
        e >>= 1;
    }
    acc
}
