//! Sidelnikov–Shestakov: locators of a Reed–Solomon code from any generator.
//!
//! In systematic form `[I | A]`, row `i` evaluates
//! `f_i = c_i prod_{j < K, j != i} (X - x_j)`, so
//! `A_{i,c} = c_i prod_{j != i} (x_c - x_j)`. Normalizing `x_0 = 0`,
//! `x_1 = 1` and writing `kappa = c_0 / c_1`:
//!
//! * `y_c = A_{0,c} / A_{1,c} = kappa (1 - 1/x_c)`, so `x_c = kappa / (kappa - y_c)`;
//! * `A_{0,c} / A_{i,c} = beta0_i + beta1_i y_c` with
//!   `x_i = beta1_i kappa / (beta0_i + beta1_i kappa)`;
//! * `kappa^(K-1) = prod_i beta0_i / beta1_i`.
//!
//! Each `(K-1)`-th root is a candidate; the one whose Reed–Solomon code
//! matches the input is returned.

use rand::rngs::StdRng;
use rand::SeedableRng;

use super::AttackError;
use crate::field::{FieldElement, FieldTower};
use crate::linalg::Matrix;
use crate::rs::{rs_generator, Locators, Polynomial};

fn not_rs(why: impl Into<String>) -> AttackError {
    AttackError::NotAnRsCode(why.into())
}

/// Locators `alpha'` with `rowspace(g) = RS_{K,n}[alpha']`, normalized so
/// that `alpha'_0 = 0` and `alpha'_1 = 1`.
pub fn sidelnikov_shestakov(tower: &FieldTower, g: &Matrix, k: usize) -> Result<Locators, AttackError> {
    let n = g.cols();
    if k < 3 || k + 2 > n {
        return Err(not_rs(format!("dimension {k} outside 3..={}", n.saturating_sub(2))));
    }
    if g.level() != 0 || g.check_level(tower).is_err() {
        return Err(not_rs("generator is not over the base field"));
    }
    let r = g.rref(tower);
    if r.pivots != (0..k).collect::<Vec<_>>() {
        return Err(not_rs("not systematic on the first K positions"));
    }
    let a = |i: usize, c: usize| r.matrix.get(i, k + c);
    let cols = n - k;
    if (0..k).any(|i| (0..cols).any(|c| a(i, c).is_zero())) {
        return Err(not_rs("systematic form has zero entries"));
    }
    let y: Vec<FieldElement> = (0..cols).map(|c| tower.div(a(0, c), a(1, c))).collect();
    if y[0] == y[1] {
        return Err(not_rs("repeated ratio"));
    }
    // beta0_i + beta1_i y_c = A_{0,c} / A_{i,c}, fitted on columns 0, 1 and
    // checked on the rest
    let mut betas = Vec::with_capacity(k - 2);
    for i in 2..k {
        let ratio: Vec<FieldElement> = (0..cols).map(|c| tower.div(a(0, c), a(i, c))).collect();
        let b1 = tower.div(ratio[0] + ratio[1], y[0] + y[1]);
        let b0 = ratio[0] + tower.mul(b1, y[0]);
        if b0.is_zero() || b1.is_zero() {
            return Err(not_rs(format!("degenerate fit for row {i}")));
        }
        if (2..cols).any(|c| b0 + tower.mul(b1, y[c]) != ratio[c]) {
            return Err(not_rs(format!("row {i} is not a degree-1 fit")));
        }
        betas.push((b0, b1));
    }
    let target = betas
        .iter()
        .fold(FieldElement::ONE, |acc, &(b0, b1)| tower.mul(acc, tower.div(b0, b1)));
    for kappa in roots_of_power(tower, target, k - 1) {
        let mut x = vec![FieldElement::ZERO, FieldElement::ONE];
        let mut ok = true;
        for &(b0, b1) in &betas {
            let num = tower.mul(b1, kappa);
            let den = b0 + num;
            ok &= !den.is_zero();
            x.push(if den.is_zero() { den } else { tower.div(num, den) });
        }
        for &yc in &y {
            let den = kappa + yc;
            ok &= !den.is_zero();
            x.push(if den.is_zero() { den } else { tower.div(kappa, den) });
        }
        if !ok {
            continue;
        }
        let Ok(alpha) = Locators::new(tower, x) else {
            continue;
        };
        let cand = rs_generator(tower, &alpha, k).expect("3 <= K <= n");
        if cand.rowspace_equal(g, tower).unwrap_or(false) {
            return Ok(alpha);
        }
    }
    Err(not_rs("no candidate reproduces the code"))
}

/// All `z` in `F_{q0}` with `z^e = p`, sorted by encoding.
pub(crate) fn roots_of_power(tower: &FieldTower, p: FieldElement, e: usize) -> Vec<FieldElement> {
    let mut c = vec![FieldElement::ZERO; e + 1];
    c[0] = p;
    c[e] = FieldElement::ONE;
    let mut r = base_roots(tower, &Polynomial::from_coeffs(c));
    r.sort_unstable();
    r
}

fn monic(tower: &FieldTower, f: Polynomial) -> Polynomial {
    if f.is_zero() {
        return f;
    }
    let inv = tower.inv_nonzero(f.leading());
    f.scale(tower, inv)
}

fn gcd(tower: &FieldTower, mut a: Polynomial, mut b: Polynomial) -> Polynomial {
    while !b.is_zero() {
        let (_, r) = a.div_rem(tower, &b);
        a = std::mem::replace(&mut b, r);
    }
    monic(tower, a)
}

fn mulmod(tower: &FieldTower, a: &Polynomial, b: &Polynomial, m: &Polynomial) -> Polynomial {
    a.mul(tower, b).div_rem(tower, m).1
}

/// Distinct roots in `F_{q0}` of a polynomial with base-field coefficients:
/// `gcd(f, X^{q0} - X)` followed by trace splitting.
fn base_roots(tower: &FieldTower, f: &Polynomial) -> Vec<FieldElement> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = Polynomial::monomial(FieldElement::ONE, 1);
    let mut r = x.div_rem(tower, f).1;
    for _ in 0..tower.base_degree() {
        r = mulmod(tower, &r, &r, f);
    }
    let h = gcd(tower, f.clone(), r.add(&x));
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(0);
    split(tower, h, &mut rng, &mut out);
    out
}

/// Roots of a squarefree product of distinct linear factors over `F_{q0}`.
fn split(tower: &FieldTower, h: Polynomial, rng: &mut StdRng, out: &mut Vec<FieldElement>) {
    match h.degree() {
        None | Some(0) => {}
        Some(1) => out.push(tower.div(h.coeff(0), h.coeff(1))),
        Some(_) => loop {
            // Tr(delta X) mod h: each root maps to 0 or 1
            let delta = tower.sample_subfield(0, rng).expect("level 0");
            let mut a = Polynomial::monomial(delta, 1).div_rem(tower, &h).1;
            let mut t = a.clone();
            for _ in 1..tower.base_degree() {
                a = mulmod(tower, &a, &a, &h);
                t = t.add(&a);
            }
            let g = gcd(tower, h.clone(), t);
            let d = g.degree().unwrap_or(0);
            if d > 0 && d < h.degree().unwrap_or(0) {
                let (q, _) = h.div_rem(tower, &g);
                split(tower, g, rng, out);
                split(tower, monic(tower, q), rng, out);
                return;
            }
        },
    }
}
