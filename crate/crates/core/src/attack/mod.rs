//! Key recovery from a public generator matrix.
//!
//! 1. The subfield subcode of the public code is `Span{ev(X^i) : i in I}`;
//!    its square is `RS_{2k-1,n}[alpha]`, from which Sidelnikov–Shestakov
//!    yields `alpha' = a alpha + b`.
//! 2. Exhaustive search over `b` in `F_q0` gives `alpha_hat = a alpha`.
//! 3. Interpolating public rows over `alpha_hat` reveals `eta_hat`.
//! 4. `S_hat` solves `S_hat G(alpha_hat, eta_hat) = G_pub`.

mod ss;

use std::fmt;
use std::time::{Duration, Instant};

use log::{debug, warn};
use rayon::prelude::*;
use thiserror::Error;

use crate::cryptosystem::{CryptoError, PrivateKey, PublicKey};
use crate::field::{Arith, FieldElement, FieldTower, Repr};
use crate::linalg::dense::{self, Dense};
use crate::linalg::{LinalgError, Matrix};
use crate::rs::{schur_square, subfield_subcode, Interpolator, Locators};
use crate::trs::{TrsError, TrsKey, TrsParams};

pub use ss::sidelnikov_shestakov;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttackError {
    #[error("expected dimension {expected}, got {got}")]
    UnexpectedDimension { expected: usize, got: usize },
    #[error("not a Reed–Solomon code: {0}")]
    NotAnRsCode(String),
    #[error("base field too large to enumerate shifts")]
    ShiftSpaceTooLarge,
    #[error("no shift b passes the containment test")]
    NoShiftFound,
    #[error("twist coefficients {0:?} not determined by any public row")]
    EtaUnresolved(Vec<usize>),
    #[error("public code is not generated by the recovered key")]
    NoSolution,
    #[error(transparent)]
    Key(#[from] TrsError),
}

/// Attack stages, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    SubfieldSubcode,
    Square,
    SidelnikovShestakov,
    ShiftSearch,
    Eta,
    Scrambler,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::SubfieldSubcode => "subfield subcode",
            Stage::Square => "square",
            Stage::SidelnikovShestakov => "Sidelnikov–Shestakov",
            Stage::ShiftSearch => "shift search",
            Stage::Eta => "eta recovery",
            Stage::Scrambler => "S recovery",
        })
    }
}

/// An [`AttackError`] tagged with the stage that raised it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{stage} failed: {error}")]
pub struct StageError {
    pub stage: Stage,
    #[source]
    pub error: AttackError,
}

fn at<T>(stage: Stage, r: Result<T, AttackError>) -> Result<T, StageError> {
    r.map_err(|error| StageError { stage, error })
}

/// An alternative private key generating the public code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredKey {
    pub s_hat: Matrix,
    pub alpha_hat: Locators,
    pub eta_hat: Vec<FieldElement>,
    /// The shift removed from the Sidelnikov–Shestakov locators.
    pub b: FieldElement,
}

impl RecoveredKey {
    pub fn private_key(&self, tower: &FieldTower, params: &TrsParams) -> Result<PrivateKey, CryptoError> {
        let key = TrsKey::new(tower, params.clone(), self.alpha_hat.clone(), self.eta_hat.clone())?;
        PrivateKey::new(tower, self.s_hat.clone(), key)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub subfield_subcode: Duration,
    pub square: Duration,
    pub sidelnikov_shestakov: Duration,
    pub shift_search: Duration,
    pub eta: Duration,
    pub scrambler: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.subfield_subcode + self.square + self.sidelnikov_shestakov + self.shift_search + self.eta + self.scrambler
    }
}

/// Every shift accepted by each test, when auditing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftAudit {
    pub subcode: Vec<FieldElement>,
    pub public: Vec<FieldElement>,
}

#[derive(Clone, Debug)]
pub struct AttackReport {
    pub key: RecoveredKey,
    pub alpha_prime: Locators,
    pub g_sub: Matrix,
    pub g_sq: Matrix,
    pub timings: StageTimings,
    pub audit: Option<ShiftAudit>,
}

/// Output of the first step.
#[derive(Clone, Debug)]
pub struct AffineLocators {
    pub alpha_prime: Locators,
    pub g_sub: Matrix,
    pub g_sq: Matrix,
}

fn expect_dim(expected: usize, got: usize) -> Result<(), AttackError> {
    if expected != got {
        return Err(AttackError::UnexpectedDimension { expected, got });
    }
    Ok(())
}

/// Subfield subcode, its square, and Sidelnikov–Shestakov on the square.
pub fn recover_locators_affine(tower: &FieldTower, pk: &PublicKey) -> Result<AffineLocators, StageError> {
    recover_locators_timed(tower, pk, &mut StageTimings::default())
}

fn recover_locators_timed(
    tower: &FieldTower,
    pk: &PublicKey,
    t: &mut StageTimings,
) -> Result<AffineLocators, StageError> {
    let p = &pk.params;
    if !p.square_hypothesis() {
        warn!("l = {} exceeds (sqrt(n) - 3) / 2; the square may not be Reed–Solomon", p.l);
    }
    let clock = Instant::now();
    let g_sub = subfield_subcode(tower, &pk.g_pub);
    t.subfield_subcode = clock.elapsed();
    at(Stage::SubfieldSubcode, expect_dim(p.k - p.l, g_sub.rows()))?;

    let clock = Instant::now();
    let g_sq = schur_square(tower, &g_sub);
    t.square = clock.elapsed();
    let big_k = 2 * p.k - 1;
    at(Stage::Square, expect_dim(big_k, g_sq.rows()))?;

    let clock = Instant::now();
    let alpha_prime = at(Stage::SidelnikovShestakov, sidelnikov_shestakov(tower, &g_sq, big_k));
    t.sidelnikov_shestakov = clock.elapsed();
    Ok(AffineLocators {
        alpha_prime: alpha_prime?,
        g_sub,
        g_sq,
    })
}

/// `F_q0` in ascending wire encoding.
fn shift_candidates(tower: &FieldTower) -> Result<Vec<FieldElement>, AttackError> {
    tower.base_field().elements_by_encoding().ok_or(AttackError::ShiftSpaceTooLarge)
}

/// Precomputed containment test `Span{ev_{alpha'-b}(X^i) : i in I} ⊆ C`
/// against a kernel basis of `C`.
struct Containment<'a> {
    tower: &'a FieldTower,
    alpha_prime: &'a Locators,
    info: &'a [usize],
    kernel: Kernel,
}

/// The kernel in the cheapest representation that holds it.
enum Kernel {
    Base(Dense<u16>),
    Top(Dense<FieldElement>),
}

fn pow<A: Arith>(a: &A, mut x: A::Elem, mut e: usize) -> A::Elem {
    let mut acc = a.one();
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(acc, x);
        }
        x = a.mul(x, x);
        e >>= 1;
    }
    acc
}

impl Containment<'_> {
    fn accepts(&self, b: FieldElement) -> bool {
        match &self.kernel {
            Kernel::Base(k) => self.accepts_in(self.tower.base_field(), k, b),
            Kernel::Top(k) => self.accepts_in(self.tower, k, b),
        }
    }

    /// Rows are built and checked from the highest exponent down, where
    /// wrong shifts are caught first; low rows such as `X^0` pass for every
    /// `b`.
    fn accepts_in<A: Repr>(&self, a: &A, kernel: &Dense<A::Elem>, b: FieldElement) -> bool {
        let x: Vec<A::Elem> = self.alpha_prime.as_slice().iter().map(|&v| a.lift(v - b)).collect();
        self.info.iter().rev().all(|&e| {
            let row: Vec<A::Elem> = x.iter().map(|&v| pow(a, v, e)).collect();
            (0..kernel.rows).all(|i| {
                let dot = row
                    .iter()
                    .zip(kernel.row(i))
                    .fold(a.zero(), |acc, (&p, &q)| a.add(acc, a.mul(p, q)));
                a.is_zero(dot)
            })
        })
    }
}

fn containment<'a>(
    tower: &'a FieldTower,
    alpha_prime: &'a Locators,
    code: &Matrix,
    params: &'a TrsParams,
) -> Containment<'a> {
    let k = code.right_kernel(tower);
    let kernel = match tower.fast_base(k.level()) {
        Some(b) => Kernel::Base(dense::lift(b, k.rows(), k.cols(), k.entries())),
        None => Kernel::Top(dense::lift(tower, k.rows(), k.cols(), k.entries())),
    };
    Containment {
        tower,
        alpha_prime,
        info: &params.info,
        kernel,
    }
}

/// First `b` in encoding order whose shifted monomial code lies in `code`;
/// returns `(alpha' - b, b)`. The attack tests against `G_sub`, testing
/// against `G_pub` accepts the same shifts.
pub fn find_shift(
    tower: &FieldTower,
    alpha_prime: &Locators,
    code: &Matrix,
    params: &TrsParams,
) -> Result<(Locators, FieldElement), AttackError> {
    let c = containment(tower, alpha_prime, code, params);
    let b = shift_candidates(tower)?
        .into_par_iter()
        .find_first(|&b| c.accepts(b))
        .ok_or(AttackError::NoShiftFound)?;
    Ok((alpha_prime.shifted(tower, b), b))
}

/// Every accepted `b`, in encoding order.
pub fn accepted_shifts(
    tower: &FieldTower,
    alpha_prime: &Locators,
    code: &Matrix,
    params: &TrsParams,
) -> Result<Vec<FieldElement>, AttackError> {
    let c = containment(tower, alpha_prime, code, params);
    Ok(shift_candidates(tower)?
        .into_par_iter()
        .filter(|&b| c.accepts(b))
        .collect())
}

/// `eta_hat_j = p_{k-1+t_j} / p_{h_j}` from the first public row whose
/// interpolant over `alpha_hat` has `p_{h_j} != 0`.
pub fn recover_eta(tower: &FieldTower, pk: &PublicKey, alpha_hat: &Locators) -> Result<Vec<FieldElement>, AttackError> {
    let p = &pk.params;
    let ip = Interpolator::new(tower, alpha_hat);
    let mut eta: Vec<Option<FieldElement>> = vec![None; p.l];
    for row in pk.g_pub.row_iter() {
        if eta.iter().all(Option::is_some) {
            break;
        }
        let poly = ip.interpolate(tower, row).map_err(TrsError::from)?;
        for (j, e) in eta.iter_mut().enumerate() {
            let ph = poly.coeff(p.h[j]);
            if e.is_none() && !ph.is_zero() {
                *e = Some(tower.div(poly.coeff(p.twist_degree(j)), ph));
            }
        }
    }
    let missing: Vec<usize> = (0..p.l).filter(|&j| eta[j].is_none()).map(|j| j + 1).collect();
    if !missing.is_empty() {
        return Err(AttackError::EtaUnresolved(missing));
    }
    Ok(eta.into_iter().map(Option::unwrap).collect())
}

/// `S_hat` with `S_hat G(alpha_hat, eta_hat) = G_pub`, verified exactly.
pub fn recover_s(
    tower: &FieldTower,
    pk: &PublicKey,
    alpha_hat: &Locators,
    eta_hat: &[FieldElement],
) -> Result<Matrix, AttackError> {
    let key = TrsKey::new(tower, pk.params.clone(), alpha_hat.clone(), eta_hat.to_vec())?;
    let g_hat = key.generator(tower);
    let s_hat = g_hat.solve_left(&pk.g_pub, tower).map_err(|e| match e {
        LinalgError::NoSolution => AttackError::NoSolution,
        e => AttackError::Key(e.into()),
    })?;
    let check = s_hat.mul(&g_hat, tower).map_err(|e| AttackError::Key(e.into()))?;
    if check != pk.g_pub || s_hat.rank(tower) != pk.params.k {
        return Err(AttackError::NoSolution);
    }
    Ok(s_hat)
}

/// The whole attack. With `audit`, every shift accepted by either
/// containment test is also collected.
pub fn recover_key(tower: &FieldTower, pk: &PublicKey, audit: bool) -> Result<AttackReport, StageError> {
    let mut t = StageTimings::default();
    let step1 = recover_locators_timed(tower, pk, &mut t)?;
    debug!("step 1 done in {:?}", t.subfield_subcode + t.square + t.sidelnikov_shestakov);

    let clock = Instant::now();
    let shift = at(
        Stage::ShiftSearch,
        find_shift(tower, &step1.alpha_prime, &step1.g_sub, &pk.params),
    );
    t.shift_search = clock.elapsed();
    let (alpha_hat, b) = shift?;
    let audit = if audit {
        let a = at(Stage::ShiftSearch, (|| {
            Ok(ShiftAudit {
                subcode: accepted_shifts(tower, &step1.alpha_prime, &step1.g_sub, &pk.params)?,
                public: accepted_shifts(tower, &step1.alpha_prime, &pk.g_pub, &pk.params)?,
            })
        })())?;
        if a.subcode.len() > 1 || a.public.len() > 1 {
            warn!("several shifts accepted: {:?} / {:?}; using the first", a.subcode, a.public);
        }
        Some(a)
    } else {
        None
    };

    let clock = Instant::now();
    let eta_hat = at(Stage::Eta, recover_eta(tower, pk, &alpha_hat));
    t.eta = clock.elapsed();
    let eta_hat = eta_hat?;

    let clock = Instant::now();
    let s_hat = at(Stage::Scrambler, recover_s(tower, pk, &alpha_hat, &eta_hat));
    t.scrambler = clock.elapsed();
    let s_hat = s_hat?;
    debug!("attack done in {:?}", t.total());

    Ok(AttackReport {
        key: RecoveredKey {
            s_hat,
            alpha_hat,
            eta_hat,
            b,
        },
        alpha_prime: step1.alpha_prime,
        g_sub: step1.g_sub,
        g_sq: step1.g_sq,
        timings: t,
        audit,
    })
}

#[cfg(test)]
mod tests;
