use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ss::roots_of_power;
use super::*;
use crate::cryptosystem::{encrypt, keygen, Decryptor};
use crate::rs::{monomial_generator, random_locators, rs_generator};

/// Oracle: the unique `(a, b)` with `x = a y + b`, fitted on two
/// coordinates and checked on all.
fn affine_relation(t: &FieldTower, x: &Locators, y: &Locators) -> Option<(FieldElement, FieldElement)> {
    let (x, y) = (x.as_slice(), y.as_slice());
    let a = t.div(x[0] + x[1], y[0] + y[1]);
    let b = x[0] + t.mul(a, y[0]);
    (!a.is_zero() && x.iter().zip(y).all(|(&u, &v)| u == t.mul(a, v) + b)).then_some((a, b))
}

fn small_key(seed: u64) -> (FieldTower, PublicKey, PrivateKey, ChaCha8Rng) {
    let p = TrsParams::validate(128, 127, 60, 1).unwrap();
    let t = p.tower().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (pk, sk) = keygen(&t, p, &mut rng).unwrap();
    (t, pk, sk, rng)
}

#[test]
fn roots_match_brute_force() {
    for m0 in [3u32, 4, 6, 8] {
        let t = FieldTower::new(m0, 1).unwrap();
        let all = t.base_field().elements_by_encoding().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(m0 as u64);
        for e in [1usize, 2, 3, 5, 6, 9, 15, 21, 232] {
            let p = t.sample_subfield(0, &mut rng).unwrap();
            let expect: Vec<FieldElement> = all.iter().copied().filter(|&z| t.pow(z, e as u128) == p).collect();
            assert_eq!(roots_of_power(&t, p, e), expect, "m0={m0} e={e}");
        }
    }
}

#[test]
fn ss_on_small_rs_codes() {
    // F_8, n = 7, K = 3, plus a few larger shapes
    for (m0, n, k) in [(3u32, 7usize, 3usize), (3, 8, 4), (4, 15, 6), (5, 31, 10), (8, 200, 40)] {
        let t = FieldTower::new(m0, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..5 {
            let alpha = random_locators(&t, n, &mut rng).unwrap();
            let g = rs_generator(&t, &alpha, k).unwrap();
            // scramble the generator
            let s = loop {
                let s = Matrix::new(k, k, 0, (0..k * k).map(|_| t.sample_subfield(0, &mut rng).unwrap()).collect());
                if s.rank(&t) == k {
                    break s;
                }
            };
            let g = s.mul(&g, &t).unwrap();
            let found = sidelnikov_shestakov(&t, &g, k).unwrap();
            assert_eq!(&found.as_slice()[..2], &[FieldElement::ZERO, FieldElement::ONE]);
            assert!(rs_generator(&t, &found, k).unwrap().rowspace_equal(&g, &t).unwrap());
            assert!(affine_relation(&t, &found, &alpha).is_some());
        }
    }
}

#[test]
fn ss_rejects_non_rs_codes() {
    let t = FieldTower::new(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut rejected = 0;
    for _ in 0..20 {
        let g = Matrix::new(8, 31, 0, (0..8 * 31).map(|_| t.sample_subfield(0, &mut rng).unwrap()).collect());
        rejected += matches!(sidelnikov_shestakov(&t, &g, 8), Err(AttackError::NotAnRsCode(_))) as usize;
    }
    assert_eq!(rejected, 20);
    let g = Matrix::new(2, 31, 0, vec![FieldElement::ONE; 62]);
    assert!(sidelnikov_shestakov(&t, &g, 2).is_err());
}

#[test]
fn step_one_dimensions_and_structure() {
    let (t, pk, sk, _) = small_key(1);
    let s1 = recover_locators_affine(&t, &pk).unwrap();
    assert_eq!((s1.g_sub.rows(), s1.g_sq.rows()), (59, 119));
    let alpha = &sk.key.alpha;
    let sub = monomial_generator(&t, alpha, &pk.params.info);
    assert!(s1.g_sub.rowspace_equal(&sub, &t).unwrap());
    assert!(s1.g_sq.rowspace_equal(&rs_generator(&t, alpha, 119).unwrap(), &t).unwrap());
    assert!(affine_relation(&t, &s1.alpha_prime, alpha).is_some());
}

#[test]
fn shift_search() {
    let (t, pk, sk, _) = small_key(2);
    let s1 = recover_locators_affine(&t, &pk).unwrap();
    let (alpha_hat, b) = find_shift(&t, &s1.alpha_prime, &s1.g_sub, &pk.params).unwrap();
    let (a, b_true) = affine_relation(&t, &s1.alpha_prime, &sk.key.alpha).unwrap();
    assert_eq!(b, b_true);
    assert_eq!(alpha_hat, sk.key.alpha.scaled(&t, a));
    assert_eq!(
        accepted_shifts(&t, &s1.alpha_prime, &s1.g_sub, &pk.params).unwrap(),
        vec![b]
    );
    assert_eq!(
        accepted_shifts(&t, &s1.alpha_prime, &pk.g_pub, &pk.params).unwrap(),
        vec![b]
    );
    // one corrupted coordinate breaks containment
    let mut bad = alpha_hat.as_slice().to_vec();
    let unused = t
        .base_field()
        .elements_by_encoding()
        .unwrap()
        .into_iter()
        .find(|x| !bad.contains(x))
        .unwrap();
    bad[5] = unused;
    let bad = Locators::new(&t, bad).unwrap();
    let c = containment(&t, &bad, &s1.g_sub, &pk.params);
    assert!(!c.accepts(FieldElement::ZERO));
}

#[test]
fn eta_and_scrambler() {
    let (t, pk, sk, mut rng) = small_key(3);
    let p = &pk.params;
    // a = 1: the true locators give the true eta
    assert_eq!(recover_eta(&t, &pk, &sk.key.alpha).unwrap(), sk.key.eta);
    for _ in 0..3 {
        let a = loop {
            let a = t.sample_subfield(0, &mut rng).unwrap();
            if !a.is_zero() {
                break a;
            }
        };
        let alpha_hat = sk.key.alpha.scaled(&t, a);
        let eta_hat = recover_eta(&t, &pk, &alpha_hat).unwrap();
        let e = (p.twist_degree(0) - p.h[0]) as u128;
        assert_eq!(eta_hat[0], t.mul(sk.key.eta[0], t.pow(t.inv(a).unwrap(), e)));
        let s_hat = recover_s(&t, &pk, &alpha_hat, &eta_hat).unwrap();
        let g_hat = TrsKey::new(&t, p.clone(), alpha_hat.clone(), eta_hat.clone()).unwrap().generator(&t);
        assert_eq!(s_hat.mul(&g_hat, &t).unwrap(), pk.g_pub);
        // corrupted eta
        let mut bad = eta_hat.clone();
        bad[0] = bad[0] + t.sample_eta(1, &mut rng).unwrap();
        if t.level_of(bad[0]) == 1 {
            assert_eq!(recover_s(&t, &pk, &alpha_hat, &bad), Err(AttackError::NoSolution));
        }
    }
    // the twisted support: interpolants vanish above degree k - 1 except at
    // the twist degree
    let ip = Interpolator::new(&t, &sk.key.alpha);
    for row in pk.g_pub.row_iter() {
        let poly = ip.interpolate(&t, row).unwrap();
        for d in p.k..p.n {
            if d != p.twist_degree(0) {
                assert!(poly.coeff(d).is_zero());
            }
        }
    }
    // G_pub equal to the secret generator gives S_hat = I
    let own = PublicKey::new(&t, p.clone(), sk.key.generator(&t)).unwrap();
    assert_eq!(
        recover_s(&t, &own, &sk.key.alpha, &sk.key.eta).unwrap(),
        Matrix::identity(p.k, 1)
    );
}

#[test]
fn end_to_end() {
    let (t, pk, _, mut rng) = small_key(4);
    let report = recover_key(&t, &pk, true).unwrap();
    let audit = report.audit.as_ref().unwrap();
    assert_eq!(audit.subcode, vec![report.key.b]);
    assert_eq!(audit.public, audit.subcode);
    let sk_hat = report.key.private_key(&t, &pk.params).unwrap();
    assert_eq!(sk_hat.public(&t), pk);
    let dec = Decryptor::new(&t, &sk_hat).unwrap();
    for _ in 0..3 {
        let m: Vec<FieldElement> = (0..pk.params.k).map(|_| t.random(&mut rng)).collect();
        let ct = encrypt(&t, &m, &pk, &mut rng).unwrap();
        assert_eq!(dec.decrypt(&t, &ct).unwrap(), m);
    }
    assert!(report.timings.total() >= report.timings.shift_search);
    let _ = rng.gen::<u8>();
}

#[test]
fn stage_errors_name_the_stage() {
    let (t, pk, _, mut rng) = small_key(5);
    // a random public matrix has no large subfield subcode
    let p = pk.params.clone();
    let g = Matrix::new(p.k, p.n, 1, (0..p.k * p.n).map(|_| t.random(&mut rng)).collect());
    let bogus = PublicKey::new(&t, p, g).unwrap();
    let e = recover_key(&t, &bogus, false).unwrap_err();
    assert_eq!(e.stage, Stage::SubfieldSubcode);
    assert!(e.to_string().starts_with("subfield subcode failed"));
}
