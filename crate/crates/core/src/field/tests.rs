use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(7)
}

#[test]
fn rejects_bad_shapes() {
    assert_eq!(FieldTower::new(1, 0).unwrap_err(), FieldError::BaseDegreeTooSmall(1));
    assert!(matches!(
        FieldTower::new(8, 5),
        Err(FieldError::DegreeTooLarge { .. })
    ));
    assert!(FieldTower::new(8, 4).is_ok());
    assert!(FieldTower::new(9, 3).is_ok());
}

#[test]
fn table_shapes() {
    let t = FieldTower::new(8, 1).unwrap();
    assert_eq!(t.degree(), 16);
    assert_eq!(t.subfield_degree(0), 8);
    assert_eq!(t.hex_width(), 4);
    let t = FieldTower::new(8, 0).unwrap();
    assert_eq!(t.degree(), 8);
    assert_eq!(t.levels(), 0);
    let t = FieldTower::new(7, 1).unwrap();
    assert_eq!(t.degree(), 14);
    assert!(gf2::is_irreducible(14, t.modulus()));
}

#[test]
fn moduli_pass_exhaustive_factor_test() {
    for (m0, l) in [(7, 1), (8, 0), (8, 1), (2, 1), (4, 2)] {
        let t = FieldTower::new(m0, l).unwrap();
        let m = t.degree();
        let f = (1u128 << m) | t.modulus();
        for d in 1..=m / 2 {
            for g in (1u128 << d)..(1u128 << (d + 1)) {
                assert_ne!(gf2::rem(f, g), 0, "({m0},{l}) divisible by {g:#x}");
            }
        }
    }
}

#[test]
fn field_axioms() {
    let mut rng = rng();
    for (m0, l) in [(2, 1), (7, 1), (8, 1), (8, 2), (12, 3), (8, 4), (9, 3)] {
        let t = FieldTower::new(m0, l).unwrap();
        for _ in 0..200 {
            let (x, y, z) = (t.random(&mut rng), t.random(&mut rng), t.random(&mut rng));
            assert!((x + x).is_zero());
            assert_eq!(t.mul(x, y), t.mul(y, x));
            assert_eq!(t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z)));
            assert_eq!(t.mul(x, y + z), t.mul(x, y) + t.mul(x, z));
            assert_eq!(t.mul(x, FieldElement::ONE), x);
            assert_eq!(t.square(x), t.mul(x, x));
            if !x.is_zero() {
                assert_eq!(t.mul(x, t.inv(x).unwrap()), FieldElement::ONE);
            }
            // x^(2^m) = x
            assert_eq!(t.frobenius(x, t.degree()), x);
            if t.degree() < 128 {
                assert_eq!(t.pow(x, 1u128 << t.degree()), x);
            }
        }
        assert_eq!(t.inv(FieldElement::ZERO), Err(FieldError::InverseOfZero));
    }
}

#[test]
fn subfield_chain_and_closure() {
    let mut rng = rng();
    let t = FieldTower::new(4, 3).unwrap();
    assert!(t.in_subfield(FieldElement::ZERO, 0).unwrap());
    assert!(t.in_subfield(FieldElement::ONE, 0).unwrap());
    assert!(t.in_subfield(FieldElement::ZERO, 4).is_err());
    for i in 0..=3 {
        for _ in 0..100 {
            let x = t.sample_subfield(i, &mut rng).unwrap();
            let y = t.sample_subfield(i, &mut rng).unwrap();
            for j in i..=3 {
                assert!(t.in_subfield(x, j).unwrap());
            }
            assert!(t.is_in_subfield(x + y, i));
            assert!(t.is_in_subfield(t.mul(x, y), i));
            assert!(t.level_of(x) <= i);
            assert!(t.in_subfield(t.random(&mut rng), 3).unwrap());
        }
    }
    for i in 1..=3 {
        for _ in 0..100 {
            let e = t.sample_eta(i, &mut rng).unwrap();
            assert!(t.is_in_subfield(e, i) && !t.is_in_subfield(e, i - 1));
            assert_eq!(t.level_of(e), i);
        }
    }
    assert!(t.sample_eta(0, &mut rng).is_err());
}

#[test]
fn level_zero_fast_path_matches_frobenius() {
    let mut rng = rng();
    let t = FieldTower::new(8, 1).unwrap();
    for _ in 0..2000 {
        let x = t.random(&mut rng);
        assert_eq!(t.is_in_subfield(x, 0), t.frobenius(x, 8) == x);
    }
    // the subfield has exactly q0 elements
    let count = (0..1u128 << 16)
        .filter(|&v| t.is_in_subfield(FieldElement(v), 0))
        .count();
    assert_eq!(count, 256);
    let all = t.base_field().elements_by_encoding().unwrap();
    assert_eq!(all.len(), 256);
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    assert!(all.iter().all(|&x| t.is_in_subfield(x, 0)));
}

#[test]
fn base_field_embedding_is_a_homomorphism() {
    let mut rng = rng();
    for (m0, l) in [(7, 1), (8, 2), (20, 1)] {
        let t = FieldTower::new(m0, l).unwrap();
        let b = t.base_field();
        for _ in 0..500 {
            let s = rng.gen::<u128>() & gf2::mask(m0);
            let u = rng.gen::<u128>() & gf2::mask(m0);
            assert_eq!(t.mul(b.embed(s), b.embed(u)), b.embed(b.mul_small(s, u)));
            assert_eq!(b.project(b.embed(s)), Some(s));
        }
    }
}

#[test]
fn expansion_roundtrip_and_linearity() {
    let mut rng = rng();
    for (m0, l) in [(8, 0), (8, 1), (7, 1), (8, 2), (16, 3)] {
        let t = FieldTower::new(m0, l).unwrap();
        let zero = t.expand_base(FieldElement::ZERO);
        assert!(zero.iter().all(|c| c.is_zero()));
        let mut unit = vec![FieldElement::ZERO; 1 << l];
        unit[0] = FieldElement::ONE;
        assert_eq!(t.expand_base(t.base_basis()[0]), unit);
        for _ in 0..10_000 {
            let x = t.random(&mut rng);
            let coords = t.expand_base(x);
            assert!(coords.iter().all(|&c| t.is_in_subfield(c, 0)));
            assert_eq!(t.contract_base(&coords), x);
        }
        for _ in 0..200 {
            let (x, y) = (t.random(&mut rng), t.random(&mut rng));
            let c = t.sample_subfield(0, &mut rng).unwrap();
            let lhs = t.expand_base(x + t.mul(c, y));
            let rhs: Vec<_> = t
                .expand_base(x)
                .into_iter()
                .zip(t.expand_base(y))
                .map(|(a, b)| a + t.mul(c, b))
                .collect();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn towers_are_deterministic() {
    for (m0, l) in [(8, 1), (8, 2), (9, 3)] {
        let a = FieldTower::new(m0, l).unwrap();
        let b = FieldTower::new(m0, l).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.base_basis(), b.base_basis());
        assert_eq!(a.base_field().modulus(), b.base_field().modulus());
    }
}

#[test]
fn zero_frequency_in_the_base_field() {
    // Chi-square on the two-cell split {0} / F_q0^*, 1 degree of freedom.
    let mut rng = rng();
    let t = FieldTower::new(4, 2).unwrap();
    let draws = 100_000f64;
    let zeros = (0..draws as usize)
        .filter(|_| t.sample_subfield(0, &mut rng).unwrap().is_zero())
        .count() as f64;
    let p = 1.0 / 16.0;
    let expected = [draws * p, draws * (1.0 - p)];
    let observed = [zeros, draws - zeros];
    let chi2: f64 = observed
        .iter()
        .zip(expected)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    // 99.9% quantile of chi-square(1)
    assert!(chi2 < 10.83, "chi2={chi2}");
}

#[test]
fn arith_impls_agree() {
    let mut rng = rng();
    let t = FieldTower::new(8, 1).unwrap();
    let b = t.base_field();
    for _ in 0..1000 {
        let s = rng.gen::<u16>() & 0xff;
        let u = rng.gen::<u16>() & 0xff;
        let lhs = Arith::mul(b, s, u);
        let rhs = Arith::mul(&t, b.embed(s as u128), b.embed(u as u128));
        assert_eq!(b.embed(lhs as u128), rhs);
        if s != 0 {
            assert_eq!(Arith::mul(b, s, Arith::inv(b, s)), 1);
        }
    }
}
