use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn small() -> (FieldTower, TrsParams) {
    let p = TrsParams::validate(128, 127, 60, 1).unwrap();
    (p.tower().unwrap(), p)
}

fn random_msg(t: &FieldTower, k: usize, rng: &mut impl Rng) -> Vec<FieldElement> {
    (0..k).map(|_| t.random(rng)).collect()
}

#[test]
fn keygen_shape_and_determinism() {
    let (t, p) = small();
    let (pk, sk) = keygen(&t, p.clone(), &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!(pk.g_pub.rank(&t), 60);
    assert!(pk.g_pub.rowspace_equal(&sk.key.generator(&t), &t).unwrap());
    assert_eq!(pk, sk.public(&t));
    let (pk2, sk2) = keygen(&t, p, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!((pk, sk), (pk2, sk2));
}

#[test]
fn error_weight_is_exact() {
    let (t, p) = small();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (pk, _) = keygen(&t, p, &mut rng).unwrap();
    for _ in 0..20 {
        let m = random_msg(&t, 60, &mut rng);
        let ct = encrypt(&t, &m, &pk, &mut rng).unwrap();
        let c = pk.g_pub.vec_mul(&m, &t);
        let w = ct.y.iter().zip(&c).filter(|(a, b)| a != b).count();
        assert_eq!(w, 33);
    }
    assert_eq!(TrsParams::validate(256, 255, 117, 1).unwrap().error_weight(), 69);
    assert!(matches!(
        encrypt(&t, &[FieldElement::ONE], &pk, &mut rng),
        Err(CryptoError::LengthMismatch { expected: 60, got: 1 })
    ));
}

#[test]
fn roundtrip() {
    let (t, p) = small();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (pk, sk) = keygen(&t, p, &mut rng).unwrap();
    let dec = Decryptor::new(&t, &sk).unwrap();
    for _ in 0..5 {
        let m = random_msg(&t, 60, &mut rng);
        let ct = encrypt(&t, &m, &pk, &mut rng).unwrap();
        assert_eq!(dec.decrypt(&t, &ct).unwrap(), m);
    }
    let zero = Ciphertext {
        y: vec![FieldElement::ZERO; 127],
    };
    assert_eq!(decrypt(&t, &zero, &sk).unwrap(), vec![FieldElement::ZERO; 60]);
}

#[test]
fn random_words_fail() {
    let (t, p) = small();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (_, sk) = keygen(&t, p, &mut rng).unwrap();
    let dec = Decryptor::new(&t, &sk).unwrap();
    for _ in 0..5 {
        let ct = Ciphertext {
            y: random_msg(&t, 127, &mut rng),
        };
        assert!(matches!(dec.decrypt(&t, &ct), Err(CryptoError::DecryptionFailure(_))));
    }
}

#[test]
fn wire_roundtrip() {
    let (t, p) = small();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (pk, sk) = keygen(&t, p.clone(), &mut rng).unwrap();
    let ct = encrypt(&t, &random_msg(&t, 60, &mut rng), &pk, &mut rng).unwrap();

    let text = pk.to_text();
    assert!(text.starts_with("TRS-MCELIECE v1 public\nq0=128 n=127 k=60 l=1\n"));
    assert_eq!(text.lines().count(), 2 + 60);
    assert_eq!(text.lines().nth(2).unwrap().len(), 127 * 4 + 126);
    assert_eq!(PublicKey::from_text(&text).unwrap(), pk);

    let text = sk.to_text();
    assert_eq!(text.lines().count(), 2 + 60 + 2);
    assert_eq!(PrivateKey::from_text(&text).unwrap(), sk);

    let text = ct.to_text(&p);
    assert_eq!(Ciphertext::from_text(&text).unwrap(), (p, ct));
    assert_eq!(pk.size_bytes(), 60 * 127 * 2);
}

#[test]
fn wire_is_strict() {
    let (t, p) = small();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (pk, sk) = keygen(&t, p, &mut rng).unwrap();
    let good = pk.to_text();
    let edit = |f: &dyn Fn(&mut Vec<String>)| {
        let mut lines: Vec<String> = good.lines().map(String::from).collect();
        f(&mut lines);
        lines.join("\n") + "\n"
    };
    assert!(PublicKey::from_text(good.trim_end()).is_ok());
    let cases: Vec<(String, fn(&WireError) -> bool)> = vec![
        (good.replace("public", "private"), |e| matches!(e, WireError::Header { .. })),
        (good.replace("q0=128", "q0=0128"), |e| matches!(e, WireError::ParamLine(_))),
        (good.replace("k=60", "k=60 "), |e| matches!(e, WireError::ParamLine(_))),
        (good.replace("q0=128 n=127 k=60 l=1", "q0=64 n=63 k=29 l=1"), |e| {
            matches!(e, WireError::Params(_))
        }),
        (good.clone() + "\n", |e| matches!(e, WireError::TrailingData(_))),
        (edit(&|l| {
            l.pop();
        }), |e| matches!(e, WireError::MissingLine(62))),
        (edit(&|l| l[2] = l[2].replacen(' ', "  ", 1)), |e| matches!(e, WireError::ElementCount { line: 3, .. })),
        (edit(&|l| l[3] = format!("ffff{}", &l[3][4..])), |e| matches!(e, WireError::BadElement { line: 4, .. })),
        (edit(&|l| l[3] = format!("ABCD{}", &l[3][4..])), |e| matches!(e, WireError::BadElement { .. })),
        (edit(&|l| l[3] = format!("0{}", &l[3][4..])), |e| matches!(e, WireError::BadElement { .. })),
        (edit(&|l| l[4] = l[3].clone()), |e| matches!(e, WireError::Invalid(_))),
    ];
    for (i, (text, ok)) in cases.iter().enumerate() {
        let e = PublicKey::from_text(text).unwrap_err();
        assert!(ok(&e), "case {i}: {e:?}");
    }

    // a private key with a singular scrambler
    let mut lines: Vec<String> = sk.to_text().lines().map(String::from).collect();
    lines[3] = lines[2].clone();
    let e = PrivateKey::from_text(&(lines.join("\n") + "\n")).unwrap_err();
    assert!(e.to_string().contains("singular"), "{e}");
    // duplicated locator
    let mut lines: Vec<String> = sk.to_text().lines().map(String::from).collect();
    let mut alpha: Vec<String> = lines[62].split(' ').map(String::from).collect();
    alpha[1] = alpha[0].clone();
    lines[62] = alpha.join(" ");
    assert!(matches!(PrivateKey::from_text(&(lines.join("\n") + "\n")), Err(WireError::Invalid(_))));
}

#[test]
fn message_lines() {
    let (t, _) = small();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = random_msg(&t, 60, &mut rng);
    let line = write_elements(&m, t.hex_width());
    assert_eq!(parse_elements(&line, 60, 14, 1).unwrap(), m);
    assert!(parse_elements(&line, 59, 14, 1).is_err());
    assert!(parse_elements("", 0, 14, 1).unwrap().is_empty());
}
