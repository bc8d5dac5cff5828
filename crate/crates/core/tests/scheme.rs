use std::collections::BTreeSet;

use num_complex::Complex64;
use qibe_core::lattice::ZqMatrix;
use qibe_core::revcirc::{build_decrypt, reg_name, CT, MSG};
use qibe_core::rng::{seeded, SchemeRng};
use qibe_core::scheme::*;
use qibe_core::sim::SparseState;
use rand_core::RngCore;

struct Setup {
    mpk: MasterPublicKey,
    msk: MasterSecretKey,
    u: ZqMatrix,
    sk: IdentityKey,
}

fn setup(preset: Preset, seed: u64, id: &str) -> Setup {
    let p = preset.params();
    let (mpk, msk) = qkeygen(&p, preset.backend(), &mut seeded(seed)).unwrap();
    let id = Identity::parse_bits(id).unwrap();
    let u = hash_id(&mpk, Some(&msk), &id).unwrap();
    let sk = qextract(&mpk, &msk, &id).unwrap();
    Setup { mpk, msk, u, sk }
}

fn random_bits(n: usize, rng: &mut SchemeRng) -> Vec<bool> {
    (0..n).map(|_| rng.next_u32() & 1 == 1).collect()
}

/// `c0_i = sum_j U[j][i] s_j + e0_i + floor(q/2) m_i (mod q)` in plain integers.
fn oracle_c0(u: &ZqMatrix, r: &EncryptionRandomness, m: &[bool], q: u64) -> Vec<u64> {
    (0..m.len())
        .map(|i| {
            let mut acc: i128 = (0..m.len()).map(|j| u.get(j, i) as i128 * r.s.get(j) as i128).sum();
            acc += r.e0.as_slice()[i] as i128 + if m[i] { (q / 2) as i128 } else { 0 };
            acc.rem_euclid(q as i128) as u64
        })
        .collect()
}

#[test]
fn quantum_matches_classical_500_trials() {
    let s = setup(Preset::Toy, 1, "0110");
    let p = s.mpk.params;
    let mut rng = seeded(2);
    for _ in 0..500 {
        let m = random_bits(p.n(), &mut rng);
        let r = EncryptionRandomness::sample(&p, &mut rng);
        let ct = qencrypt_with(&s.mpk, &s.u, &basis_plaintext(&m), &r).unwrap();
        let classical = classical_encrypt(&s.mpk, &s.u, &m, &r).unwrap();
        let branches = ct.branch_values(&p);
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].0, classical.c0.entries());
        assert_eq!(branches[0].0, oracle_c0(&s.u, &r, &m, p.q()));
        assert_eq!(ct.c1, classical.c1);

        let out = qdecrypt(&s.mpk, &s.sk, &ct).unwrap();
        let bits = classical_decrypt(&s.mpk, &s.sk, &classical).unwrap();
        assert_eq!(bits, m);
        assert_eq!(out, basis_plaintext(&bits));
    }
}

fn random_superposition(n: usize, branches: usize, rng: &mut SchemeRng) -> SparseState {
    let mut values = BTreeSet::new();
    while values.len() < branches {
        values.insert(rng.next_u64() % (1 << n));
    }
    let amps: Vec<Complex64> = values
        .iter()
        .map(|_| {
            let f = |r: &mut SchemeRng| (r.next_u32() as f64 / u32::MAX as f64) * 2.0 - 1.0;
            Complex64::new(f(rng), f(rng)) + Complex64::new(0.05, 0.0)
        })
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    SparseState::from_values(n, values.into_iter().zip(amps.into_iter().map(|a| a / norm))).unwrap()
}

/// Runs the decryption circuit by hand so every work register can be
/// inspected, then compares with `qdecrypt`.
#[test]
fn superposition_roundtrips() {
    let s = setup(Preset::Toy, 3, "1100");
    let p = s.mpk.params;
    let l = p.bit_len();
    let mut rng = seeded(4);
    for _ in 0..100 {
        let plain = random_superposition(p.n(), 8, &mut rng);
        let ct = qencrypt(&s.mpk, &s.u, &plain, &mut rng).unwrap();
        assert_eq!(ct.psi.len(), 8);

        let y = s.sk.r.transpose_mul_mod(&ct.c1).unwrap();
        let c = build_decrypt(y.entries(), p.q()).unwrap();
        let ct_qubits: Vec<usize> = (0..p.n()).flat_map(|i| c.register(&reg_name(CT, i)).unwrap().qubits()).collect();
        assert_eq!(ct_qubits.len(), p.n() * l);
        let full = ct.psi.embed(c.width(), &ct_qubits).unwrap().apply(&c).unwrap();
        for reg in c.registers().iter().filter(|r| r.role.is_clean()) {
            assert!(full.is_register_zero(reg), "{} is dirty", reg.name);
        }
        let msg: Vec<usize> = (0..p.n()).map(|i| c.register(&reg_name(MSG, i)).unwrap().start).collect();
        assert_eq!(full.project_qubits(&msg).unwrap(), plain);

        let out = qdecrypt(&s.mpk, &s.sk, &ct).unwrap();
        // amplitudes are only ever moved, so the state comes back bit for bit
        assert_eq!(out, plain);
        assert!((out.fidelity(&plain).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn basis_backend_pipeline() {
    let s = setup(Preset::TinyBasis, 5, "10");
    let p = s.mpk.params;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plain = SparseState::from_values(2, [(1, Complex64::new(h, 0.0)), (2, Complex64::new(0.0, h))]).unwrap();
    // noise-free randomness: this preset is too noisy for the q/8 margin
    let ct = qencrypt_with(&s.mpk, &s.u, &plain, &EncryptionRandomness::zero(&p)).unwrap();
    assert_eq!(qdecrypt(&s.mpk, &s.sk, &ct).unwrap(), plain);
    assert!(qextract(&s.mpk, &s.msk, &Identity::parse_bits("1").unwrap()).is_err());
}

#[test]
fn wrong_key_negative_control() {
    let s = setup(Preset::Toy, 6, "1010");
    let other = setup(Preset::Toy, 7, "1010");
    let p = s.mpk.params;
    let mut rng = seeded(8);
    let (mut refused, mut wrong, mut right) = (0, 0, 0);
    for _ in 0..100 {
        let m = random_bits(p.n(), &mut rng);
        let plain = basis_plaintext(&m);
        let ct = qencrypt(&s.mpk, &s.u, &plain, &mut rng).unwrap();
        let key = IdentityKey { id: s.sk.id.clone(), r: other.sk.r.clone() };
        match qdecrypt(&s.mpk, &key, &ct) {
            Err(SchemeError::DecryptionFailure(_)) => refused += 1,
            Ok(out) if out.fidelity(&plain).unwrap() < 1.0 => wrong += 1,
            Ok(_) => right += 1,
            Err(e) => panic!("unexpected {e}"),
        }
    }
    assert!(refused + wrong >= 95, "refused {refused}, wrong {wrong}, right {right}");
}

#[test]
fn identity_hash_has_no_collisions() {
    for preset in Preset::ALL {
        let p = preset.params();
        let (mpk, msk) = qkeygen(&p, preset.backend(), &mut seeded(9)).unwrap();
        let mut rng = seeded(10);
        let mut seen = 0;
        while seen < 100 {
            let a = Identity::from_bits(random_bits(p.n(), &mut rng));
            let b = Identity::from_bits(random_bits(p.n(), &mut rng));
            if a == b {
                continue;
            }
            seen += 1;
            assert_ne!(hash_id(&mpk, Some(&msk), &a).unwrap(), hash_id(&mpk, Some(&msk), &b).unwrap());
        }
    }
}

#[test]
fn noise_margin() {
    let toy = noise_margin_estimate(&Preset::Toy.params(), 10_000, &mut seeded(11)).unwrap();
    assert!(toy.passes(), "{toy:?}");
    assert_eq!(toy.gate, 12289 / 8);
    let tiny = noise_margin_estimate(&Preset::TinyBasis.params(), 10_000, &mut seeded(12)).unwrap();
    assert!(!tiny.passes());
    assert!(noise_margin_estimate(&Preset::Toy.params(), 10, &mut seeded(0)).is_err());
}

#[test]
fn rejects_bad_inputs() {
    let s = setup(Preset::Toy, 13, "0001");
    let wide = basis_plaintext(&[true; 5]);
    assert!(qencrypt(&s.mpk, &s.u, &wide, &mut seeded(1)).is_err());
    assert!(matches!(
        qextract(&s.mpk, &s.msk, &Identity::parse_bits("01").unwrap()),
        Err(SchemeError::WrongIdLength { .. })
    ));
    let basis = setup(Preset::TinyBasis, 14, "01");
    assert!(matches!(
        qextract(&s.mpk, &basis.msk, &Identity::parse_bits("0001").unwrap()),
        Err(SchemeError::BackendMismatch(_))
    ));
}
