use std::io::{BufRead, BufReader, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn qibe(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qibe")).current_dir(dir).args(args).env_remove("QIBE_PRESET").output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = qibe(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn keys(dir: &Path, seed: &str, id: &str) {
    ok(dir, &["--seed", seed, "keygen"]);
    ok(dir, &["extract", "--mpk", "mpk.json", "--msk", "msk.json", "--id", id]);
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn keygen_is_deterministic_under_seed() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    ok(a.path(), &["--seed", "5", "keygen"]);
    ok(b.path(), &["--seed", "5", "keygen"]);
    for f in ["mpk.json", "msk.json"] {
        assert_eq!(read(a.path(), f), read(b.path(), f));
    }
    ok(b.path(), &["--seed", "6", "keygen"]);
    assert_ne!(read(a.path(), "mpk.json"), read(b.path(), "mpk.json"));
    let mpk = read(a.path(), "mpk.json");
    assert_eq!((mpk["n"].as_u64(), mpk["m"].as_u64(), mpk["q"].as_u64()), (Some(4), Some(64), Some(12289)));
    assert_eq!(mpk["A"].as_array().unwrap().len(), 4 * 64);
}

#[test]
fn invalid_parameters_exit_2() {
    let d = TempDir::new().unwrap();
    for args in [
        &["keygen", "--n", "0"][..],
        &["keygen", "--q", "12"],
        &["keygen", "--preset", "nope"],
        &["keygen", "--backend", "basis", "--m", "10"],
        &["resources", "--n", "0", "--q", "101", "--alg", "encrypt"],
    ] {
        let out = qibe(d.path(), args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
    assert!(!d.path().join("mpk.json").exists());
}

#[test]
fn file_roundtrip_with_superposition() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    keys(p, "1", "alice");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plain = serde_json::json!({
        "n": 4,
        "branches": [{"bits": "0011", "amp": [h, 0.0]}, {"bits": "1100", "amp": [0.0, -h]}]
    });
    std::fs::write(p.join("plain.json"), plain.to_string()).unwrap();
    ok(p, &["--seed", "2", "encrypt", "--mpk", "mpk.json", "--msk", "msk.json", "--id", "alice", "--plaintext", "plain.json"]);
    let out = ok(p, &["decrypt", "--mpk", "mpk.json", "--sk", "sk.json", "--ct", "ct.json", "--expect", "plain.json"]);
    assert!(out.contains("fidelity 1"), "{out}");
    let back = read(p, "plaintext.json");
    assert_eq!(back["branches"], plain["branches"]);
}

#[test]
fn basis_backend_end_to_end() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    ok(p, &["--seed", "3", "keygen", "--preset", "tiny-basis"]);
    assert!(read(p, "msk.json")["T_A"].is_array());
    ok(p, &["extract", "--mpk", "mpk.json", "--msk", "msk.json", "--id", "10"]);
    // the public hash needs no master secret
    ok(p, &["encrypt", "--mpk", "mpk.json", "--id", "10", "--bits", "01"]);
    assert_eq!(read(p, "sk.json")["R"].as_array().unwrap().len(), 84);
}

#[test]
fn corrupted_inputs_exit_2() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    keys(p, "4", "1001");
    std::fs::write(p.join("bad.json"), "{\"backend\": \"oracle_key\", \"seed\": \"%%%\"}").unwrap();
    let out = qibe(p, &["extract", "--mpk", "mpk.json", "--msk", "bad.json", "--id", "1001", "--out", "x.json"]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    let out = qibe(p, &["extract", "--mpk", "mpk.json", "--msk", "missing.json", "--id", "1001"]);
    assert_eq!(code(&out), 2);
    let out = qibe(p, &["encrypt", "--mpk", "mpk.json", "--id", "1001", "--bits", "1"]);
    assert_eq!(code(&out), 2, "oracle_key without msk and short bits");
}

#[test]
fn tampered_ciphertext_is_malformed() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    keys(p, "7", "0110");
    ok(p, &["encrypt", "--mpk", "mpk.json", "--msk", "msk.json", "--id", "0110", "--bits", "1111"]);
    let ct = read(p, "ct.json");
    let decrypt = |name: &str| qibe(p, &["decrypt", "--mpk", "mpk.json", "--sk", "sk.json", "--ct", name]);

    let mut bad = ct.clone();
    bad["c1"][0] = Value::from(12289u64);
    std::fs::write(p.join("t1.json"), bad.to_string()).unwrap();
    let mut short = ct.clone();
    short["c1"].as_array_mut().unwrap().pop();
    std::fs::write(p.join("t2.json"), short.to_string()).unwrap();
    let mut fp = ct.clone();
    fp["params_fingerprint"] = Value::from("00");
    std::fs::write(p.join("t3.json"), fp.to_string()).unwrap();
    for f in ["t1.json", "t2.json", "t3.json"] {
        let out = decrypt(f);
        assert_eq!(code(&out), 2, "{f}");
        assert!(stderr(&out).contains("malformed ciphertext"), "{f}: {}", stderr(&out));
    }
}

#[test]
fn wrong_key_exits_4() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    keys(p, "8", "0001");
    ok(p, &["extract", "--mpk", "mpk.json", "--msk", "msk.json", "--id", "1110", "--out", "other.json"]);
    let mut failures = 0;
    for seed in 0..10 {
        let s = seed.to_string();
        ok(p, &["--seed", &s, "encrypt", "--mpk", "mpk.json", "--msk", "msk.json", "--id", "0001", "--bits", "1011"]);
        let out = qibe(p, &["decrypt", "--mpk", "mpk.json", "--sk", "other.json", "--ct", "ct.json"]);
        match code(&out) {
            4 => failures += 1,
            0 => {}
            c => panic!("exit {c}: {}", stderr(&out)),
        }
    }
    assert!(failures >= 8, "{failures}");
}

fn resources(p: &Path, args: &[&str]) -> Value {
    serde_json::from_str(&ok(p, &[&["resources"][..], args].concat())).unwrap()
}

#[test]
fn resource_reports() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let enc = resources(p, &["--n", "4", "--q", "101", "--alg", "encrypt"]);
    assert_eq!(enc, serde_json::json!({"h": 536, "s": 268, "t": 1876, "cnot": 2066, "x": 0, "qubits": 128}));
    for alg in ["encrypt", "decrypt"] {
        // the floored encrypt CNOT formula is only linear over even n
        for (mode, n) in [("formula", "2"), ("counted", "1")] {
            let double = (2 * n.parse::<u32>().unwrap()).to_string();
            let one = resources(p, &["--n", n, "--q", "101", "--alg", alg, "--mode", mode]);
            let two = resources(p, &["--n", &double, "--q", "101", "--alg", alg, "--mode", mode]);
            for (k, v) in one.as_object().unwrap() {
                assert_eq!(two[k].as_u64(), Some(2 * v.as_u64().unwrap()), "{alg} {mode} {k}");
            }
        }
    }
    resources(p, &["--n", "2", "--q", "101", "--alg", "decrypt", "--mode", "counted", "--y", "5,9", "--export", "c.json"]);
    let circuit = read(p, "c.json");
    assert!(circuit["gates"].as_array().unwrap().len() > 100);
    let out = qibe(p, &["resources", "--n", "2", "--q", "101", "--alg", "decrypt", "--mode", "counted", "--y", "5,101"]);
    assert_eq!(code(&out), 2);
}

struct Receiver {
    child: Child,
    addr: String,
    stdout: BufReader<std::process::ChildStdout>,
}

fn listen(p: &Path, sk: &str) -> Receiver {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qibe"))
        .current_dir(p)
        .args(["handshake", "--listen", "0", "--mpk", "mpk.json", "--sk", sk])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut stdout = BufReader::new(child.stdout.take().unwrap());
    let mut line = String::new();
    stdout.read_line(&mut line).unwrap();
    let addr = line.trim().strip_prefix("listening on ").expect("listening line").to_string();
    Receiver { child, addr, stdout }
}

impl Receiver {
    fn finish(mut self) -> (i32, String) {
        let mut rest = String::new();
        std::io::Read::read_to_string(&mut self.stdout, &mut rest).unwrap();
        (self.child.wait().unwrap().code().unwrap(), rest)
    }
}

fn fingerprint(s: &str) -> &str {
    s.trim().rsplit(' ').next().unwrap()
}

#[test]
fn handshake_between_processes() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    keys(p, "9", "1010");
    for seed in ["1", "2", "3"] {
        let rx = listen(p, "sk.json");
        let sender = ok(p, &["--seed", seed, "handshake", "--connect", &rx.addr, "--mpk", "mpk.json"]);
        let (c, receiver) = rx.finish();
        assert_eq!(c, 0);
        assert!(sender.starts_with("sender: session key fingerprint"));
        assert_eq!(fingerprint(&sender), fingerprint(&receiver));
    }
}

#[test]
fn handshake_error_paths() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    keys(p, "10", "0011");
    let other = TempDir::new().unwrap();
    ok(other.path(), &["--seed", "11", "keygen"]);
    let other_mpk: PathBuf = other.path().join("mpk.json");

    // a truncated frame: the length prefix promises more than arrives
    let rx = listen(p, "sk.json");
    let mut s = TcpStream::connect(&rx.addr).unwrap();
    s.write_all(&[0, 0, 0, 9, 1, b'{']).unwrap();
    drop(s);
    assert_eq!(rx.finish().0, 5);

    // an unknown frame type
    let rx = listen(p, "sk.json");
    let mut s = TcpStream::connect(&rx.addr).unwrap();
    s.write_all(&[0, 0, 0, 2, 9, b'{', b'}']).unwrap();
    drop(s);
    assert_eq!(rx.finish().0, 5);

    // the sender holds a different master public key
    let rx = listen(p, "sk.json");
    let out = qibe(p, &["handshake", "--connect", &rx.addr, "--mpk", other_mpk.to_str().unwrap()]);
    assert_eq!(code(&out), 6, "{}", stderr(&out));
    assert!(stderr(&out).contains("handshake failed"));
    let _ = rx.finish();

    let out = qibe(p, &["handshake", "--listen", "0", "--mpk", "mpk.json"]);
    assert_eq!(code(&out), 2);
}
