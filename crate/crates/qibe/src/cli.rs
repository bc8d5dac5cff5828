use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::net::{TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_core::{OsRng, RngCore};
use serde::de::DeserializeOwned;
use serde::Serialize;

use qibe_core::lattice::SchemeParams;
use qibe_core::revcirc::{build_decrypt, build_encrypt, count_resources, formula_resources, Algorithm, Circuit};
use qibe_core::rng::{seeded, SchemeRng};
use qibe_core::scheme::{
    hash_id, qdecrypt, qencrypt, qextract, qkeygen, verify_key, Identity, KeyBackend, MasterPublicKey,
    Preset,
};
use qibe_core::sim::SparseState;

use crate::error::{CliError, Exit};
use crate::formats::{
    plaintext_from_bits, CiphertextJson, CircuitJson, IdentityKeyJson, MpkJson, MskJson, PlaintextJson,
    ResourceJson,
};
use crate::handshake::{run_receiver, run_sender, Outcome};

const SOCKET_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Parser)]
#[command(name = "qibe", version, about = "Quantum identity-based encryption over LWE, simulated")]
pub struct Cli {
    /// Seed for every random choice (default: operating-system entropy).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a master key pair.
    Keygen(KeygenArgs),
    /// Extract the secret key of an identity.
    Extract(ExtractArgs),
    /// Encrypt a plaintext state to an identity.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext with an identity key.
    Decrypt(DecryptArgs),
    /// Clifford+T resource report for the encryption or decryption circuit.
    Resources(ResourcesArgs),
    /// Loopback session-key handshake.
    Handshake(HandshakeArgs),
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    /// Base parameter set; explicit --n/--m/--q/--sigma override it.
    #[arg(long, env = "QIBE_PRESET", default_value = "toy")]
    pub preset: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// oracle_key or basis (default: the preset's).
    #[arg(long)]
    pub backend: Option<String>,
    #[arg(long, default_value = "mpk.json")]
    pub mpk_out: PathBuf,
    #[arg(long, default_value = "msk.json")]
    pub msk_out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub mpk: PathBuf,
    #[arg(long)]
    pub msk: PathBuf,
    /// An n-bit 0/1 string is used as is; any other string is hashed to n bits.
    #[arg(long)]
    pub id: String,
    #[arg(long, default_value = "sk.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[arg(long)]
    pub mpk: PathBuf,
    /// Master secret key; the oracle_key backend's identity hash needs it.
    #[arg(long)]
    pub msk: Option<PathBuf>,
    #[arg(long)]
    pub id: String,
    /// Plaintext state file ({n, branches}).
    #[arg(long, conflicts_with = "bits", required_unless_present = "bits")]
    pub plaintext: Option<PathBuf>,
    /// Basis plaintext, MSB-first (leftmost character is qubit n-1).
    #[arg(long)]
    pub bits: Option<String>,
    #[arg(long, default_value = "ct.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    #[arg(long)]
    pub mpk: PathBuf,
    #[arg(long)]
    pub sk: PathBuf,
    #[arg(long)]
    pub ct: PathBuf,
    #[arg(long, default_value = "plaintext.json")]
    pub out: PathBuf,
    /// Plaintext file to report the fidelity against.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Formula,
    Counted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Alg {
    Encrypt,
    Decrypt,
}

#[derive(Debug, Args)]
pub struct ResourcesArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum)]
    pub alg: Alg,
    #[arg(long, value_enum, default_value = "formula")]
    pub mode: Mode,
    /// Encryption masks x_i for counted mode: one value or n comma-separated values.
    #[arg(long, value_delimiter = ',')]
    pub x: Vec<u64>,
    /// Decryption values y_i for counted mode, as for --x.
    #[arg(long, value_delimiter = ',')]
    pub y: Vec<u64>,
    /// Write the counted circuit as JSON.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HandshakeArgs {
    /// Receiver: port (or host:port) to accept one connection on.
    #[arg(long, conflicts_with = "connect", required_unless_present = "connect")]
    pub listen: Option<String>,
    /// Sender: address of a listening receiver.
    #[arg(long)]
    pub connect: Option<String>,
    #[arg(long)]
    pub mpk: PathBuf,
    /// Receiver's identity key (required with --listen).
    #[arg(long)]
    pub sk: Option<PathBuf>,
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {what} {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

fn load_mpk(path: &Path) -> Result<MasterPublicKey, CliError> {
    Ok(MasterPublicKey::try_from(read_json::<MpkJson>(path, "mpk")?)?)
}

fn rng(seed: Option<u64>) -> SchemeRng {
    seeded(seed.unwrap_or_else(|| OsRng.next_u64()))
}

/// An `n`-character 0/1 string is taken literally, anything else hashed.
pub fn parse_identity(s: &str, n: usize) -> Identity {
    match Identity::parse_bits(s) {
        Some(id) if id.len() == n => id,
        _ => Identity::from_label(s.as_bytes(), n),
    }
}

fn keygen(seed: Option<u64>, a: KeygenArgs) -> Result<(), CliError> {
    let preset = Preset::parse(&a.preset)
        .ok_or_else(|| CliError::input(format!("invalid parameter: unknown preset `{}`", a.preset)))?;
    let base = preset.params();
    let params = SchemeParams::new(
        a.n.unwrap_or(base.n()),
        a.m.unwrap_or(base.m()),
        a.q.unwrap_or(base.q()),
        a.sigma.unwrap_or(base.sigma()),
    )
    .map_err(|e| CliError::input(e.to_string()))?;
    let backend = match &a.backend {
        None => preset.backend(),
        Some(b) => KeyBackend::parse(b)
            .ok_or_else(|| CliError::input(format!("invalid parameter: unknown backend `{b}`")))?,
    };
    let (mpk, msk) = qkeygen(&params, backend, &mut rng(seed))?;
    write_json(&a.mpk_out, &MpkJson::from(&mpk))?;
    write_json(&a.msk_out, &MskJson::from(&msk))?;
    println!(
        "n={} m={} q={} sigma={} L={} backend={}",
        params.n(),
        params.m(),
        params.q(),
        params.sigma(),
        params.bit_len(),
        backend.name()
    );
    Ok(())
}

fn extract(a: ExtractArgs) -> Result<(), CliError> {
    let mpk = load_mpk(&a.mpk)?;
    let msk = read_json::<MskJson>(&a.msk, "msk")?.into_key(&mpk)?;
    let id = parse_identity(&a.id, mpk.params.n());
    let sk = qextract(&mpk, &msk, &id)?;
    let u = hash_id(&mpk, Some(&msk), &id)?;
    if !verify_key(&mpk, &u, &sk)? {
        return Err(CliError::new(Exit::Contract, "key contract violated: A R != H(id) mod q"));
    }
    write_json(&a.out, &IdentityKeyJson::from(&sk))?;
    println!("id={} key verified", id.to_bit_string());
    Ok(())
}

fn encrypt(seed: Option<u64>, a: EncryptArgs) -> Result<(), CliError> {
    let mpk = load_mpk(&a.mpk)?;
    let msk = match &a.msk {
        Some(p) => Some(read_json::<MskJson>(p, "msk")?.into_key(&mpk)?),
        None => None,
    };
    let plaintext = match (&a.plaintext, &a.bits) {
        (Some(path), _) => SparseState::try_from(&read_json::<PlaintextJson>(path, "plaintext")?)?,
        (None, Some(bits)) => plaintext_from_bits(bits)?,
        (None, None) => return Err(CliError::input("one of --plaintext or --bits is required")),
    };
    let n = mpk.params.n();
    if plaintext.width() != n {
        return Err(CliError::input(format!("plaintext has {} qubits, expected n = {n}", plaintext.width())));
    }
    let id = parse_identity(&a.id, n);
    let u = hash_id(&mpk, msk.as_ref(), &id)?;
    let ct = qencrypt(&mpk, &u, &plaintext, &mut rng(seed))?;
    write_json(&a.out, &CiphertextJson::new(&ct, &mpk))?;
    println!("encrypted {} branch(es) to id={}", ct.psi.len(), id.to_bit_string());
    Ok(())
}

fn decrypt(a: DecryptArgs) -> Result<(), CliError> {
    let mpk = load_mpk(&a.mpk)?;
    let sk = read_json::<IdentityKeyJson>(&a.sk, "identity key")?.into_key(&mpk.params)?;
    let ct = read_json::<CiphertextJson>(&a.ct, "ciphertext")?.into_ciphertext(&mpk)?;
    let state = qdecrypt(&mpk, &sk, &ct)?;
    write_json(&a.out, &PlaintextJson::from(&state))?;
    println!("decrypted {} branch(es), all work registers |0>", state.len());
    for (bits, amp) in state.branches() {
        println!("  {} {:+.12} {:+.12}i", bits.to_string(state.width()), amp.re, amp.im);
    }
    if let Some(path) = &a.expect {
        let expected = SparseState::try_from(&read_json::<PlaintextJson>(path, "plaintext")?)?;
        let f = expected.fidelity(&state).map_err(|e| CliError::input(e.to_string()))?;
        println!("fidelity {f}");
    }
    Ok(())
}

fn constants(values: &[u64], n: u64, q: u64, flag: &str) -> Result<Vec<u64>, CliError> {
    let out = match values.len() {
        0 => vec![0; n as usize],
        1 => vec![values[0]; n as usize],
        k if k as u64 == n => values.to_vec(),
        k => return Err(CliError::input(format!("--{flag} needs 1 or {n} values (got {k})"))),
    };
    if let Some(v) = out.iter().find(|&&v| v >= q) {
        return Err(CliError::input(format!("--{flag} value {v} is not below q = {q}")));
    }
    Ok(out)
}

fn resources(a: ResourcesArgs) -> Result<(), CliError> {
    if a.n == 0 || a.q < 3 {
        return Err(CliError::input("invalid parameter: need n >= 1 and q >= 3"));
    }
    let report = match a.mode {
        Mode::Formula => {
            let alg = match a.alg {
                Alg::Encrypt => Algorithm::Encrypt,
                Alg::Decrypt => Algorithm::Decrypt,
            };
            formula_resources(a.n, a.q, alg)
        }
        Mode::Counted => {
            let circuit: Circuit = match a.alg {
                Alg::Encrypt => build_encrypt(&constants(&a.x, a.n, a.q, "x")?, a.q),
                Alg::Decrypt => build_decrypt(&constants(&a.y, a.n, a.q, "y")?, a.q),
            }
            .map_err(|e| CliError::input(e.to_string()))?;
            if let Some(path) = &a.export {
                write_json(path, &CircuitJson::from(&circuit))?;
            }
            count_resources(&circuit, true)
        }
    };
    println!("{}", serde_json::to_string_pretty(&ResourceJson::from(&report)).expect("serializable"));
    Ok(())
}

fn print_outcome(role: &str, o: &Outcome) {
    println!("{role}: session key fingerprint {}", o.fingerprint);
}

fn handshake(seed: Option<u64>, a: HandshakeArgs) -> Result<(), CliError> {
    let mpk = load_mpk(&a.mpk)?;
    if let Some(listen) = &a.listen {
        let sk_path = a.sk.as_ref().ok_or_else(|| CliError::input("--listen needs --sk"))?;
        let sk = read_json::<IdentityKeyJson>(sk_path, "identity key")?.into_key(&mpk.params)?;
        let addr = if listen.contains(':') { listen.clone() } else { format!("127.0.0.1:{listen}") };
        let listener =
            TcpListener::bind(&addr).map_err(|e| CliError::input(format!("cannot listen on {addr}: {e}")))?;
        let local = listener.local_addr().map_err(|e| CliError::input(e.to_string()))?;
        println!("listening on {local}");
        std::io::stdout().flush().ok();
        let (mut stream, _) = listener.accept().map_err(|e| CliError::new(Exit::Framing, e.to_string()))?;
        stream.set_read_timeout(Some(SOCKET_TIMEOUT)).ok();
        let outcome = run_receiver(&mut stream, &mpk, &sk)?;
        print_outcome("receiver", &outcome);
    } else if let Some(addr) = &a.connect {
        let mut stream = TcpStream::connect(addr)
            .map_err(|e| CliError::new(Exit::Handshake, format!("handshake failed: cannot connect to {addr}: {e}")))?;
        stream.set_read_timeout(Some(SOCKET_TIMEOUT)).ok();
        let outcome = run_sender(&mut stream, &mpk, &mut rng(seed))?;
        print_outcome("sender", &outcome);
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Keygen(a) => keygen(seed, a),
        Command::Extract(a) => extract(a),
        Command::Encrypt(a) => encrypt(seed, a),
        Command::Decrypt(a) => decrypt(a),
        Command::Resources(a) => resources(a),
        Command::Handshake(a) => handshake(seed, a),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => Exit::Ok.code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit.code()
        }
    }
}
