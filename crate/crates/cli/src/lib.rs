//! `trs-mceliece`: key generation, encryption, decryption, key recovery
//! and benchmarks on the text file formats of `trs-core`.
//!
//! Exit codes: 0 on success, 1 on a domain failure (invalid parameters,
//! failed decryption or attack, keys that do not match), 2 on I/O, format
//! or usage errors. Data goes to files; everything else goes to stderr.

mod bench;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use log::{info, LevelFilter};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use trs_core::attack::recover_key;
use trs_core::cryptosystem::{
    encrypt, keygen, parse_elements, write_elements, Ciphertext, CryptoError, Decryptor, PrivateKey, PublicKey,
    WireError,
};
use trs_core::field::FieldTower;
use trs_core::trs::TrsParams;

pub use bench::{run_bench, BenchRecord, Preset};

#[derive(Parser, Debug)]
#[command(name = "trs-mceliece", version, about = "Twisted Reed–Solomon McEliece and its key-recovery attack")]
struct Cli {
    /// More diagnostics on stderr (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a parameter set and print the derived r, t, h.
    Params { q0: u128, n: usize, k: usize, l: usize },
    Keygen {
        #[arg(long)]
        q0: u128,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out_pub: PathBuf,
        #[arg(long)]
        out_priv: PathBuf,
    },
    /// Encrypt a message file (one line of k hex elements).
    Encrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    Decrypt {
        #[arg(long = "priv")]
        private: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover an equivalent private key from a public key.
    Attack {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long)]
        out_priv: PathBuf,
        /// Also list every accepted shift, under both containment tests.
        #[arg(long)]
        audit: bool,
    },
    /// Check that a private key generates the given public key.
    Verify {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "priv")]
        private: PathBuf,
    },
    /// Keygen + attack over seeded trials, one JSON line per trial.
    Bench {
        #[arg(long, value_enum)]
        preset: Preset,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: WireError },
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io { .. } | CliError::Format { .. } => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, WireError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Format {
        path: path.into(),
        source,
    })
}

fn format_err(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Format {
        path: path.into(),
        source: WireError::Invalid(msg.into()),
    }
}

fn tower(params: &TrsParams) -> Result<FieldTower, CliError> {
    params.tower().map_err(|e| CliError::Domain(e.to_string()))
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `0-56,58-87` style listing of a sorted index set.
fn ranges(v: &[usize]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[j] + 1 {
            j += 1;
        }
        out.push(if i == j { v[i].to_string() } else { format!("{}-{}", v[i], v[j]) });
        i = j + 1;
    }
    out.join(",")
}

/// A message file: exactly one line of `k` elements, optionally newline
/// terminated.
fn parse_message(text: &str, params: &TrsParams) -> Result<Vec<trs_core::field::FieldElement>, WireError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.contains('\n') {
        return Err(WireError::TrailingData(2));
    }
    parse_elements(body, params.k, params.base_degree << params.l, 1)
}

fn execute(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Params { q0, n, k, l } => match TrsParams::validate(q0, n, k, l) {
            Ok(p) => {
                println!("r={} t={} h={} valid", p.r.unwrap_or(0), join(&p.t), join(&p.h));
                eprintln!("I={}", ranges(&p.info));
                Ok(())
            }
            Err(violations) => {
                for v in &violations {
                    eprintln!("{v}");
                }
                Err(CliError::Domain(format!("{} constraint(s) violated", violations.len())))
            }
        },
        Command::Keygen {
            q0,
            n,
            k,
            l,
            seed,
            out_pub,
            out_priv,
        } => {
            let params = TrsParams::validate(q0, n, k, l).map_err(|v| {
                CliError::Domain(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))
            })?;
            let t = tower(&params)?;
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let (pk, sk) = keygen(&t, params, &mut rng).map_err(|e| CliError::Domain(e.to_string()))?;
            info!("public key: {} bytes", pk.size_bytes());
            write(&out_pub, &pk.to_text())?;
            write(&out_priv, &sk.to_text())
        }
        Command::Encrypt {
            public,
            msg,
            seed,
            out,
        } => {
            let pk = parse(&public, PublicKey::from_text)?;
            let m = parse(&msg, |s| parse_message(s, &pk.params))?;
            let t = tower(&pk.params)?;
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let ct = encrypt(&t, &m, &pk, &mut rng).map_err(|e| format_err(&msg, e.to_string()))?;
            write(&out, &ct.to_text(&pk.params))
        }
        Command::Decrypt { private, ct, out } => {
            let sk = parse(&private, PrivateKey::from_text)?;
            let (params, c) = parse(&ct, Ciphertext::from_text)?;
            if &params != sk.params() {
                return Err(format_err(&ct, "parameters differ from the private key's"));
            }
            let t = tower(&params)?;
            let dec = Decryptor::new(&t, &sk).map_err(|e| CliError::Domain(e.to_string()))?;
            let m = dec.decrypt(&t, &c).map_err(|e| match e {
                CryptoError::DecryptionFailure(_) => CliError::Domain(e.to_string()),
                e => format_err(&ct, e.to_string()),
            })?;
            write(&out, &(write_elements(&m, t.hex_width()) + "\n"))
        }
        Command::Attack {
            public,
            out_priv,
            audit,
        } => {
            let pk = parse(&public, PublicKey::from_text)?;
            let t = tower(&pk.params)?;
            let report = recover_key(&t, &pk, audit).map_err(|e| CliError::Domain(e.to_string()))?;
            let tm = &report.timings;
            eprintln!(
                "recovered in {:.3} s (subfield subcode {:.3}, square {:.3}, SS {:.3}, shift {:.3}, eta {:.3}, S {:.3})",
                tm.total().as_secs_f64(),
                tm.subfield_subcode.as_secs_f64(),
                tm.square.as_secs_f64(),
                tm.sidelnikov_shestakov.as_secs_f64(),
                tm.shift_search.as_secs_f64(),
                tm.eta.as_secs_f64(),
                tm.scrambler.as_secs_f64(),
            );
            if let Some(a) = &report.audit {
                let w = t.hex_width();
                eprintln!("accepted shifts (subcode test): {}", write_elements(&a.subcode, w));
                eprintln!("accepted shifts (public test):  {}", write_elements(&a.public, w));
                eprintln!("chosen shift: {:0w$x}", report.key.b.bits());
            }
            let sk = report
                .key
                .private_key(&t, &pk.params)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            write(&out_priv, &sk.to_text())
        }
        Command::Verify { public, private } => {
            let pk = parse(&public, PublicKey::from_text)?;
            let sk = parse(&private, PrivateKey::from_text)?;
            if &pk.params != sk.params() {
                return Err(CliError::Domain("parameters differ".into()));
            }
            let t = tower(&pk.params)?;
            if sk.public(&t) != pk {
                return Err(CliError::Domain("S G differs from the public generator".into()));
            }
            eprintln!("ok: S G equals the public generator");
            Ok(())
        }
        Command::Bench {
            preset,
            trials,
            seed,
            out,
        } => {
            let mut file = fs::File::create(&out).map_err(|source| CliError::Io {
                path: out.clone(),
                source,
            })?;
            let failures = run_bench(preset, trials, seed, &mut file).map_err(|source| CliError::Io {
                path: out.clone(),
                source,
            })?;
            eprintln!("{}/{trials} trials succeeded", trials - failures);
            if failures > 0 {
                return Err(CliError::Domain(format!("{failures} trial(s) failed")));
            }
            Ok(())
        }
    }
}

/// Parses `argv` (program name first) and runs the subcommand; returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        _ => LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).try_init();
    match execute(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}
