use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use marked_tangent::input::IdealSpec;
use marked_tangent::reproduce::{self, Check, Suite};
use marked_tangent::ring::{Field, PrimeField, Rationals};
use marked_tangent::tangent::{tangent_dimension, RankOptions, TangentField, TangentReport};
use marked_tangent::Error;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

mod scan;

#[derive(Parser)]
#[command(name = "mtan", version, about = "Tangent spaces of Hilbert schemes of points via marked bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Clone, Debug)]
pub struct RankArgs {
    /// Seed for random primes and samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma separated primes for the modular rank, instead of random ones.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

impl RankArgs {
    fn options(&self) -> RankOptions {
        RankOptions { seed: self.seed, primes: self.primes.clone(), ..RankOptions::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tangent space dimension of the ideal in an ideal spec file.
    Tangent {
        spec: PathBuf,
        /// Override the characteristic of the spec.
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[command(flatten)]
        rank: RankArgs,
        /// Also check the marked basis against Buchberger.
        #[arg(long)]
        oracle_check: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recompute reference values: all, thmA, table, char2, smoothing,
    /// immersion, len78 or monomial-parity.
    Reproduce {
        which: String,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Parity statistics over random ideals with prescribed order ideals.
    Scan {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Gröbner basis data of the ideal in a spec file.
    Oracle {
        spec: PathBuf,
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
}

pub enum Failure {
    Mismatch(Value),
    Input(String),
    Precondition(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::InvalidPrime(_)
            | Error::TooManyVariables(_)
            | Error::InvalidOrderIdeal(_)
            | Error::UnassignedParameter(_)
            | Error::AmbientMismatch(_) => Failure::Input(msg),
            Error::ModularDisagreement(_) | Error::NonTermination(_) | Error::SingularMatrix => Failure::Internal(msg),
            _ => Failure::Precondition(msg),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let h = Sha256::digest(bytes);
    h.iter().map(|b| format!("{b:02x}")).collect()
}

fn read_spec(path: &PathBuf) -> Result<(IdealSpec, String), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((IdealSpec::from_json(&text)?, digest(text.as_bytes())))
}

fn tangent_in<K: TangentField>(
    k: &K,
    spec: &IdealSpec,
    opts: &RankOptions,
    oracle: bool,
    results: &mut Map<String, Value>,
    timings: &mut Map<String, Value>,
) -> Result<TangentReport, Failure> {
    let start = Instant::now();
    let f = spec.marked_basis(k)?;
    timings.insert("marked_basis_ms".into(), json!(start.elapsed().as_millis()));
    let start = Instant::now();
    let rep = tangent_dimension(&f, opts)?;
    timings.insert("rank_ms".into(), json!(start.elapsed().as_millis()));
    if oracle {
        let start = Instant::now();
        let cmp = reproduce::oracle_compare(&f, &spec.polynomials(k)?)?;
        timings.insert("oracle_ms".into(), json!(start.elapsed().as_millis()));
        if !cmp.agree {
            return Err(Failure::Internal(format!("marked basis and oracle disagree: {cmp:?}")));
        }
        results.insert("oracle".into(), serde_json::to_value(cmp).unwrap());
    }
    Ok(rep)
}

fn report(command: Value, input_digest: &str, results: Value, timings: Option<Map<String, Value>>) -> Value {
    let mut r = json!({ "command": command, "input_digest": input_digest, "results": results });
    if let Some(t) = timings {
        r["timings"] = Value::Object(t);
    }
    r
}

fn cmd_tangent(
    path: &PathBuf,
    characteristic: Option<u64>,
    rank: &RankArgs,
    oracle: bool,
    format: Format,
) -> Result<String, Failure> {
    let (spec, dig) = read_spec(path)?;
    let p = characteristic.unwrap_or(spec.characteristic);
    let opts = rank.options();
    let mut results = Map::new();
    let mut timings = Map::new();
    let rep = if p == 0 {
        tangent_in(&Rationals, &spec, &opts, oracle, &mut results, &mut timings)?
    } else {
        let k = PrimeField::new(p)?;
        tangent_in(&k, &spec, &opts, oracle, &mut results, &mut timings)?
    };
    if format == Format::Csv {
        let parity = serde_json::to_value(rep.parity).unwrap();
        return Ok(format!("seed,d,dim,parity\n{},{},{},{}", rank.seed, rep.d, rep.dim, parity.as_str().unwrap()));
    }
    let mut base = serde_json::to_value(&rep).unwrap();
    base.as_object_mut().unwrap().extend(results);
    let command = json!({
        "name": "tangent",
        "spec": path.display().to_string(),
        "characteristic": p,
        "seed": rank.seed,
        "primes": rank.primes,
        "oracle_check": oracle,
    });
    Ok(report(command, &dig, base, rank.timings.then_some(timings)).to_string())
}

fn cmd_reproduce(which: &str, rank: &RankArgs) -> Result<String, Failure> {
    let suites = Suite::parse(which).ok_or_else(|| Failure::Input(format!("unknown reproduction `{which}`")))?;
    let opts = rank.options();
    let mut checks: Vec<Check> = Vec::new();
    let mut timings = Map::new();
    for s in suites {
        let start = Instant::now();
        checks.extend(reproduce::run(s, &opts)?);
        timings.insert(format!("{}_ms", s.name()), json!(start.elapsed().as_millis()));
    }
    let passed = checks.iter().filter(|c| c.ok).count();
    let results = json!({ "passed": passed, "failed": checks.len() - passed, "checks": checks });
    let command = json!({ "name": "reproduce", "which": which, "seed": rank.seed, "primes": rank.primes });
    let dig = digest(command.to_string().as_bytes());
    let out = report(command, &dig, results, rank.timings.then_some(timings));
    if passed != checks.len() {
        return Err(Failure::Mismatch(out));
    }
    Ok(out.to_string())
}

fn oracle_in<K: Field>(k: &K, spec: &IdealSpec) -> Result<Value, Failure> {
    let gens = spec.polynomials(k)?;
    let gb = marked_tangent::groebner::degrevlex_basis(&gens)?;
    let names = spec.vars()?;
    let lead: Vec<String> = gb.leading_monomials().iter().map(|m| m.display_with(names.names())).collect();
    let mut out = json!({
        "groebner_basis": gb.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "leading_monomials": lead,
        "colength": gb.colength().finite(),
    });
    if let Ok(n) = gb.standard_monomials() {
        out["standard_monomials"] = json!(n.iter().map(|m| m.display_with(names.names())).collect::<Vec<_>>());
    }
    Ok(out)
}

fn cmd_oracle(path: &PathBuf, characteristic: Option<u64>) -> Result<String, Failure> {
    let (spec, dig) = read_spec(path)?;
    let p = characteristic.unwrap_or(spec.characteristic);
    let results = if p == 0 { oracle_in(&Rationals, &spec)? } else { oracle_in(&PrimeField::new(p)?, &spec)? };
    let command = json!({ "name": "oracle", "spec": path.display().to_string(), "characteristic": p });
    Ok(report(command, &dig, results, None).to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Tangent { spec, characteristic, rank, oracle_check, format } => {
            cmd_tangent(spec, *characteristic, rank, *oracle_check, *format)
        }
        Command::Reproduce { which, rank } => cmd_reproduce(which, rank),
        Command::Scan { file, count, seed, characteristic, format, jobs } => {
            scan::run(file, *count, *seed, *characteristic, *format, *jobs)
        }
        Command::Oracle { spec, characteristic } => cmd_oracle(spec, *characteristic),
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(report)) => {
            println!("{report}");
            if let Some(checks) = report["results"]["checks"].as_array() {
                for c in checks.iter().filter(|c| c["ok"] == json!(false)) {
                    eprintln!("mismatch [{}] {}: expected {}, got {}", c["suite"], c["name"], c["expected"], c["actual"]);
                }
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(4)
        }
    }
}
