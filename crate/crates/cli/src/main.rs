use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quadprinc::cert::{verify_certificate, Certificate};
use quadprinc::report::{
    self, parse_d_list, render_human, run_check, summary_json, CheckId, Options, Outcome,
    SummaryRow,
};
use quadprinc::Error;

#[derive(Parser)]
#[command(
    name = "quadprinc",
    version,
    about = "Idempotent pairs and principality in imaginary quadratic orders"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Coordinate bound for the idempotent-pair grid
    #[arg(long, global = true, default_value_t = 25)]
    coord_bound: u64,
    /// Norm bound for ideal enumeration (per-check default when omitted)
    #[arg(long, global = true)]
    norm_bound: Option<u64>,
    /// Largest odd prime scanned by the odd-primes check
    #[arg(long, global = true, default_value_t = 500)]
    pmax: u64,
    /// Coordinate box for the unit-normalize check
    #[arg(long = "box", global = true, default_value_t = 50)]
    box_bound: u64,
    /// Write JSON here instead of stdout (a directory for `sweep`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print canonical JSON (the default)
    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,
    /// Print a short human-readable summary
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads (defaults to the number of CPUs)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether Z[√-d] has the PRINC property
    Classify { d: u64 },
    /// Run one invariant suite
    Check {
        /// conductor, pair-equivalence (thm1.3), primary-chain (lem2.3),
        /// nonprincipal-ideal (prop3.1), unit-normalize (lem4.1),
        /// odd-primes (thm4.2), invertible-principal (prop4.5)
        id: String,
        d: u64,
    },
    /// Classify every d in a comma-separated list
    Sweep { ds: Option<String> },
    /// Replay the witnesses of a certificate file
    Verify { file: PathBuf },
}

enum Failure {
    Usage(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) | Error::SearchExhausted(_) => {
                Failure::Inconsistent(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Failure::from(e.error))?;
    Ok(())
}

struct Ctx {
    human: bool,
    out: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, cert: &Certificate) -> Result<(), Failure> {
        let json = cert.to_canonical_json();
        if let Some(path) = &self.out {
            write_atomic(path, &json)?;
        }
        if self.human {
            print!("{}", render_human(cert));
        } else if self.out.is_none() {
            print!("{json}");
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let opts = Options {
        coord_bound: cli.coord_bound,
        norm_bound: cli.norm_bound,
        p_max: cli.pmax,
        box_bound: cli.box_bound,
    };
    let ctx = Ctx {
        human: cli.human,
        out: cli.out.clone(),
    };
    match cli.cmd {
        Cmd::Classify { d } => {
            let cert = report::classify_certificate(d, opts.search_bounds())?;
            ctx.emit(&cert)?;
            Ok(0)
        }
        Cmd::Check { id, d } => {
            let id: CheckId = id.parse()?;
            let r = run_check(id, d, &opts)?;
            ctx.emit(&r.certificate)?;
            match r.outcome {
                Outcome::Completed => Ok(0),
                Outcome::Counterexample(msg) => {
                    eprintln!("counterexample: {msg}");
                    Ok(1)
                }
            }
        }
        Cmd::Sweep { ds } => {
            let ds = parse_d_list(ds.as_deref().unwrap_or(""))?;
            let certs = report::sweep_certificates(&ds, opts.search_bounds())?;
            let rows = certs
                .iter()
                .map(SummaryRow::from_certificate)
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(dir) = &ctx.out {
                fs::create_dir_all(dir)?;
                for c in &certs {
                    write_atomic(&dir.join(format!("d{}.json", c.d)), &c.to_canonical_json())?;
                }
                write_atomic(&dir.join("summary.json"), &summary_json(&rows))?;
            }
            if ctx.human {
                for r in &rows {
                    let w = r
                        .witness
                        .as_ref()
                        .map(|w| w.to_string())
                        .unwrap_or_else(|| "-".into());
                    println!("{:>5}  {:<17} {}", r.d, format!("{:?}", r.status), w);
                }
            } else if ctx.out.is_none() {
                let v = serde_json::json!({ "certificates": certs, "summary": rows });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            }
            Ok(0)
        }
        Cmd::Verify { file } => {
            let text = fs::read_to_string(&file)?;
            let cert = Certificate::from_json(&text)?;
            if !cert.self_check {
                return Err(Failure::Inconsistent(
                    "certificate was emitted without self_check".into(),
                ));
            }
            verify_certificate(&cert).map_err(|e| Failure::Inconsistent(e.to_string()))?;
            if cert.to_canonical_json() != text {
                return Err(Failure::Inconsistent(
                    "file is not in canonical form".into(),
                ));
            }
            println!("ok: {} witnesses replayed", cert.witnesses.len());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(3)
        }
    }
}
