//! `esf`: exact elementary symmetric functions of 1, 1/3, ..., 1/(2n−1) and
//! their non-integrality certificates.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use esf_core::esf::{esf_single, OddProgression};
use esf_core::primes::{CacheStatus, SieveTable, DEFAULT_MAX_SIEVE_LIMIT};
use esf_core::verifier::{check_certificate, DEFAULT_EXACT_CAP, DEFAULT_SIEVE_LIMIT, EXACT_CAP_CEILING};
use esf_core::{Certificate, Error, Execution, SweepReport, Verifier, VerifierConfig};

const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNCERTIFIABLE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "esf", version, about = "Exact S_k(n) and non-integrality certificates")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Sieve bound; defaults to 30000 or whatever the command needs, if larger
    #[arg(long, global = true)]
    sieve_limit: Option<u64>,
    /// Read the sieve from this file, or write it there after building
    #[arg(long, global = true)]
    sieve_cache: Option<PathBuf>,
    /// Largest n evaluated exactly as a fallback (at most 5000)
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: u64,
    /// Worker threads for the parallel core
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run sweeps on one thread without the parallel pool
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print S_k(n) as num/den
    Eval { n: u64, k: u64 },
    /// Print a checked certificate for S_k(n) as JSON
    Certify { n: u64, k: u64 },
    /// Re-check a certificate JSON file ("-" reads stdin)
    Check { file: PathBuf },
    /// Run a sweep and write its report
    Sweep {
        #[command(subcommand)]
        kind: SweepCommand,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Exact evaluation of every S_k(n) with 2 <= n <= n-max
    Exact {
        #[arg(long)]
        n_max: u64,
    },
    /// Prime-window certificates over k and n ranges, e.g. --k 2..11 --n 400..22999
    Window {
        #[arg(long, value_parser = parse_range)]
        k: (u64, u64),
        #[arg(long, value_parser = parse_range)]
        n: (u64, u64),
    },
    /// Every pair 1 <= k <= n with 2 <= n <= n-max
    Theorem {
        #[arg(long)]
        n_max: u64,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Report file; "-" writes it to stdout. Without this only the summary is printed
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(lo)?, num(hi)?))
}

struct Failed(u8, String);

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::CacheFormat(_) => EXIT_IO,
            Error::Uncertifiable { .. } => EXIT_UNCERTIFIABLE,
            _ => EXIT_USAGE,
        };
        Failed(code, e.to_string())
    }
}

fn io_failed(what: &str, e: io::Error) -> Failed {
    Failed(EXIT_IO, format!("{what}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failed(code, msg)) => {
            eprintln!("esf: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failed> {
    let common = &cli.common;
    if common.exact_cap > EXACT_CAP_CEILING {
        return Err(Error::ExactCapTooLarge { requested: common.exact_cap, ceiling: EXACT_CAP_CEILING }.into());
    }
    if let Some(threads) = common.threads {
        set_threads(threads)?;
    }
    match &cli.command {
        Command::Eval { n, k } => {
            if *n > common.exact_cap {
                return Err(Error::ExactCapExceeded { n: *n, cap: common.exact_cap }.into());
            }
            let prog = OddProgression::odd(*n)?;
            println!("{}", esf_single(&prog, *k)?);
            Ok(0)
        }
        Command::Certify { n, k } => {
            let verifier = verifier(common, *n)?;
            let c = verifier.certify(*n, *k)?;
            println!("{}", c.to_json());
            Ok(report_check(&c))
        }
        Command::Check { file } => {
            let text = if file.as_os_str() == "-" {
                io::read_to_string(io::stdin()).map_err(|e| io_failed("stdin", e))?
            } else {
                fs::read_to_string(file).map_err(|e| io_failed(&file.display().to_string(), e))?
            };
            let c: Certificate = serde_json::from_str(&text).map_err(|e| Failed(EXIT_USAGE, format!("certificate: {e}")))?;
            Ok(report_check(&c))
        }
        Command::Sweep { kind, out } => {
            let report = match kind {
                SweepCommand::Exact { n_max } => verifier(common, 2)?.sweep_exact(*n_max)?,
                SweepCommand::Window { k, n } => verifier(common, 2 * n.1 / k.0.max(1))?.sweep_window(*k, *n)?,
                SweepCommand::Theorem { n_max } => verifier(common, *n_max)?.verify_theorem(*n_max)?,
            };
            write_report(&report, out)?;
            println!("{}", report.summary_line());
            Ok(if report.is_success() { 0 } else { EXIT_FAILURES })
        }
    }
}

fn report_check(c: &Certificate) -> u8 {
    match check_certificate(c) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("esf: certificate rejected: {e}");
            EXIT_FAILURES
        }
    }
}

fn verifier(common: &Common, needed: u64) -> Result<Verifier, Failed> {
    let limit = common.sieve_limit.unwrap_or(DEFAULT_SIEVE_LIMIT.max(needed));
    let config = VerifierConfig {
        exact_cap: common.exact_cap,
        sieve_limit: limit,
        execution: if common.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let sieve = match &common.sieve_cache {
        Some(path) => {
            let (table, status) = SieveTable::load_or_build(path, limit, DEFAULT_MAX_SIEVE_LIMIT)?;
            if status == CacheStatus::Rebuilt {
                eprintln!("esf: wrote sieve cache {}", path.display());
            }
            table
        }
        None => SieveTable::build(limit, DEFAULT_MAX_SIEVE_LIMIT)?,
    };
    Ok(Verifier::with_sieve(config, sieve)?)
}

fn write_report(report: &SweepReport, out: &OutputArgs) -> Result<(), Failed> {
    let Some(path) = &out.output else { return Ok(()) };
    let mut body = match out.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    if path.as_os_str() == "-" {
        io::stdout().write_all(body.as_bytes()).map_err(|e| io_failed("stdout", e))
    } else {
        fs::write(path, body).map_err(|e| io_failed(&path.display().to_string(), e))
    }
}

#[cfg(feature = "parallel")]
fn set_threads(threads: usize) -> Result<(), Failed> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failed(EXIT_USAGE, e.to_string()))
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) -> Result<(), Failed> {
    eprintln!("esf: built without the parallel feature; --threads ignored");
    Ok(())
}
