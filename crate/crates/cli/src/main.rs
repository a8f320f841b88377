//! `chi`: evaluate factorial series and certify their irrationality.
//!
//! # Exit codes
//!
//! - **0**: success, or the verdict/verification/exclusion was affirmed
//! - **1**: usage error, unreadable input, or malformed spec/certificate
//! - **2**: verification failed, exclusion or screening inconclusive, or
//!   rounding could not be decided
//! - **3**: the input series is rational; the exact value is printed
//!
//! Results go to stdout, diagnostics to stderr. Output is byte-for-byte
//! deterministic for identical inputs.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use chi_core::{
    builtin_example, certify, decimal, enclose_to_width, exclude_rationals, parse_spec, render_spec,
    verify, Certificate, ChiSpec, Error, Ratio,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chi", version, about = "Factorial series evaluation and irrationality certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Inline series spec, e.g. "periodic[3,5,7]"
    #[arg(long)]
    spec: Option<String>,
    /// Path to a .chi file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Built-in series: example1, example3, example4
    #[arg(long)]
    example: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the value rounded to nearest with the given number of digits
    Eval {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
        /// Also print the exact rational enclosure
        #[arg(long)]
        enclosure: bool,
    },
    /// Build an irrationality certificate
    Certify {
        #[command(flatten)]
        source: Source,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Worker threads for screening (default: available parallelism)
        #[arg(long, env = "CHI_JOBS", value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        /// Record generation time in a sidecar file, outside the certificate
        #[arg(long)]
        timestamp: bool,
    },
    /// Re-check a certificate file
    Verify {
        cert: PathBuf,
    },
    /// Prove no fraction with a small denominator equals the value
    Exclude {
        #[command(flatten)]
        source: Source,
        #[arg(long = "max-den", value_parser = clap::value_parser!(u64).range(1..))]
        max_den: u64,
    },
    /// Print the canonical form of a spec
    Parse {
        #[command(flatten)]
        source: Source,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_FAILED: u8 = 2;
const EXIT_RATIONAL: u8 = 3;

/// Writes to stdout; a closed pipe downstream is not an error worth a panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout().lock(), $($arg)*);
    }};
}

fn out_raw(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

/// Prints a diagnostic and carries the exit code back to `main`.
struct Failure(u8);

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    eprintln!("chi: {message}");
    Failure(code)
}

fn load_spec(source: &Source) -> Result<ChiSpec, Failure> {
    if let Some(name) = &source.example {
        return builtin_example(name).map_err(|e| fail(EXIT_USAGE, e));
    }
    let (origin, text) = match (&source.spec, &source.file) {
        (Some(text), _) => ("--spec".to_string(), text.clone()),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    parse_spec(&text).map_err(|e| fail(EXIT_USAGE, format!("{origin}:{e}")))
}

/// Maps a library error to its exit code, printing the exact value for
/// rational input.
fn report(err: Error) -> Failure {
    match err {
        Error::RationalSeries(value) => {
            out!("series is rational: {value}");
            Failure(EXIT_RATIONAL)
        }
        e @ (Error::ScreeningInconclusive { .. } | Error::RoundingUndecidable { .. }) => fail(EXIT_FAILED, e),
        e => fail(EXIT_USAGE, e),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
}

fn cmd_eval(source: &Source, digits: u32, show_enclosure: bool) -> Result<(), Failure> {
    let spec = load_spec(source)?;
    let value = decimal(&spec, digits).map_err(report)?;
    out!("{value}");
    if show_enclosure {
        let enc = enclose_to_width(&spec, &Ratio::pow10(digits + 2).recip()).map_err(report)?;
        out!("lo: {}", enc.interval.lo());
        out!("hi: {}", enc.interval.hi());
        out!("terms_used: {}", enc.terms_used);
    }
    Ok(())
}

fn cmd_certify(source: &Source, out: Option<&Path>, jobs: Option<u32>, timestamp: bool) -> Result<(), Failure> {
    let spec = load_spec(source)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n as usize);
    }
    let pool = pool.build().map_err(|e| fail(EXIT_USAGE, format!("cannot start workers: {e}")))?;
    let cert = pool.install(|| certify(&spec)).map_err(report)?;

    let summary = format!(
        "verdict: irrational (M = {}, {} screening records, max terms_used = {}, b > M bound {} < 1)",
        cert.bound_m,
        cert.screening.len(),
        cert.max_terms_used(),
        cert.large_b.bound
    );
    let generated = timestamp.then(|| {
        SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or_default()
    });
    match out {
        Some(path) => {
            write_file(path, &cert.to_json())?;
            if let Some(secs) = generated {
                let mut meta = path.as_os_str().to_owned();
                meta.push(".meta.json");
                write_file(Path::new(&meta), &format!("{{\"generated_at_unix\": {secs}}}\n"))?;
            }
            out!("{summary}");
        }
        None => {
            out_raw(&cert.to_json());
            eprintln!("{summary}");
            if let Some(secs) = generated {
                eprintln!("generated_at_unix: {secs}");
            }
        }
    }
    Ok(())
}

fn cmd_verify(path: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let cert = Certificate::from_json(&text).map_err(|e| fail(EXIT_USAGE, e))?;
    let outcome = verify(&cert);
    if outcome.ok() {
        out!(
            "ok: {} verified irrational (M = {}, {} screening records)",
            render_spec(&cert.spec),
            cert.bound_m,
            cert.screening.len()
        );
        Ok(())
    } else {
        for failure in &outcome.failures {
            out!("FAIL {failure}");
        }
        Err(fail(EXIT_FAILED, format!("verification failed with {} problem(s)", outcome.failures.len())))
    }
}

fn cmd_exclude(source: &Source, max_den: u64) -> Result<(), Failure> {
    let spec = load_spec(source)?;
    let report_ = exclude_rationals(&spec, max_den).map_err(report)?;
    out_raw(&report_.to_json());
    if report_.is_excluded() {
        Ok(())
    } else {
        Err(fail(EXIT_FAILED, format!("inconclusive: enclosure still admits a fraction with denominator ≤ {max_den}")))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Eval { source, digits, enclosure } => cmd_eval(source, *digits, *enclosure),
        Command::Certify { source, out, jobs, timestamp } => cmd_certify(source, out.as_deref(), *jobs, *timestamp),
        Command::Verify { cert } => cmd_verify(cert),
        Command::Exclude { source, max_den } => cmd_exclude(source, *max_den),
        Command::Parse { source } => {
            out!("{}", render_spec(&load_spec(source)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code)) => ExitCode::from(code),
    }
}
