use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use slpx::container;
use slpx::encoding::{AnyEncoding, Scheme, SpaceReport};
use slpx::slp::{compress, parse_text, to_text};
use slpx::verify::{verify, Mode};
use slpx::{extract, Error, Slp};

#[derive(Parser)]
#[command(name = "slpx", version, about = "Succinct SLP encodings with fast substring extraction")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::I => Scheme::I,
            SchemeArg::II => Scheme::II,
            SchemeArg::III => Scheme::III,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a grammar for a file and write it in .slp text form
    Compress { input: PathBuf, output: PathBuf },
    /// Encode a .slp grammar into a .slpx container
    Encode {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        input: PathBuf,
        output: PathBuf,
    },
    /// Print T[pos .. pos+len-1]
    Extract {
        input: PathBuf,
        #[arg(long)]
        pos: u64,
        #[arg(long)]
        len: u64,
        /// print query counters as JSON on stderr
        #[arg(long)]
        stats: bool,
    },
    /// Compare a container against the grammar it was built from
    Verify {
        input: PathBuf,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, conflicts_with = "full", required_unless_present = "full")]
        samples: Option<usize>,
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print sizes and space accounting of a container
    Stats {
        input: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
}

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const INVALID: u8 = 2;
const NO_ORDER: u8 = 3;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("slpx: {msg}");
    ExitCode::from(code)
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::NoMonotoneOrder { .. } => NO_ORDER,
        _ => INVALID,
    }
}

fn read_slp(path: &PathBuf) -> Result<Slp, ExitCode> {
    let src = std::fs::read_to_string(path).map_err(|e| fail(INVALID, format!("{}: {e}", path.display())))?;
    parse_text(&src).map_err(|e| fail(INVALID, format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

#[derive(Serialize)]
struct Stats {
    #[serde(flatten)]
    report: SpaceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    height: Option<usize>,
}

fn run(cli: Cli) -> ExitCode {
    match cli.cmd {
        Cmd::Compress { input, output } => {
            let text = match std::fs::read(&input) {
                Ok(t) => t,
                Err(e) => return fail(INVALID, format!("{}: {e}", input.display())),
            };
            let slp = match compress(&text) {
                Ok(s) => s,
                Err(e) => return fail(INVALID, e),
            };
            if let Err(e) = std::fs::write(&output, to_text(&slp)) {
                return fail(INVALID, format!("{}: {e}", output.display()));
            }
            println!("n={} N={}", slp.n(), slp.len());
            ExitCode::from(OK)
        }
        Cmd::Encode { scheme, input, output } => {
            let slp = match read_slp(&input) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let enc = match AnyEncoding::build(&slp, scheme.into()) {
                Ok(e) => e,
                Err(e) => return fail(code_for(&e), e),
            };
            if let Err(e) = container::write_file(&output, enc.as_dyn()) {
                return fail(INVALID, format!("{}: {e}", output.display()));
            }
            print_json(&enc.as_dyn().space_report());
            ExitCode::from(OK)
        }
        Cmd::Extract { input, pos, len, stats } => {
            let enc = match container::read_file(&input) {
                Ok(e) => e,
                Err(e) => return fail(INVALID, e),
            };
            if len == 0 {
                return fail(INVALID, "--len must be at least 1");
            }
            let q = match pos.checked_add(len - 1) {
                Some(q) => q,
                None => return fail(INVALID, "range overflows"),
            };
            match extract(enc.as_dyn(), pos, q) {
                Ok((bytes, st)) => {
                    let mut out = std::io::stdout().lock();
                    if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
                        return ExitCode::from(INVALID);
                    }
                    if stats {
                        eprintln!("{}", serde_json::to_string(&st).expect("serializable"));
                    }
                    ExitCode::from(OK)
                }
                Err(e) => fail(INVALID, e),
            }
        }
        Cmd::Verify { input, against, samples, full, seed } => {
            let slp = match read_slp(&against) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let enc = match container::read_file(&input) {
                Ok(e) => e,
                Err(e) => return fail(MISMATCH, format!("{}: {e}", input.display())),
            };
            let mode = if full { Mode::Full } else { Mode::Samples(samples.unwrap_or(0)) };
            let rep = verify(enc.as_dyn(), &slp, mode, seed);
            if !rep.length_matches {
                println!("length mismatch: container N={}, grammar N={}", enc.as_dyn().len(), slp.len());
            }
            for m in &rep.mismatches {
                println!("mismatch at {}..={}: {}", m.p, m.q, m.detail);
            }
            for p in &rep.hop_violations {
                println!("hop bound exceeded at {p}");
            }
            if !rep.formula_holds {
                println!("space formula check failed");
            }
            println!(
                "{} queries, {} mismatches, max hops {}: {}",
                rep.queries,
                rep.mismatches.len(),
                rep.max_hops,
                if rep.passed() { "ok" } else { "FAILED" }
            );
            ExitCode::from(if rep.passed() { OK } else { MISMATCH })
        }
        Cmd::Stats { input, against } => {
            let enc = match container::read_file(&input) {
                Ok(e) => e,
                Err(e) => return fail(INVALID, e),
            };
            let height = match against {
                Some(p) => match read_slp(&p) {
                    Ok(s) => Some(s.height()),
                    Err(code) => return code,
                },
                None => None,
            };
            print_json(&Stats { report: enc.as_dyn().space_report(), height });
            ExitCode::from(OK)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
