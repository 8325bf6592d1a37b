use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use eqglue::frontend::{read_tptp, run, run_auto, run_portfolio, verify, Mode, RunReport};
use eqglue::proof::parse_proof;
use eqglue::saturation::SaturationConfig;
use eqglue::tactic::{format_trace, parse_trace, read_theory, SearchConfig, DEFAULT_DEPTH, DEFAULT_NARROWING};
use eqglue::Error;

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "eqglue", version, about = "Unit-equality prover and lemma-gluing auto search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Refute the negated conjectures of a TPTP problem.
    Prove {
        problem: PathBuf,
        #[command(flatten)]
        opts: SaturationOpts,
        /// Comma-separated orderings to run in parallel.
        #[arg(long, value_delimiter = ',')]
        portfolio: Vec<String>,
        #[arg(long)]
        proof_out: Option<PathBuf>,
        /// Verify this proof file against the problem instead of proving.
        #[arg(long, value_name = "PROOF")]
        check: Option<PathBuf>,
    },
    /// Complete the axioms of a TPTP problem.
    Saturate {
        problem: PathBuf,
        #[command(flatten)]
        opts: SaturationOpts,
    },
    /// Search for proofs of the goals of a theory file.
    Auto {
        theory: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NARROWING)]
        narrowing: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        trace_in: Option<PathBuf>,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SaturationOpts {
    #[arg(long, default_value = "kbo")]
    ordering: String,
    /// Seconds.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Weight picks per age pick.
    #[arg(long)]
    selection_ratio: Option<usize>,
    /// Select whole generations at a time.
    #[arg(long)]
    debug_bfs: bool,
}

impl SaturationOpts {
    fn config(&self) -> SaturationConfig {
        let mut c = SaturationConfig {
            ordering: self.ordering.clone(),
            max_iterations: self.max_iterations,
            timeout: self.timeout.map(Duration::from_secs_f64),
            ..SaturationConfig::default()
        };
        if let Some(r) = self.selection_ratio {
            c.ratio = r;
        }
        if self.debug_bfs {
            c.selection = "bfs".into();
        }
        c
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn execute(cli: Cli) -> Result<u8, Error> {
    let report: RunReport = match cli.command {
        Command::Prove {
            problem,
            opts,
            portfolio,
            proof_out,
            check,
        } => {
            let problem = read_tptp(&problem)?;
            if let Some(path) = check {
                let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                let proof = parse_proof(&text)?;
                return Ok(match verify(&problem, &proof) {
                    Ok(()) => {
                        println!("% proof accepted");
                        0
                    }
                    Err(msg) => {
                        println!("% proof rejected: {msg}");
                        1
                    }
                });
            }
            let config = opts.config();
            let report = if portfolio.is_empty() {
                run(&problem, Mode::Prove, &config)?
            } else {
                run_portfolio(&problem, &portfolio, &config)?
            };
            if let (Some(path), Some(proof)) = (proof_out, &report.proof) {
                write_file(&path, &proof.to_string())?;
            }
            report
        }
        Command::Saturate { problem, opts } => run(&read_tptp(&problem)?, Mode::Saturate, &opts.config())?,
        Command::Auto {
            theory,
            narrowing,
            depth,
            trace_in,
            trace_out,
        } => {
            let name = theory
                .file_stem()
                .map_or_else(|| "theory".into(), |s| s.to_string_lossy().into_owned());
            let theory = read_theory(&theory)?;
            let trace = match trace_in {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                    Some(parse_trace(&text))
                }
                None => None,
            };
            let config = SearchConfig {
                max_depth: depth,
                max_narrowing: narrowing,
                trace,
                ..SearchConfig::default()
            };
            let report = run_auto(&name, &theory, &config)?;
            if let (Some(path), Some(trace)) = (trace_out, &report.trace) {
                write_file(&path, &format_trace(trace))?;
            }
            report
        }
    };
    print!("{}", report.render());
    Ok(report.status.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("eqglue: {e}");
            println!("% SZS status InputError");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
