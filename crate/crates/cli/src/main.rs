//! `liepool`: build and verify complete Pauli-string pools from the shell.
//!
//! Exit codes: 0 success, 1 negative verdict under `--strict`, 2 usage or
//! input errors, 3 oracle guard violations. Errors go to stderr as
//! `error:<category>: <message>`.

mod config;

use std::fmt::Display;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liepool::closure::DEFAULT_ORACLE_MAX_QUBITS;
use liepool::io::{looks_like_matrix, parse_hamiltonian, parse_matrix, parse_pool, format_pool, IoError};
use liepool::vqe::{parse_reference, run_adapt, run_niducc, AdaptConfig, NiDuccConfig, OptimizerConfig, VqeError};
use liepool::{
    bracket_closure, build_gamma, build_pool, canonical_congruence, is_bracket_independent, AlgebraTarget, BitMatrix,
    BuildError, ClosureError, Independence, IndependenceMode, OracleGuard, OraclePolicy, Pool, VerifyOptions,
};
use serde::Serialize;

#[derive(Debug)]
struct CliError {
    category: &'static str,
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Display) -> Self {
        CliError {
            category: "usage",
            code: 2,
            message: message.to_string(),
        }
    }

    fn io(path: &Path, e: impl Display) -> Self {
        CliError {
            category: "io",
            code: 2,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn input(path: &Path, e: IoError) -> Self {
        let category = if e == IoError::Empty { "empty" } else { "parse" };
        CliError {
            category,
            code: 2,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<ClosureError> for CliError {
    fn from(e: ClosureError) -> Self {
        let category = match e {
            ClosureError::Truncated { .. } => "truncated",
            ClosureError::TooManyQubits { .. } => "guard",
            ClosureError::QubitMismatch { .. } => "input",
        };
        let code = if category == "input" { 2 } else { 3 };
        CliError {
            category,
            code,
            message: e.to_string(),
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Oracle(c) => c.into(),
            BuildError::NoReference { .. } => CliError {
                category: "reference",
                code: 2,
                message: e.to_string(),
            },
            e => CliError {
                category: "build",
                code: 2,
                message: e.to_string(),
            },
        }
    }
}

impl From<VqeError> for CliError {
    fn from(e: VqeError) -> Self {
        let (category, code) = match e {
            VqeError::TooManyQubits { .. } => ("guard", 3),
            _ => ("vqe", 2),
        };
        CliError {
            category,
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<ExitCode, CliError>;

#[derive(Parser, Debug)]
#[command(name = "liepool", version, about = "Build and verify complete pools of Pauli-string generators")]
struct Cli {
    /// Largest qubit count the closure oracle accepts.
    #[arg(long, global = true, env = "LIEPOOL_ORACLE_MAX_QUBITS", default_value_t = DEFAULT_ORACLE_MAX_QUBITS)]
    oracle_max_qubits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    Auto,
    Force,
    Off,
}

impl From<OracleArg> for OraclePolicy {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Auto => OraclePolicy::Auto,
            OracleArg::Force => OraclePolicy::Force,
            OracleArg::Off => OraclePolicy::Off,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Adapt,
    Niducc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the anti-commutation matrix of a pool.
    Gamma {
        pool: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the F2 rank of a 0/1 matrix file or of a pool's anti-commutation matrix.
    Rank { input: PathBuf },
    /// Print a congruence certificate: rank, P and the canonical form.
    Canon {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the bracket-closure dimension of a pool.
    Closure {
        pool: PathBuf,
        /// Stop after this many elements.
        #[arg(long)]
        cap: Option<usize>,
        /// Also list the closure elements.
        #[arg(long)]
        elements: bool,
    },
    /// Check bracket independence.
    Independent {
        pool: PathBuf,
        /// Decide with the closure oracle when the fast test fails.
        #[arg(long)]
        exact: bool,
        /// Exit with 1 unless the pool is independent.
        #[arg(long)]
        strict: bool,
    },
    /// Grow a pool from a TOML or JSON build configuration.
    Build {
        config: PathBuf,
        /// Pool output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// JSON report file; appended to stdout after `# report` when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Overrides the configured seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        strict: bool,
    },
    /// Verify a pool against a target algebra and print a JSON report.
    Verify {
        pool: PathBuf,
        /// full, odd_y, chem or reference_pool.
        #[arg(long, default_value = "full")]
        target: String,
        /// Pool whose closure defines the target when `--target reference_pool`.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
        oracle: OracleArg,
        /// Overrides the reference rank.
        #[arg(long)]
        rank: Option<usize>,
        /// Overrides the reference minimal size.
        #[arg(long)]
        mcp_size: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Exit with 1 unless the verdict is MCP or CP.
        #[arg(long)]
        strict: bool,
    },
    /// Run ADAPT or NI-DUCC on a Hamiltonian and print the trace as CSV.
    Vqe {
        hamiltonian: PathBuf,
        #[arg(long)]
        pool: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Adapt)]
        mode: ModeArg,
        /// Operators appended per ADAPT iteration.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Number of pool copies for NI-DUCC.
        #[arg(long, default_value_t = 1)]
        layers: usize,
        #[arg(long, default_value_t = 1e-6)]
        eps_grad: f64,
        #[arg(long, default_value_t = 50)]
        max_outer: usize,
        #[arg(long, default_value_t = 1e-8)]
        grad_tol: f64,
        #[arg(long, default_value_t = 20_000)]
        max_evals: usize,
        /// Reference bitstring, qubit 1 first; all zeros by default.
        #[arg(long)]
        reference: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    if text.trim().is_empty() {
        return Err(CliError {
            category: "empty",
            code: 2,
            message: format!("{}: input is empty", path.display()),
        });
    }
    Ok(text)
}

fn read_pool(path: &Path) -> Result<Pool, CliError> {
    parse_pool(&read(path)?).map_err(|e| CliError::input(path, e))
}

/// A 0/1 matrix file, or the anti-commutation matrix of a pool file.
fn read_matrix_or_gamma(path: &Path) -> Result<BitMatrix, CliError> {
    let text = read(path)?;
    if looks_like_matrix(&text) {
        parse_matrix(&text).map_err(|e| CliError::input(path, e))
    } else {
        let pool = parse_pool(&text).map_err(|e| CliError::input(path, e))?;
        Ok(build_gamma(&pool).into_matrix())
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn guard(cli: &Cli) -> OracleGuard {
    OracleGuard {
        max_qubits: cli.oracle_max_qubits,
        ..OracleGuard::default()
    }
}

fn strict_code(strict: bool, ok: bool) -> ExitCode {
    if strict && !ok {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: &Cli) -> CliResult {
    let guard = guard(cli);
    match &cli.command {
        Command::Gamma { pool, output } => {
            let pool = read_pool(pool)?;
            emit(output.as_deref(), &build_gamma(&pool).to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { input } => {
            let m = read_matrix_or_gamma(input)?;
            emit(None, &format!("{}\n", m.rank()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Canon { input, output } => {
            let m = read_matrix_or_gamma(input)?;
            let cert = canonical_congruence(&m).map_err(|e| CliError {
                category: "input",
                code: 2,
                message: format!("{}: {e}", input.display()),
            })?;
            let text = format!("rank {}\n# P\n{}# canonical\n{}", cert.rank, cert.p, cert.canonical_form());
            emit(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Closure { pool, cap, elements } => {
            let pool = read_pool(pool)?;
            let c = bracket_closure(&pool, *cap, &guard)?;
            let mut text = format!("dimension {}\n", c.dimension());
            if *elements {
                for p in c.elements() {
                    text.push_str(&p.label());
                    text.push('\n');
                }
            }
            emit(None, &text)?;
            if c.truncated {
                return Err(ClosureError::Truncated {
                    cap: cap.unwrap_or(guard.max_elements),
                }
                .into());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Independent { pool, exact, strict } => {
            let pool = read_pool(pool)?;
            let mode = if *exact { IndependenceMode::Exact } else { IndependenceMode::Fast };
            let verdict = is_bracket_independent(&pool, mode, &guard)?;
            let label = |w: usize| pool.elements()[w].label();
            let text = match verdict {
                Independence::Independent => "independent\n".to_string(),
                Independence::Dependent { witness } => format!("dependent witness {} {}\n", witness + 1, label(witness)),
                Independence::Inconclusive { witness } => {
                    format!("inconclusive witness {} {}\n", witness + 1, label(witness))
                }
            };
            emit(None, &text)?;
            Ok(strict_code(*strict, verdict.is_independent()))
        }
        Command::Build {
            config,
            output,
            report,
            seed,
            strict,
        } => {
            let text = read(config)?;
            let base = config.parent().unwrap_or(Path::new("."));
            let (cfg, seed_used) = config::load(&text, base, *seed, guard).map_err(|e| e.at(config))?;
            let outcome = build_pool(&cfg)?;
            let doc = config::BuildDocument {
                seed: seed_used,
                report: &outcome.report,
                stats: &outcome.stats,
            };
            let pool_text = format_pool(&outcome.pool);
            match (output, report) {
                (Some(o), Some(r)) => {
                    emit(Some(o), &pool_text)?;
                    emit(Some(r), &json(&doc))?;
                }
                (Some(o), None) => {
                    emit(Some(o), &pool_text)?;
                    emit(None, &json(&doc))?;
                }
                (None, Some(r)) => {
                    emit(None, &pool_text)?;
                    emit(Some(r), &json(&doc))?;
                }
                (None, None) => emit(None, &format!("{pool_text}# report\n{}", json(&doc)))?,
            }
            Ok(strict_code(*strict, outcome.report.verdict.is_complete()))
        }
        Command::Verify {
            pool,
            target,
            reference,
            oracle,
            rank,
            mcp_size,
            output,
            strict,
        } => {
            let pool = read_pool(pool)?;
            let target = match (target.as_str(), reference) {
                ("reference_pool", Some(path)) => {
                    let r = read_pool(path)?;
                    if r.num_qubits() != pool.num_qubits() {
                        return Err(CliError::usage("reference pool and pool act on different qubit counts"));
                    }
                    AlgebraTarget::reference_pool(r)
                }
                ("reference_pool", None) => return Err(CliError::usage("--target reference_pool needs --reference")),
                (name, _) => AlgebraTarget::from_name(name)
                    .ok_or_else(|| CliError::usage(format!("unknown target {name:?}")))?,
            };
            let opts = VerifyOptions {
                oracle: (*oracle).into(),
                guard,
                rank_override: *rank,
                mcp_size_override: *mcp_size,
                constraints: None,
            };
            let report = liepool::verify_pool(&pool, &target, &opts)?;
            emit(output.as_deref(), &json(&report))?;
            Ok(strict_code(*strict, report.verdict.is_complete()))
        }
        Command::Vqe {
            hamiltonian,
            pool,
            mode,
            k,
            layers,
            eps_grad,
            max_outer,
            grad_tol,
            max_evals,
            reference,
            seed,
            output,
        } => {
            let h = parse_hamiltonian(&read(hamiltonian)?).map_err(|e| CliError::input(hamiltonian, e))?;
            let pool = read_pool(pool)?;
            let n = h.num_qubits();
            if pool.num_qubits() != n {
                return Err(CliError::usage(format!(
                    "pool acts on {} qubits, Hamiltonian on {n}",
                    pool.num_qubits()
                )));
            }
            let reference = match reference {
                Some(bits) => parse_reference(n, bits)?,
                None => 0,
            };
            let optimizer = OptimizerConfig {
                grad_tol: *grad_tol,
                max_evals: *max_evals,
                ..OptimizerConfig::default()
            };
            eprintln!("seed {seed}");
            let trace = match mode {
                ModeArg::Adapt => {
                    if *k == 0 {
                        return Err(CliError::usage("--k must be at least 1"));
                    }
                    let cfg = AdaptConfig {
                        batch_k: *k,
                        eps_grad: *eps_grad,
                        max_outer: *max_outer,
                        optimizer,
                        reference,
                        seed: *seed,
                    };
                    run_adapt(&h, pool.elements(), &cfg)?
                }
                ModeArg::Niducc => {
                    let cfg = NiDuccConfig {
                        k_layers: *layers,
                        optimizer,
                        reference,
                        seed: *seed,
                    };
                    run_niducc(&h, pool.elements(), &cfg)?
                }
            };
            emit(output.as_deref(), &trace.to_csv())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error:usage: {first}");
            eprint!("{}", msg.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error:{}: {}", e.category, e.message);
            ExitCode::from(e.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_strictness() {
        assert_eq!(strict_code(true, false), ExitCode::from(1));
        assert_eq!(strict_code(false, false), ExitCode::SUCCESS);
        assert!(liepool::Verdict::Cp.is_complete());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
