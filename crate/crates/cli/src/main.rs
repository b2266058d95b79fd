use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use transversal_cli::commands::{self, CommandError, Model, SolveArgs, VerifyScope};
use transversal_cli::format::{parse_instance, InstanceFile};
use transversal_cli::report::RunReport;
use transversal_core::solver::Pruning;

#[derive(Parser)]
#[command(
    name = "transversal",
    version,
    about = "Construct, search and verify oriented Hamilton path/cycle transversals in collections of tournaments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// uniform | transitive | qr | custom-bias
        #[arg(long, default_value = "uniform")]
        model: String,
        /// Forward-orientation probability in basis points (custom-bias).
        #[arg(long)]
        bias_bp: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide one pattern on an instance.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// '+'/'-' string; '@' suffix marks a cycle.
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// path | cycle (inferred from the pattern when omitted).
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, default_value_t = transversal_core::solver::DEFAULT_VERTEX_CAP)]
        cap: usize,
        /// Wall-clock budget in milliseconds; enables over-cap runs.
        #[arg(long)]
        time_budget: Option<u64>,
        /// hall | none
        #[arg(long, default_value = "hall")]
        pruning: String,
        #[arg(long)]
        anchor: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep all Hamilton orientations of one kind.
    Sweep {
        #[arg(long)]
        instance: PathBuf,
        /// path | cycle
        #[arg(long, default_value = "path")]
        kind: String,
        /// Dedupe patterns by reversal.
        #[arg(long)]
        dedupe: bool,
        #[arg(long, default_value_t = transversal_core::solver::DEFAULT_VERTEX_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the invariant suites.
    Verify {
        /// props | patterns | hpartition | brooms | solver-oracle
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Exhaustive short-path pair sweep (brooms suite).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample collections and log certified misses.
    Hunt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// path | cycle
        #[arg(long, default_value = "cycle")]
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block structure, oscillation class and DO-decomposition of a pattern.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Median order of one member.
    Median {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        color: usize,
        /// exact | local
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Robust (or good) H-partition of one member.
    Hpartition {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        color: usize,
        #[arg(long)]
        ell: usize,
        /// Rational like 1/25.
        #[arg(long, default_value = "1/25")]
        gamma: String,
        /// Build a good partition (protected boundary blocks).
        #[arg(long)]
        good: bool,
        /// Head boundary fraction (good mode).
        #[arg(long, default_value = "1/4")]
        head: String,
        /// Tail boundary fraction (good mode).
        #[arg(long, default_value = "1/4")]
        tail: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Directed broom inside one member.
    Broom {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        color: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 2)]
        s1: usize,
        #[arg(long, default_value_t = 50)]
        s2: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_instance(path: &PathBuf) -> Result<InstanceFile, CommandError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CommandError::Usage(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CommandError::Usage(format!("reading {}: {e}", path.display())))?;
    }
    parse_instance(&text).map_err(|e| CommandError::Usage(e.to_string()))
}

fn emit(report: &RunReport, out: &Option<PathBuf>) -> Result<(), CommandError> {
    let json = report.to_json();
    match out {
        Some(path) => std::fs::write(path, json.as_bytes())
            .map_err(|e| CommandError::Usage(format!("writing {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    eprintln!(
        "{}: {} validations, {} ms",
        report.command, report.validations, report.wall_ms
    );
    Ok(())
}

fn parse_kind(text: &str) -> Result<bool, CommandError> {
    match text {
        "path" => Ok(false),
        "cycle" => Ok(true),
        other => Err(CommandError::Usage(format!("unknown kind '{other}'"))),
    }
}

fn run(cli: Cli) -> Result<(), CommandError> {
    match cli.command {
        Command::Gen {
            n,
            m,
            seed,
            model,
            bias_bp,
            out,
        } => {
            let model = Model::parse(&model)?;
            let (report, text) = commands::cmd_gen(n, m, seed, model, bias_bp)?;
            match &out {
                Some(path) => std::fs::write(path, text.as_bytes())
                    .map_err(|e| CommandError::Usage(format!("writing {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            eprintln!("gen: wrote instance ({} ms)", report.wall_ms);
            Ok(())
        }
        Command::Solve {
            instance,
            pattern,
            kind,
            cap,
            time_budget,
            pruning,
            anchor,
            out,
        } => {
            let instance = load_instance(&instance)?;
            let pruning = match pruning.as_str() {
                "hall" => Pruning::HallMatching,
                "none" => Pruning::None,
                other => return Err(CommandError::Usage(format!("unknown pruning '{other}'"))),
            };
            let cycle = kind.as_deref().map(parse_kind).transpose()?;
            let report = commands::cmd_solve(
                &instance,
                &SolveArgs {
                    pattern,
                    cycle,
                    cap,
                    time_budget_ms: time_budget,
                    pruning,
                    anchor,
                },
            )?;
            emit(&report, &out)?;
            // a timeout is an unanswered query: the report is still emitted,
            // the exit code says so
            if report.payload["verdict"]["verdict"] == "timeout" {
                return Err(CommandError::Cap("search timed out".into()));
            }
            Ok(())
        }
        Command::Sweep {
            instance,
            kind,
            dedupe,
            cap,
            out,
        } => {
            let instance = load_instance(&instance)?;
            let cycle = parse_kind(&kind)?;
            let report = commands::cmd_sweep(&instance, cycle, dedupe, cap)?;
            emit(&report, &out)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            n_max,
            max_len,
            exhaustive,
            out,
        } => {
            let scope = VerifyScope {
                trials,
                seed,
                n_max,
                max_len,
                exhaustive,
            };
            let report = commands::cmd_verify(&suite, &scope)?;
            emit(&report, &out)
        }
        Command::Hunt {
            n,
            trials,
            seed,
            kind,
            out,
        } => {
            let cycle = parse_kind(&kind)?;
            let report = commands::cmd_hunt(n, trials, seed, cycle)?;
            emit(&report, &out)
        }
        Command::Decompose { pattern, out } => {
            let report = commands::cmd_decompose(&pattern)?;
            emit(&report, &out)
        }
        Command::Median {
            instance,
            color,
            mode,
            out,
        } => {
            let instance = load_instance(&instance)?;
            let exact = match mode.as_str() {
                "exact" => true,
                "local" => false,
                other => return Err(CommandError::Usage(format!("unknown mode '{other}'"))),
            };
            let report = commands::cmd_median(&instance, color, exact)?;
            emit(&report, &out)
        }
        Command::Hpartition {
            instance,
            color,
            ell,
            gamma,
            good,
            head,
            tail,
            out,
        } => {
            let instance = load_instance(&instance)?;
            let gamma = commands::parse_ratio(&gamma)?;
            let head = commands::parse_ratio(&head)?;
            let tail = commands::parse_ratio(&tail)?;
            let report = commands::cmd_hpartition(&instance, color, ell, gamma, good, head, tail)?;
            emit(&report, &out)
        }
        Command::Broom {
            instance,
            color,
            ell,
            s1,
            s2,
            out,
        } => {
            let instance = load_instance(&instance)?;
            let report = commands::cmd_broom(&instance, color, ell, s1, s2)?;
            emit(&report, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
