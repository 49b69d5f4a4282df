//! `disent`: command-line front end for the disentanglement toolkit.
//!
//! Exit codes: 0 pass, 1 negative verdict, 2 usage, 3 invariant violation,
//! 4 scenario premise violated.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use disent_core::channels::{Party, PauliDiagonalMap};
use disent_core::disentangle::{OptimizerConfig, Scenario};

use commands::{Failure, TeleportInput};
use render::Format;

#[derive(Parser)]
#[command(
    name = "disent",
    version,
    about = "Disentangling machines via teleportation channels"
)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "DISENT_SEED", default_value_t = 42)]
    seed: u64,
    /// Worker threads for the sampling suites (results do not depend on it).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ScenarioArg {
    Universal,
    Equatorial,
    Commuting,
    /// A Pauli-diagonal machine given by `--lambda`.
    Custom,
}

#[derive(Subcommand)]
enum Command {
    /// Teleport a qubit, or one party of a two-qubit state, through a Bell mixture.
    #[command(group(ArgGroup::new("input").required(true).args(["bloch", "state"])))]
    Teleport {
        /// Bell-mixture weights over (psi+, psi-, phi+, phi-).
        #[arg(long, value_parser = floats::<4>, allow_hyphen_values = true)]
        weights: [f64; 4],
        /// Input Bloch vector.
        #[arg(long, value_parser = floats::<3>, allow_hyphen_values = true)]
        bloch: Option<[f64; 3]>,
        /// Input state file (one or two qubits).
        #[arg(long)]
        state: Option<PathBuf>,
        /// Party to teleport from a two-qubit state.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        party: u8,
        /// Also sample this many measurement outcomes.
        #[arg(long)]
        shots: Option<usize>,
    },
    /// Run a disentangling machine on party 2 and certify the result.
    Disentangle {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        #[arg(long)]
        state: PathBuf,
        /// Shrinking factors of a custom machine.
        #[arg(long, value_parser = floats::<3>, allow_hyphen_values = true, required_if_eq("scenario", "custom"))]
        lambda: Option<[f64; 3]>,
    },
    /// Maximize the equatorial shrinking factor.
    Optimize {
        #[arg(long, default_value_t = 0.05)]
        grid_step: f64,
        #[arg(long, default_value_t = 1e-4)]
        refine_tol: f64,
        /// Drop the disentangling constraints (physicality only).
        #[arg(long)]
        skip_a15: bool,
    },
    /// Run the seeded self-check suites.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Reproduce the headline results as a pass/fail table.
    Reproduce {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Tabulate the feasibility conditions along a line in lambda.
    Sweep {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        l: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        m: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        n: f64,
    },
}

fn floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let arr: [f64; N] = parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(arr)
}

fn run(cli: Cli) -> commands::CmdResult {
    let seed = cli.seed;
    let fmt = |default| cli.format.unwrap_or(default);
    match cli.command {
        Command::Teleport {
            weights,
            bloch,
            state,
            party,
            shots,
        } => {
            let input = match (bloch, state) {
                (Some(r), _) => TeleportInput::Bloch(r),
                (None, Some(path)) => TeleportInput::State(commands::read_state(&path)?),
                (None, None) => unreachable!("clap enforces the input group"),
            };
            let party = Party::from_number(party).expect("range-checked by clap");
            commands::teleport(weights, input, party, shots, seed, fmt(Format::Pretty))
        }
        Command::Disentangle {
            scenario,
            state,
            lambda,
        } => {
            let scenario = match (scenario, lambda) {
                (ScenarioArg::Custom, Some(l)) => {
                    Scenario::Custom(PauliDiagonalMap::from_array(l)?)
                }
                (ScenarioArg::Custom, None) => unreachable!("clap requires --lambda"),
                (_, Some(_)) => {
                    return Err(Failure::Usage(
                        "--lambda only applies to --scenario custom".into(),
                    ))
                }
                (ScenarioArg::Universal, None) => Scenario::Universal,
                (ScenarioArg::Equatorial, None) => Scenario::Equatorial,
                (ScenarioArg::Commuting, None) => Scenario::Commuting,
            };
            let rho = commands::read_state(&state)?;
            commands::disentangle(scenario, &rho, fmt(Format::Json))
        }
        Command::Optimize {
            grid_step,
            refine_tol,
            skip_a15,
        } => {
            let cfg = OptimizerConfig {
                grid_step,
                refine_tol,
                include_disentangling: !skip_a15,
            };
            commands::optimize(cfg, fmt(Format::Pretty))
        }
        Command::Verify {
            samples,
            inject_fault,
        } => commands::verify(samples as usize, seed, inject_fault, fmt(Format::Pretty)),
        Command::Reproduce { inject_fault } => {
            commands::reproduce(seed, inject_fault, fmt(Format::Pretty))
        }
        Command::Sweep {
            lo,
            hi,
            steps,
            l,
            m,
            n,
        } => commands::sweep(lo, hi, steps, [l, m, n], fmt(Format::Csv)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .expect("thread pool is configured once");
    }
    let (stdout, failure) = match run(cli) {
        Ok(report) => (report.stdout, report.failure),
        Err(f) => (String::new(), Some(f)),
    };
    print!("{stdout}");
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            let (Failure::Semantic(m)
            | Failure::Usage(m)
            | Failure::Invariant(m)
            | Failure::Premise(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
