use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use opsom_core::harness::{run_experiment, summary_text, write_outputs};
use opsom_core::objective::describe_suite;
use opsom_core::ortho_init::{construct_oa, verify_oa};
use opsom_core::{make_suite, AlgorithmVariant, ExperimentConfig, PsoParams};

#[derive(Parser)]
#[command(
    name = "opsom",
    version,
    about = "OPSO-m and baseline PSO experiment runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run algorithms over the benchmark suite and write traces plus a summary.
    Run(RunArgs),
    /// Same as `run`, but at least two algorithms are required.
    Compare(RunArgs),
    /// Print an orthogonal array as rows of space-separated levels.
    Oa {
        #[arg(long, default_value_t = 2)]
        levels: u32,
        #[arg(long)]
        factors: usize,
    },
    /// Print the benchmark suite description.
    Suite {
        #[arg(long = "suite-seed", default_value_t = 0)]
        suite_seed: u64,
        #[arg(long, default_value_t = 10)]
        dim: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated algorithms: opsom, pso, or opsom with ablation suffixes
    /// (-no-oa, -no-archives, -no-mutation, -fixed-inertia).
    #[arg(long, value_delimiter = ',', default_value = "opsom")]
    algo: Vec<AlgorithmVariant>,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_value = "10,30,50")]
    dim: Vec<usize>,
    /// Swarm size (even, at least 6).
    #[arg(long, default_value_t = 40)]
    pop: usize,
    /// Evaluations per run (default 10000 × dimension).
    #[arg(long)]
    budget: Option<u64>,
    /// Independent runs per function and algorithm.
    #[arg(long, default_value_t = 25)]
    runs: usize,
    /// Base seed; run r uses base ^ (r × 0x9E3779B97F4A7C15).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed for the suite's shifts and rotations.
    #[arg(long = "suite-seed", default_value_t = 0)]
    suite_seed: u64,
    /// Comma-separated function ids (default: whole suite).
    #[arg(long, value_delimiter = ',')]
    functions: Option<Vec<u32>>,
    /// Orthogonal array levels (prime).
    #[arg(long, default_value_t = 2)]
    levels: u32,
    /// Output directory for traces, suite descriptions and summary.txt.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for independent runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Disable orthogonal-array initialization for every OPSO-m entry.
    #[arg(long)]
    no_oa: bool,
    /// Disable archive learning for every OPSO-m entry.
    #[arg(long)]
    no_archives: bool,
    /// Disable elite mutation for every OPSO-m entry.
    #[arg(long)]
    no_mutation: bool,
    /// Use the inertia weight instead of the random memory factor.
    #[arg(long)]
    fixed_inertia: bool,
    /// Append archive sizes and best fitness to OPSO-m traces.
    #[arg(long)]
    archive_log: bool,
}

impl RunArgs {
    fn into_config(self) -> (ExperimentConfig, PathBuf) {
        let algorithms = self
            .algo
            .into_iter()
            .map(|mut v| {
                if v.algorithm == opsom_core::Algorithm::Opsom {
                    v.ablations.no_oa |= self.no_oa;
                    v.ablations.no_archives |= self.no_archives;
                    v.ablations.no_mutation |= self.no_mutation;
                    v.ablations.fixed_inertia |= self.fixed_inertia;
                }
                v
            })
            .collect();
        let config = ExperimentConfig {
            suite_seed: self.suite_seed,
            dimensions: self.dim,
            runs: self.runs,
            base_seed: self.seed,
            algorithms,
            population: self.pop,
            budget: self.budget,
            oa_levels: self.levels,
            pso_params: PsoParams::default(),
            functions: self.functions,
            jobs: self.jobs.max(1),
            archive_log: self.archive_log,
        };
        (config, self.out)
    }
}

fn run(args: RunArgs, require_pair: bool) -> Result<(), String> {
    let (config, out) = args.into_config();
    if require_pair && config.algorithms.len() < 2 {
        return Err("compare needs at least two algorithms in --algo".into());
    }
    let results = run_experiment(&config).map_err(|e| e.to_string())?;
    let written = write_outputs(&results, &out)
        .map_err(|e| format!("cannot write to {}: {e}", out.display()))?;
    print!("{}", summary_text(&results).map_err(|e| e.to_string())?);
    eprintln!(
        "wrote {written} traces and summary.txt to {}",
        out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args, false),
        Command::Compare(args) => run(args, true),
        Command::Oa { levels, factors } => construct_oa(levels, factors)
            .map(|oa| {
                debug_assert!(verify_oa(&oa));
                print!("{oa}");
            })
            .map_err(|e| e.to_string()),
        Command::Suite { suite_seed, dim } => make_suite(suite_seed, dim)
            .map(|suite| print!("{}", describe_suite(&suite)))
            .map_err(|e| e.to_string()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
