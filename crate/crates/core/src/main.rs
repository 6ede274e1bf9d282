use std::f64::consts::SQRT_2;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use hpe::harness::{self, CaseSpec, Graph, RowLabels};
use hpe::hpe::{run_hpe, HpeOptions, Pairing};
use hpe::ising::{io, make_schedule, Resolution, ScheduleParams, ENERGY_REL_TOL};
use hpe::samplers::{AnnealParams, SamplerConfig, SamplerKind};

#[derive(Parser)]
#[command(name = "hpe", version, about = "High-precision Ising optimization with low-precision samplers")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write per-case energies as CSV.
    Run(RunArgs),
    /// Print the summary table for a results CSV.
    Table(TableArgs),
    /// Run HPE on one problem file and print the answer.
    Solve(SolveArgs),
}

#[derive(Args)]
struct ScheduleArgs {
    /// Number of scaled versions.
    #[arg(long, default_value_t = 20)]
    versions: usize,
    /// c_0 = 1 / (divisor * d).
    #[arg(long = "c0-divisor", default_value_t = 8.0)]
    c0_divisor: f64,
    /// Ratio between consecutive version constants (number or `sqrt2`).
    #[arg(long = "step-ratio", default_value = "sqrt2", value_parser = parse_ratio)]
    step_ratio: f64,
    #[arg(long, default_value = "index", value_parser = parse_pairing)]
    pairing: Pairing,
}

impl ScheduleArgs {
    fn params(&self) -> ScheduleParams {
        ScheduleParams {
            versions: self.versions,
            divisor: self.c0_divisor,
            step_ratio: self.step_ratio,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 64)]
    qubits: usize,
    /// random:RHO or chimera:R,C,T
    #[arg(long, default_value = "random:0.1", value_parser = parse_graph)]
    graph: Graph,
    /// Base problem precision in bits, or `dbl`.
    #[arg(long, default_value = "9", value_parser = parse_resolution)]
    bp: Resolution,
    /// Hardware precision in bits, or `dbl`.
    #[arg(long, default_value = "3", value_parser = parse_resolution)]
    hp: Resolution,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Samples per sampler call.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[command(flatten)]
    schedule: ScheduleArgs,
    #[arg(long, default_value = "anneal", value_parser = parse_sampler)]
    sampler: SamplerKind,
    /// Anneal sweeps per sample (default 10 x qubits).
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Also write every generated problem as JSON into this directory.
    #[arg(long = "emit-problems")]
    emit_problems: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    path: PathBuf,
    /// Labels for the BP, HP and Samples columns.
    #[arg(long, default_value = "-")]
    bp: String,
    #[arg(long, default_value = "-")]
    hp: String,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    problem: PathBuf,
    #[arg(long, value_parser = parse_resolution)]
    hp: Resolution,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "anneal", value_parser = parse_sampler)]
    sampler: SamplerKind,
    #[arg(long)]
    sweeps: Option<usize>,
    #[command(flatten)]
    schedule: ScheduleArgs,
}

fn parse_ratio(s: &str) -> Result<f64, String> {
    if s.eq_ignore_ascii_case("sqrt2") {
        return Ok(SQRT_2);
    }
    s.parse().map_err(|_| format!("`{s}` is neither a number nor `sqrt2`"))
}

fn parse_graph(s: &str) -> Result<Graph, String> {
    s.parse().map_err(|e: hpe::Error| e.to_string())
}

fn parse_resolution(s: &str) -> Result<Resolution, String> {
    s.parse().map_err(|e: hpe::Error| e.to_string())
}

fn parse_sampler(s: &str) -> Result<SamplerKind, String> {
    s.parse().map_err(|e: hpe::Error| e.to_string())
}

fn parse_pairing(s: &str) -> Result<Pairing, String> {
    s.parse().map_err(|e: hpe::Error| e.to_string())
}

fn run(args: RunArgs) -> Result<()> {
    let spec = CaseSpec {
        num_qubits: args.qubits,
        graph: args.graph,
        base_precision: args.bp,
        hardware_precision: args.hp,
        cases: args.cases,
        samples: args.samples,
        seed: args.seed,
        sampler: args.sampler,
        anneal: AnnealParams {
            sweeps: args.sweeps,
            ..Default::default()
        },
        schedule: args.schedule.params(),
        pairing: args.schedule.pairing,
    };
    spec.validate()?;
    if let Some(dir) = &args.emit_problems {
        fs::create_dir_all(dir).with_context(|| format!("{}: cannot create directory", dir.display()))?;
        for c in 0..spec.cases {
            io::write_problem(&harness::generate_case(&spec, c)?, &dir.join(format!("case_{c:05}.json")))?;
        }
    }
    let records = harness::run_experiment(&spec)?;
    harness::emit_csv(&records, &args.out)?;
    let row = harness::aggregate(&records, spec.labels(), ENERGY_REL_TOL)?;
    print!("{}", harness::emit_table(&[row]));
    Ok(())
}

fn table(args: TableArgs) -> Result<()> {
    let records = harness::read_csv(&args.path)?;
    let labels = RowLabels {
        bp: args.bp,
        hp: args.hp,
        samples: args.samples,
    };
    let row = harness::aggregate(&records, labels, ENERGY_REL_TOL)?;
    print!("{}", harness::emit_table(&[row]));
    Ok(())
}

fn solve(args: SolveArgs) -> Result<()> {
    let base = io::read_problem(&args.problem)?;
    let schedule = make_schedule(&base, args.schedule.params())?;
    let mut sampler = SamplerConfig::new(args.sampler, args.seed, args.samples);
    sampler.anneal.sweeps = args.sweeps;
    if let Some(step) = args.hp.step() {
        sampler.anneal.grid_step = step;
    }
    let options = HpeOptions {
        pairing: args.schedule.pairing,
        retain_sets: false,
    };
    let result = run_hpe(&base, &schedule, args.hp, &sampler, &options)?;
    println!("energy: {}", io::format_energy(result.final_energy()));
    println!("spins: {}", result.final_sample());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = (|| {
        if cli.threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cli.threads)
                .build_global()
                .context("cannot configure thread pool")?;
        }
        match cli.command {
            Command::Run(args) => run(args),
            Command::Table(args) => table(args),
            Command::Solve(args) => solve(args),
        }
    })();
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hpe: {e:#}");
            ExitCode::FAILURE
        }
    }
}
