use std::path::PathBuf;
use std::process::ExitCode;

use a2g_channel::antenna::Orientation;
use a2g_channel::svmodel::{Receiver, Scenario};
use a2g_cli::{cmd_analyze, cmd_catalog, cmd_estimate, cmd_pathloss, cmd_synthesize, CliError, CliResult, RunConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "a2g", version, about = "UWB air-to-ground channel synthesis, path loss and CIR analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of scans to synthesize.
    #[arg(long, global = true)]
    scans: Option<usize>,
    /// hover-open, hover-foliage or moving-open.
    #[arg(long, global = true)]
    scenario: Option<Scenario>,
    /// RX1 or RX2.
    #[arg(long, global = true)]
    rx: Option<Receiver>,
    /// VV or VH.
    #[arg(long, global = true)]
    orientation: Option<Orientation>,
    /// Horizontal distance in meters; a comma-separated list for sweeps.
    #[arg(long, global = true, value_delimiter = ',')]
    x: Vec<f64>,
    /// UAV heights in meters for sweeps, comma-separated.
    #[arg(long, global = true, value_delimiter = ',')]
    h: Vec<f64>,
    /// Square every per-antenna elevation gain factor.
    #[arg(long, global = true)]
    harmonize_gains: bool,
    /// Read the catalog decay constants as time constants in ns.
    #[arg(long, global = true)]
    decay_as_time_constant: bool,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize an ensemble of impulse responses.
    Synthesize,
    /// PDP, clusters, fits and per-scan statistics of a CIR file.
    Analyze { cir_file: PathBuf },
    /// Analytical path loss over an (x, h) grid.
    Pathloss,
    /// Estimate clustered channel parameters from a CIR file.
    Estimate { cir_file: PathBuf },
    /// Dump the built-in parameter tables.
    Catalog,
}

fn config(common: &Common, sweep: bool) -> CliResult<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &common.out {
        cfg.output_dir = v.clone();
    }
    if let Some(v) = common.seed {
        cfg.seed = v;
    }
    if let Some(v) = common.scans {
        cfg.n_scans = v;
    }
    if let Some(v) = common.scenario {
        cfg.scenario = v;
    }
    if let Some(v) = common.rx {
        cfg.rx = v;
    }
    if let Some(v) = common.orientation {
        cfg.orientation = v;
    }
    if sweep {
        if !common.x.is_empty() {
            cfg.sweep.x_m = common.x.clone();
        }
        if !common.h.is_empty() {
            cfg.sweep.h_m = common.h.clone();
        }
    } else {
        match common.x[..] {
            [] => {}
            [x] => cfg.x_m = x,
            _ => return Err(CliError::Invalid("--x takes a single distance here".into())),
        }
    }
    cfg.rf.harmonize_gains |= common.harmonize_gains;
    cfg.synthesis.decay_as_time_constant |= common.decay_as_time_constant;
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<String> {
    let cfg = config(&cli.common, matches!(cli.command, Command::Pathloss))?;
    match &cli.command {
        Command::Synthesize => cmd_synthesize(&cfg),
        Command::Analyze { cir_file } => cmd_analyze(cir_file, &cfg),
        Command::Pathloss => cmd_pathloss(&cfg),
        Command::Estimate { cir_file } => cmd_estimate(cir_file, &cfg),
        Command::Catalog => cmd_catalog(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.common.jobs.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
