mod cmd;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Verdict;

#[derive(Parser, Debug)]
#[command(name = "zchan", version, about = "Rate regions and coding schemes for the state-dependent Z channel")]
struct Cli {
    /// Seed for every random draw; defaults to 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Manifest path; defaults to the first output file with extension `.manifest.json`.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a discrete memoryless rate region for a joint distribution.
    DmcRegion(DmcArgs),
    /// Project a linear inequality system onto a subset of its variables.
    Fme(FmeArgs),
    /// Sweep the dirty-paper region of a Gaussian channel over (xi, gamma).
    GaussDpc(DpcArgs),
    /// Lattice-strategy rate regions and Monte Carlo simulation.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Run a named self-check suite.
    Verify(VerifyArgs),
    /// Re-run the command recorded in a manifest and compare output digests.
    Replay {
        /// Manifest written by an earlier run.
        path: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DVariantArg {
    Literal,
    Combined,
}

#[derive(Args, Debug)]
struct DmcArgs {
    /// Joint distribution JSON.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    dist: Option<PathBuf>,
    /// Draw a random distribution with this alphabet size for every variable, using --seed.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    theorem: u8,
    /// Third bound of the first theorem.
    #[arg(long, value_enum, default_value_t = DVariantArg::Literal)]
    d_variant: DVariantArg,
    /// Compare the closed form against the projected split-rate system.
    #[arg(long)]
    fme_check: bool,
    /// Region JSON; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comparison report; defaults to the region path with extension `.fme.json`.
    #[arg(long)]
    fme_report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FmeArgs {
    /// Linear system JSON.
    #[arg(long)]
    input: PathBuf,
    /// Variables to keep, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    keep: Vec<String>,
    /// Projected system JSON; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DpcCheck {
    Lemma1,
    Det,
}

#[derive(Args, Debug)]
struct DpcArgs {
    /// Channel JSON in raw or standard form.
    #[arg(long)]
    channel: PathBuf,
    #[arg(long, default_value_t = 101)]
    xi_grid: usize,
    #[arg(long, default_value_t = 41)]
    gamma_grid: usize,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    gamma_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    gamma_max: f64,
    /// Directory for the sweep CSV, hull JSON, reports and manifest.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// File name prefix inside the output directory.
    #[arg(long, default_value = "dpc")]
    prefix: String,
    /// SVG plot of R11 to R21 slices at fixed R22 levels.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Number of R22 levels in the plot.
    #[arg(long, default_value_t = 4)]
    svg_levels: usize,
    /// Check the channel with a verification report.
    #[arg(long, value_enum)]
    verify: Option<DpcCheck>,
    /// Report whether the first-receiver bounds are constant across Q.
    #[arg(long)]
    q_sweep: bool,
    /// Evaluate the second-receiver bounds with alpha in the (Y2,U2) entry.
    #[arg(long)]
    literal_det: bool,
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Pareto frontier of the rate boxes over a (rho, alpha0) grid.
    Region(LatticeRegionArgs),
    /// Dithered mod-lattice Monte Carlo run.
    Sim(LatticeSimArgs),
}

#[derive(Args, Debug)]
struct LatticeRegionArgs {
    /// Lattice config JSON; defaults apply to absent fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 101)]
    rho_grid: usize,
    #[arg(long, default_value_t = 101)]
    alpha0_grid: usize,
    /// Frontier CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LatticeSimArgs {
    /// Lattice config JSON; defaults apply to absent fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    decoder: u8,
    /// Overrides the config sample count.
    #[arg(long)]
    samples: Option<u64>,
    /// Stats JSON; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    /// Report JSON; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses and runs one invocation, returning the exit code.
fn run(argv: &[String]) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let args = &argv[1..];
    let result = match &cli.command {
        Command::DmcRegion(a) => cmd::dmc::run(&cli, a, args),
        Command::Fme(a) => cmd::fme::run(&cli, a, args),
        Command::GaussDpc(a) => cmd::dpc::run(&cli, a, args),
        Command::Lattice { command: LatticeCommand::Region(a) } => cmd::lattice::region(&cli, a, args),
        Command::Lattice { command: LatticeCommand::Sim(a) } => cmd::lattice::sim(&cli, a, args),
        Command::Verify(a) => cmd::verify::run(&cli, a, args),
        Command::Replay { path } => cmd::replay::run(path, run),
    };
    match result {
        Ok(Verdict::Pass) => 0,
        Ok(v @ (Verdict::Oracle(_) | Verdict::Statistical(_))) => {
            if let Verdict::Oracle(m) | Verdict::Statistical(m) = &v {
                eprintln!("zchan: {m}");
            }
            v.code()
        }
        Err(e) => {
            eprintln!("zchan: {e}");
            2
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    ExitCode::from(run(&argv))
}
