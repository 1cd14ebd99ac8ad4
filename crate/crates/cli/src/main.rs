//! `grasscale`: measure grass colors, fit the color scale, check
//! repeatability and compile or simulate animations.

mod commands;
mod config;
mod errors;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use errors::CliError;

#[derive(Parser)]
#[command(
    name = "grasscale",
    version,
    about = "Grass pixel color scale calibration and animation toolkit",
    after_help = "Exit codes: 0 success, 2 config error, 3 validation error, \
                  4 gate failure, 5 I/O error."
)]
struct Cli {
    /// Directory for default output locations.
    #[arg(long, global = true, env = "GRASSCALE_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correct captured frames against the reference checker and measure
    /// the evaluation region of each, emitting a samples CSV.
    Measure(MeasureArgs),
    /// Run the scale setting procedure on a samples CSV and write the
    /// report JSON. Exits 4 when a gate fails or the mapping is infeasible.
    Fit(FitArgs),
    /// Compare repeated measurements against their per-group mean.
    Repeat(RepeatArgs),
    /// Compile a keyframe script into a motor schedule and render the
    /// simulated frames.
    Animate(AnimateArgs),
    /// Render the simulated frames only.
    Render(RenderArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Session config JSON.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path. Defaults to `<out-dir>/samples.csv`.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Samples CSV, as written by `measure`.
    #[arg(long)]
    samples: PathBuf,
    /// Restrict to one camera position, `h,d,theta`. Required when the CSV
    /// holds several positions.
    #[arg(long, value_parser = commands::fit::parse_position)]
    position: Option<commands::fit::PositionArg>,
    /// Number of scale levels.
    #[arg(long)]
    levels: Option<usize>,
    /// Per-level color tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Minimum admissible end-to-end color difference.
    #[arg(long)]
    min_span: Option<f64>,
    /// Monotonicity grid step.
    #[arg(long)]
    grid_step: Option<f64>,
    /// Session config whose `scale` overrides seed the spec (flags win).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output JSON path. Defaults to `<out-dir>/scale_report.json`.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RepeatArgs {
    /// Samples CSV with a repetition column.
    #[arg(long)]
    samples: PathBuf,
    /// Color tolerance for the within-tolerance counts.
    #[arg(long, default_value_t = grasscale::repeat::DEFAULT_REPEAT_TOLERANCE)]
    tolerance: f64,
    /// Output JSON path. Defaults to `<out-dir>/repeatability.json`.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write every per-repetition difference as CSV.
    #[arg(long)]
    deltas_csv: Option<PathBuf>,
}

#[derive(Args)]
struct AnimateArgs {
    /// Keyframe script JSON.
    #[arg(long)]
    script: PathBuf,
    /// Mapping JSON: either a `fit` report or a bare mapping object.
    #[arg(long)]
    mapping: PathBuf,
    /// Simulation colors JSON (yellow, green, optional coverage_max).
    #[arg(long)]
    mix: PathBuf,
    /// Pixel geometry JSON. Defaults to the 40 mm demo display face.
    #[arg(long)]
    geometry: Option<PathBuf>,
    /// Keyframe interval override in seconds.
    #[arg(long)]
    interval: Option<f64>,
    /// Rendered square size per grass pixel, in image pixels.
    #[arg(long, default_value_t = 40)]
    scale_px: u32,
    /// Motor step rate in steps per second; enables travel-time warnings.
    #[arg(long)]
    step_rate: Option<f64>,
    /// Output directory. Defaults to `<out-dir>/animation`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    script: PathBuf,
    #[arg(long)]
    mapping: PathBuf,
    #[arg(long)]
    mix: PathBuf,
    #[arg(long)]
    geometry: Option<PathBuf>,
    #[arg(long)]
    interval: Option<f64>,
    #[arg(long, default_value_t = 40)]
    scale_px: u32,
    /// Output directory. Defaults to `<out-dir>/frames`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measure(args) => commands::measure::run(&cli.out_dir, args),
        Command::Fit(args) => commands::fit::run(&cli.out_dir, args),
        Command::Repeat(args) => commands::repeat::run(&cli.out_dir, args),
        Command::Animate(args) => commands::animate::run_animate(&cli.out_dir, args),
        Command::Render(args) => commands::animate::run_render(&cli.out_dir, args),
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
