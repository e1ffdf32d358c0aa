use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use futaki_core::arith::{parse_rational, Rational};
use futaki_core::cli::{
    catalog_names, emit, load_catalog, load_scenario, run, CliError, Command, Options, OutputFormat,
    Samples, ScenarioFile,
};

#[derive(Parser)]
#[command(name = "futaki", version, about = "Exact coupled Futaki invariants by equivariant localization")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Localized volumes, Fut as a rational function, and its zeros.
    Localize(Common),
    /// Polytope volumes, moments and Fut from the toric block.
    Toric(Common),
    /// Certified zeros of Fut on the validity interval.
    Roots(Common),
    /// Compare the localization engine with the polytope oracle.
    Verify(Common),
    /// Exact Fut values at sample points.
    Sample(Common),
    /// Structural checks and localized volumes.
    Validate(Common),
    /// List the built-in scenarios.
    Catalog,
}

#[derive(Args)]
struct Common {
    /// Built-in scenario name.
    #[arg(long, conflicts_with = "scenario")]
    catalog: Option<String>,
    /// Path to a scenario JSON file.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Parameter value, e.g. 1/2.
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    param_value: Option<Rational>,
    /// Sample count or comma-separated parameter values.
    #[arg(long, default_value = "5")]
    samples: String,
    /// Maximum width of isolating intervals.
    #[arg(long, value_parser = parse_rational_arg)]
    root_width: Option<Rational>,
    /// text, structured or csv.
    #[arg(long, default_value = "text")]
    format: OutputFormat,
    /// Moment direction, e.g. 0,0,0,1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    direction: Option<Vec<i64>>,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn load(common: &Common) -> Result<ScenarioFile, CliError> {
    match (&common.catalog, &common.scenario) {
        (Some(name), _) => Ok(load_catalog(name)?),
        (None, Some(path)) => Ok(load_scenario(path)?),
        (None, None) => Err(CliError::Usage("one of --catalog or --scenario is required".into())),
    }
}

fn execute(command: Command, common: &Common) -> Result<i32, CliError> {
    let file = load(common)?;
    let samples = Samples::parse(&common.samples).map_err(|e| CliError::Usage(format!("--samples: {e}")))?;
    let mut options = Options {
        param_value: common.param_value.clone(),
        samples,
        direction: common.direction.clone(),
        ..Options::default()
    };
    if let Some(w) = &common.root_width {
        options.root_width = w.clone();
    }
    let output = run(command, &file, &options)?;
    print!("{}", emit(&output, common.format));
    Ok(output.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match &cli.command {
        Cmd::Localize(c) => (Command::Localize, c),
        Cmd::Toric(c) => (Command::Toric, c),
        Cmd::Roots(c) => (Command::Roots, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::Sample(c) => (Command::Sample, c),
        Cmd::Validate(c) => (Command::Validate, c),
        Cmd::Catalog => {
            for name in catalog_names() {
                println!("{name}");
            }
            return ExitCode::SUCCESS;
        }
    };
    match execute(command, common) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
