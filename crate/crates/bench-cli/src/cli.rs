//! Command-line interface. Flags override values from `--config`.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use ifoi_core::cases::{CaseId, SolveReport};
use ifoi_core::fracops::Scheme;
use ifoi_core::ifoi::Spacing;

use crate::config::{Case3Constants, ConfigFile, MethodChoice, RunConfig};
use crate::runner;

#[derive(Debug, Parser)]
#[command(
    name = "ifoi-bench",
    version,
    about = "IFOI and finite-difference benchmark runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one case with FDM, IFOI or both.
    Run(RunArgs),
    /// Case 3 at N = 40, 80, 200 with both methods.
    Table1(Table1Args),
    /// Repeat a run over several resolutions.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Optional key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Method: fdm, ifoi or both.
    #[arg(long)]
    pub method: Option<MethodChoice>,
    /// Number of alpha stages.
    #[arg(long)]
    pub m: Option<usize>,
    /// Stage spacing: regular or quadratic
    #[arg(long = "alpha-spacing")]
    pub alpha_spacing: Option<Spacing>,
    /// Quadrature scheme: rect, gl or abm
    #[arg(long)]
    pub scheme: Option<Scheme>,
    /// Timing repetitions; the median is reported.
    #[arg(long)]
    pub repeats: Option<usize>,
    /// Directory for CSV and SVG output; nothing is written without it
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Case-3 left value.
    #[arg(long, allow_hyphen_values = true)]
    pub a3: Option<f64>,
    /// Case-3 Robin weight.
    #[arg(long, allow_hyphen_values = true)]
    pub b3: Option<f64>,
    /// Case-3 Robin right-hand value.
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Case number, 1 to 4.
    #[arg(long)]
    pub case: Option<CaseId>,
    /// Grid intervals.
    #[arg(long)]
    pub n: Option<usize>,
    /// Write stage-evolution and comparison plots.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    /// Directory for CSV and SVG output; nothing is written without it
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub a3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub case: Option<CaseId>,
    /// Comma-separated resolutions, e.g. 40,80,200.
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn case3_from(
    file: &ConfigFile,
    a3: Option<f64>,
    b3: Option<f64>,
    c3: Option<f64>,
) -> Result<Case3Constants> {
    let d = Case3Constants::default();
    Ok(Case3Constants {
        a: a3.or(file.get("a3")?).unwrap_or(d.a),
        b: b3.or(file.get("b3")?).unwrap_or(d.b),
        c: c3.or(file.get("c3")?).unwrap_or(d.c),
    })
}

/// Merges defaults, the config file and flags, in increasing precedence.
pub fn resolve(
    case: Option<CaseId>,
    n: Option<usize>,
    trace: bool,
    common: &CommonArgs,
) -> Result<RunConfig> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let case = match case.or(file.get("case")?) {
        Some(c) => c,
        None => bail!("a case is required (--case or `case` in the config file)"),
    };
    let base = RunConfig::for_case(case);
    let config = RunConfig {
        case,
        method: common.method.or(file.get("method")?).unwrap_or(base.method),
        n: n.or(file.get("n")?).unwrap_or(base.n),
        m: common.m.or(file.get("m")?).unwrap_or(base.m),
        spacing: common
            .alpha_spacing
            .or(file.get("alpha-spacing")?)
            .unwrap_or(base.spacing),
        scheme: common.scheme.or(file.get("scheme")?).unwrap_or(base.scheme),
        repeats: common
            .repeats
            .or(file.get("repeats")?)
            .unwrap_or(base.repeats),
        output_dir: common.out.clone().or(file.get("out")?),
        emit_trace: trace || file.get_bool("trace")?.unwrap_or(false),
        case3: case3_from(&file, common.a3, common.b3, common.c3)?,
    };
    config.validate()?;
    Ok(config)
}

/// Runs a parsed command and returns its reports.
pub fn execute(cli: &Cli) -> Result<Vec<SolveReport>> {
    match &cli.command {
        Command::Run(args) => {
            let config = resolve(args.case, args.n, args.trace, &args.common)?;
            runner::run(&config)
        }
        Command::Table1(args) => {
            if args.repeats == 0 {
                bail!("repeats must be at least 1");
            }
            let case3 = case3_from(&ConfigFile::default(), args.a3, args.b3, args.c3)?;
            runner::table1(args.out.as_deref(), case3, args.repeats)
        }
        Command::Sweep(args) => {
            let config = resolve(args.case, None, false, &args.common)?;
            runner::sweep(&config, &args.n_list)
        }
    }
}
