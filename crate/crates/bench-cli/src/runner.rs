//! Timed solves, the table reproduction and resolution sweeps.

use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use ifoi_core::cases::{sup_error, CaseId, CaseSpec, Method, SolveParams, SolveReport, Status};
use ifoi_core::fdm::{fdm_linear, fdm_newton, NEWTON_MAX_ITERATIONS, NEWTON_TOLERANCE};
use ifoi_core::fracops::{MemoryPolicy, Scheme};
use ifoi_core::ifoi::{AlphaPartition, IfoiSettings, IfoiTrace, Spacing};
use ifoi_core::shooting::solve_bvp;
use ifoi_core::GridFunction;

use crate::config::{case_spec, Case3Constants, MethodChoice, RunConfig};
use crate::report::{write_reports, CsvRow};
use crate::svg;

/// Resolutions of the case-3 table.
pub const TABLE1_RESOLUTIONS: [usize; 3] = [40, 80, 200];

type Solved = (GridFunction, Option<IfoiTrace>);

fn solve_once(case: &CaseSpec, method: Method, params: &SolveParams) -> ifoi_core::Result<Solved> {
    match method {
        Method::Fdm if case.problem.depends_on_u => {
            let out = fdm_newton(
                &case.problem,
                params.n,
                NEWTON_TOLERANCE,
                NEWTON_MAX_ITERATIONS,
            )?;
            Ok((out.solution, None))
        }
        Method::Fdm => Ok((fdm_linear(&case.problem, params.n)?, None)),
        Method::Ifoi => {
            let settings = IfoiSettings {
                partition: AlphaPartition::new(params.spacing, params.m)?,
                n: params.n,
                scheme: params.scheme,
                policy: MemoryPolicy::Full,
            };
            let s = solve_bvp(&case.problem, &settings)?;
            Ok((s.solution, s.decomposition.traces.0))
        }
    }
}

fn median(mut times: Vec<Duration>) -> Duration {
    times.sort();
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2
    }
}

/// Runs one solve `repeats` times and reports the median wall time of the
/// solve alone. Divergence and singularity become statuses; any other solver
/// error is a configuration fault.
pub fn solve(
    case: &CaseSpec,
    method: Method,
    params: SolveParams,
    repeats: usize,
) -> Result<SolveReport> {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut outcome = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let result = solve_once(case, method, &params);
        times.push(start.elapsed());
        outcome = Some(result);
    }
    let wall_time = median(times);
    let report = |status, solution, sup_error, trace| SolveReport {
        case: case.id,
        method,
        params: params.clone(),
        status,
        solution,
        sup_error,
        wall_time,
        trace,
    };
    match outcome.expect("at least one repeat") {
        Ok((solution, trace)) => {
            let error = sup_error(&solution, case)?;
            Ok(report(
                Status::Converged,
                Some(solution),
                Some(error),
                trace,
            ))
        }
        Err(err) => match Status::from_error(&err) {
            Some(status) => Ok(report(status, None, None, None)),
            None => Err(err).with_context(|| format!("{} {}", case.id, method.name())),
        },
    }
}

fn methods(choice: MethodChoice) -> &'static [Method] {
    match choice {
        MethodChoice::Fdm => &[Method::Fdm],
        MethodChoice::Ifoi => &[Method::Ifoi],
        MethodChoice::Both => &[Method::Fdm, Method::Ifoi],
    }
}

/// Executes the configured solves and writes the CSV (and plots when a trace
/// was requested) into the output directory, if one is set.
pub fn run(config: &RunConfig) -> Result<Vec<SolveReport>> {
    config.validate()?;
    let case = config.case_spec()?;
    let params = SolveParams {
        n: config.n,
        m: config.m,
        spacing: config.spacing,
        scheme: config.scheme,
    };
    let reports = methods(config.method)
        .iter()
        .map(|&method| solve(&case, method, params.clone(), config.repeats))
        .collect::<Result<Vec<_>>>()?;

    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_reports(&dir.join(format!("{}_run.csv", config.case)), &reports)?;
        if config.emit_trace {
            write_plots(dir, &case, &reports)?;
        }
    }
    Ok(reports)
}

fn write_plots(dir: &Path, case: &CaseSpec, reports: &[SolveReport]) -> Result<()> {
    let ifoi = reports
        .iter()
        .find(|r| r.method == Method::Ifoi && r.status == Status::Converged);
    if let Some(trace) = ifoi.and_then(|r| r.trace.as_ref()) {
        let path = dir.join(format!("{}_evolution.svg", case.id));
        std::fs::write(&path, svg::evolution_plot(case.id, trace))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let path = dir.join(format!("{}_comparison.svg", case.id));
    std::fs::write(&path, svg::comparison_plot(case, reports)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Case 3 at the table resolutions with both methods (ABM, quadratic
/// spacing, m = 10 for IFOI). Writes `table1.csv` when `output_dir` is set.
pub fn table1(
    output_dir: Option<&Path>,
    case3: Case3Constants,
    repeats: usize,
) -> Result<Vec<SolveReport>> {
    let case = case_spec(CaseId::Case3, case3)?;
    let mut reports = Vec::with_capacity(2 * TABLE1_RESOLUTIONS.len());
    for method in [Method::Fdm, Method::Ifoi] {
        for n in TABLE1_RESOLUTIONS {
            let params = SolveParams {
                n,
                m: 10,
                spacing: Spacing::Quadratic,
                scheme: Scheme::Abm,
            };
            reports.push(solve(&case, method, params, repeats)?);
        }
    }
    if let Some(dir) = output_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_reports(&dir.join("table1.csv"), &reports)?;
    }
    Ok(reports)
}

/// The configured run repeated over several resolutions. Writes
/// `<case>_sweep.csv` when the config has an output directory.
pub fn sweep(config: &RunConfig, resolutions: &[usize]) -> Result<Vec<SolveReport>> {
    config.validate()?;
    let case = config.case_spec()?;
    let mut reports = Vec::new();
    for &n in resolutions {
        let params = SolveParams {
            n,
            m: config.m,
            spacing: config.spacing,
            scheme: config.scheme,
        };
        for &method in methods(config.method) {
            reports.push(solve(&case, method, params.clone(), config.repeats)?);
        }
    }
    if let Some(dir) = &config.output_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_reports(&dir.join(format!("{}_sweep.csv", config.case)), &reports)?;
    }
    Ok(reports)
}

/// One human-readable line per report.
pub fn summary_line(report: &SolveReport) -> String {
    let row = CsvRow::from_report(report);
    let error = row
        .error
        .map_or_else(|| "-".to_string(), |e| format!("{e:.3e}"));
    format!(
        "{:<6} {:<5} {:<5} n={:<5} m={:<3} {:<10} error={:<10} time={:.3e}s {}",
        row.case, row.method, row.scheme, row.n, row.m, row.spacing, error, row.time_s, row.status
    )
}
