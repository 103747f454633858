//! Iterative Fractional Order Integration.
//!
//! The second antiderivative of the forcing is reached through `m` fractional
//! integration stages whose orders add up to 2. A right-hand side that reads
//! `u` is handled by Picard iteration around the whole staged composition.

use std::sync::Arc;

use crate::fracops::{self, FracOrder, MemoryPolicy, Scheme};
use crate::{Error, GridFunction, Result};

/// Magnitude above which an intermediate value counts as divergence.
pub const DIVERGENCE_GUARD: f64 = 1e8;
pub const PICARD_TOLERANCE: f64 = 1e-10;
pub const PICARD_MAX_ITERATIONS: usize = 200;
/// Smallest grid accepted by [`ifoi_solve_ivp`].
pub const MIN_INTERVALS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spacing {
    Regular,
    Quadratic,
}

impl Spacing {
    pub fn name(self) -> &'static str {
        match self {
            Spacing::Regular => "regular",
            Spacing::Quadratic => "quadratic",
        }
    }
}

impl std::str::FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(Spacing::Regular),
            "quadratic" => Ok(Spacing::Quadratic),
            other => Err(Error::Precondition(format!("unknown spacing `{other}`"))),
        }
    }
}

/// Cumulative integration orders `0 = S_0 < S_1 < ... < S_m = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaPartition {
    spacing: Spacing,
    cumulative: Vec<f64>,
}

impl AlphaPartition {
    /// Regular: `S_k = 2k/m`. Quadratic: `S_k = 2(k/m)²`.
    pub fn new(spacing: Spacing, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPartition(
                "stage count must be positive".into(),
            ));
        }
        let mf = m as f64;
        let mut cumulative: Vec<f64> = (0..=m)
            .map(|k| {
                let r = k as f64 / mf;
                match spacing {
                    Spacing::Regular => 2.0 * r,
                    Spacing::Quadratic => 2.0 * r * r,
                }
            })
            .collect();
        cumulative[m] = 2.0;
        Ok(Self {
            spacing,
            cumulative,
        })
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn stage_count(&self) -> usize {
        self.cumulative.len() - 1
    }

    /// `S_1, ..., S_m`.
    pub fn cumulative_orders(&self) -> &[f64] {
        &self.cumulative[1..]
    }

    /// Per-stage orders `alpha_k = -(S_k - S_{k-1})`, all in `[-2, 0)`.
    pub fn stage_orders(&self) -> Vec<FracOrder> {
        self.cumulative
            .windows(2)
            .map(|w| FracOrder::integration(-(w[1] - w[0])).expect("partition is increasing"))
            .collect()
    }
}

pub fn make_alpha_partition(spacing: Spacing, m: usize) -> Result<AlphaPartition> {
    AlphaPartition::new(spacing, m)
}

pub type Rhs = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// `u'' = rhs(x, u)`, `u(0) = u0`, `u'(0) = s0` on `[0, 1]`.
#[derive(Clone)]
pub struct IvpProblem {
    pub rhs: Rhs,
    pub u0: f64,
    pub s0: f64,
    /// Whether `rhs` reads its `u` argument; enables Picard iteration.
    pub depends_on_u: bool,
}

impl IvpProblem {
    pub fn new(
        rhs: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        u0: f64,
        s0: f64,
        depends_on_u: bool,
    ) -> Self {
        Self {
            rhs: Arc::new(rhs),
            u0,
            s0,
            depends_on_u,
        }
    }
}

impl std::fmt::Debug for IvpProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IvpProblem")
            .field("u0", &self.u0)
            .field("s0", &self.s0)
            .field("depends_on_u", &self.depends_on_u)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub struct IfoiSettings {
    pub partition: AlphaPartition,
    /// Grid intervals on `[0, 1]`.
    pub n: usize,
    pub scheme: Scheme,
    pub policy: MemoryPolicy,
}

/// Stage snapshots of the final pass, in the solution frame
/// `u0 + s0·x + I^{S_k} Q`.
#[derive(Debug, Clone)]
pub struct IfoiTrace {
    pub forcing: GridFunction,
    pub stages: Vec<(f64, GridFunction)>,
    pub picard_iterations: usize,
}

impl IfoiTrace {
    pub fn final_stage(&self) -> &GridFunction {
        &self.stages.last().expect("at least one stage").1
    }
}

pub fn ifoi_solve_ivp(
    problem: &IvpProblem,
    settings: &IfoiSettings,
) -> Result<(GridFunction, IfoiTrace)> {
    if settings.n < MIN_INTERVALS {
        return Err(Error::InvalidGrid(format!(
            "IFOI needs at least {MIN_INTERVALS} intervals, got {}",
            settings.n
        )));
    }
    let base = GridFunction::sample(settings.n, |x| problem.u0 + problem.s0 * x)?;

    if !problem.depends_on_u {
        let (u, stages, forcing) = staged_pass(problem, settings, &base, &base)?;
        return Ok((
            u,
            IfoiTrace {
                forcing,
                stages,
                picard_iterations: 0,
            },
        ));
    }

    let mut current = GridFunction::sample(settings.n, |_| problem.u0)?;
    let mut last_update = f64::INFINITY;
    for iteration in 1..=PICARD_MAX_ITERATIONS {
        let (next, stages, forcing) = staged_pass(problem, settings, &base, &current)?;
        last_update = next.sup_distance(&current)?;
        current = next;
        if last_update < PICARD_TOLERANCE {
            return Ok((
                current,
                IfoiTrace {
                    forcing,
                    stages,
                    picard_iterations: iteration,
                },
            ));
        }
    }
    Err(Error::NonConvergence {
        iterations: PICARD_MAX_ITERATIONS,
        last_update,
    })
}

type Pass = (GridFunction, Vec<(f64, GridFunction)>, GridFunction);

/// One evaluation of `base + I²[rhs(·, u)]` through the partition stages.
fn staged_pass(
    problem: &IvpProblem,
    settings: &IfoiSettings,
    base: &GridFunction,
    u: &GridFunction,
) -> Result<Pass> {
    let forcing: Vec<f64> = u
        .nodes()
        .zip(u.values())
        .map(|(x, &v)| (problem.rhs)(x, v))
        .collect();
    guard(&forcing)?;
    let forcing = base.with_values(forcing)?;

    let mut stage = forcing.clone();
    let mut stages = Vec::with_capacity(settings.partition.stage_count());
    for (alpha, &s) in settings
        .partition
        .stage_orders()
        .into_iter()
        .zip(settings.partition.cumulative_orders())
    {
        stage = fracops::apply(settings.scheme, &stage, alpha, settings.policy)?;
        guard(stage.values())?;
        let shifted = stage
            .values()
            .iter()
            .zip(base.values())
            .map(|(v, b)| v + b)
            .collect();
        stages.push((s, base.with_values(shifted)?));
    }
    let solution = stages.last().expect("partition has a stage").1.clone();
    Ok((solution, stages, forcing))
}

fn guard(values: &[f64]) -> Result<()> {
    match values
        .iter()
        .find(|v| !v.is_finite() || v.abs() > DIVERGENCE_GUARD)
    {
        Some(v) => Err(Error::Diverged { magnitude: v.abs() }),
        None => Ok(()),
    }
}

/// Sup-norm gap between the staged composition and one order-2 application.
pub fn compose_check(f: &GridFunction, partition: &AlphaPartition, scheme: Scheme) -> Result<f64> {
    let policy = MemoryPolicy::Full;
    let mut staged = f.clone();
    for alpha in partition.stage_orders() {
        staged = fracops::apply(scheme, &staged, alpha, policy)?;
    }
    let direct = fracops::apply(scheme, f, FracOrder::integration(-2.0)?, policy)?;
    staged.sup_distance(&direct)
}
