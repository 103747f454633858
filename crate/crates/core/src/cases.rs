//! The four benchmark problems on `[0, 1]`, their high-accuracy oracles and
//! the sup-norm error metric.
//!
//! | case | equation                     | left     | right                  | scheme |
//! |------|------------------------------|----------|------------------------|--------|
//! | 1    | `u'' = -20 e^{-10(x-0.7)²}`  | `u = -3` | `u = -2`               | gl     |
//! | 2    | `u'' = -20 e^{-10(x-0.7)²}`  | `u = 5`  | `u' + 200u = 0.1`      | rect   |
//! | 3    | `u'' = -x(1 - sin²(100x))`   | `u = 5`  | `u' + 200u = 0.1`      | abm    |
//! | 4    | `u'' = 2x(5 - u)`            | `u = 3`  | `u = -2`               | abm    |

use std::fmt;
use std::sync::{Arc, OnceLock};
use std::time::Duration;

use crate::classical::{rk4_second_order, Trajectory};
use crate::fracops::Scheme;
use crate::ifoi::{AlphaPartition, IfoiTrace, Rhs, Spacing};
use crate::shooting::{BoundaryCondition, BvpProblem};
use crate::special::erf;
use crate::{Error, GridFunction, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Case4];

    pub fn number(self) -> u8 {
        match self {
            CaseId::Case1 => 1,
            CaseId::Case2 => 2,
            CaseId::Case3 => 3,
            CaseId::Case4 => 4,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case{}", self.number())
    }
}

impl std::str::FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_start_matches("case") {
            "1" => Ok(CaseId::Case1),
            "2" => Ok(CaseId::Case2),
            "3" => Ok(CaseId::Case3),
            "4" => Ok(CaseId::Case4),
            _ => Err(Error::UnknownCase(s.to_string())),
        }
    }
}

type Oracle = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A fully specified benchmark problem.
#[derive(Clone)]
pub struct CaseSpec {
    pub id: CaseId,
    pub problem: BvpProblem,
    pub default_scheme: Scheme,
    pub default_partition: AlphaPartition,
    /// Grid intervals used in the reported runs.
    pub default_n: usize,
    oracle: Oracle,
}

impl fmt::Debug for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaseSpec")
            .field("id", &self.id)
            .field("problem", &self.problem)
            .field("default_scheme", &self.default_scheme)
            .field("default_partition", &self.default_partition)
            .field("default_n", &self.default_n)
            .finish_non_exhaustive()
    }
}

pub fn get_case(id: CaseId) -> CaseSpec {
    match id {
        CaseId::Case1 => build(
            id,
            BoundaryCondition::dirichlet(-3.0),
            BoundaryCondition::dirichlet(-2.0),
        ),
        CaseId::Case2 => build(
            id,
            BoundaryCondition::dirichlet(5.0),
            BoundaryCondition::Robin {
                weight: 200.0,
                value: 0.1,
            },
        ),
        CaseId::Case3 => build(
            id,
            BoundaryCondition::dirichlet(5.0),
            BoundaryCondition::Robin {
                weight: 200.0,
                value: 0.1,
            },
        ),
        CaseId::Case4 => build(
            id,
            BoundaryCondition::dirichlet(3.0),
            BoundaryCondition::dirichlet(-2.0),
        ),
    }
}

impl CaseSpec {
    /// Same equation with different boundary constants; the oracle follows.
    pub fn with_boundary(&self, left: BoundaryCondition, right: BoundaryCondition) -> Result<Self> {
        if !matches!(left, BoundaryCondition::Dirichlet { .. }) {
            return Err(Error::Precondition(
                "left condition must be Dirichlet".into(),
            ));
        }
        Ok(build(self.id, left, right))
    }

    /// High-accuracy reference solution.
    pub fn oracle(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                function: "oracle",
                value: x,
            });
        }
        Ok((self.oracle)(x))
    }

    pub fn oracle_grid(&self, n: usize) -> Result<GridFunction> {
        GridFunction::sample(n, |x| (self.oracle)(x))
    }

    pub fn left_value(&self) -> f64 {
        self.problem.left_bc.value()
    }
}

pub fn oracle_solution(id: CaseId, x: f64) -> Result<f64> {
    get_case(id).oracle(x)
}

/// `max_j |approx(x_j) - oracle(x_j)|` over the approximation's own nodes.
pub fn sup_error(approx: &GridFunction, case: &CaseSpec) -> Result<f64> {
    if !approx.covers(1.0) {
        return Err(Error::InvalidGrid("approximation must span [0, 1]".into()));
    }
    approx
        .nodes()
        .zip(approx.values())
        .try_fold(0.0f64, |m, (x, v)| Ok(m.max((v - case.oracle(x)?).abs())))
}

fn build(id: CaseId, left_bc: BoundaryCondition, right_bc: BoundaryCondition) -> CaseSpec {
    let a = left_bc.value();
    let (rhs, rhs_du, depends_on_u): (Rhs, Rhs, bool) = match id {
        CaseId::Case1 | CaseId::Case2 => (
            Arc::new(|x, _| gaussian_forcing(x)),
            Arc::new(|_, _| 0.0),
            false,
        ),
        CaseId::Case3 => (
            Arc::new(|x, _| oscillatory_forcing(x)),
            Arc::new(|_, _| 0.0),
            false,
        ),
        CaseId::Case4 => (
            Arc::new(|x, u| 2.0 * x * (5.0 - u)),
            Arc::new(|x, _| -2.0 * x),
            true,
        ),
    };
    let (default_scheme, spacing, default_n) = match id {
        CaseId::Case1 => (Scheme::Gl, Spacing::Regular, 100),
        CaseId::Case2 => (Scheme::Rect, Spacing::Regular, 100),
        CaseId::Case3 => (Scheme::Abm, Spacing::Quadratic, 40),
        CaseId::Case4 => (Scheme::Abm, Spacing::Regular, 50),
    };
    let oracle: Oracle = match id {
        CaseId::Case1 | CaseId::Case2 => {
            closed_form_oracle(a, right_bc, gaussian_particular, gaussian_particular_slope)
        }
        CaseId::Case3 => closed_form_oracle(
            a,
            right_bc,
            oscillatory_particular,
            oscillatory_particular_slope,
        ),
        CaseId::Case4 => sturm_liouville_oracle(a, right_bc),
    };
    CaseSpec {
        id,
        problem: BvpProblem {
            rhs,
            rhs_du,
            left_bc,
            right_bc,
            depends_on_u,
        },
        default_scheme,
        default_partition: AlphaPartition::new(spacing, 10).expect("m = 10 is valid"),
        default_n,
        oracle,
    }
}

pub fn gaussian_forcing(x: f64) -> f64 {
    -20.0 * (-10.0 * (x - 0.7) * (x - 0.7)).exp()
}

pub fn oscillatory_forcing(x: f64) -> f64 {
    let s = (100.0 * x).sin();
    -x * (1.0 - s * s)
}

const SQRT_10: f64 = 3.162_277_660_168_379_5;

/// `P(x) = ∫_0^x ∫_0^t -20 e^{-10(s-0.7)²} ds dt`.
///
/// With `k = √10`, `∫ erf(k s) ds = s erf(k s) + e^{-k²s²} / (k√π)`.
fn gaussian_particular(x: f64) -> f64 {
    let k = SQRT_10;
    let scale = -20.0 * std::f64::consts::PI.sqrt() / (2.0 * k);
    let antiderivative =
        |s: f64| s * erf(k * s) + (-k * k * s * s).exp() / (k * std::f64::consts::PI.sqrt());
    scale * (antiderivative(x - 0.7) - antiderivative(-0.7) - x * erf(-0.7 * k))
}

fn gaussian_particular_slope(x: f64) -> f64 {
    let k = SQRT_10;
    let scale = -20.0 * std::f64::consts::PI.sqrt() / (2.0 * k);
    scale * (erf(k * (x - 0.7)) - erf(-0.7 * k))
}

/// Twice-integrated `-x cos²(100x) = -x/2 - x cos(200x)/2` from 0.
fn oscillatory_particular(x: f64) -> f64 {
    let w = 200.0;
    let (s, c) = (w * x).sin_cos();
    let q = -x * c / (w * w) + 2.0 * s / (w * w * w) - x / (w * w);
    -x * x * x / 12.0 - 0.5 * q
}

fn oscillatory_particular_slope(x: f64) -> f64 {
    let w = 200.0;
    let (s, c) = (w * x).sin_cos();
    -x * x / 4.0 - 0.5 * (x * s / w + c / (w * w) - 1.0 / (w * w))
}

/// `u = a + s·x + P(x)` with `s` fixed by the right condition.
fn closed_form_oracle(
    a: f64,
    right: BoundaryCondition,
    p: fn(f64) -> f64,
    dp: fn(f64) -> f64,
) -> Oracle {
    let slope = match right {
        BoundaryCondition::Dirichlet { value } => value - a - p(1.0),
        BoundaryCondition::Robin { weight, value } => {
            (value - dp(1.0) - weight * a - weight * p(1.0)) / (1.0 + weight)
        }
    };
    Arc::new(move |x| a + slope * x + p(x))
}

/// RK4 step count for the case-4 oracle (`h = 1e-6`).
pub const CASE4_ORACLE_STEPS: usize = 1_000_000;
const CASE4_ORACLE_STRIDE: usize = 10;

/// Fundamental trajectories of `u'' = 2x(5 - u)` on `[0, 1]`:
/// the forced solution from rest, then the homogeneous solutions with unit
/// value and unit slope.
pub struct SturmLiouvilleBasis {
    pub forced: Trajectory,
    pub unit_value: Trajectory,
    pub unit_slope: Trajectory,
}

impl SturmLiouvilleBasis {
    pub fn compute(steps: usize) -> Result<Self> {
        let stride = if steps.is_multiple_of(CASE4_ORACLE_STRIDE) {
            CASE4_ORACLE_STRIDE
        } else {
            1
        };
        let forced = |x: f64, u: f64| 2.0 * x * (5.0 - u);
        let homogeneous = |x: f64, u: f64| -2.0 * x * u;
        Ok(Self {
            forced: rk4_second_order(forced, 0.0, 0.0, 1.0, steps, stride)?,
            unit_value: rk4_second_order(homogeneous, 1.0, 0.0, 1.0, steps, stride)?,
            unit_slope: rk4_second_order(homogeneous, 0.0, 1.0, 1.0, steps, stride)?,
        })
    }

    /// Solution with `u(0) = a` and the given right condition.
    pub fn solve(&self, a: f64, right: BoundaryCondition, x: f64) -> f64 {
        let (p1, dp1) = self.forced.end();
        let (v1, dv1) = self.unit_value.end();
        let (w1, dw1) = self.unit_slope.end();
        let c = match right {
            BoundaryCondition::Dirichlet { value } => (value - p1 - a * v1) / w1,
            BoundaryCondition::Robin { weight, value } => {
                (value - dp1 - weight * p1 - a * (dv1 + weight * v1)) / (dw1 + weight * w1)
            }
        };
        self.forced.eval(x).0 + a * self.unit_value.eval(x).0 + c * self.unit_slope.eval(x).0
    }
}

fn case4_basis() -> &'static SturmLiouvilleBasis {
    static BASIS: OnceLock<SturmLiouvilleBasis> = OnceLock::new();
    BASIS.get_or_init(|| {
        SturmLiouvilleBasis::compute(CASE4_ORACLE_STEPS).expect("oracle step count is valid")
    })
}

fn sturm_liouville_oracle(a: f64, right: BoundaryCondition) -> Oracle {
    Arc::new(move |x| case4_basis().solve(a, right, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Fdm,
    Ifoi,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Fdm => "fdm",
            Method::Ifoi => "ifoi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    Diverged,
    Singular,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::Diverged => "diverged",
            Status::Singular => "singular",
        }
    }

    /// Status for a solver failure that is a legitimate numerical outcome.
    /// Configuration faults return `None`.
    pub fn from_error(err: &Error) -> Option<Self> {
        match err {
            Error::Diverged { .. } | Error::NonConvergence { .. } => Some(Status::Diverged),
            Error::SingularCombination { .. } | Error::SingularSystem { .. } => {
                Some(Status::Singular)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveParams {
    pub n: usize,
    pub m: usize,
    pub spacing: Spacing,
    pub scheme: Scheme,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub case: CaseId,
    pub method: Method,
    pub params: SolveParams,
    pub status: Status,
    pub solution: Option<GridFunction>,
    /// Present only when `status` is converged.
    pub sup_error: Option<f64>,
    pub wall_time: Duration,
    /// Stage trace of the particular shooting half (IFOI only).
    pub trace: Option<IfoiTrace>,
}
