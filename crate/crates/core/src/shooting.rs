//! Linear shooting: a two-point problem becomes two initial-value problems
//! whose solutions are combined as `u = u1 + c·u2`.

use crate::classical::rk4_on_grid;
use crate::ifoi::{ifoi_solve_ivp, IfoiSettings, IfoiTrace, IvpProblem, Rhs};
use crate::{Error, GridFunction, Result};

/// Combination denominators below this make the problem unsolvable by shooting.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// `u = value`.
    Dirichlet { value: f64 },
    /// `u' + weight·u = value`.
    Robin { weight: f64, value: f64 },
}

impl BoundaryCondition {
    pub fn dirichlet(value: f64) -> Self {
        BoundaryCondition::Dirichlet { value }
    }

    pub fn robin(weight: f64, value: f64) -> Result<Self> {
        if !weight.is_finite() || !value.is_finite() {
            return Err(Error::Precondition(format!(
                "Robin constants must be finite, got weight {weight}, value {value}"
            )));
        }
        Ok(BoundaryCondition::Robin { weight, value })
    }

    pub fn value(&self) -> f64 {
        match *self {
            BoundaryCondition::Dirichlet { value } | BoundaryCondition::Robin { value, .. } => {
                value
            }
        }
    }

    /// Residual at the right end of `u`, with the slope taken by the
    /// second-order backward difference.
    pub fn right_residual(&self, u: &GridFunction) -> f64 {
        match *self {
            BoundaryCondition::Dirichlet { value } => u.last() - value,
            BoundaryCondition::Robin { weight, value } => {
                u.backward_slope() + weight * u.last() - value
            }
        }
    }
}

/// `u'' = rhs(x, u)` on `[0, 1]` with one condition at each end.
#[derive(Clone)]
pub struct BvpProblem {
    pub rhs: Rhs,
    /// `∂rhs/∂u`, used by the Newton finite-difference solver.
    pub rhs_du: Rhs,
    pub left_bc: BoundaryCondition,
    pub right_bc: BoundaryCondition,
    /// Whether `rhs` reads `u`. The solvers assume `rhs` is affine in `u`
    /// when it does.
    pub depends_on_u: bool,
}

impl BvpProblem {
    /// A problem whose right-hand side ignores `u`.
    pub fn forced(
        forcing: impl Fn(f64) -> f64 + Send + Sync + 'static,
        left_bc: BoundaryCondition,
        right_bc: BoundaryCondition,
    ) -> Self {
        Self {
            rhs: std::sync::Arc::new(move |x, _| forcing(x)),
            rhs_du: std::sync::Arc::new(|_, _| 0.0),
            left_bc,
            right_bc,
            depends_on_u: false,
        }
    }
}

impl std::fmt::Debug for BvpProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BvpProblem")
            .field("left_bc", &self.left_bc)
            .field("right_bc", &self.right_bc)
            .field("depends_on_u", &self.depends_on_u)
            .finish_non_exhaustive()
    }
}

/// Solves `u'' = rhs(x, u)` from initial data onto a uniform grid.
pub trait IvpSolver {
    fn solve_ivp(&self, problem: &IvpProblem) -> Result<IvpSolution>;
}

#[derive(Debug, Clone)]
pub struct IvpSolution {
    pub grid: GridFunction,
    pub trace: Option<IfoiTrace>,
}

impl IvpSolver for IfoiSettings {
    fn solve_ivp(&self, problem: &IvpProblem) -> Result<IvpSolution> {
        let (grid, trace) = ifoi_solve_ivp(problem, self)?;
        Ok(IvpSolution {
            grid,
            trace: Some(trace),
        })
    }
}

/// Classical RK4 reference with `substeps` steps per grid interval.
#[derive(Debug, Clone, Copy)]
pub struct Rk4Reference {
    pub n: usize,
    pub substeps: usize,
}

impl IvpSolver for Rk4Reference {
    fn solve_ivp(&self, problem: &IvpProblem) -> Result<IvpSolution> {
        let rhs = problem.rhs.clone();
        let grid = rk4_on_grid(
            move |x, u| rhs(x, u),
            problem.u0,
            problem.s0,
            self.n,
            self.substeps,
        )?;
        Ok(IvpSolution { grid, trace: None })
    }
}

/// Particular half `u1` (`u1(0) = a`, `u1'(0) = 0`) and homogeneous half `u2`
/// (`u2(0) = 0`, `u2'(0) = 1`).
#[derive(Debug, Clone)]
pub struct ShootingPair {
    pub u1: GridFunction,
    pub u2: GridFunction,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub pair: ShootingPair,
    /// IFOI stage traces of the particular and homogeneous halves, when the
    /// solver records them.
    pub traces: (Option<IfoiTrace>, Option<IfoiTrace>),
}

pub fn decompose(problem: &BvpProblem, solver: &dyn IvpSolver) -> Result<Decomposition> {
    let a = match problem.left_bc {
        BoundaryCondition::Dirichlet { value } => value,
        BoundaryCondition::Robin { .. } => {
            return Err(Error::Precondition(
                "shooting needs a Dirichlet condition at x = 0".into(),
            ))
        }
    };

    let particular = IvpProblem {
        rhs: problem.rhs.clone(),
        u0: a,
        s0: 0.0,
        depends_on_u: problem.depends_on_u,
    };
    // The cases are affine in u, so dropping rhs(x, 0) leaves the homogeneous part.
    let homogeneous = if problem.depends_on_u {
        let rhs = problem.rhs.clone();
        IvpProblem::new(move |x, u| rhs(x, u) - rhs(x, 0.0), 0.0, 1.0, true)
    } else {
        IvpProblem::new(|_, _| 0.0, 0.0, 1.0, false)
    };

    let s1 = solver.solve_ivp(&particular)?;
    let s2 = solver.solve_ivp(&homogeneous)?;
    if !s1.grid.same_grid(&s2.grid) {
        return Err(Error::InvalidGrid(
            "shooting halves on different grids".into(),
        ));
    }
    Ok(Decomposition {
        pair: ShootingPair {
            u1: s1.grid,
            u2: s2.grid,
        },
        traces: (s1.trace, s2.trace),
    })
}

/// The `c` for which `u1 + c·u2` satisfies `right_bc`.
pub fn match_coefficient(pair: &ShootingPair, right_bc: &BoundaryCondition) -> Result<f64> {
    let (numerator, denominator) = match *right_bc {
        BoundaryCondition::Dirichlet { value } => (value - pair.u1.last(), pair.u2.last()),
        BoundaryCondition::Robin { weight, value } => (
            value - pair.u1.backward_slope() - weight * pair.u1.last(),
            pair.u2.backward_slope() + weight * pair.u2.last(),
        ),
    };
    if denominator.is_nan() || denominator.abs() < SINGULARITY_THRESHOLD {
        return Err(Error::SingularCombination { denominator });
    }
    Ok(numerator / denominator)
}

pub fn combine(pair: &ShootingPair, c: f64) -> Result<GridFunction> {
    if !pair.u1.same_grid(&pair.u2) {
        return Err(Error::InvalidGrid(
            "shooting halves on different grids".into(),
        ));
    }
    let values = pair
        .u1
        .values()
        .iter()
        .zip(pair.u2.values())
        .map(|(a, b)| a + c * b)
        .collect();
    pair.u1.with_values(values)
}

#[derive(Debug, Clone)]
pub struct ShootingSolution {
    pub solution: GridFunction,
    pub c: f64,
    pub decomposition: Decomposition,
}

/// Decompose, match the right condition, combine.
pub fn solve_bvp(problem: &BvpProblem, solver: &dyn IvpSolver) -> Result<ShootingSolution> {
    let decomposition = decompose(problem, solver)?;
    let c = match_coefficient(&decomposition.pair, &problem.right_bc)?;
    let solution = combine(&decomposition.pair, c)?;
    Ok(ShootingSolution {
        solution,
        c,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pair(u1: impl Fn(f64) -> f64, u2: impl Fn(f64) -> f64, n: usize) -> ShootingPair {
        ShootingPair {
            u1: GridFunction::sample(n, u1).unwrap(),
            u2: GridFunction::sample(n, u2).unwrap(),
        }
    }

    #[test]
    fn dirichlet_arithmetic() {
        let p = pair(|x| 0.3 * x, |x| x, 10);
        let c = match_coefficient(&p, &BoundaryCondition::dirichlet(-2.0)).unwrap();
        assert_abs_diff_eq!(c, -2.3, epsilon = 1e-15);
    }

    #[test]
    fn robin_formula_instantiation() {
        // u1 quadratic so its backward slope is exact: u1(1) = p, u1'(1) = q.
        let p_val = 0.7;
        let q_val = -1.3;
        let p = pair(
            move |x| p_val + q_val * (x - 1.0) + 0.5 * (x - 1.0) * (x - 1.0),
            |x| x,
            20,
        );
        let bc = BoundaryCondition::robin(200.0, 0.1).unwrap();
        let c = match_coefficient(&p, &bc).unwrap();
        assert_abs_diff_eq!(c, (0.1 - q_val - 200.0 * p_val) / 201.0, epsilon = 1e-12);
    }

    #[test]
    fn already_matched_needs_no_correction() {
        let p = pair(|x| -2.0 * x * x, |x| x, 10);
        assert_eq!(
            match_coefficient(&p, &BoundaryCondition::dirichlet(-2.0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn singular_combination() {
        let p = pair(|x| x, |x| x * (1.0 - x), 10);
        let err = match_coefficient(&p, &BoundaryCondition::dirichlet(1.0)).unwrap_err();
        assert!(matches!(err, Error::SingularCombination { .. }));
        // u2 = x satisfies u' - u = 0 at x = 1.
        let p = pair(|x| x, |x| x, 10);
        let bc = BoundaryCondition::robin(-1.0, 0.0).unwrap();
        assert!(matches!(
            match_coefficient(&p, &bc),
            Err(Error::SingularCombination { .. })
        ));
    }

    #[test]
    fn combine_examples() {
        let p = pair(|x| x.sin(), |x| x * x, 12);
        assert_eq!(combine(&p, 0.0).unwrap(), p.u1);
        let zero_first = ShootingPair {
            u1: GridFunction::zeros(12).unwrap(),
            u2: p.u2.clone(),
        };
        assert_eq!(combine(&zero_first, 1.0).unwrap(), p.u2);
    }

    #[test]
    fn robin_needs_finite_weight() {
        assert!(BoundaryCondition::robin(f64::INFINITY, 0.0).is_err());
    }
}
