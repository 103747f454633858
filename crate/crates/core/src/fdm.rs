//! Finite-difference reference solvers.
//!
//! Interior rows use the central second difference. A Dirichlet end pins the
//! value; a Robin end at `x = 1` uses the one-sided second-order slope
//! `(3u_n - 4u_{n-1} + u_{n-2}) / 2h`, whose `u_{n-2}` entry is eliminated
//! against row `n-1` so the system stays tridiagonal.

use crate::shooting::{BoundaryCondition, BvpProblem};
use crate::{Error, GridFunction, Result};

/// Pivots smaller than this make the sweep fail.
pub const PIVOT_GUARD: f64 = 1e-14;
pub const NEWTON_TOLERANCE: f64 = 1e-10;
pub const NEWTON_MAX_ITERATIONS: usize = 50;
pub const MIN_INTERVALS: usize = 4;

/// Tridiagonal system; `sub[0]` and `sup[last]` are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn zeros(len: usize) -> Self {
        Self {
            sub: vec![0.0; len],
            diag: vec![0.0; len],
            sup: vec![0.0; len],
            rhs: vec![0.0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Forward elimination and back substitution.
    pub fn solve(&self) -> Result<Vec<f64>> {
        let n = self.len();
        if n == 0 || self.sub.len() != n || self.sup.len() != n || self.rhs.len() != n {
            return Err(Error::Precondition(
                "inconsistent tridiagonal lengths".into(),
            ));
        }
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut pivot = self.diag[0];
        if pivot.is_nan() || pivot.abs() < PIVOT_GUARD {
            return Err(Error::SingularSystem { row: 0, pivot });
        }
        c[0] = self.sup[0] / pivot;
        d[0] = self.rhs[0] / pivot;
        for i in 1..n {
            pivot = self.diag[i] - self.sub[i] * c[i - 1];
            if pivot.is_nan() || pivot.abs() < PIVOT_GUARD {
                return Err(Error::SingularSystem { row: i, pivot });
            }
            c[i] = self.sup[i] / pivot;
            d[i] = (self.rhs[i] - self.sub[i] * d[i - 1]) / pivot;
        }
        let mut x = d;
        for i in (0..n - 1).rev() {
            x[i] -= c[i] * x[i + 1];
        }
        Ok(x)
    }
}

/// Builds the system for a linear operator row set. `interior(j)` returns the
/// `(sub, diag, sup, rhs)` of row `j` scaled by `h²`; `left`/`right` give the
/// boundary rows through `boundary_row`.
fn assemble(
    n: usize,
    h: f64,
    interior: impl Fn(usize) -> (f64, f64, f64, f64),
    left_rhs: f64,
    right: BoundaryRow,
) -> Result<TridiagonalSystem> {
    let mut sys = TridiagonalSystem::zeros(n + 1);
    sys.diag[0] = 1.0;
    sys.rhs[0] = left_rhs;
    for j in 1..n {
        let (a, b, c, r) = interior(j);
        sys.sub[j] = a;
        sys.diag[j] = b;
        sys.sup[j] = c;
        sys.rhs[j] = r;
    }
    match right {
        BoundaryRow::Value(rhs) => {
            sys.diag[n] = 1.0;
            sys.rhs[n] = rhs;
        }
        BoundaryRow::Robin { weight, rhs } => {
            let inv = 1.0 / (2.0 * h);
            let (fringe, mut sub, mut diag) = (inv, -4.0 * inv, 3.0 * inv + weight);
            let mut r = rhs;
            if n >= 2 {
                // Row n-1 is the only other row touching u_{n-2}.
                let factor = fringe / sys.sub[n - 1];
                sub -= factor * sys.diag[n - 1];
                diag -= factor * sys.sup[n - 1];
                r -= factor * sys.rhs[n - 1];
            }
            sys.sub[n] = sub;
            sys.diag[n] = diag;
            sys.rhs[n] = r;
        }
    }
    Ok(sys)
}

enum BoundaryRow {
    Value(f64),
    Robin { weight: f64, rhs: f64 },
}

fn left_dirichlet(problem: &BvpProblem) -> Result<f64> {
    match problem.left_bc {
        BoundaryCondition::Dirichlet { value } => Ok(value),
        BoundaryCondition::Robin { .. } => Err(Error::Precondition(
            "finite differences support a Dirichlet condition at x = 0 only".into(),
        )),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < MIN_INTERVALS {
        return Err(Error::InvalidGrid(format!(
            "finite differences need at least {MIN_INTERVALS} intervals, got {n}"
        )));
    }
    Ok(())
}

/// Central-difference solution of a problem whose right-hand side ignores `u`.
pub fn fdm_linear(problem: &BvpProblem, n: usize) -> Result<GridFunction> {
    check_n(n)?;
    if problem.depends_on_u {
        return Err(Error::Precondition(
            "fdm_linear needs a right-hand side independent of u".into(),
        ));
    }
    let a = left_dirichlet(problem)?;
    let grid = GridFunction::zeros(n)?;
    let h = grid.h();
    let h2 = h * h;
    let right = match problem.right_bc {
        BoundaryCondition::Dirichlet { value } => BoundaryRow::Value(value),
        BoundaryCondition::Robin { weight, value } => BoundaryRow::Robin { weight, rhs: value },
    };
    let sys = assemble(
        n,
        h,
        |j| (1.0, -2.0, 1.0, h2 * (problem.rhs)(grid.x(j), 0.0)),
        a,
        right,
    )?;
    grid.with_values(sys.solve()?)
}

#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub solution: GridFunction,
    /// Sup norm of each Newton update, in order.
    pub update_norms: Vec<f64>,
}

impl NewtonOutcome {
    pub fn iterations(&self) -> usize {
        self.update_norms.len()
    }
}

/// Newton iteration on `(U_{j-1} - 2U_j + U_{j+1})/h² - rhs(x_j, U_j) = 0`.
///
/// Starts from the linear function that satisfies both boundary conditions.
pub fn fdm_newton(
    problem: &BvpProblem,
    n: usize,
    tol: f64,
    max_iter: usize,
) -> Result<NewtonOutcome> {
    check_n(n)?;
    let a = left_dirichlet(problem)?;
    let grid = GridFunction::zeros(n)?;
    let h = grid.h();
    let h2 = h * h;
    let xs: Vec<f64> = grid.nodes().collect();

    let slope = match problem.right_bc {
        BoundaryCondition::Dirichlet { value } => value - a,
        BoundaryCondition::Robin { weight, value } if (1.0 + weight).abs() > 1e-12 => {
            (value - weight * a) / (1.0 + weight)
        }
        BoundaryCondition::Robin { .. } => 0.0,
    };
    let mut u: Vec<f64> = xs.iter().map(|x| a + slope * x).collect();

    let mut update_norms = Vec::new();
    for _ in 0..max_iter {
        let right = match problem.right_bc {
            BoundaryCondition::Dirichlet { value } => BoundaryRow::Value(value - u[n]),
            BoundaryCondition::Robin { weight, value } => {
                let slope = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * h);
                BoundaryRow::Robin {
                    weight,
                    rhs: value - slope - weight * u[n],
                }
            }
        };
        let sys = assemble(
            n,
            h,
            |j| {
                let x = xs[j];
                let residual = u[j - 1] - 2.0 * u[j] + u[j + 1] - h2 * (problem.rhs)(x, u[j]);
                (1.0, -2.0 - h2 * (problem.rhs_du)(x, u[j]), 1.0, -residual)
            },
            a - u[0],
            right,
        )?;
        let delta = sys.solve()?;
        let norm = delta.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        for (ui, di) in u.iter_mut().zip(&delta) {
            *ui += di;
        }
        update_norms.push(norm);
        if !norm.is_finite() {
            break;
        }
        if norm < tol {
            return Ok(NewtonOutcome {
                solution: grid.with_values(u)?,
                update_norms,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: update_norms.len(),
        last_update: update_norms.last().copied().unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomas_small_system() {
        let sys = TridiagonalSystem {
            sub: vec![0.0, -1.0, -1.0],
            diag: vec![2.0, 2.0, 2.0],
            sup: vec![-1.0, -1.0, 0.0],
            rhs: vec![1.0, 0.0, 1.0],
        };
        let x = sys.solve().unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_pivot_detected() {
        let sys = TridiagonalSystem {
            sub: vec![0.0, 1.0],
            diag: vec![1.0, 1.0],
            sup: vec![1.0, 0.0],
            rhs: vec![1.0, 1.0],
        };
        assert!(matches!(
            sys.solve(),
            Err(Error::SingularSystem { row: 1, .. })
        ));
    }

    #[test]
    fn quadratic_exact_dirichlet() {
        let p = BvpProblem::forced(
            |_| 2.0,
            BoundaryCondition::dirichlet(0.0),
            BoundaryCondition::dirichlet(1.0),
        );
        for n in [4, 7, 50] {
            let u = fdm_linear(&p, n).unwrap();
            for (x, v) in u.nodes().zip(u.values()) {
                assert!((v - x * x).abs() <= 1e-12, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn quadratic_exact_robin() {
        // u = 1 + x - 3x², u'(1) + 2u(1) = -5 - 2 = -7.
        let p = BvpProblem::forced(
            |_| -6.0,
            BoundaryCondition::dirichlet(1.0),
            BoundaryCondition::robin(2.0, -7.0).unwrap(),
        );
        let u = fdm_linear(&p, 9).unwrap();
        for (x, v) in u.nodes().zip(u.values()) {
            assert!((v - (1.0 + x - 3.0 * x * x)).abs() <= 1e-12);
        }
    }

    #[test]
    fn too_few_intervals() {
        let p = BvpProblem::forced(
            |_| 0.0,
            BoundaryCondition::dirichlet(0.0),
            BoundaryCondition::dirichlet(0.0),
        );
        assert!(fdm_linear(&p, 3).is_err());
        assert!(fdm_newton(&p, 3, 1e-10, 5).is_err());
    }

    #[test]
    fn linear_solver_rejects_u_dependence() {
        let mut p = BvpProblem::forced(
            |_| 0.0,
            BoundaryCondition::dirichlet(0.0),
            BoundaryCondition::dirichlet(0.0),
        );
        p.depends_on_u = true;
        assert!(matches!(fdm_linear(&p, 10), Err(Error::Precondition(_))));
    }

    #[test]
    fn newton_reports_non_convergence() {
        use std::sync::Arc;
        // u'' = e^u with a wildly wrong Jacobian sign cannot settle in 3 steps.
        let p = BvpProblem {
            rhs: Arc::new(|_, u: f64| u.exp()),
            rhs_du: Arc::new(|_, u: f64| -u.exp()),
            left_bc: BoundaryCondition::dirichlet(0.0),
            right_bc: BoundaryCondition::dirichlet(0.0),
            depends_on_u: true,
        };
        let err = fdm_newton(&p, 20, 1e-14, 3).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { iterations: 3, .. }));
    }
}
