//! Classical fixed-step RK4 for `u'' = g(x, u)`, used for reference IVP
//! solutions and the case-4 oracle.

use crate::{Error, GridFunction, Result};

/// Samples of `u` and `u'` on a uniform grid, with cubic Hermite
/// interpolation in between.
#[derive(Debug, Clone)]
pub struct Trajectory {
    spacing: f64,
    u: Vec<f64>,
    du: Vec<f64>,
}

impl Trajectory {
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn end(&self) -> (f64, f64) {
        (*self.u.last().unwrap(), *self.du.last().unwrap())
    }

    /// `(u(x), u'(x))` for `x` inside the sampled span.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let last = self.u.len() - 1;
        let pos = (x / self.spacing).clamp(0.0, last as f64);
        let i = (pos.floor() as usize).min(last.saturating_sub(1));
        let t = pos - i as f64;
        let h = self.spacing;
        let (p0, p1) = (self.u[i], self.u[i + 1]);
        let (m0, m1) = (self.du[i] * h, self.du[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let u = (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * m1;
        let du = ((6.0 * t2 - 6.0 * t) * p0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * p1
            + (3.0 * t2 - 2.0 * t) * m1)
            / h;
        (u, du)
    }
}

/// Integrates `u'' = g(x, u)`, `u(0) = u0`, `u'(0) = s0` over `[0, x_end]`
/// with `steps` RK4 steps, keeping every `keep_every`-th state.
pub fn rk4_second_order(
    g: impl Fn(f64, f64) -> f64,
    u0: f64,
    s0: f64,
    x_end: f64,
    steps: usize,
    keep_every: usize,
) -> Result<Trajectory> {
    if steps == 0 || keep_every == 0 || !steps.is_multiple_of(keep_every) {
        return Err(Error::Precondition(format!(
            "steps ({steps}) must be a positive multiple of keep_every ({keep_every})"
        )));
    }
    let h = x_end / steps as f64;
    let mut u = Vec::with_capacity(steps / keep_every + 1);
    let mut du = Vec::with_capacity(steps / keep_every + 1);
    let (mut y, mut v) = (u0, s0);
    u.push(y);
    du.push(v);
    for i in 0..steps {
        let x = i as f64 * h;
        let xm = x + 0.5 * h;
        let k1y = v;
        let k1v = g(x, y);
        let k2y = v + 0.5 * h * k1v;
        let k2v = g(xm, y + 0.5 * h * k1y);
        let k3y = v + 0.5 * h * k2v;
        let k3v = g(xm, y + 0.5 * h * k2y);
        let k4y = v + h * k3v;
        let k4v = g(x + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (i + 1) % keep_every == 0 {
            u.push(y);
            du.push(v);
        }
    }
    Ok(Trajectory {
        spacing: h * keep_every as f64,
        u,
        du,
    })
}

/// RK4 on `[0, 1]` sampled onto an `n`-interval grid, with `substeps` RK4
/// steps per grid interval.
pub fn rk4_on_grid(
    g: impl Fn(f64, f64) -> f64,
    u0: f64,
    s0: f64,
    n: usize,
    substeps: usize,
) -> Result<GridFunction> {
    let t = rk4_second_order(g, u0, s0, 1.0, n * substeps, substeps)?;
    let mut values = t.u;
    // The final node is exactly x = 1; keep it in sync with the sampled grid.
    values.truncate(n + 1);
    GridFunction::sample(n, |_| 0.0)?.with_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn harmonic_oscillator() {
        let t = rk4_second_order(|_, u| -u, 0.0, 1.0, 1.0, 1000, 10).unwrap();
        let (u, du) = t.end();
        assert_abs_diff_eq!(u, 1.0f64.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(du, 1.0f64.cos(), epsilon = 1e-12);
        let (um, dum) = t.eval(0.3337);
        assert_abs_diff_eq!(um, 0.3337f64.sin(), epsilon = 1e-10);
        assert_abs_diff_eq!(dum, 0.3337f64.cos(), epsilon = 1e-7);
    }

    #[test]
    fn grid_sampling() {
        let g = rk4_on_grid(|_, _| 2.0, 1.0, -1.0, 10, 4).unwrap();
        for (x, v) in g.nodes().zip(g.values()) {
            assert_abs_diff_eq!(*v, 1.0 - x + x * x, epsilon = 1e-13);
        }
    }

    #[test]
    fn stride_must_divide_steps() {
        assert!(rk4_second_order(|_, _| 0.0, 0.0, 0.0, 1.0, 10, 3).is_err());
    }
}
