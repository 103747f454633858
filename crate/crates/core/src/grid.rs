use crate::{Error, Result};

/// Samples of a function on the uniform partition `x_j = j·h`, `j = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    h: f64,
    // Right endpoint; `n·h` up to rounding, exactly 1.0 for sampled grids.
    span: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(h: f64, values: Vec<f64>) -> Result<Self> {
        if h.is_nan() || h <= 0.0 || !h.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "step must be positive, got {h}"
            )));
        }
        if values.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least two nodes, got {}",
                values.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite value at node {j}")));
        }
        let span = (values.len() - 1) as f64 * h;
        Ok(Self { h, span, values })
    }

    /// Samples `f` on `[0, 1]` with `n` intervals.
    pub fn sample(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGrid("need at least one interval".into()));
        }
        let h = 1.0 / n as f64;
        let mut grid = Self::new(h, (0..=n).map(|j| f(node(j, n))).collect())?;
        grid.span = 1.0;
        Ok(grid)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::sample(n, |_| 0.0)
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::InvalidGrid(format!(
                "length mismatch: {} vs {}",
                values.len(),
                self.values.len()
            )));
        }
        let mut grid = Self::new(self.h, values)?;
        grid.span = self.span;
        Ok(grid)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn x(&self, j: usize) -> f64 {
        node(j, self.n()) * self.span
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n()).map(|j| self.x(j))
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.n()]
    }

    /// Whether `n·h` reaches `endpoint` to one part in 10^9.
    pub fn covers(&self, endpoint: f64) -> bool {
        ((self.n() as f64 * self.h) - endpoint).abs() <= 1e-9 * endpoint.abs().max(1.0)
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.values.len() == other.values.len() && self.h == other.h
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Sup-norm distance between two functions on the same grid.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::InvalidGrid("grids differ".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Second-order backward difference estimate of the slope at the right end.
    pub fn backward_slope(&self) -> f64 {
        let n = self.n();
        let v = &self.values;
        if n < 2 {
            return (v[1] - v[0]) / self.h;
        }
        (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * self.h)
    }

    /// Second-order forward difference estimate of the slope at the left end.
    pub fn forward_slope(&self) -> f64 {
        let v = &self.values;
        if self.n() < 2 {
            return (v[1] - v[0]) / self.h;
        }
        (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * self.h)
    }

    pub fn total_variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }
}

/// `j / n` computed without accumulating the step, so the last node is exactly 1.
fn node(j: usize, n: usize) -> f64 {
    j as f64 / n as f64
}
