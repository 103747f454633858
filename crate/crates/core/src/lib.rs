//! Iterative Fractional Order Integration (IFOI) for second-order two-point
//! boundary-value problems on `[0, 1]`.
//!
//! The solution of `u'' = Q(x, u)` is reached by a staged sequence of
//! Riemann-Liouville integrations of partial order whose orders add up to 2.
//! Boundary conditions are handled by shooting, and a finite-difference
//! solver is provided as the reference method.
//!
//! Layout:
//! - [`fracops`]: fractional integration schemes (Grünwald-Letnikov, product
//!   rectangle, Adams-Bashforth-Moulton) on uniform grids.
//! - [`ifoi`]: alpha partitions and the staged IVP solver.
//! - [`shooting`]: the `u = u1 + c·u2` boundary matching.
//! - [`fdm`]: finite-difference reference solvers.
//! - [`cases`]: the four benchmark problems, their oracles and the error metric.

pub mod cases;
pub mod classical;
mod error;
pub mod fdm;
pub mod fracops;
pub mod grid;
pub mod ifoi;
pub mod shooting;
pub mod special;

pub use error::{Error, Result};
pub use grid::GridFunction;
