//! Benchmark harness for the IFOI solver: timed runs, CSV tables and SVG plots.

pub mod cli;
pub mod config;
pub mod report;
pub mod runner;
pub mod svg;

pub use config::{Case3Constants, MethodChoice, RunConfig};
pub use report::{CsvRow, CSV_HEADER};
pub use runner::{run, sweep, table1};
