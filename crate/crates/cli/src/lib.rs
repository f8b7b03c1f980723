//! Command-line front end: `expand`, `verify` and `rank-table`.

pub mod app;
pub mod config;
pub mod expr;

pub use app::{run, Cli};
