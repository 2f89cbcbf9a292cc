//! Command-line front end: file runner, REPL and golden-corpus driver.

pub mod config;
pub mod corpus;
pub mod repl;
pub mod run;

pub use config::{Cli, Command, RunConfig};
