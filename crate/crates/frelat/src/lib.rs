//! File formats, reports and the command-line front end for `frelat-core`.

pub mod cli;
pub mod dot;
pub mod error;
pub mod problem;
pub mod report;

pub use cli::{run, Cli, Command, Outcome};
pub use error::CliError;
pub use problem::{Problem, ProblemFile};
