//! Library side of the `hironaka` command-line tool: the expression parser,
//! the problem-file format and the subcommands.

pub mod commands;
pub mod error;
pub mod parse;
pub mod problem;

pub use commands::{run_command, Command, Report};
pub use error::CliError;
pub use problem::{Problem, ProblemFile};
