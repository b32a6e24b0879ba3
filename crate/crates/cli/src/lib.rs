//! Command-line front end for `cmc-core`: JSON in and out, exit codes
//! 0 (success), 1 (negative verdict), 2 (malformed input), 3 (I/O), and the
//! acceptance suite.

pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod suite;

pub use cli::Cli;
pub use commands::run;
