//! Batch front end for `moyal-core`: expression parsing, serialization and
//! one subcommand per library operation.

pub mod commands;
pub mod format;
pub mod json;
pub mod parse;

pub use commands::run;
pub use parse::{parse_expression, ParseError};
