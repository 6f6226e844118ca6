//! Concrete syntax, report formats and the command implementations behind
//! the `mumu` binary.

pub mod app;
pub mod json;
pub mod runner;
pub mod sequent;
pub mod syntax;

pub use syntax::{parse_lm, parse_lmm, ParseError, Parsed, SourceSpan};
