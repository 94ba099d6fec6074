//! Textual front end for the pattern-match engine: lexer, parsers for the
//! pattern / expression / matcher languages, and pattern pretty-printing.
//! The `pmoe` binary wires these to the engine.

pub mod lexer;
pub mod parser;
pub mod pretty;

pub use lexer::ParseError;
pub use parser::{parse_expr, parse_matcher, parse_pattern};
pub use pretty::{expr_to_string, pattern_to_string};
