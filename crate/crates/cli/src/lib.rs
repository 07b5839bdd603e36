//! Parsing and reporting for the `thom` command-line tool.

pub mod parse;
pub mod report;

pub use parse::{evaluate, parse_expr, Expr, ParseError, ParseErrorKind, RingDecl};
