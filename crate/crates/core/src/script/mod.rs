//! A line-oriented construction language over the kernel.
//!
//! ```text
//! hpoint O = (0, 0)
//! hpoint P = (0.5, 0)
//! hdist d = O P
//! assert_eq d ln(3) tol 1e-12
//! render disk.svg width 400
//! ```
//!
//! Each line is a binding `KIND NAME = [OP] ARGS`, an assertion
//! `assert_eq EXPR EXPR tol NUMBER`, or a directive (`render`, `tol`, `model`).
//! Names, arities and argument types are checked while parsing; geometric
//! failures are reported per statement during evaluation.

mod ast;
mod eval;
mod lexer;
mod parser;
pub mod registry;
mod render;

use std::fmt;

use serde::Serialize;

pub use ast::{Arg, BinOp, Binding, Directive, Expr, Func, Model, Script, Statement, StmtKind};
pub use eval::{evaluate, Entry, Outcome, RenderRequest, Report, Scalar, Status, Value};
pub use parser::parse;
pub use render::{render_svg, RenderError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Syntax,
    UnknownOp,
    Duplicate,
    Unresolved,
    Type,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub kind: ErrorKind,
    pub line: usize,
    pub col: usize,
    pub token: String,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(kind: ErrorKind, line: usize, col: usize, token: &str, message: impl Into<String>) -> Self {
        ParseError {
            kind,
            line,
            col,
            token: token.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn syntax(line: usize, col: usize, token: &str, message: impl Into<String>) -> Self {
        ParseError::new(ErrorKind::Syntax, line, col, token, message)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} (at `{}`)", self.line, self.col, self.message, self.token)
    }
}

impl std::error::Error for ParseError {}

/// Parses and evaluates `text` with the given starting tolerances.
pub fn run(text: &str, tol: &crate::Tolerances) -> Result<Report, ParseError> {
    let script = parse(text)?;
    Ok(evaluate(&script, tol))
}
