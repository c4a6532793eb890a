//! The `.euclid` construction language: tokenizer, recursive-descent
//! parser, and interpreter.
//!
//! One statement per line, `#` starts a comment. The statement forms:
//!
//! ```text
//! point ID = (expr, expr)
//! point ID = intersect(ID, ID)[0|1] [where x|y <|> 0]
//! line ID = ID ID
//! circle ID = center ID through ID
//! circle ID = center ID radius dist(ID, ID)
//! measure angle ID = angle(ID, ID, ID)      # vertex is the middle argument
//! measure length ID = dist(ID, ID)          # also binds ID as an exact scalar
//! assert_zero(expr)
//! ```
//!
//! Expressions range over integer literals, `+ - * /`, `sqrt`, the
//! constant `phi`, previously bound scalars, and `dist`/`dist2` of
//! declared points.

mod ast;
mod interp;
mod lexer;
mod parser;

pub use ast::{Axis, Expr, Program, SignFilter, Stmt, StmtKind};
pub use interp::{
    interpret, AssertionOutcome, InterpretedModel, MeasureKind, MeasureRequest, RuntimeError,
    Scene, Value,
};
pub use parser::parse;

/// A parse- or run-time diagnostic tied to a source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// One diagnostic per line, `file:line:col:` prefixed, in source order.
pub fn format_diagnostics(file: &str, diags: &[Diagnostic]) -> String {
    let mut sorted: Vec<&Diagnostic> = diags.iter().collect();
    sorted.sort_by_key(|d| (d.line, d.col));
    sorted
        .iter()
        .map(|d| format!("{file}:{}:{}: {}\n", d.line, d.col, d.message))
        .collect()
}
