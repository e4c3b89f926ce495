//! Linear temporal logic: syntax, parsing, rendering, finite-trace evaluation
//! and bounded comparison.

mod bounded;
mod eval;
mod formula;
pub(crate) mod lexer;
mod parse;
mod render;

pub use bounded::{
    implies_on_bounded_traces, implies_on_bounded_traces_with, BoundedError, BoundedOptions, Implication,
    DEFAULT_BUDGET,
};
pub use eval::{check, eval_at, EvalError, Status, Valuation, Verdict};
pub use formula::{is_identifier, CmpOp, Formula, Operand, Predicate, KEYWORDS};
pub use lexer::{Pos, SyntaxError};
pub use parse::parse_ltl;
pub use render::{render_compact, render_ltl};

pub(crate) use parse::ExprParser;
