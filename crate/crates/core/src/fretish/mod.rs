//! The structured requirement language: fields `scope`, `condition`,
//! `component`, `shall`, `probability`, `timing` and `response`.

mod ast;
mod parse;
mod render;
mod validate;

pub use ast::{
    Condition, ConditionKeyword, ConditionKind, Field, ProbOp, Probability, Requirement, RequirementGroup, Timing,
    TimingKind,
};
pub use parse::{parse_fretish, FretishError};
pub use render::{render_fretish, RenderError};
pub use validate::{has_errors, validate, Diagnostic, Severity};

pub(crate) use render::render_requirement;

/// A parse failure in a multi-line requirements text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {error}")]
pub struct LineError {
    /// 1-based line in the whole text.
    pub line: usize,
    pub error: FretishError,
}

/// One requirement group per nonblank line; lines starting with `#` are
/// comments. Returns each group with its 1-based line number.
pub fn parse_requirement_lines(text: &str) -> Result<Vec<(usize, RequirementGroup)>, LineError> {
    let mut groups = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = parse_fretish(line).map_err(|error| LineError { line: i + 1, error })?;
        groups.push((i + 1, g));
    }
    Ok(groups)
}
