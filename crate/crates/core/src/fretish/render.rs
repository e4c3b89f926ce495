use thiserror::Error;

use super::ast::*;
use super::validate::{validate, Diagnostic, Severity};
use crate::ltl::{render_compact, Formula};
use crate::numeric::render_decimal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot render an invalid requirement group: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
pub struct RenderError(pub Vec<Diagnostic>);

/// Canonical text: lowercase keywords, single spaces, members joined by
/// ` + `.
pub fn render_fretish(g: &RequirementGroup) -> Result<String, RenderError> {
    let errors: Vec<Diagnostic> = validate(g).into_iter().filter(|d| d.severity == Severity::Error).collect();
    if !errors.is_empty() {
        return Err(RenderError(errors));
    }
    Ok(g.parts.iter().map(render_requirement).collect::<Vec<_>>().join(" + "))
}

pub(crate) fn render_requirement(r: &Requirement) -> String {
    let mut words: Vec<String> = Vec::new();
    if let Some(mode) = &r.scope {
        words.push(format!("In {mode}"));
    }
    if let Some(c) = &r.condition {
        words.push(format!("{} {}", c.keyword.as_str(), render_compact(&c.expr)));
    }
    words.push(r.component.clone());
    words.push("shall".into());
    if let Some(p) = &r.probability {
        words.push(format!("with probability {} {}", p.op.symbol(), render_decimal(&p.value)));
    }
    words.push(match &r.timing {
        Timing::Immediately => "immediately".into(),
        Timing::NextTimepoint => "at the next timepoint".into(),
        Timing::Eventually => "eventually".into(),
        Timing::Always => "always".into(),
        Timing::Never => "never".into(),
        Timing::Until(q) => format!("until {}", payload(q)),
        Timing::Before(q) => format!("before {}", payload(q)),
    });
    words.push(render_compact(&r.response));
    words.join(" ")
}

fn payload(q: &Formula) -> String {
    let bare = match q {
        Formula::True | Formula::False => true,
        Formula::Atom(p) => p.is_boolean(),
        Formula::Not(inner) => matches!(inner.as_ref(), Formula::Atom(p) if p.is_boolean()),
        _ => false,
    };
    if bare {
        render_compact(q)
    } else {
        format!("({})", render_compact(q))
    }
}
