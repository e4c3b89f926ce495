use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ast::*;
use crate::ltl::{is_identifier, Formula, KEYWORDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Index of the group member.
    pub member: usize,
    pub field: Field,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: requirement {} {}: {}", self.member + 1, self.field, self.message)
    }
}

fn reserved(name: &str) -> bool {
    KEYWORDS.contains(&name) || name.eq_ignore_ascii_case("shall")
}

/// Checks the group's invariants; an empty result means the group is valid.
pub fn validate(g: &RequirementGroup) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if g.parts.is_empty() {
        out.push(Diagnostic {
            severity: Severity::Error,
            member: 0,
            field: Field::Component,
            message: "empty requirement group".into(),
        });
    }
    for (member, r) in g.parts.iter().enumerate() {
        let mut push = |severity, field, message: String| out.push(Diagnostic { severity, member, field, message });
        if let Some(mode) = &r.scope {
            if !is_identifier(mode) || reserved(mode) {
                push(Severity::Error, Field::Scope, format!("`{mode}` is not a valid mode name"));
            }
        }
        if !is_identifier(&r.component) || reserved(&r.component) {
            push(Severity::Error, Field::Component, format!("`{}` is not a valid component name", r.component));
        }
        let mut formula = |field, f: &Formula| {
            if !f.is_propositional() {
                push(Severity::Error, field, format!("temporal operator in {field}"));
            }
            for p in f.predicates() {
                for id in p.identifiers() {
                    if !is_identifier(id) || reserved(id) {
                        push(Severity::Error, field, format!("`{id}` is not a valid identifier"));
                    }
                }
            }
        };
        if let Some(c) = &r.condition {
            formula(Field::Condition, &c.expr);
        }
        if let Some(q) = r.timing.payload() {
            formula(Field::Timing, q);
        }
        formula(Field::Response, &r.response);
        if let Some(p) = &r.probability {
            if p.value < BigRational::zero() || p.value > BigRational::one() {
                push(Severity::Error, Field::Probability, "probability out of range [0, 1]".into());
            }
            if r.timing != Timing::Eventually {
                push(
                    Severity::Warning,
                    Field::Probability,
                    "probability bound on a timing other than `eventually`".into(),
                );
            }
        }
    }
    out
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(|d| d.severity == Severity::Error)
}
