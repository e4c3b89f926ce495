//! Compilation of requirement groups to LTL.
//!
//! Every supported (condition kind, timing) pair is one row of [`table`];
//! the compiler reads nothing else. With `c` the condition, `r` the response
//! and `q` the `until`/`before` payload:
//!
//! | condition   | timing        | schema                                      |
//! |-------------|---------------|---------------------------------------------|
//! | holding     | immediately   | `G(c -> r)`                                 |
//! | holding     | next timepoint| `G(c -> X r)`                               |
//! | holding     | eventually    | `G(c -> F r)`                               |
//! | holding     | always        | `G(c -> G r)`                               |
//! | holding     | until q       | `G(c -> (r W q))`                           |
//! | holding     | never         | `G(c -> G !r)`                              |
//! | holding     | before q      | `G(c -> (!q W (r & !q)))`                   |
//! | trigger     | T             | `G((!c & X c) -> X T(r)) & (c -> T(r))`     |
//! | none        | always        | `G r`                                       |
//! | none        | eventually    | `F r`                                       |
//! | none        | before q      | `!q W (r & !q)`                             |
//!
//! where `T(r)` is `r`, `X r` or `F r` for immediately, next timepoint and
//! eventually. A scope `M` strengthens the condition to `M & c`; a scoped
//! requirement without a condition uses `M` as a holding condition. Groups
//! compile to the left-nested conjunction of their members.

use std::fmt::Write as _;

use thiserror::Error;

use crate::fretish::{has_errors, validate, ConditionKind, Diagnostic, Requirement, RequirementGroup, TimingKind};
use crate::ltl::{render_ltl, Formula};

/// Which condition shape a row applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Unconditioned,
    Holding,
    Trigger,
}

impl std::fmt::Display for Slot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Slot::Unconditioned => "No condition",
            Slot::Holding => "Holding",
            Slot::Trigger => "Trigger",
        })
    }
}

impl From<ConditionKind> for Slot {
    fn from(kind: ConditionKind) -> Self {
        match kind {
            ConditionKind::Holding => Slot::Holding,
            ConditionKind::Trigger => Slot::Trigger,
        }
    }
}

/// Operands substituted into a schema.
pub struct SchemaArgs<'a> {
    pub condition: Option<&'a Formula>,
    pub response: &'a Formula,
    pub payload: Option<&'a Formula>,
}

impl SchemaArgs<'_> {
    fn c(&self) -> Formula {
        self.condition.cloned().expect("row requires a condition")
    }

    fn r(&self) -> Formula {
        self.response.clone()
    }

    fn q(&self) -> Formula {
        self.payload.cloned().expect("row requires a payload")
    }
}

pub struct SchemaRow {
    pub slot: Slot,
    pub timing: TimingKind,
    pub schema: &'static str,
    build: fn(&SchemaArgs) -> Formula,
}

impl SchemaRow {
    pub fn name(&self) -> String {
        format!("{} + {}", self.slot, self.timing)
    }

    pub fn build(&self, args: &SchemaArgs) -> Formula {
        (self.build)(args)
    }
}

fn trigger(c: Formula, timed: Formula) -> Formula {
    let rising = c.clone().not().and(c.clone().next());
    rising.implies(timed.clone().next()).globally().and(c.implies(timed))
}

fn before(q: Formula, r: Formula) -> Formula {
    q.clone().not().weak_until(r.and(q.not()))
}

static ROWS: [SchemaRow; 13] = [
    SchemaRow { slot: Slot::Holding, timing: TimingKind::Immediately, schema: "G (c -> r)", build: |a| a.c().implies(a.r()).globally() },
    SchemaRow { slot: Slot::Holding, timing: TimingKind::NextTimepoint, schema: "G (c -> X r)", build: |a| a.c().implies(a.r().next()).globally() },
    SchemaRow { slot: Slot::Holding, timing: TimingKind::Eventually, schema: "G (c -> F r)", build: |a| a.c().implies(a.r().eventually()).globally() },
    SchemaRow { slot: Slot::Holding, timing: TimingKind::Always, schema: "G (c -> G r)", build: |a| a.c().implies(a.r().globally()).globally() },
    SchemaRow { slot: Slot::Holding, timing: TimingKind::Until, schema: "G (c -> (r W q))", build: |a| a.c().implies(a.r().weak_until(a.q())).globally() },
    SchemaRow { slot: Slot::Holding, timing: TimingKind::Never, schema: "G (c -> G !r)", build: |a| a.c().implies(a.r().not().globally()).globally() },
    SchemaRow { slot: Slot::Holding, timing: TimingKind::Before, schema: "G (c -> (!q W (r & !q)))", build: |a| a.c().implies(before(a.q(), a.r())).globally() },
    SchemaRow { slot: Slot::Trigger, timing: TimingKind::Immediately, schema: "(G ((!c & X c) -> X r)) & (c -> r)", build: |a| trigger(a.c(), a.r()) },
    SchemaRow { slot: Slot::Trigger, timing: TimingKind::NextTimepoint, schema: "(G ((!c & X c) -> X X r)) & (c -> X r)", build: |a| trigger(a.c(), a.r().next()) },
    SchemaRow { slot: Slot::Trigger, timing: TimingKind::Eventually, schema: "(G ((!c & X c) -> X F r)) & (c -> F r)", build: |a| trigger(a.c(), a.r().eventually()) },
    SchemaRow { slot: Slot::Unconditioned, timing: TimingKind::Always, schema: "G r", build: |a| a.r().globally() },
    SchemaRow { slot: Slot::Unconditioned, timing: TimingKind::Eventually, schema: "F r", build: |a| a.r().eventually() },
    SchemaRow { slot: Slot::Unconditioned, timing: TimingKind::Before, schema: "!q W (r & !q)", build: |a| before(a.q(), a.r()) },
];

/// The full compilation table.
pub fn table() -> &'static [SchemaRow] {
    &ROWS
}

pub fn lookup(slot: Slot, timing: TimingKind) -> Option<&'static SchemaRow> {
    ROWS.iter().find(|r| r.slot == slot && r.timing == timing)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("unsupported combination ({slot}, {timing}) in requirement {member}")]
    Unsupported { slot: Slot, timing: TimingKind, member: usize },
    #[error("requirement {member} carries a probability bound; only LTL semantics are supported, probabilistic requirements are not compiled")]
    Probabilistic { member: usize },
    #[error("invalid requirement group: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

/// One member's compilation.
struct Step {
    row: &'static SchemaRow,
    condition: Option<Formula>,
    scoped: bool,
    formula: Formula,
}

fn compile_member(member: usize, r: &Requirement) -> Result<Step, CompileError> {
    if r.probability.is_some() {
        return Err(CompileError::Probabilistic { member: member + 1 });
    }
    let scope = r.scope.as_ref().map(Formula::atom);
    let (slot, condition) = match (&r.condition, scope) {
        (Some(c), Some(m)) => (Slot::from(c.kind()), Some(m.and(c.expr.clone()))),
        (Some(c), None) => (Slot::from(c.kind()), Some(c.expr.clone())),
        (None, Some(m)) => (Slot::Holding, Some(m)),
        (None, None) => (Slot::Unconditioned, None),
    };
    let timing = r.timing.kind();
    let row = lookup(slot, timing).ok_or(CompileError::Unsupported { slot, timing, member: member + 1 })?;
    let formula = row.build(&SchemaArgs {
        condition: condition.as_ref(),
        response: &r.response,
        payload: r.timing.payload(),
    });
    Ok(Step { row, condition, scoped: r.scope.is_some(), formula })
}

fn compile_steps(g: &RequirementGroup) -> Result<Vec<Step>, CompileError> {
    let diagnostics = validate(g);
    if has_errors(&diagnostics) {
        return Err(CompileError::Invalid(diagnostics));
    }
    g.parts.iter().enumerate().map(|(i, r)| compile_member(i, r)).collect()
}

/// Compiles a group to one formula.
pub fn to_ltl(g: &RequirementGroup) -> Result<Formula, CompileError> {
    let steps = compile_steps(g)?;
    Ok(Formula::conjoin(steps.into_iter().map(|s| s.formula)).expect("validated groups are nonempty"))
}

/// Human-readable derivation of [`to_ltl`].
pub fn explain(g: &RequirementGroup) -> Result<String, CompileError> {
    let steps = compile_steps(g)?;
    let mut out = String::new();
    for (i, (step, r)) in steps.iter().zip(&g.parts).enumerate() {
        let _ = writeln!(out, "requirement {}: {}", i + 1, crate::fretish::render_requirement(r));
        let _ = writeln!(out, "  row: {}", step.row.name());
        let _ = writeln!(out, "  schema: {}", step.row.schema);
        if step.scoped {
            let _ = writeln!(out, "  scope: {} folded into the condition", r.scope.as_deref().unwrap_or_default());
        }
        if let Some(c) = &step.condition {
            let _ = writeln!(out, "  c := {}", render_ltl(c));
        }
        if let Some(q) = r.timing.payload() {
            let _ = writeln!(out, "  q := {}", render_ltl(q));
        }
        let _ = writeln!(out, "  r := {}", render_ltl(&r.response));
        let _ = writeln!(out, "  ltl: {}", render_ltl(&step.formula));
    }
    if steps.len() > 1 {
        let _ = writeln!(out, "conjunction of {} formulas", steps.len());
    }
    let whole = Formula::conjoin(steps.into_iter().map(|s| s.formula)).expect("nonempty");
    let _ = writeln!(out, "result: {}", render_ltl(&whole));
    Ok(out)
}
