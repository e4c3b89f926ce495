use std::fmt;

use num_rational::BigRational;

use crate::ltl::Formula;

/// The keyword that introduced a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionKeyword {
    If,
    Upon,
    Whenever,
}

impl ConditionKeyword {
    pub fn kind(self) -> ConditionKind {
        match self {
            ConditionKeyword::If | ConditionKeyword::Upon => ConditionKind::Trigger,
            ConditionKeyword::Whenever => ConditionKind::Holding,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionKeyword::If => "if",
            ConditionKeyword::Upon => "upon",
            ConditionKeyword::Whenever => "whenever",
        }
    }
}

/// Trigger conditions fire when they become true; holding conditions apply
/// at every state where they are true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionKind {
    Trigger,
    Holding,
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionKind::Trigger => "Trigger",
            ConditionKind::Holding => "Holding",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Condition {
    pub keyword: ConditionKeyword,
    pub expr: Formula,
}

impl Condition {
    pub fn new(keyword: ConditionKeyword, expr: Formula) -> Self {
        Condition { keyword, expr }
    }

    pub fn kind(&self) -> ConditionKind {
        self.keyword.kind()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Timing {
    Immediately,
    NextTimepoint,
    Eventually,
    Always,
    Until(Formula),
    Before(Formula),
    Never,
}

/// [`Timing`] without its payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimingKind {
    Immediately,
    NextTimepoint,
    Eventually,
    Always,
    Until,
    Before,
    Never,
}

impl Timing {
    pub fn kind(&self) -> TimingKind {
        match self {
            Timing::Immediately => TimingKind::Immediately,
            Timing::NextTimepoint => TimingKind::NextTimepoint,
            Timing::Eventually => TimingKind::Eventually,
            Timing::Always => TimingKind::Always,
            Timing::Until(_) => TimingKind::Until,
            Timing::Before(_) => TimingKind::Before,
            Timing::Never => TimingKind::Never,
        }
    }

    pub fn payload(&self) -> Option<&Formula> {
        match self {
            Timing::Until(q) | Timing::Before(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for TimingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimingKind::Immediately => "Immediately",
            TimingKind::NextTimepoint => "NextTimepoint",
            TimingKind::Eventually => "Eventually",
            TimingKind::Always => "Always",
            TimingKind::Until => "Until",
            TimingKind::Before => "Before",
            TimingKind::Never => "Never",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbOp {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
}

impl ProbOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ProbOp::Ge => ">=",
            ProbOp::Gt => ">",
            ProbOp::Le => "<=",
            ProbOp::Lt => "<",
            ProbOp::Eq => "==",
        }
    }

    /// `<=` or `<`.
    pub fn is_upper_bound(self) -> bool {
        matches!(self, ProbOp::Le | ProbOp::Lt)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Probability {
    pub op: ProbOp,
    pub value: BigRational,
}

/// One requirement sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Requirement {
    pub scope: Option<String>,
    pub condition: Option<Condition>,
    pub component: String,
    pub probability: Option<Probability>,
    pub timing: Timing,
    pub response: Formula,
}

impl Requirement {
    pub fn new(component: impl Into<String>, timing: Timing, response: Formula) -> Self {
        Requirement {
            scope: None,
            condition: None,
            component: component.into(),
            probability: None,
            timing,
            response,
        }
    }

    pub fn with_scope(mut self, mode: impl Into<String>) -> Self {
        self.scope = Some(mode.into());
        self
    }

    pub fn with_condition(mut self, keyword: ConditionKeyword, expr: Formula) -> Self {
        self.condition = Some(Condition::new(keyword, expr));
        self
    }

    pub fn with_probability(mut self, op: ProbOp, value: BigRational) -> Self {
        self.probability = Some(Probability { op, value });
        self
    }

    pub fn condition_kind(&self) -> Option<ConditionKind> {
        self.condition.as_ref().map(Condition::kind)
    }
}

/// Requirements joined by `+`, read as their conjunction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RequirementGroup {
    pub parts: Vec<Requirement>,
}

impl RequirementGroup {
    pub fn new(parts: Vec<Requirement>) -> Self {
        RequirementGroup { parts }
    }

    pub fn single(req: Requirement) -> Self {
        RequirementGroup { parts: vec![req] }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl From<Requirement> for RequirementGroup {
    fn from(req: Requirement) -> Self {
        RequirementGroup::single(req)
    }
}

/// Requirement fields, for error and diagnostic locations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Scope,
    Condition,
    Component,
    Shall,
    Probability,
    Timing,
    Response,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Scope => "scope",
            Field::Condition => "condition",
            Field::Component => "component",
            Field::Shall => "shall",
            Field::Probability => "probability",
            Field::Timing => "timing",
            Field::Response => "response",
        })
    }
}
