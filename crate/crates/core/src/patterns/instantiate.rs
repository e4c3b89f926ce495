use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use super::catalogue::*;
use crate::fretish::{
    has_errors, validate, ConditionKeyword, Diagnostic, ProbOp, Probability, Requirement, RequirementGroup, Timing,
};
use crate::ltl::{Formula, Predicate};

/// A template with its roles filled in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternInstance {
    pub template: String,
    pub bindings: BTreeMap<String, Vec<Formula>>,
    pub component: String,
    /// Scope of the Modal variant.
    pub mode: Option<String>,
    /// Trigger (`upon`) rather than holding (`whenever`) condition.
    pub triggered: bool,
    pub probability: Option<Probability>,
}

impl PatternInstance {
    pub fn new(template: impl Into<String>, component: impl Into<String>) -> Self {
        PatternInstance {
            template: template.into(),
            bindings: BTreeMap::new(),
            component: component.into(),
            mode: None,
            triggered: false,
            probability: None,
        }
    }

    pub fn bind(mut self, role: impl Into<String>, values: Vec<Formula>) -> Self {
        self.bindings.insert(role.into(), values);
        self
    }

    pub fn bind_atoms(self, role: impl Into<String>, names: &[&str]) -> Self {
        self.bind(role, names.iter().map(|n| Formula::atom(*n)).collect())
    }

    pub fn with_mode(mut self, mode: impl Into<String>) -> Self {
        self.mode = Some(mode.into());
        self
    }

    pub fn triggered(mut self) -> Self {
        self.triggered = true;
        self
    }

    pub fn with_probability(mut self, op: ProbOp, value: BigRational) -> Self {
        self.probability = Some(Probability { op, value });
        self
    }

    pub fn axes(&self) -> Vec<Axis> {
        let mut axes = Vec::new();
        if self.probability.is_some() {
            axes.push(Axis::Probabilistic);
        }
        if self.mode.is_some() {
            axes.push(Axis::Modal);
        }
        if self.triggered {
            axes.push(Axis::Triggered);
        }
        axes
    }

    /// Full label including variant prefixes.
    pub fn name(&self) -> String {
        variant_name(&self.template, &self.axes())
    }

    fn get(&self, role: &str) -> &[Formula] {
        self.bindings.get(role).map(Vec::as_slice).unwrap_or(&[])
    }

    fn single(&self, role: &str) -> Formula {
        self.get(role)[0].clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("unknown pattern '{0}'")]
    UnknownTemplate(String),
    #[error("pattern '{0}' is a label without a template")]
    LabelOnly(String),
    #[error("pattern '{template}' needs a binding for '{role}'")]
    MissingBinding { template: String, role: String },
    #[error("pattern '{template}' has no role '{role}'")]
    UnknownRole { template: String, role: String },
    #[error("role '{role}' of '{template}' expects {expected} values, got {found}")]
    Arity { template: String, role: String, expected: String, found: usize },
    #[error("role '{role}' expects boolean identifiers, got '{found}'")]
    NotAtom { role: String, found: String },
    #[error("pattern '{template}' has no {axis} variant")]
    UnsupportedAxis { template: String, axis: Axis },
    #[error("pattern '{0}' carries a probability bound and has no LTL formula")]
    Probabilistic(String),
    #[error("instantiated requirement is invalid: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

fn arity_text(role: &Role) -> String {
    match role.max {
        Some(max) if max == role.min => max.to_string(),
        Some(max) => format!("{}..{}", role.min, max),
        None => format!("at least {}", role.min),
    }
}

/// Checks an instance against its template.
pub fn check_instance(inst: &PatternInstance) -> Result<&'static PatternTemplate, PatternError> {
    let t = template(&inst.template).ok_or_else(|| PatternError::UnknownTemplate(inst.template.clone()))?;
    if t.is_label_only() {
        return Err(PatternError::LabelOnly(t.name.to_string()));
    }
    for role in inst.bindings.keys() {
        if t.role(role).is_none() {
            return Err(PatternError::UnknownRole { template: t.name.into(), role: role.clone() });
        }
    }
    for role in t.roles {
        let values = match inst.bindings.get(role.name) {
            Some(v) => v.as_slice(),
            None if role.min == 0 => continue,
            None => return Err(PatternError::MissingBinding { template: t.name.into(), role: role.name.into() }),
        };
        if values.len() < role.min || role.max.is_some_and(|m| values.len() > m) {
            return Err(PatternError::Arity {
                template: t.name.into(),
                role: role.name.into(),
                expected: arity_text(role),
                found: values.len(),
            });
        }
        if role.atoms_only {
            if let Some(bad) = values.iter().find(|v| !matches!(v, Formula::Atom(Predicate::BoolAtom(_)))) {
                return Err(PatternError::NotAtom { role: role.name.into(), found: bad.to_string() });
            }
        }
    }
    if t.name == PHASES {
        let phases = inst.get("phases").len();
        let conditions = inst.get("conditions").len();
        if conditions != phases && conditions + 1 != phases {
            return Err(PatternError::Arity {
                template: t.name.into(),
                role: "conditions".into(),
                expected: format!("{} or {}", phases - 1, phases),
                found: conditions,
            });
        }
    }
    for axis in inst.axes() {
        if !t.supports(axis) {
            return Err(PatternError::UnsupportedAxis { template: t.name.into(), axis });
        }
    }
    Ok(t)
}

fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
    Formula::conjoin(parts).expect("roles are nonempty")
}

fn negated(parts: &[Formula]) -> Vec<Formula> {
    parts.iter().cloned().map(Formula::not).collect()
}

/// Fills the template's FRETish skeleton.
pub fn instantiate(inst: &PatternInstance) -> Result<RequirementGroup, PatternError> {
    let t = check_instance(inst)?;
    let s = &inst.component;
    let keyword = if inst.triggered { ConditionKeyword::Upon } else { ConditionKeyword::Whenever };
    let whenever = |timing: Timing, cond: Formula, resp: Formula| {
        Requirement::new(s.clone(), timing, resp).with_condition(ConditionKeyword::Whenever, cond)
    };
    let mut parts = match t.name {
        PHASES => {
            let phases = inst.get("phases");
            let conds = inst.get("conditions");
            let mut parts = Vec::new();
            for (i, p) in phases.iter().enumerate() {
                if let Some(c) = conds.get(i) {
                    parts.push(
                        Requirement::new(s.clone(), Timing::Eventually, c.clone())
                            .with_condition(ConditionKeyword::Upon, p.clone()),
                    );
                    if let Some(next) = phases.get(i + 1) {
                        parts.push(
                            Requirement::new(s.clone(), Timing::NextTimepoint, next.clone())
                                .with_condition(ConditionKeyword::Upon, c.clone()),
                        );
                    }
                }
            }
            parts
        }
        TRANSMIT => {
            let data = inst.get("data");
            let guard = conj(inst.get("connections").iter().cloned().chain(negated(data)));
            vec![whenever(Timing::Until(conj(data.to_vec())), guard, inst.single("protocol"))]
        }
        RECONNECT => {
            let k = inst.get("connections");
            let guard = Formula::disjoin(negated(k)).expect("nonempty");
            vec![whenever(Timing::Until(conj(k.to_vec())), guard, inst.single("protocol"))]
        }
        STAY_IN_PERIMETER => {
            vec![whenever(Timing::Immediately, inst.single("action"), conj(inst.get("areas").to_vec()))]
        }
        KEEP_OUT_ZONE => {
            vec![whenever(Timing::Immediately, inst.single("action"), conj(negated(inst.get("areas"))))]
        }
        WAIT => vec![whenever(Timing::Until(inst.single("until")), inst.single("condition"), inst.single("response"))],
        MAINTAIN_SAFE_SPACE => {
            let r = Requirement::new(s.clone(), Timing::Always, inst.single("response"));
            vec![match inst.get("condition").first() {
                Some(c) => r.with_condition(ConditionKeyword::Whenever, c.clone()),
                None => r,
            }]
        }
        base => {
            let timing = reaction_timing(base).expect("templated reaction");
            vec![Requirement::new(s.clone(), timing, inst.single("response"))
                .with_condition(keyword, inst.single("condition"))]
        }
    };
    for part in &mut parts {
        part.scope = inst.mode.clone();
        part.probability = inst.probability.clone();
    }
    let group = RequirementGroup::new(parts);
    let diagnostics = validate(&group);
    if has_errors(&diagnostics) {
        return Err(PatternError::Invalid(diagnostics));
    }
    Ok(group)
}

pub(crate) fn reaction_timing(base: &str) -> Option<Timing> {
    match base {
        INSTANT_REACTION => Some(Timing::Immediately),
        PROMPT_REACTION => Some(Timing::NextTimepoint),
        DELAYED_REACTION => Some(Timing::Eventually),
        _ => None,
    }
}

fn rising(c: Formula, then: Formula) -> Formula {
    let edge = Formula::Not(Box::new(c.clone())).and(c.clone().next());
    edge.implies(then.clone().next()).globally().and(c.implies(then))
}

/// The pattern's LTL formula, built directly from the bindings.
pub fn pattern_ltl(inst: &PatternInstance) -> Result<Formula, PatternError> {
    let t = check_instance(inst)?;
    if inst.probability.is_some() {
        return Err(PatternError::Probabilistic(inst.name()));
    }
    let guard = |c: Formula| match &inst.mode {
        Some(m) => Formula::atom(m).and(c),
        None => c,
    };
    let always_implies = |c: Formula, r: Formula| guard(c).implies(r).globally();
    Ok(match t.name {
        PHASES => {
            let phases = inst.get("phases");
            let conds = inst.get("conditions");
            let mut parts = Vec::new();
            for (i, c) in conds.iter().enumerate() {
                parts.push(rising(guard(phases[i].clone()), c.clone().eventually()));
                if let Some(next) = phases.get(i + 1) {
                    parts.push(rising(guard(c.clone()), next.clone().next()));
                }
            }
            conj(parts)
        }
        TRANSMIT => {
            let data = inst.get("data");
            let c = conj(inst.get("connections").iter().cloned().chain(negated(data)));
            always_implies(c, inst.single("protocol").weak_until(conj(data.to_vec())))
        }
        RECONNECT => {
            let k = inst.get("connections");
            let c = Formula::disjoin(negated(k)).expect("nonempty");
            always_implies(c, inst.single("protocol").weak_until(conj(k.to_vec())))
        }
        STAY_IN_PERIMETER => always_implies(inst.single("action"), conj(inst.get("areas").to_vec())),
        KEEP_OUT_ZONE => always_implies(inst.single("action"), conj(negated(inst.get("areas")))),
        WAIT => always_implies(inst.single("condition"), inst.single("response").weak_until(inst.single("until"))),
        MAINTAIN_SAFE_SPACE => {
            let r = inst.single("response").globally();
            match (inst.get("condition").first(), &inst.mode) {
                (Some(c), _) => always_implies(c.clone(), r),
                (None, Some(m)) => Formula::atom(m).implies(r).globally(),
                (None, None) => r,
            }
        }
        base => {
            let r = inst.single("response");
            let timed = match base {
                INSTANT_REACTION => r,
                PROMPT_REACTION => r.next(),
                _ => r.eventually(),
            };
            if inst.triggered {
                rising(guard(inst.single("condition")), timed)
            } else {
                always_implies(inst.single("condition"), timed)
            }
        }
    })
}

/// `G (a -> G !l)`: avoidance from the moment `a` holds onward.
pub fn future_avoidance_ltl(action: Formula, area: Formula) -> Formula {
    action.implies(area.not().globally()).globally()
}
