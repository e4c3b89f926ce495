use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;

use super::catalogue::*;
use super::instantiate::PatternInstance;
use crate::fretish::{ConditionKind, ProbOp, Probability, Requirement, RequirementGroup, Timing};
use crate::ltl::{Formula, Predicate};

/// A classifier verdict: the full variant label and the recovered instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub name: String,
    pub instance: PatternInstance,
}

impl Classification {
    pub fn bindings(&self) -> &BTreeMap<String, Vec<Formula>> {
        &self.instance.bindings
    }
}

fn bool_atom(f: &Formula) -> Option<&str> {
    match f {
        Formula::Atom(Predicate::BoolAtom(name)) => Some(name),
        _ => None,
    }
}

fn negated_atom(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(inner) if matches!(inner.as_ref(), Formula::Atom(_)) => Some(inner),
        _ => None,
    }
}

fn owned(parts: Vec<&Formula>) -> Vec<Formula> {
    parts.into_iter().cloned().collect()
}

/// Same members regardless of order, no repeats.
fn same_set(a: &[&Formula], b: &[&Formula]) -> bool {
    let sa: BTreeSet<String> = a.iter().map(|f| f.to_string()).collect();
    let sb: BTreeSet<String> = b.iter().map(|f| f.to_string()).collect();
    sa.len() == a.len() && sb.len() == b.len() && sa == sb
}

struct Shape<'a> {
    kind: Option<ConditionKind>,
    cond: Option<&'a Formula>,
    req: &'a Requirement,
}

impl<'a> Shape<'a> {
    fn of(req: &'a Requirement) -> Self {
        Shape { kind: req.condition_kind(), cond: req.condition.as_ref().map(|c| &c.expr), req }
    }

    fn holding(&self) -> Option<&'a Formula> {
        (self.kind == Some(ConditionKind::Holding)).then_some(self.cond).flatten()
    }
}

fn base_instance(req: &Requirement, template: &str) -> PatternInstance {
    let mut inst = PatternInstance::new(template, req.component.clone());
    inst.mode = req.scope.clone();
    inst
}

fn transmit(s: &Shape) -> Option<PatternInstance> {
    let cond = s.holding()?;
    let Timing::Until(q) = &s.req.timing else { return None };
    bool_atom(&s.req.response)?;
    let conjuncts = cond.conjuncts();
    let (negs, pos): (Vec<&Formula>, Vec<&Formula>) = conjuncts.into_iter().partition(|f| negated_atom(f).is_some());
    let data = q.conjuncts();
    let negs: Vec<&Formula> = negs.into_iter().filter_map(negated_atom).collect();
    if pos.is_empty() || negs.is_empty() || pos.iter().chain(&data).any(|f| bool_atom(f).is_none()) {
        return None;
    }
    if !same_set(&negs, &data) {
        return None;
    }
    Some(
        base_instance(s.req, TRANSMIT)
            .bind("connections", owned(pos))
            .bind("data", owned(data))
            .bind("protocol", vec![s.req.response.clone()]),
    )
}

fn reconnect(s: &Shape) -> Option<PatternInstance> {
    let cond = s.holding()?;
    let Timing::Until(q) = &s.req.timing else { return None };
    bool_atom(&s.req.response)?;
    let lost: Option<Vec<&Formula>> = cond.disjuncts().into_iter().map(negated_atom).collect();
    let lost = lost?;
    let k = q.conjuncts();
    if k.iter().any(|f| bool_atom(f).is_none()) || !same_set(&lost, &k) {
        return None;
    }
    Some(
        base_instance(s.req, RECONNECT)
            .bind("connections", owned(lost))
            .bind("protocol", vec![s.req.response.clone()]),
    )
}

fn localisation(s: &Shape) -> Option<PatternInstance> {
    let action = s.holding()?;
    if s.req.timing != Timing::Immediately || bool_atom(action).is_none() {
        return None;
    }
    let areas = s.req.response.conjuncts();
    if let Some(inner) = areas.iter().map(|f| negated_atom(f)).collect::<Option<Vec<_>>>() {
        return Some(
            base_instance(s.req, KEEP_OUT_ZONE).bind("action", vec![action.clone()]).bind("areas", owned(inner)),
        );
    }
    // One area is indistinguishable from Instant Reaction, which wins.
    if areas.len() >= 2 && areas.iter().all(|f| matches!(f, Formula::Atom(_))) {
        return Some(
            base_instance(s.req, STAY_IN_PERIMETER).bind("action", vec![action.clone()]).bind("areas", owned(areas)),
        );
    }
    None
}

fn wait(s: &Shape) -> Option<PatternInstance> {
    let cond = s.holding()?;
    let Timing::Until(q) = &s.req.timing else { return None };
    Some(
        base_instance(s.req, WAIT)
            .bind("condition", vec![cond.clone()])
            .bind("until", vec![q.clone()])
            .bind("response", vec![s.req.response.clone()]),
    )
}

fn complement(p: &Probability) -> Probability {
    let op = match p.op {
        ProbOp::Le => ProbOp::Ge,
        ProbOp::Lt => ProbOp::Gt,
        ProbOp::Ge => ProbOp::Le,
        ProbOp::Gt => ProbOp::Lt,
        ProbOp::Eq => ProbOp::Eq,
    };
    Probability { op, value: BigRational::one() - &p.value }
}

fn safe_space(s: &Shape) -> Option<PatternInstance> {
    match (&s.req.timing, s.kind) {
        (Timing::Always, None) => Some(base_instance(s.req, MAINTAIN_SAFE_SPACE)),
        (Timing::Always, Some(ConditionKind::Holding)) => {
            Some(base_instance(s.req, MAINTAIN_SAFE_SPACE).bind("condition", vec![s.cond?.clone()]))
        }
        // P<=p [F bad] is read as its dual P>=1-p [G !bad].
        (Timing::Eventually, None) if s.req.probability.as_ref().is_some_and(|p| p.op.is_upper_bound()) => {
            let mut inst =
                base_instance(s.req, MAINTAIN_SAFE_SPACE).bind("response", vec![s.req.response.clone().not()]);
            inst.probability = s.req.probability.as_ref().map(complement);
            return Some(inst);
        }
        _ => None,
    }
    .map(|inst| inst.bind("response", vec![s.req.response.clone()]))
}

fn reaction(s: &Shape) -> Option<PatternInstance> {
    let base = match s.req.timing {
        Timing::Immediately => INSTANT_REACTION,
        Timing::NextTimepoint => PROMPT_REACTION,
        Timing::Eventually => DELAYED_REACTION,
        _ => return None,
    };
    let mut inst = base_instance(s.req, base)
        .bind("condition", vec![s.cond?.clone()])
        .bind("response", vec![s.req.response.clone()]);
    inst.triggered = s.kind == Some(ConditionKind::Trigger);
    Some(inst)
}

fn single(req: &Requirement) -> Option<PatternInstance> {
    let s = Shape::of(req);
    if req.probability.is_some() {
        let mut inst = safe_space(&s).or_else(|| reaction(&s))?;
        if inst.probability.is_none() {
            inst.probability = req.probability.clone();
        }
        return Some(inst);
    }
    transmit(&s)
        .or_else(|| reconnect(&s))
        .or_else(|| localisation(&s))
        .or_else(|| wait(&s))
        .or_else(|| safe_space(&s))
        .or_else(|| reaction(&s))
}

/// Alternating `upon p eventually c` / `upon c at the next timepoint p'`.
fn phases(g: &RequirementGroup) -> Option<PatternInstance> {
    let first = g.parts.first()?;
    if g.parts.len() < 2 {
        return None;
    }
    let mut phases = Vec::new();
    let mut conditions = Vec::new();
    let mut expected: Option<&Formula> = None;
    for (i, r) in g.parts.iter().enumerate() {
        if r.probability.is_some() || r.scope != first.scope || r.component != first.component {
            return None;
        }
        let s = Shape::of(r);
        if s.kind != Some(ConditionKind::Trigger) {
            return None;
        }
        let cond = s.cond?;
        bool_atom(cond)?;
        bool_atom(&r.response)?;
        if expected.is_some_and(|e| e != cond) {
            return None;
        }
        let timing = if i % 2 == 0 { Timing::Eventually } else { Timing::NextTimepoint };
        if r.timing != timing {
            return None;
        }
        if i == 0 {
            phases.push(cond.clone());
        }
        if i % 2 == 0 {
            conditions.push(r.response.clone());
        } else {
            phases.push(r.response.clone());
        }
        expected = Some(&r.response);
    }
    Some(base_instance(first, PHASES).bind("phases", phases).bind("conditions", conditions))
}

/// `whenever c ... until q r` plus `whenever c ... eventually q`.
fn wait_with_companion(g: &RequirementGroup) -> Option<PatternInstance> {
    let [main, companion] = g.parts.as_slice() else { return None };
    let inst = wait(&Shape::of(main))?;
    let same_guard = companion.condition == main.condition && companion.scope == main.scope;
    let reaches = companion.timing == Timing::Eventually && Some(&companion.response) == main.timing.payload();
    (same_guard && reaches && companion.probability.is_none() && main.probability.is_none()).then_some(inst)
}

/// Structural match against the catalogue templates. Specific patterns are
/// tried before the generic reaction family.
pub fn classify(g: &RequirementGroup) -> Option<Classification> {
    let inst = match g.parts.as_slice() {
        [] => None,
        [only] => single(only),
        _ => phases(g).or_else(|| wait_with_companion(g)),
    }?;
    Some(Classification { name: inst.name(), instance: inst })
}
