//! Mission traces, their JSON file format, and requirement checking.
//!
//! ```json
//! {
//!   "closed_world": true,
//!   "booleans": ["moving", "KOZ1"],
//!   "numerics": ["x"],
//!   "steps": [ {"moving": true, "x": 1.5}, {"KOZ1": true, "x": "2"} ]
//! }
//! ```
//!
//! Numbers may be JSON numbers or decimal strings; both are read exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_rational::BigRational;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::exec::{map_ordered, Execution};
use crate::fretish::{render_fretish, RequirementGroup};
use crate::ltl::{self, is_identifier, EvalError, Status, Valuation, Verdict};
use crate::numeric::{parse_decimal, render_decimal};
use crate::semantics::to_ltl;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation{}: {message}", step.map(|s| format!(" at step {s}")).unwrap_or_default())]
    Schema { step: Option<usize>, message: String },
    #[error("step {step}: `{name}` has malformed number `{value}`")]
    Numeric { step: usize, name: String, value: String },
}

fn schema(step: Option<usize>, message: impl Into<String>) -> TraceError {
    TraceError::Schema { step, message: message.into() }
}

/// Values of one timepoint.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct State {
    pub booleans: BTreeMap<String, bool>,
    pub numerics: BTreeMap<String, BigRational>,
}

/// Names a trace declares up front.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    pub booleans: BTreeSet<String>,
    pub numerics: BTreeSet<String>,
}

impl Declarations {
    pub fn contains(&self, name: &str) -> bool {
        self.booleans.contains(name) || self.numerics.contains(name)
    }
}

/// A finite, nonempty sequence of states, one per discrete timepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    steps: Vec<State>,
    closed_world: bool,
    declared: Option<Declarations>,
}

impl Trace {
    pub fn new(steps: Vec<State>, closed_world: bool, declared: Option<Declarations>) -> Result<Trace, TraceError> {
        if steps.is_empty() {
            return Err(schema(None, "a trace needs at least one step"));
        }
        if let Some(d) = &declared {
            if let Some(name) = d.booleans.intersection(&d.numerics).next() {
                return Err(schema(None, format!("`{name}` declared both boolean and numeric")));
            }
        }
        if closed_world && declared.is_none() {
            return Err(schema(None, "closed_world requires declared booleans or numerics"));
        }
        let mut kinds: BTreeMap<&str, bool> = BTreeMap::new();
        for (i, s) in steps.iter().enumerate() {
            for name in s.booleans.keys() {
                if s.numerics.contains_key(name) {
                    return Err(schema(Some(i), format!("`{name}` is both boolean and numeric")));
                }
            }
            let entries = s.booleans.keys().map(|k| (k, true)).chain(s.numerics.keys().map(|k| (k, false)));
            for (name, is_bool) in entries {
                if !is_identifier(name) {
                    return Err(schema(Some(i), format!("`{name}` is not an identifier")));
                }
                if let Some(d) = &declared {
                    if is_bool && d.numerics.contains(name) {
                        return Err(schema(Some(i), format!("`{name}` is declared numeric but holds a boolean")));
                    }
                    if !is_bool && d.booleans.contains(name) {
                        return Err(schema(Some(i), format!("`{name}` is declared boolean but holds a number")));
                    }
                    if closed_world && !d.contains(name) {
                        return Err(schema(Some(i), format!("`{name}` is not declared")));
                    }
                }
                if *kinds.entry(name).or_insert(is_bool) != is_bool {
                    return Err(schema(Some(i), format!("`{name}` is used as both boolean and numeric")));
                }
            }
        }
        Ok(Trace { steps, closed_world, declared })
    }

    /// Closed-world boolean trace over `atoms`.
    pub fn boolean_closed(atoms: BTreeSet<String>, steps: Vec<BTreeMap<String, bool>>) -> Trace {
        let steps = steps.into_iter().map(|booleans| State { booleans, numerics: BTreeMap::new() }).collect();
        Trace { steps, closed_world: true, declared: Some(Declarations { booleans: atoms, numerics: BTreeSet::new() }) }
    }

    pub fn steps(&self) -> &[State] {
        &self.steps
    }

    pub fn closed_world(&self) -> bool {
        self.closed_world
    }

    pub fn declared(&self) -> Option<&Declarations> {
        self.declared.as_ref()
    }

    pub fn from_json_str(text: &str) -> Result<Trace, TraceError> {
        let value: Value = serde_json::from_str(text)?;
        Trace::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Trace, TraceError> {
        let obj = value.as_object().ok_or_else(|| schema(None, "top level must be an object"))?;
        for key in obj.keys() {
            if !["closed_world", "booleans", "numerics", "steps"].contains(&key.as_str()) {
                return Err(schema(None, format!("unknown field `{key}`")));
            }
        }
        let closed_world = match obj.get("closed_world") {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(_) => return Err(schema(None, "`closed_world` must be a boolean")),
        };
        let names = |field: &str| -> Result<Option<BTreeSet<String>>, TraceError> {
            match obj.get(field) {
                None => Ok(None),
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|v| match v.as_str() {
                        Some(s) if is_identifier(s) => Ok(s.to_owned()),
                        _ => Err(schema(None, format!("`{field}` entries must be identifiers"))),
                    })
                    .collect::<Result<_, _>>()
                    .map(Some),
                Some(_) => Err(schema(None, format!("`{field}` must be an array"))),
            }
        };
        let booleans = names("booleans")?;
        let numerics = names("numerics")?;
        let declared = match (booleans, numerics) {
            (None, None) => None,
            (b, n) => Some(Declarations { booleans: b.unwrap_or_default(), numerics: n.unwrap_or_default() }),
        };
        let raw_steps = match obj.get("steps") {
            Some(Value::Array(items)) => items,
            Some(_) => return Err(schema(None, "`steps` must be an array")),
            None => return Err(schema(None, "missing `steps`")),
        };
        let mut steps = Vec::with_capacity(raw_steps.len());
        for (i, raw) in raw_steps.iter().enumerate() {
            let map = raw.as_object().ok_or_else(|| schema(Some(i), "a step must be an object"))?;
            let mut state = State::default();
            for (name, v) in map {
                match v {
                    Value::Bool(b) => {
                        state.booleans.insert(name.clone(), *b);
                    }
                    Value::Number(num) => {
                        state.numerics.insert(name.clone(), number(i, name, &num.to_string())?);
                    }
                    Value::String(s) => {
                        state.numerics.insert(name.clone(), number(i, name, s)?);
                    }
                    _ => return Err(schema(Some(i), format!("`{name}` must be a boolean or a number"))),
                }
            }
            steps.push(state);
        }
        Trace::new(steps, closed_world, declared)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("closed_world".into(), Value::Bool(self.closed_world));
        if let Some(d) = &self.declared {
            obj.insert("booleans".into(), d.booleans.iter().cloned().map(Value::String).collect());
            obj.insert("numerics".into(), d.numerics.iter().cloned().map(Value::String).collect());
        }
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let mut m = Map::new();
                for (k, b) in &s.booleans {
                    m.insert(k.clone(), Value::Bool(*b));
                }
                for (k, n) in &s.numerics {
                    m.insert(k.clone(), Value::String(render_decimal(n)));
                }
                Value::Object(m)
            })
            .collect();
        obj.insert("steps".into(), steps);
        Value::Object(obj)
    }
}

fn number(step: usize, name: &str, text: &str) -> Result<BigRational, TraceError> {
    parse_decimal(text).ok_or_else(|| TraceError::Numeric { step, name: name.to_owned(), value: text.to_owned() })
}

impl Valuation for Trace {
    fn len(&self) -> usize {
        self.steps.len()
    }

    fn boolean(&self, step: usize, name: &str) -> Result<bool, EvalError> {
        let state = &self.steps[step];
        if let Some(b) = state.booleans.get(name) {
            return Ok(*b);
        }
        if state.numerics.contains_key(name) {
            return Err(EvalError::NotBoolean { name: name.into(), step });
        }
        match &self.declared {
            Some(d) if d.numerics.contains(name) => Err(EvalError::NotBoolean { name: name.into(), step }),
            Some(d) if self.closed_world && d.booleans.contains(name) => Ok(false),
            _ => Err(EvalError::UnresolvedAtom { name: name.into(), step }),
        }
    }

    fn numeric(&self, step: usize, name: &str) -> Result<&BigRational, EvalError> {
        let state = &self.steps[step];
        if let Some(n) = state.numerics.get(name) {
            return Ok(n);
        }
        let declared_bool = self.declared.as_ref().is_some_and(|d| d.booleans.contains(name));
        if state.booleans.contains_key(name) || declared_bool {
            return Err(EvalError::NotNumeric { name: name.into(), step });
        }
        Err(EvalError::UnresolvedAtom { name: name.into(), step })
    }
}

pub fn load_trace(path: impl AsRef<Path>) -> Result<Trace, TraceError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| TraceError::Io { path: path.display().to_string(), source })?;
    Trace::from_json_str(&text)
}

/// Result for one requirement group.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry {
    pub requirement: String,
    /// Rendered LTL, when compilation succeeded.
    pub ltl: Option<String>,
    pub outcome: Result<Verdict, String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub satisfied: usize,
    pub violated: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn all_satisfied(&self) -> bool {
        self.summary.violated == 0 && self.summary.errors == 0
    }
}

pub fn check_requirements(reqs: &[RequirementGroup], trace: &Trace) -> CheckReport {
    check_requirements_with(reqs, trace, Execution::default())
}

/// Compiles and checks each group; failures are recorded per entry.
pub fn check_requirements_with(reqs: &[RequirementGroup], trace: &Trace, exec: Execution) -> CheckReport {
    let entries = map_ordered(reqs, exec, |group| {
        let requirement = render_fretish(group).unwrap_or_else(|_| format!("{group:?}"));
        match to_ltl(group) {
            Err(e) => CheckEntry { requirement, ltl: None, outcome: Err(e.to_string()) },
            Ok(f) => CheckEntry {
                requirement,
                ltl: Some(ltl::render_ltl(&f)),
                outcome: ltl::check(&f, trace).map_err(|e| e.to_string()),
            },
        }
    });
    let mut summary = Summary::default();
    for e in &entries {
        match &e.outcome {
            Ok(v) if v.status == Status::Satisfied => summary.satisfied += 1,
            Ok(_) => summary.violated += 1,
            Err(_) => summary.errors += 1,
        }
    }
    CheckReport { entries, summary }
}
