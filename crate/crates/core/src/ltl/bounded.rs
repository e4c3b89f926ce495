//! Formula comparison by exhaustive enumeration of short boolean traces.

use std::collections::BTreeSet;

use thiserror::Error;

use super::eval::Program;
use super::formula::{Formula, Predicate};
use crate::exec::{find_first_index, Execution};
use crate::trace::Trace;

/// Default cap on (trace, formula-node) evaluations: 2^24.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundedError {
    #[error("predicate `{0}` is not a boolean atom")]
    NonBooleanAtom(String),
    #[error("atom `{0}` is not in the declared universe")]
    OutsideUniverse(String),
    #[error("maximum trace length must be positive")]
    ZeroLength,
    #[error("enumeration needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct BoundedOptions {
    pub budget: u64,
    pub execution: Execution,
}

impl Default for BoundedOptions {
    fn default() -> Self {
        BoundedOptions { budget: DEFAULT_BUDGET, execution: Execution::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Implication {
    pub holds: bool,
    /// A shortest trace satisfying the premise but not the conclusion.
    pub counterexample: Option<Trace>,
}

/// Does every trace of length `1..=max_len` over `atoms` that satisfies `f`
/// also satisfy `g`?
pub fn implies_on_bounded_traces(
    f: &Formula,
    g: &Formula,
    atoms: &BTreeSet<String>,
    max_len: usize,
) -> Result<Implication, BoundedError> {
    implies_on_bounded_traces_with(f, g, atoms, max_len, BoundedOptions::default())
}

pub fn implies_on_bounded_traces_with(
    f: &Formula,
    g: &Formula,
    atoms: &BTreeSet<String>,
    max_len: usize,
    options: BoundedOptions,
) -> Result<Implication, BoundedError> {
    if max_len == 0 {
        return Err(BoundedError::ZeroLength);
    }
    let universe: Vec<&String> = atoms.iter().collect();
    let premise = Program::compile(f);
    let conclusion = Program::compile(g);
    let premise_bits = bit_map(&premise, &universe)?;
    let conclusion_bits = bit_map(&conclusion, &universe)?;

    let width = universe.len();
    let nodes = (premise.node_count() + conclusion.node_count()) as u128;
    let mut required: u128 = 0;
    for len in 1..=max_len {
        let bits = width * len;
        if bits >= 64 {
            return Err(BoundedError::BudgetExceeded { required: u128::MAX, budget: options.budget });
        }
        required = required.saturating_add((1u128 << bits) * nodes);
    }
    if required > options.budget as u128 {
        return Err(BoundedError::BudgetExceeded { required, budget: options.budget });
    }

    let mask: u64 = (1u64 << width) - 1;
    for len in 1..=max_len {
        let count = 1u64 << (width * len);
        let decode = |index: u64, states: &mut Vec<u64>| {
            states.clear();
            states.extend((0..len).map(|j| (index >> (j * width)) & mask));
        };
        let hit = find_first_index(
            count,
            options.execution,
            || (Vec::with_capacity(len), Vec::new()),
            |(states, table), index| {
                decode(index, states);
                let holds_f = premise
                    .run::<(), _>(len, table, |id, j| Ok(states[j] >> premise_bits[id] & 1 == 1))
                    .unwrap_or(false);
                holds_f
                    && !conclusion
                        .run::<(), _>(len, table, |id, j| Ok(states[j] >> conclusion_bits[id] & 1 == 1))
                        .unwrap_or(true)
            },
        );
        if let Some(index) = hit {
            let mut states = Vec::new();
            decode(index, &mut states);
            let steps = states
                .iter()
                .map(|s| universe.iter().enumerate().map(|(b, name)| ((*name).clone(), s >> b & 1 == 1)).collect())
                .collect();
            let trace = Trace::boolean_closed(atoms.clone(), steps);
            return Ok(Implication { holds: false, counterexample: Some(trace) });
        }
    }
    Ok(Implication { holds: true, counterexample: None })
}

fn bit_map(program: &Program, universe: &[&String]) -> Result<Vec<usize>, BoundedError> {
    program
        .atoms()
        .iter()
        .map(|p| match p {
            Predicate::BoolAtom(name) => universe
                .iter()
                .position(|u| *u == name)
                .ok_or_else(|| BoundedError::OutsideUniverse(name.clone())),
            other => Err(BoundedError::NonBooleanAtom(other.to_string())),
        })
        .collect()
}
