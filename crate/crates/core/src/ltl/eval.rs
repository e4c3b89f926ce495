//! Finite-trace evaluation.
//!
//! Semantics over a trace of `n` states, at position `i`:
//! `X φ` needs a successor (false at the last state); `F` and `G` range over
//! `i..n` inclusive; `φ U ψ` needs `ψ` at some `j >= i` with `φ` on `i..j`;
//! `φ W ψ` additionally holds when `φ` holds on all of `i..n`.

use std::collections::HashMap;

use num_rational::BigRational;
use thiserror::Error;

use super::formula::{Formula, Operand, Predicate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom `{name}` has no value at step {step}")]
    UnresolvedAtom { name: String, step: usize },
    #[error("`{name}` at step {step} is boolean, expected a number")]
    NotNumeric { name: String, step: usize },
    #[error("`{name}` at step {step} is numeric, expected a boolean")]
    NotBoolean { name: String, step: usize },
    #[error("position {index} is outside a trace of length {len}")]
    OutOfRange { index: usize, len: usize },
    #[error("cannot evaluate over an empty trace")]
    EmptyTrace,
}

/// Read access to per-step values of a finite trace.
pub trait Valuation {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn boolean(&self, step: usize, name: &str) -> Result<bool, EvalError>;

    fn numeric(&self, step: usize, name: &str) -> Result<&BigRational, EvalError>;
}

struct Suffix<'a, V: ?Sized> {
    inner: &'a V,
    offset: usize,
}

impl<V: Valuation + ?Sized> Valuation for Suffix<'_, V> {
    fn len(&self) -> usize {
        self.inner.len() - self.offset
    }

    fn boolean(&self, step: usize, name: &str) -> Result<bool, EvalError> {
        self.inner.boolean(step + self.offset, name)
    }

    fn numeric(&self, step: usize, name: &str) -> Result<&BigRational, EvalError> {
        self.inner.numeric(step + self.offset, name)
    }
}

pub(crate) fn eval_predicate<V: Valuation + ?Sized>(p: &Predicate, v: &V, step: usize) -> Result<bool, EvalError> {
    match p {
        Predicate::BoolAtom(name) => v.boolean(step, name),
        Predicate::Comparison { var, op, rhs } => {
            let lhs = v.numeric(step, var)?;
            let holds = match rhs {
                Operand::Const(c) => op.holds(lhs, c),
                Operand::Var(other) => op.holds(lhs, v.numeric(step, other)?),
            };
            Ok(holds)
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    True,
    False,
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Next(usize),
    Eventually(usize),
    Globally(usize),
    Until(usize, usize),
    WeakUntil(usize, usize),
}

/// A formula flattened to post-order, so every operand precedes its parent
/// and the root is last. Evaluation fills one row of truth values per node.
#[derive(Debug, Clone)]
pub(crate) struct Program {
    ops: Vec<Op>,
    atoms: Vec<Predicate>,
}

impl Program {
    pub(crate) fn compile(f: &Formula) -> Program {
        let mut program = Program { ops: Vec::with_capacity(f.size()), atoms: Vec::new() };
        let mut atom_ids = HashMap::new();
        program.push(f, &mut atom_ids);
        program
    }

    fn push(&mut self, f: &Formula, atom_ids: &mut HashMap<Predicate, usize>) -> usize {
        use Formula as F;
        let op = match f {
            F::True => Op::True,
            F::False => Op::False,
            F::Atom(p) => {
                let next = self.atoms.len();
                let id = *atom_ids.entry(p.clone()).or_insert(next);
                if id == next {
                    self.atoms.push(p.clone());
                }
                Op::Atom(id)
            }
            F::Not(a) => Op::Not(self.push(a, atom_ids)),
            F::Next(a) => Op::Next(self.push(a, atom_ids)),
            F::Eventually(a) => Op::Eventually(self.push(a, atom_ids)),
            F::Globally(a) => Op::Globally(self.push(a, atom_ids)),
            F::And(a, b) => {
                let (a, b) = (self.push(a, atom_ids), self.push(b, atom_ids));
                Op::And(a, b)
            }
            F::Or(a, b) => {
                let (a, b) = (self.push(a, atom_ids), self.push(b, atom_ids));
                Op::Or(a, b)
            }
            F::Implies(a, b) => {
                let (a, b) = (self.push(a, atom_ids), self.push(b, atom_ids));
                Op::Implies(a, b)
            }
            F::Until(a, b) => {
                let (a, b) = (self.push(a, atom_ids), self.push(b, atom_ids));
                Op::Until(a, b)
            }
            F::WeakUntil(a, b) => {
                let (a, b) = (self.push(a, atom_ids), self.push(b, atom_ids));
                Op::WeakUntil(a, b)
            }
        };
        self.ops.push(op);
        self.ops.len() - 1
    }

    pub(crate) fn atoms(&self) -> &[Predicate] {
        &self.atoms
    }

    pub(crate) fn node_count(&self) -> usize {
        self.ops.len()
    }

    fn root(&self) -> usize {
        self.ops.len() - 1
    }

    /// Fills `table` (node-major, `n` columns) and returns the root's value
    /// at position 0.
    pub(crate) fn run<E, A>(&self, n: usize, table: &mut Vec<bool>, mut atom: A) -> Result<bool, E>
    where
        A: FnMut(usize, usize) -> Result<bool, E>,
    {
        debug_assert!(n > 0);
        table.clear();
        table.resize(self.ops.len() * n, false);
        for (k, op) in self.ops.iter().enumerate() {
            let row = k * n;
            let at = |t: &Vec<bool>, node: usize, j: usize| t[node * n + j];
            match *op {
                Op::True => table[row..row + n].fill(true),
                Op::False => {}
                Op::Atom(id) => {
                    for j in 0..n {
                        table[row + j] = atom(id, j)?;
                    }
                }
                Op::Not(a) => {
                    for j in 0..n {
                        table[row + j] = !at(table, a, j);
                    }
                }
                Op::And(a, b) => {
                    for j in 0..n {
                        table[row + j] = at(table, a, j) && at(table, b, j);
                    }
                }
                Op::Or(a, b) => {
                    for j in 0..n {
                        table[row + j] = at(table, a, j) || at(table, b, j);
                    }
                }
                Op::Implies(a, b) => {
                    for j in 0..n {
                        table[row + j] = !at(table, a, j) || at(table, b, j);
                    }
                }
                Op::Next(a) => {
                    for j in 0..n {
                        table[row + j] = j + 1 < n && at(table, a, j + 1);
                    }
                }
                Op::Eventually(a) => {
                    let mut acc = false;
                    for j in (0..n).rev() {
                        acc = acc || at(table, a, j);
                        table[row + j] = acc;
                    }
                }
                Op::Globally(a) => {
                    let mut acc = true;
                    for j in (0..n).rev() {
                        acc = acc && at(table, a, j);
                        table[row + j] = acc;
                    }
                }
                Op::Until(a, b) => {
                    let mut acc = false;
                    for j in (0..n).rev() {
                        acc = at(table, b, j) || (at(table, a, j) && acc);
                        table[row + j] = acc;
                    }
                }
                Op::WeakUntil(a, b) => {
                    let mut acc = true;
                    for j in (0..n).rev() {
                        acc = at(table, b, j) || (at(table, a, j) && acc);
                        table[row + j] = acc;
                    }
                }
            }
        }
        Ok(table[self.root() * n])
    }

    /// Earliest position by which the value `want` of `node` at `j` is
    /// determined, reading a table filled by [`Program::run`].
    fn settle(&self, table: &[bool], n: usize, node: usize, j: usize, want: bool) -> usize {
        let val = |node: usize, j: usize| table[node * n + j];
        let last = n - 1;
        match self.ops[node] {
            Op::True | Op::False | Op::Atom(_) => j,
            Op::Not(a) => self.settle(table, n, a, j, !want),
            Op::And(a, b) => self.settle_binary(table, n, j, want, (a, true), (b, true), false),
            Op::Or(a, b) => self.settle_binary(table, n, j, want, (a, true), (b, true), true),
            Op::Implies(a, b) => self.settle_binary(table, n, j, want, (a, false), (b, true), true),
            Op::Next(a) => {
                if j + 1 < n {
                    self.settle(table, n, a, j + 1, want)
                } else {
                    j
                }
            }
            Op::Globally(a) | Op::Eventually(a) => {
                let decisive = matches!(self.ops[node], Op::Eventually(_));
                if want == decisive {
                    let k = (j..n).find(|&k| val(a, k) == decisive).expect("table consistent");
                    self.settle(table, n, a, k, decisive)
                } else {
                    last
                }
            }
            Op::Until(a, b) | Op::WeakUntil(a, b) => {
                for k in j..n {
                    if val(b, k) {
                        return if want { self.settle(table, n, b, k, true) } else { last };
                    }
                    if !val(a, k) {
                        return if want {
                            last
                        } else {
                            self.settle(table, n, a, k, false).max(self.settle(table, n, b, k, false))
                        };
                    }
                }
                last
            }
        }
    }

    // `disjunctive`: the connective is true as soon as one (polarity-adjusted)
    // operand is true.
    #[allow(clippy::too_many_arguments)]
    fn settle_binary(
        &self,
        table: &[bool],
        n: usize,
        j: usize,
        want: bool,
        (a, pa): (usize, bool),
        (b, pb): (usize, bool),
        disjunctive: bool,
    ) -> usize {
        let lit = |node: usize, pol: bool| table[node * n + j] == pol;
        // an operand "fires" when its literal value equals the connective's
        // short-circuit outcome
        let short = disjunctive == want;
        let fire = |pol: bool| if disjunctive { pol } else { !pol };
        if short {
            let mut best = usize::MAX;
            for (node, pol) in [(a, pa), (b, pb)] {
                if lit(node, fire(pol)) {
                    let target = table[node * n + j];
                    best = best.min(self.settle(table, n, node, j, target));
                }
            }
            best
        } else {
            let sa = self.settle(table, n, a, j, table[a * n + j]);
            let sb = self.settle(table, n, b, j, table[b * n + j]);
            sa.max(sb)
        }
    }
}

/// Truth of `f` at position `i`.
pub fn eval_at<V: Valuation + ?Sized>(f: &Formula, trace: &V, i: usize) -> Result<bool, EvalError> {
    if trace.is_empty() {
        return Err(EvalError::EmptyTrace);
    }
    if i >= trace.len() {
        return Err(EvalError::OutOfRange { index: i, len: trace.len() });
    }
    let view = Suffix { inner: trace, offset: i };
    let program = Program::compile(f);
    let mut table = Vec::new();
    program.run(view.len(), &mut table, |id, j| eval_predicate(&program.atoms()[id], &view, j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Satisfied,
    Violated,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Satisfied => "satisfied",
            Status::Violated => "violated",
        })
    }
}

/// Outcome of checking a formula against a whole trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// First step at which the violation is established.
    pub witness: Option<usize>,
    pub explanation: String,
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        self.status == Status::Satisfied
    }
}

/// Checks `f` at position 0. On violation the witness is the earliest step
/// whose prefix already decides the outcome; for `G φ` that is the first step
/// where `φ` fails.
pub fn check<V: Valuation + ?Sized>(f: &Formula, trace: &V) -> Result<Verdict, EvalError> {
    if trace.is_empty() {
        return Err(EvalError::EmptyTrace);
    }
    let program = Program::compile(f);
    let n = trace.len();
    let mut table = Vec::new();
    let holds = program.run(n, &mut table, |id, j| eval_predicate(&program.atoms()[id], trace, j))?;
    if holds {
        return Ok(Verdict {
            status: Status::Satisfied,
            witness: None,
            explanation: format!("holds over all {n} steps"),
        });
    }
    let step = program.settle(&table, n, program.root(), 0, false);
    Ok(Verdict {
        status: Status::Violated,
        witness: Some(step),
        explanation: if step + 1 == n && !f.is_safety_shaped() {
            format!("not fulfilled by the end of the trace (step {step})")
        } else {
            format!("violated at step {step}")
        },
    })
}
