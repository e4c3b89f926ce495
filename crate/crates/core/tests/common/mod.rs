//! Reference semantics and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use missionspec::fretish::ProbOp;
use missionspec::ltl::{parse_ltl, CmpOp, Formula, Operand, Predicate};
use missionspec::patterns::*;
use num_rational::BigRational;
use missionspec::trace::{State, Trace};
use proptest::prelude::*;

/// Direct transcription of the finite-trace semantics, one case per
/// operator, recursing on positions. Missing booleans read as false.
pub fn naive(f: &Formula, steps: &[State], i: usize) -> bool {
    let n = steps.len();
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(Predicate::BoolAtom(name)) => steps[i].booleans.get(name).copied().unwrap_or(false),
        Formula::Atom(Predicate::Comparison { var, op, rhs }) => {
            let lhs = &steps[i].numerics[var];
            let rhs = match rhs {
                Operand::Const(c) => c,
                Operand::Var(v) => &steps[i].numerics[v],
            };
            match op {
                CmpOp::Lt => lhs < rhs,
                CmpOp::Le => lhs <= rhs,
                CmpOp::Gt => lhs > rhs,
                CmpOp::Ge => lhs >= rhs,
                CmpOp::Eq => lhs == rhs,
                CmpOp::Ne => lhs != rhs,
            }
        }
        Formula::Not(a) => !naive(a, steps, i),
        Formula::And(a, b) => naive(a, steps, i) && naive(b, steps, i),
        Formula::Or(a, b) => naive(a, steps, i) || naive(b, steps, i),
        Formula::Implies(a, b) => !naive(a, steps, i) || naive(b, steps, i),
        Formula::Next(a) => i + 1 < n && naive(a, steps, i + 1),
        Formula::Eventually(a) => (i..n).any(|j| naive(a, steps, j)),
        Formula::Globally(a) => (i..n).all(|j| naive(a, steps, j)),
        Formula::Until(a, b) => (i..n).any(|j| naive(b, steps, j) && (i..j).all(|k| naive(a, steps, k))),
        Formula::WeakUntil(a, b) => {
            (i..n).any(|j| naive(b, steps, j) && (i..j).all(|k| naive(a, steps, k))) || (i..n).all(|k| naive(a, steps, k))
        }
    }
}

pub fn atoms(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Boolean trace from per-step lists of the atoms that are true.
pub fn boolean_trace(universe: &[&str], steps: &[&[&str]]) -> Trace {
    let rows = steps
        .iter()
        .map(|on| universe.iter().map(|a| (a.to_string(), on.contains(a))).collect::<BTreeMap<_, _>>())
        .collect();
    Trace::boolean_closed(atoms(universe), rows)
}

/// Every closed-world trace over `universe` with length `1..=max_len`.
pub fn all_traces(universe: &[&str], max_len: usize) -> Vec<Trace> {
    let w = universe.len();
    let mut out = Vec::new();
    for len in 1..=max_len {
        for code in 0u64..(1u64 << (w * len)) {
            let rows = (0..len)
                .map(|j| {
                    universe
                        .iter()
                        .enumerate()
                        .map(|(k, a)| (a.to_string(), code >> (j * w + k) & 1 == 1))
                        .collect::<BTreeMap<_, _>>()
                })
                .collect();
            out.push(Trace::boolean_closed(atoms(universe), rows));
        }
    }
    out
}

/// Random formulas over the given atoms, depth at most `depth`.
pub fn formula(names: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => proptest::sample::select(names).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::next),
            inner.clone().prop_map(Formula::eventually),
            inner.clone().prop_map(Formula::globally),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.until(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.weak_until(b)),
        ]
    })
}

/// Like [`formula`] but leaves also include numeric comparisons.
pub fn formula_with_comparisons(depth: u32) -> impl Strategy<Value = Formula> {
    let op = proptest::sample::select(vec![CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne]);
    let cmp = (proptest::sample::select(vec!["x", "y_2", "speed"]), op, -50i64..50, 1i64..5).prop_map(
        |(v, op, num, den)| {
            Formula::pred(Predicate::compare(v, op, num_rational::BigRational::new(num.into(), den.into())))
        },
    );
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        4 => proptest::sample::select(vec!["a", "b", "KOZ1", "p_2", "Mode"]).prop_map(Formula::atom),
        2 => cmp,
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::next),
            inner.clone().prop_map(Formula::eventually),
            inner.clone().prop_map(Formula::globally),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.until(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.weak_until(b)),
        ]
    })
}

/// Every formula over `names` up to `size` nodes, using the given operators.
pub fn small_formulas(names: &[&str], size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); size + 1];
    by_size[1] = names.iter().map(|n| Formula::atom(*n)).collect();
    by_size[1].push(Formula::True);
    by_size[1].push(Formula::False);
    for s in 2..=size {
        let mut next = Vec::new();
        for f in &by_size[s - 1] {
            next.push(f.clone().not());
            next.push(f.clone().next());
            next.push(f.clone().eventually());
            next.push(f.clone().globally());
        }
        for left in 1..s - 1 {
            let right = s - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    next.push(a.clone().and(b.clone()));
                    next.push(a.clone().or(b.clone()));
                    next.push(a.clone().implies(b.clone()));
                    next.push(a.clone().until(b.clone()));
                    next.push(a.clone().weak_until(b.clone()));
                }
            }
        }
        by_size[s] = next;
    }
    by_size.into_iter().flatten().collect()
}

pub fn repo_path(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

/// Expected per-group outcome of a bundled scenario: status and witness.
pub fn scenario_expectation(name: &str) -> Vec<(String, Option<usize>)> {
    let text = std::fs::read_to_string(repo_path(&format!("scenarios/{name}.expected.json"))).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], 1);
    v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["status"].as_str().unwrap().to_string(), r["witness"].as_u64().map(|w| w as usize)))
        .collect()
}

pub fn scenario_groups(name: &str) -> Vec<missionspec::RequirementGroup> {
    let text = std::fs::read_to_string(repo_path(&format!("scenarios/{name}.req"))).unwrap();
    missionspec::fretish::parse_requirement_lines(&text).unwrap().into_iter().map(|(_, g)| g).collect()
}

pub fn scenario_trace(name: &str) -> Trace {
    missionspec::trace::load_trace(repo_path(&format!("scenarios/{name}.trace.json"))).unwrap()
}

pub const SCENARIOS: [&str; 3] = ["keep_out_zone", "phases", "perimeter"];

/// Distinct identifiers, none a keyword.
pub fn idents(n: usize) -> impl Strategy<Value = Vec<String>> {
    proptest::collection::btree_set("[a-z][a-z0-9_]{0,5}", n)
        .prop_filter("reserved", |s| s.iter().all(|w| missionspec::ltl::is_identifier(w) && !RESERVED.contains(&w.as_str())))
        .prop_map(|s| s.into_iter().map(|w| format!("v{w}")).collect())
}

const RESERVED: &[&str] = &["in", "if", "upon", "whenever", "shall", "with", "mode"];

pub fn atoms_of(names: &[String]) -> Vec<Formula> {
    names.iter().map(|n| Formula::atom(n.as_str())).collect()
}

/// Random instance of a templated pattern. Reaction responses are single
/// atoms or comparisons so they do not take a localisation shape.
pub fn instance(name: &'static str) -> BoxedStrategy<PatternInstance> {
    let mode = proptest::option::of(Just("Mission".to_string()));
    match name {
        PHASES => (2usize..6, any::<bool>(), mode)
            .prop_flat_map(|(n, full, mode)| {
                let conds = if full { n } else { n - 1 };
                (idents(n + conds), Just(n), Just(mode))
            })
            .prop_map(move |(ids, n, mode)| {
                base(PHASES, mode).bind("phases", atoms_of(&ids[..n])).bind("conditions", atoms_of(&ids[n..]))
            })
            .boxed(),
        TRANSMIT => (1usize..4, 1usize..4, mode)
            .prop_flat_map(|(c, d, mode)| (idents(c + d + 1), Just(c), Just(mode)))
            .prop_map(|(ids, c, mode)| {
                let d = ids.len() - 1;
                base(TRANSMIT, mode)
                    .bind("connections", atoms_of(&ids[..c]))
                    .bind("data", atoms_of(&ids[c..d]))
                    .bind("protocol", atoms_of(&ids[d..]))
            })
            .boxed(),
        RECONNECT => (1usize..5, mode)
            .prop_flat_map(|(k, mode)| (idents(k + 1), Just(mode)))
            .prop_map(|(ids, mode)| {
                let k = ids.len() - 1;
                base(RECONNECT, mode).bind("connections", atoms_of(&ids[..k])).bind("protocol", atoms_of(&ids[k..]))
            })
            .boxed(),
        STAY_IN_PERIMETER | KEEP_OUT_ZONE => {
            let min = if name == STAY_IN_PERIMETER { 2 } else { 1 };
            (min..5usize, mode)
                .prop_flat_map(|(n, mode)| (idents(n + 1), Just(mode)))
                .prop_map(move |(ids, mode)| {
                    base(name, mode).bind("action", atoms_of(&ids[..1])).bind("areas", atoms_of(&ids[1..]))
                })
                .boxed()
        }
        WAIT => (idents(3), mode)
            .prop_map(|(ids, mode)| {
                base(WAIT, mode)
                    .bind("condition", atoms_of(&ids[..1]))
                    .bind("until", atoms_of(&ids[1..2]))
                    .bind("response", atoms_of(&ids[2..]))
            })
            .boxed(),
        MAINTAIN_SAFE_SPACE => (idents(2), any::<bool>(), mode, proptest::option::of(0i64..=100))
            .prop_map(|(ids, with_cond, mode, prob)| {
                let mut i = base(MAINTAIN_SAFE_SPACE, mode).bind("response", atoms_of(&ids[..1]));
                if with_cond {
                    i = i.bind("condition", atoms_of(&ids[1..]));
                }
                if let Some(p) = prob {
                    i = i.with_probability(ProbOp::Ge, BigRational::new(p.into(), 100.into()));
                }
                i
            })
            .boxed(),
        reaction => (idents(2), mode, any::<bool>(), any::<bool>(), proptest::option::of(0i64..=100))
            .prop_map(move |(ids, mode, triggered, comparison, prob)| {
                let response = if comparison {
                    parse_ltl(&format!("{} < 2", ids[1])).unwrap()
                } else {
                    Formula::atom(ids[1].as_str())
                };
                let mut i = base(reaction, mode).bind("condition", atoms_of(&ids[..1])).bind("response", vec![response]);
                i.triggered = triggered;
                if let Some(p) = prob {
                    i = i.with_probability(ProbOp::Le, BigRational::new(p.into(), 100.into()));
                }
                i
            })
            .boxed(),
    }
}

pub fn base(t: &str, mode: Option<String>) -> PatternInstance {
    let mut i = PatternInstance::new(t, "Robot");
    i.mode = mode;
    i
}

pub fn templated() -> Vec<&'static str> {
    list_catalogue().iter().filter(|t| !t.is_label_only()).map(|t| t.name).collect()
}
