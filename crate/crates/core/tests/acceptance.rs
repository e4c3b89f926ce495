//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    all_traces, atoms, formula_with_comparisons, instance, naive, repo_path, scenario_expectation, scenario_groups,
    scenario_trace, small_formulas, templated,
};
use missionspec::corpus::{bundled_corpus, load_corpus, stats, validate_corpus, ClassifierVerdict, FrequencyTable};
use missionspec::fretish::{has_errors, parse_fretish, validate};
use missionspec::ltl::{eval_at, implies_on_bounded_traces, parse_ltl, render_ltl, Formula};
use missionspec::patterns::{classify, instantiate, label_agrees, pattern_ltl, PatternInstance, *};
use missionspec::semantics::to_ltl;
use missionspec::trace::check_requirements;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let spent = start.elapsed();
    ensure!(spent < limit, "took {:.2?}, limit {:?}", spent, limit);
    Ok(format!("{:.2?}", spent))
}

fn ltl(text: &str) -> Formula {
    parse_ltl(text).unwrap()
}

fn corpus_fidelity() -> Outcome {
    let start = Instant::now();
    let entries = bundled_corpus();
    ensure!(entries.len() == 17, "expected 17 entries, found {}", entries.len());
    for e in &entries {
        let g = e.group().map_err(|m| format!("{}: {m}", e.id))?;
        ensure!(!has_errors(&validate(&g)), "{}: validation errors", e.id);
    }
    let report = validate_corpus(&entries);
    let mut templated = 0;
    for r in &report.entries {
        if r.verdict == ClassifierVerdict::LabelOnlySkip {
            continue;
        }
        templated += 1;
        let got = r.classified.as_deref().unwrap_or("unclassified");
        ensure!(label_agrees(&r.declared, got), "{}: declared {}, classified {}", r.id, r.declared, got);
    }
    let time = within(start, Duration::from_secs(5))?;
    Ok(format!("17/17 parse, {templated}/{templated} templated entries agree, {time}"))
}

fn new_pattern_instances() -> Vec<(PatternInstance, &'static str)> {
    vec![
        (
            PatternInstance::new(PHASES, "System").bind_atoms("phases", &["p1", "p2"]).bind_atoms("conditions", &["c1"]),
            "((G ((!p1 & X p1) -> X F c1)) & (p1 -> F c1)) & ((G ((!c1 & X c1) -> X X p2)) & (c1 -> X p2))",
        ),
        (
            PatternInstance::new(PHASES, "System")
                .bind_atoms("phases", &["p1", "p2", "p3"])
                .bind_atoms("conditions", &["c1", "c2"]),
            "((G ((!p1 & X p1) -> X F c1)) & (p1 -> F c1)) & ((G ((!c1 & X c1) -> X X p2)) & (c1 -> X p2)) \
             & ((G ((!p2 & X p2) -> X F c2)) & (p2 -> F c2)) & ((G ((!c2 & X c2) -> X X p3)) & (c2 -> X p3))",
        ),
        (
            PatternInstance::new(TRANSMIT, "System")
                .bind_atoms("connections", &["c1"])
                .bind_atoms("data", &["d1"])
                .bind_atoms("protocol", &["T"]),
            "G ((c1 & !d1) -> (T W d1))",
        ),
        (
            PatternInstance::new(TRANSMIT, "System")
                .bind_atoms("connections", &["c1", "c2"])
                .bind_atoms("data", &["d1", "d2"])
                .bind_atoms("protocol", &["T"]),
            "G (((c1 & c2) & (!d1 & !d2)) -> (T W (d1 & d2)))",
        ),
        (
            PatternInstance::new(RECONNECT, "System").bind_atoms("connections", &["k1"]).bind_atoms("protocol", &["R"]),
            "G (!k1 -> (R W k1))",
        ),
        (
            PatternInstance::new(RECONNECT, "System")
                .bind_atoms("connections", &["k1", "k2"])
                .bind_atoms("protocol", &["R"]),
            "G ((!k1 | !k2) -> (R W (k1 & k2)))",
        ),
        (
            PatternInstance::new(STAY_IN_PERIMETER, "System").bind_atoms("action", &["a"]).bind_atoms("areas", &["l1"]),
            "G (a -> l1)",
        ),
        (
            PatternInstance::new(STAY_IN_PERIMETER, "System")
                .bind_atoms("action", &["a"])
                .bind_atoms("areas", &["l1", "l2"]),
            "G (a -> (l1 & l2))",
        ),
        (
            PatternInstance::new(KEEP_OUT_ZONE, "System").bind_atoms("action", &["a"]).bind_atoms("areas", &["l1"]),
            "G (a -> !l1)",
        ),
        (
            PatternInstance::new(KEEP_OUT_ZONE, "System").bind_atoms("action", &["a"]).bind_atoms("areas", &["l1", "l2"]),
            "G (a -> (!l1 & !l2))",
        ),
    ]
}

fn pattern_formula_fidelity() -> Outcome {
    let cases = new_pattern_instances();
    for (inst, displayed) in &cases {
        let got = pattern_ltl(inst).map_err(|e| e.to_string())?;
        let want = ltl(displayed);
        ensure!(
            got.normalized() == want.normalized(),
            "{}: got {}, expected {}",
            inst.template,
            render_ltl(&got),
            render_ltl(&want)
        );
    }
    Ok(format!("{} formulas (5 patterns, n = 1 and 2) match exactly", cases.len()))
}

fn phases_correspondence() -> Outcome {
    let lines = [
        "upon p1 System shall eventually c1",
        "upon c1 System shall at the next timepoint p2",
        "upon p2 System shall eventually c2",
    ];
    let pairs = [
        "(G (((! p1) & (X p1)) -> (X (F c1)))) & (p1 -> (F c1))",
        "(G (((! c1) & (X c1)) -> (X (X p2)))) & (c1 -> (X p2))",
        "(G (((! p2) & (X p2)) -> (X (F c2)))) & (p2 -> (F c2))",
    ];
    for (line, pair) in lines.iter().zip(pairs) {
        let got = to_ltl(&parse_fretish(line).unwrap()).map_err(|e| e.to_string())?;
        ensure!(got == ltl(pair), "{line}: got {}", render_ltl(&got));
    }
    let group = parse_fretish(&lines.join(" + ")).unwrap();
    let whole = to_ltl(&group).map_err(|e| e.to_string())?;
    let expected = ltl(&format!("(({}) & ({})) & ({})", pairs[0], pairs[1], pairs[2]));
    ensure!(whole == expected, "group: got {}", render_ltl(&whole));
    Ok("3 members and their conjunction equal structurally".into())
}

fn temporal_laws() -> Outcome {
    let start = Instant::now();
    let traces = all_traces(&["a", "b"], 5);
    let operands = small_formulas(&["a", "b"], 2);
    let mut checks = 0usize;
    for phi in &operands {
        for psi in &operands {
            let templates = [
                (phi.clone().weak_until(psi.clone()), phi.clone().until(psi.clone()).or(phi.clone().globally())),
                (phi.clone().eventually(), Formula::True.until(phi.clone())),
                (phi.clone().globally(), phi.clone().not().eventually().not()),
            ];
            let strong = phi.clone().until(psi.clone());
            let weak = phi.clone().weak_until(psi.clone());
            for t in &traces {
                for i in 0..t.steps().len() {
                    for (lhs, rhs) in &templates {
                        ensure!(eval_at(lhs, t, i) == eval_at(rhs, t, i), "{lhs} vs {rhs} at {i}");
                    }
                    ensure!(!eval_at(&strong, t, i).unwrap() || eval_at(&weak, t, i).unwrap(), "{strong} at {i}");
                    checks += 4;
                }
            }
        }
    }
    let mut compared = 0usize;
    for f in small_formulas(&["a", "b"], 3) {
        for t in &traces {
            for i in 0..t.steps().len() {
                ensure!(eval_at(&f, t, i).unwrap() == naive(&f, t.steps(), i), "{f} at {i} differs from oracle");
                compared += 1;
            }
        }
    }
    let time = within(start, Duration::from_secs(60))?;
    Ok(format!("{checks} law checks, {compared} oracle comparisons, 0 violations, {time}"))
}

fn encompassment() -> Outcome {
    let start = Instant::now();
    let universe = atoms(&["a", "l"]);
    let fa = ltl("G (a -> G !l)");
    let koz = ltl("G (a -> !l)");
    let forward = implies_on_bounded_traces(&fa, &koz, &universe, 6).map_err(|e| e.to_string())?;
    ensure!(forward.holds, "future avoidance does not imply keep-out-zone");
    let back = implies_on_bounded_traces(&koz, &fa, &universe, 6).map_err(|e| e.to_string())?;
    ensure!(!back.holds, "keep-out-zone unexpectedly implies future avoidance");
    let cex = back.counterexample.ok_or("no counterexample")?;
    ensure!(naive(&koz, cex.steps(), 0) && !naive(&fa, cex.steps(), 0), "counterexample does not separate");
    let time = within(start, Duration::from_secs(30))?;
    let shape: Vec<String> = cex
        .steps()
        .iter()
        .map(|s| {
            let on: Vec<&str> = s.booleans.iter().filter(|(_, v)| **v).map(|(k, _)| k.as_str()).collect();
            format!("{{{}}}", on.join(","))
        })
        .collect();
    Ok(format!("forward holds, reverse fails on [{}], {time}", shape.join(" ")))
}

fn table_4() -> Outcome {
    let full = repo_path("corpus/appendix.json");
    if full.exists() {
        let entries = load_corpus(&full).map_err(|e| e.to_string())?;
        let expected = FrequencyTable::load(repo_path("corpus/table_4.expected.json")).map_err(|e| e.to_string())?;
        let diff = stats(&entries).diff(&expected);
        ensure!(diff.is_empty(), "{}", diff.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "));
        return Ok(format!("full corpus reproduces all {} rows, total {}", expected.counts.len(), expected.total));
    }
    let expected = FrequencyTable::load(repo_path("corpus/tables_2_3.expected.json")).map_err(|e| e.to_string())?;
    let diff = stats(&bundled_corpus()).diff(&expected);
    ensure!(diff.is_empty(), "{}", diff.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "));
    Ok(format!(
        "degraded: corpus/appendix.json not present; bundled subset matches its tally ({} rows, total {})",
        expected.counts.len(),
        expected.total
    ))
}

fn round_trips() -> Outcome {
    let names = templated();
    for name in &names {
        let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
        let strategy = instance(name);
        for _ in 0..100 {
            let inst = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
            let g = instantiate(&inst).map_err(|e| format!("{name}: {e}"))?;
            let c = classify(&g).ok_or_else(|| format!("{name}: instance not classified"))?;
            ensure!(c.instance == inst, "{name}: classified as {} with {:?}", c.name, c.instance.bindings);
        }
    }
    let mut runner = TestRunner::new(Config::default());
    let strategy = formula_with_comparisons(6);
    for _ in 0..1000 {
        let f = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let text = render_ltl(&f);
        ensure!(parse_ltl(&text).as_ref() == Ok(&f), "round trip failed for {text}");
    }
    Ok(format!("{} patterns x 100 instances, 1000 formulas, 0 failures", names.len()))
}

fn scenarios() -> Outcome {
    let mut lines = Vec::new();
    for name in ["keep_out_zone", "phases"] {
        let groups = scenario_groups(name);
        let trace = scenario_trace(name);
        let report = check_requirements(&groups, &trace);
        for ((entry, (status, witness)), g) in report.entries.iter().zip(scenario_expectation(name)).zip(&groups) {
            let v = entry.outcome.as_ref().map_err(|e| format!("{name}: {e}"))?;
            ensure!(v.status.to_string() == status && v.witness == witness, "{name}: got {} {:?}", v.status, v.witness);
            let f = to_ltl(g).unwrap();
            ensure!(naive(&f, trace.steps(), 0) == v.is_satisfied(), "{name}: oracle disagrees");
            lines.push(match witness {
                Some(w) => format!("{name} {status} at {w}"),
                None => format!("{name} {status}"),
            });
        }
    }
    Ok(lines.join(", "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("corpus fidelity", corpus_fidelity),
        ("pattern-formula fidelity", pattern_formula_fidelity),
        ("phases correspondence", phases_correspondence),
        ("temporal-law suite", temporal_laws),
        ("encompassment", encompassment),
        ("table 4 reproduction", table_4),
        ("round-trip properties", round_trips),
        ("bundled scenarios", scenarios),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
