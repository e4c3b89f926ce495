use std::collections::{BTreeMap, BTreeSet};
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use missionspec::corpus::{bundled_corpus, validate_corpus_with};
use missionspec::exec::Execution;
use missionspec::ltl::{implies_on_bounded_traces_with, parse_ltl, BoundedOptions};
use missionspec::trace::{check_requirements_with, Trace};
use missionspec::{parse_fretish, RequirementGroup};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn enumeration(c: &mut Criterion) {
    let f = parse_ltl("G ((c & !d) -> (T W d))").unwrap();
    let g = parse_ltl("G ((c & !d) -> (T U d))").unwrap();
    let universe: BTreeSet<String> = ["c", "d", "T"].iter().map(|s| s.to_string()).collect();
    let mut group = c.benchmark_group("bounded_implication");
    group.sample_size(10);
    for (name, execution) in MODES {
        for len in [5usize, 6] {
            let options = BoundedOptions { execution, ..BoundedOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, len), &len, |b, &len| {
                // U implies W, so no counterexample stops the search early.
                b.iter(|| implies_on_bounded_traces_with(black_box(&g), black_box(&f), &universe, len, options).unwrap())
            });
        }
    }
    group.finish();
}

fn long_trace(len: usize) -> Trace {
    let atoms: Vec<&str> = vec!["moving", "KOZ1", "KOZ2", "p1", "c1", "p2", "Ethernet", "files", "transmit"];
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
    let rows = (0..len)
        .map(|_| {
            atoms
                .iter()
                .map(|a| {
                    seed ^= seed << 13;
                    seed ^= seed >> 7;
                    seed ^= seed << 17;
                    (a.to_string(), seed.is_multiple_of(5))
                })
                .collect::<BTreeMap<_, _>>()
        })
        .collect();
    Trace::boolean_closed(atoms.iter().map(|s| s.to_string()).collect(), rows)
}

fn batch_check(c: &mut Criterion) {
    let texts = [
        "whenever moving Astrobee shall immediately !KOZ1 & !KOZ2",
        "upon p1 System shall eventually c1 + upon c1 System shall at the next timepoint p2",
        "whenever Ethernet & !files Astrobee shall until files transmit",
        "whenever !Ethernet Astrobee shall until Ethernet transmit",
        "upon moving Astrobee shall at the next timepoint p1",
    ];
    let groups: Vec<RequirementGroup> = texts.iter().cycle().take(64).map(|t| parse_fretish(t).unwrap()).collect();
    let trace = long_trace(4000);
    let mut group = c.benchmark_group("batch_check");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(name, |b| b.iter(|| check_requirements_with(black_box(&groups), &trace, execution)));
    }
    group.finish();
}

fn corpus_validation(c: &mut Criterion) {
    let entries: Vec<_> = bundled_corpus().into_iter().cycle().take(17 * 20).collect();
    let mut group = c.benchmark_group("corpus_validation");
    for (name, execution) in MODES {
        group.bench_function(name, |b| b.iter(|| validate_corpus_with(black_box(&entries), execution)));
    }
    group.finish();
}

criterion_group!(benches, enumeration, batch_check, corpus_validation);
criterion_main!(benches);
