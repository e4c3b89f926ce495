use std::io::{IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use missionspec::corpus::{load_corpus, stats, validate_corpus, ClassifierVerdict, CompileStatus, FrequencyTable};
use missionspec::fretish::{has_errors, parse_requirement_lines, render_fretish, validate, RequirementGroup};
use missionspec::ltl::{render_ltl, Status};
use missionspec::patterns::{classify, export_catalogue, list_catalogue};
use missionspec::semantics::{explain, to_ltl};
use missionspec::trace::{check_requirements, load_trace};
use serde_json::{json, Value};

mod json;

/// Structured robotic-mission requirements: parse, compile to LTL, classify
/// against the pattern catalogue and check over traces.
#[derive(Parser)]
#[command(name = "missionspec", version)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; rely on the exit code.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Requirements file (one group per line, `#` comments), `-` for stdin,
    /// or inline requirement text.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse requirements and print their canonical form.
    Parse(Input),
    /// Compile requirements to LTL.
    ToLtl {
        #[command(flatten)]
        input: Input,
        /// Show which table row produced each formula.
        #[arg(long)]
        explain: bool,
    },
    /// Match requirements against the pattern catalogue.
    Classify(Input),
    /// Check requirements against a trace file.
    Check { requirements: String, trace: PathBuf },
    /// Pattern frequencies of a corpus file.
    Stats {
        corpus: PathBuf,
        /// Expected frequency table; differences exit with 1.
        #[arg(long)]
        expected: Option<PathBuf>,
        /// Also run the classifier over every entry.
        #[arg(long)]
        validate: bool,
    },
    /// List the pattern catalogue.
    Catalogue {
        /// One block per pattern with skeleton and LTL schema.
        #[arg(long)]
        detailed: bool,
    },
}

/// Exit status 2 with a message.
struct InputError(String);

type Outcome = Result<ExitCode, InputError>;

struct Out {
    json: bool,
    quiet: bool,
    color: bool,
}

impl Out {
    fn line(&self, text: impl AsRef<str>) {
        if !self.quiet {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{}", text.as_ref());
        }
    }

    fn doc(&self, doc: Value) {
        if !self.quiet {
            let text = serde_json::to_string_pretty(&doc).expect("serializable");
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }

    fn status(&self, s: Status) -> String {
        let text = s.to_string();
        match (self.color, s) {
            (false, _) => text,
            (true, Status::Satisfied) => format!("\x1b[32m{text}\x1b[0m"),
            (true, Status::Violated) => format!("\x1b[31m{text}\x1b[0m"),
        }
    }
}

fn read_input(arg: &str) -> Result<String, InputError> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| InputError(format!("cannot read stdin: {e}")))?;
        return Ok(text);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {arg}: {e}")));
    }
    if !arg.contains(char::is_whitespace) && (arg.contains('/') || arg.ends_with(".req")) {
        return Err(InputError(format!("cannot read {arg}: no such file")));
    }
    Ok(arg.to_string())
}

fn groups(arg: &str) -> Result<Vec<(usize, RequirementGroup)>, InputError> {
    let text = read_input(arg)?;
    let groups = parse_requirement_lines(&text).map_err(|e| InputError(e.to_string()))?;
    if groups.is_empty() {
        return Err(InputError("no requirements in input".into()));
    }
    Ok(groups)
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_parse(out: &Out, input: &Input) -> Outcome {
    let mut docs = Vec::new();
    let mut invalid = false;
    for (line, g) in groups(&input.input)? {
        let diagnostics = validate(&g);
        invalid |= has_errors(&diagnostics);
        let text = render_fretish(&g).ok();
        if out.json {
            docs.push(json!({
                "line": line,
                "text": text,
                "requirements": g.parts.iter().map(json::requirement).collect::<Vec<_>>(),
                "diagnostics": diagnostics.iter().map(json::diagnostic).collect::<Vec<_>>(),
            }));
            continue;
        }
        if let Some(text) = text {
            out.line(text);
        }
        for d in &diagnostics {
            eprintln!("line {line}: {d}");
        }
    }
    if out.json {
        out.doc(json::document("groups", docs.into()));
    }
    if invalid {
        return Err(InputError("input has errors".into()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_to_ltl(out: &Out, input: &Input, with_explanation: bool) -> Outcome {
    let mut docs = Vec::new();
    for (line, g) in groups(&input.input)? {
        let f = to_ltl(&g).map_err(|e| InputError(format!("line {line}: {e}")))?;
        let explanation = if with_explanation { Some(explain(&g).expect("compiled above")) } else { None };
        if out.json {
            docs.push(json!({
                "line": line,
                "requirement": render_fretish(&g).ok(),
                "ltl": render_ltl(&f),
                "explanation": explanation,
            }));
        } else if let Some(text) = explanation {
            out.line(text.trim_end());
        } else {
            out.line(render_ltl(&f));
        }
    }
    if out.json {
        out.doc(json::document("groups", docs.into()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(out: &Out, input: &Input) -> Outcome {
    let mut docs = Vec::new();
    let mut all = true;
    for (line, g) in groups(&input.input)? {
        let diagnostics = validate(&g);
        if has_errors(&diagnostics) {
            let msg = diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ");
            return Err(InputError(format!("line {line}: {msg}")));
        }
        let c = classify(&g);
        all &= c.is_some();
        if out.json {
            docs.push(json!({
                "line": line,
                "requirement": render_fretish(&g).ok(),
                "pattern": c.as_ref().map(|c| c.name.clone()),
                "bindings": c.as_ref().map(|c| json::bindings(c.bindings())),
            }));
            continue;
        }
        match c {
            None => out.line("unclassified"),
            Some(c) => {
                let roles: Vec<String> = c
                    .bindings()
                    .iter()
                    .map(|(role, v)| {
                        let items: Vec<String> = v.iter().map(|f| f.to_string()).collect();
                        format!("{role}=[{}]", items.join(", "))
                    })
                    .collect();
                out.line(format!("{}  {}", c.name, roles.join(" ")));
            }
        }
    }
    if out.json {
        out.doc(json::document("groups", docs.into()));
    }
    Ok(exit(all))
}

fn cmd_check(out: &Out, requirements: &str, trace: &Path) -> Outcome {
    let groups = groups(requirements)?;
    let trace = load_trace(trace).map_err(|e| InputError(e.to_string()))?;
    let list: Vec<RequirementGroup> = groups.iter().map(|(_, g)| g.clone()).collect();
    let report = check_requirements(&list, &trace);
    if out.json {
        let results: Vec<Value> = report
            .entries
            .iter()
            .zip(&groups)
            .map(|(e, (line, _))| {
                let mut v = json!({"line": line, "requirement": e.requirement, "ltl": e.ltl});
                match &e.outcome {
                    Ok(verdict) => v["verdict"] = json::verdict(verdict),
                    Err(msg) => v["error"] = Value::String(msg.clone()),
                }
                v
            })
            .collect();
        let mut doc = json::document("results", results.into());
        doc["summary"] = json!({
            "satisfied": report.summary.satisfied,
            "violated": report.summary.violated,
            "errors": report.summary.errors,
        });
        out.doc(doc);
    } else {
        for (e, (line, _)) in report.entries.iter().zip(&groups) {
            match &e.outcome {
                Ok(v) => {
                    let at = v.witness.map(|w| format!(" at step {w}")).unwrap_or_default();
                    out.line(format!("line {line}: {}{at}: {}", out.status(v.status), e.requirement));
                    if v.status == Status::Violated && v.explanation != format!("violated{at}") {
                        out.line(format!("  {}", v.explanation));
                    }
                }
                Err(msg) => eprintln!("line {line}: error: {msg}"),
            }
        }
        let s = report.summary;
        out.line(format!("{} satisfied, {} violated, {} errors", s.satisfied, s.violated, s.errors));
    }
    if report.summary.errors > 0 {
        return Err(InputError(format!("{} requirement(s) could not be checked", report.summary.errors)));
    }
    Ok(exit(report.all_satisfied()))
}

fn cmd_stats(out: &Out, corpus: &Path, expected: Option<&Path>, with_validation: bool) -> Outcome {
    let entries = load_corpus(corpus).map_err(|e| InputError(e.to_string()))?;
    let table = stats(&entries);
    let expected = expected.map(FrequencyTable::load).transpose().map_err(|e| InputError(e.to_string()))?;
    let diff = expected.as_ref().map(|x| table.diff(x)).unwrap_or_default();
    let report = with_validation.then(|| validate_corpus(&entries));
    if out.json {
        let mut doc = json::document("counts", json!(table.counts));
        doc["total"] = table.total.into();
        if expected.is_some() {
            doc["diff"] = diff
                .iter()
                .map(|d| json!({"pattern": d.name, "expected": d.expected, "actual": d.actual}))
                .collect::<Vec<_>>()
                .into();
        }
        if let Some(r) = &report {
            doc["validation"] = json!({
                "parsed": r.parsed(),
                "templated": r.templated(),
                "agreed": r.agreed(),
                "entries": r.entries.iter().map(|e| json!({
                    "id": e.id,
                    "declared": e.declared,
                    "parse_error": e.parse.as_ref().err(),
                    "compile": compile_label(&e.compile),
                    "classified": e.classified,
                    "verdict": verdict_label(&e.verdict),
                })).collect::<Vec<_>>(),
            });
        }
        out.doc(doc);
    } else {
        let width = table.counts.keys().map(|k| k.len()).max().unwrap_or(0).max(5);
        for (name, n) in &table.counts {
            out.line(format!("{name:<width$}  {n:>4}"));
        }
        out.line(format!("{:<width$}  {:>4}", "total", table.total));
        if expected.is_some() {
            if diff.is_empty() {
                out.line("matches expected table");
            }
            for d in &diff {
                out.line(format!("diff {d}"));
            }
        }
        if let Some(r) = &report {
            for e in &r.entries {
                out.line(format!(
                    "{:<6} {:<10} {:<12} {}",
                    e.id,
                    verdict_label(&e.verdict),
                    compile_label(&e.compile),
                    e.classified.as_deref().unwrap_or("unclassified")
                ));
            }
            out.line(format!("agreement {}/{} templated entries", r.agreed(), r.templated()));
        }
    }
    let clean = report.as_ref().is_none_or(|r| r.is_clean());
    Ok(exit(diff.is_empty() && clean))
}

fn compile_label(c: &CompileStatus) -> &'static str {
    match c {
        CompileStatus::Compiled => "compiled",
        CompileStatus::ProbabilisticSkip => "probabilistic-skip",
        CompileStatus::Failed(_) => "failed",
        CompileStatus::NotParsed => "not-parsed",
    }
}

fn verdict_label(v: &ClassifierVerdict) -> &'static str {
    match v {
        ClassifierVerdict::Match => "match",
        ClassifierVerdict::Mismatch { .. } => "mismatch",
        ClassifierVerdict::LabelOnlySkip => "label-only-skip",
    }
}

fn cmd_catalogue(out: &Out, detailed: bool) -> Outcome {
    let list = list_catalogue();
    if out.json {
        out.doc(json::document("patterns", list.iter().map(json::template).collect::<Vec<_>>().into()));
    } else if detailed {
        out.line(export_catalogue().trim_end());
    } else {
        let width = list.iter().map(|t| t.name.len()).max().unwrap_or(0);
        out.line(format!("{:<width$}  {:<14}  {:<10}  {}", "pattern", "category", "provenance", "skeleton"));
        for t in list {
            out.line(format!(
                "{:<width$}  {:<14}  {:<10}  {}",
                t.name,
                t.category.to_string(),
                t.provenance.to_string(),
                t.skeleton.unwrap_or("(label only)")
            ));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out {
        json: cli.json,
        quiet: cli.quiet,
        color: !cli.json && std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal(),
    };
    let outcome = match &cli.command {
        Command::Parse(input) => cmd_parse(&out, input),
        Command::ToLtl { input, explain } => cmd_to_ltl(&out, input, *explain),
        Command::Classify(input) => cmd_classify(&out, input),
        Command::Check { requirements, trace } => cmd_check(&out, requirements, trace),
        Command::Stats { corpus, expected, validate } => cmd_stats(&out, corpus, expected.as_deref(), *validate),
        Command::Catalogue { detailed } => cmd_catalogue(&out, *detailed),
    };
    outcome.unwrap_or_else(|InputError(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}
