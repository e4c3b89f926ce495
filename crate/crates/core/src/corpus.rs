//! Literature requirement corpora: loading, validation against the
//! classifier, and pattern frequency tables.
//!
//! Corpus files are JSON:
//!
//! ```json
//! {"schema_version": 1,
//!  "entries": [{"id": "5", "nl": "...", "fretish": ["..."], "pattern": "...", "source": "..."}]}
//! ```
//!
//! Expected frequency tables use `{"schema_version": 1, "total": N, "counts": {"name": n}}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_ordered, Execution};
use crate::fretish::{has_errors, parse_fretish, validate, RequirementGroup};
use crate::patterns::{canonical_name, classify, label_agrees, template};
use crate::semantics::{to_ltl, CompileError};

/// The seventeen table requirements shipped with the crate.
pub const BUNDLED_TABLES_2_3: &str = include_str!("../../../corpus/tables_2_3.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    pub nl: String,
    pub fretish: Vec<String>,
    #[serde(rename = "pattern")]
    pub declared_pattern: String,
    #[serde(rename = "source")]
    pub source_key: String,
}

impl CorpusEntry {
    /// All FRETish strings of the entry read as one group.
    pub fn group(&self) -> Result<RequirementGroup, String> {
        let mut parts = Vec::new();
        for text in &self.fretish {
            let g = parse_fretish(text).map_err(|e| e.to_string())?;
            parts.extend(g.parts);
        }
        Ok(RequirementGroup::new(parts))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    schema_version: u32,
    entries: Vec<serde_json::Value>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed corpus: {0}")]
    Json(String),
    #[error("entry {index}: {message}")]
    Entry { index: usize, message: String },
    #[error("duplicate id '{id}' at entries {first} and {second}")]
    DuplicateId { id: String, first: usize, second: usize },
}

pub fn corpus_from_json(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let file: CorpusFile = serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
    if file.schema_version != 1 {
        return Err(CorpusError::Json(format!("unsupported schema_version {}", file.schema_version)));
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut entries = Vec::with_capacity(file.entries.len());
    for (index, raw) in file.entries.into_iter().enumerate() {
        let entry: CorpusEntry =
            serde_json::from_value(raw).map_err(|e| CorpusError::Entry { index, message: e.to_string() })?;
        if entry.fretish.is_empty() {
            return Err(CorpusError::Entry { index, message: "fretish list is empty".into() });
        }
        if canonical_name(&entry.declared_pattern).is_none() {
            return Err(CorpusError::Entry { index, message: format!("unknown pattern '{}'", entry.declared_pattern) });
        }
        if let Some(&first) = seen.get(&entry.id) {
            return Err(CorpusError::DuplicateId { id: entry.id, first, second: index });
        }
        seen.insert(entry.id.clone(), index);
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<CorpusEntry>, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.into(), source })?;
    corpus_from_json(&text)
}

pub fn bundled_corpus() -> Vec<CorpusEntry> {
    corpus_from_json(BUNDLED_TABLES_2_3).expect("bundled corpus is well formed")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompileStatus {
    Compiled,
    ProbabilisticSkip,
    Failed(String),
    /// Not attempted because parsing failed.
    NotParsed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifierVerdict {
    Match,
    Mismatch { classified: Option<String> },
    /// The declared pattern has no template.
    LabelOnlySkip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub id: String,
    pub declared: String,
    pub parse: Result<(), String>,
    pub compile: CompileStatus,
    pub classified: Option<String>,
    pub verdict: ClassifierVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<EntryReport>,
}

impl ValidationReport {
    pub fn parsed(&self) -> usize {
        self.entries.iter().filter(|e| e.parse.is_ok()).count()
    }

    /// Entries whose declared pattern has a template.
    pub fn templated(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict != ClassifierVerdict::LabelOnlySkip).count()
    }

    pub fn agreed(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict == ClassifierVerdict::Match).count()
    }

    /// Agreement over templated entries; 1 when there are none.
    pub fn agreement_ratio(&self) -> f64 {
        match self.templated() {
            0 => 1.0,
            n => self.agreed() as f64 / n as f64,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.parsed() == self.entries.len()
            && self.agreed() == self.templated()
            && self.entries.iter().all(|e| !matches!(e.compile, CompileStatus::Failed(_)))
    }
}

/// Whether a declared label names something the classifier can produce.
fn is_templated(declared: &str) -> bool {
    let Some(name) = canonical_name(declared) else { return false };
    template(&name).is_none_or(|t| !t.is_label_only())
}

fn validate_entry(entry: &CorpusEntry) -> EntryReport {
    let group = entry.group().and_then(|g| {
        let diagnostics = validate(&g);
        if has_errors(&diagnostics) {
            Err(diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))
        } else {
            Ok(g)
        }
    });
    let (parse, compile, classified) = match &group {
        Err(message) => (Err(message.clone()), CompileStatus::NotParsed, None),
        Ok(g) => {
            let compile = match to_ltl(g) {
                Ok(_) => CompileStatus::Compiled,
                Err(CompileError::Probabilistic { .. }) => CompileStatus::ProbabilisticSkip,
                Err(e) => CompileStatus::Failed(e.to_string()),
            };
            (Ok(()), compile, classify(g).map(|c| c.name))
        }
    };
    let verdict = if !is_templated(&entry.declared_pattern) {
        ClassifierVerdict::LabelOnlySkip
    } else if classified.as_deref().is_some_and(|c| label_agrees(&entry.declared_pattern, c)) {
        ClassifierVerdict::Match
    } else {
        ClassifierVerdict::Mismatch { classified: classified.clone() }
    };
    EntryReport { id: entry.id.clone(), declared: entry.declared_pattern.clone(), parse, compile, classified, verdict }
}

pub fn validate_corpus(entries: &[CorpusEntry]) -> ValidationReport {
    validate_corpus_with(entries, Execution::default())
}

pub fn validate_corpus_with(entries: &[CorpusEntry], exec: Execution) -> ValidationReport {
    ValidationReport { entries: map_ordered(entries, exec, validate_entry) }
}

/// Pattern name to count.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyTable {
    pub counts: BTreeMap<String, usize>,
    pub total: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpectedFile {
    schema_version: u32,
    total: usize,
    counts: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffRow {
    pub name: String,
    pub expected: usize,
    pub actual: usize,
}

impl fmt::Display for DiffRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, got {}", self.name, self.expected, self.actual)
    }
}

impl FrequencyTable {
    pub fn from_json(text: &str) -> Result<Self, CorpusError> {
        let file: ExpectedFile = serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
        if file.schema_version != 1 {
            return Err(CorpusError::Json(format!("unsupported schema_version {}", file.schema_version)));
        }
        let mut counts = BTreeMap::new();
        for (name, n) in file.counts {
            *counts.entry(normalize_label(&name)).or_insert(0) += n;
        }
        let sum: usize = counts.values().sum();
        if sum != file.total {
            return Err(CorpusError::Json(format!("total {} differs from the sum of counts {sum}", file.total)));
        }
        Ok(FrequencyTable { counts, total: file.total })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.into(), source })?;
        Self::from_json(&text)
    }

    /// Rows whose counts differ, in name order. Empty when the tables agree.
    pub fn diff(&self, expected: &FrequencyTable) -> Vec<DiffRow> {
        let mut names: Vec<&String> = self.counts.keys().chain(expected.counts.keys()).collect();
        names.sort();
        names.dedup();
        let mut rows: Vec<DiffRow> = names
            .into_iter()
            .map(|name| DiffRow {
                name: name.clone(),
                expected: expected.counts.get(name).copied().unwrap_or(0),
                actual: self.counts.get(name).copied().unwrap_or(0),
            })
            .filter(|r| r.expected != r.actual)
            .collect();
        if self.total != expected.total {
            rows.push(DiffRow { name: "total".into(), expected: expected.total, actual: self.total });
        }
        rows
    }
}

/// Catalogue spelling when known, otherwise whitespace-collapsed input.
pub fn normalize_label(name: &str) -> String {
    canonical_name(name).unwrap_or_else(|| name.split_whitespace().collect::<Vec<_>>().join(" "))
}

pub fn stats(entries: &[CorpusEntry]) -> FrequencyTable {
    let mut counts = BTreeMap::new();
    for e in entries {
        *counts.entry(normalize_label(&e.declared_pattern)).or_insert(0) += 1;
    }
    FrequencyTable { counts, total: entries.len() }
}
