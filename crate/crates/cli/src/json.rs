//! JSON shapes for `--json` output. Every document carries
//! `"schema_version": 1`.

use missionspec::fretish::{Diagnostic, Requirement, Severity};
use missionspec::ltl::{render_ltl, Formula, Verdict};
use missionspec::numeric::render_decimal;
use missionspec::patterns::PatternTemplate;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn document(key: &str, items: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    doc.insert(key.into(), items);
    Value::Object(doc)
}

fn formula(f: &Formula) -> Value {
    Value::String(render_ltl(f))
}

pub fn requirement(r: &Requirement) -> Value {
    json!({
        "scope": r.scope,
        "condition": r.condition.as_ref().map(|c| json!({
            "keyword": c.keyword.as_str(),
            "kind": c.kind().to_string(),
            "expr": formula(&c.expr),
        })),
        "component": r.component,
        "probability": r.probability.as_ref().map(|p| json!({
            "op": p.op.symbol(),
            "value": render_decimal(&p.value),
        })),
        "timing": {
            "kind": r.timing.kind().to_string(),
            "payload": r.timing.payload().map(formula),
        },
        "response": formula(&r.response),
    })
}

pub fn diagnostic(d: &Diagnostic) -> Value {
    json!({
        "severity": match d.severity { Severity::Error => "error", Severity::Warning => "warning" },
        "member": d.member + 1,
        "field": d.field.to_string(),
        "message": d.message,
    })
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "status": v.status.to_string(),
        "witness": v.witness,
        "explanation": v.explanation,
    })
}

pub fn bindings(b: &std::collections::BTreeMap<String, Vec<Formula>>) -> Value {
    b.iter().map(|(k, v)| (k.clone(), v.iter().map(formula).collect::<Value>())).collect::<Map<_, _>>().into()
}

pub fn template(t: &PatternTemplate) -> Value {
    json!({
        "name": t.name,
        "category": t.category.to_string(),
        "provenance": t.provenance.to_string(),
        "variant_axes": t.variant_axes.iter().map(|a| a.prefix()).collect::<Vec<_>>(),
        "roles": t.roles.iter().map(|r| json!({"name": r.name, "min": r.min, "max": r.max})).collect::<Vec<_>>(),
        "label_only": t.is_label_only(),
        "skeleton": t.skeleton,
        "ltl": t.ltl_schema,
    })
}
