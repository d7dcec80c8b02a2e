//! Text, DOT and JSON-lines output. Everything printed is deterministic.

use std::collections::BTreeSet;

use adelog_core::reasoner::{AboxModel, SubsumptionVerdict, Taxonomy, Verdict};
use adelog_core::semantics::Interpretation;
use adelog_core::syntax::print_individual;
use adelog_core::views::{EventReport, WorldLine};
use adelog_core::Error;
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// Graphviz for taxonomies; other results print as text.
    Dot,
    JsonLines,
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn set_text(names: &BTreeSet<String>) -> String {
    let items: Vec<String> = names.iter().map(|n| print_individual(n)).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn interpretation_json(i: &Interpretation) -> Value {
    let concepts: serde_json::Map<String, Value> =
        i.concept_names().map(|n| (n.clone(), json!(i.concept_extension(n).unwrap()))).collect();
    let roles: serde_json::Map<String, Value> = i
        .role_names()
        .map(|n| {
            let pairs: Vec<[usize; 2]> = i.role_extension(n).unwrap().into_iter().map(|(a, b)| [a, b]).collect();
            (n.clone(), json!(pairs))
        })
        .collect();
    json!({ "domain": i.size(), "concepts": concepts, "roles": roles })
}

pub fn message(text: &str, fmt: Format) -> String {
    match fmt {
        Format::JsonLines => line(json!({ "message": text })),
        _ => format!("{text}\n"),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::UndefinedName(_) => "undefined-name",
        Error::RedefinedName(_) => "redefined-name",
        Error::CyclicTBox(_) => "cyclic-tbox",
        Error::BudgetExceeded(_) => "budget-exceeded",
        Error::ResourceLimit { .. } => "resource-limit",
        Error::InvalidConfig(_) => "invalid-config",
        Error::UnknownView(_) => "unknown-view",
        Error::UnknownWorld(_) => "unknown-world",
        Error::UnknownEvent(_) => "unknown-event",
        Error::EvolverViolation { .. } => "evolver-violation",
        Error::NoSuchIndividual => "no-such-individual",
        Error::NotUnique(_) => "not-unique",
        Error::IntegrityError { .. } => "integrity",
        Error::Invalid(_) => "invalid",
    }
}

/// An error message; parse errors against known source text also show the
/// offending line with a caret.
pub fn error(e: &Error, source: Option<&str>, fmt: Format) -> String {
    if fmt == Format::JsonLines {
        let mut v = json!({ "error": error_kind(e), "message": e.to_string() });
        if let Error::Parse(p) = e {
            v["line"] = json!(p.span.line);
            v["column"] = json!(p.span.column);
        }
        return line(v);
    }
    let mut out = format!("error: {e}\n");
    if let (Error::Parse(p), Some(src)) = (e, source) {
        if let Some(text) = src.lines().nth(p.span.line - 1) {
            let width = p.span.length.max(1);
            out.push_str(&format!("  {text}\n  {}{}\n", " ".repeat(p.span.column - 1), "^".repeat(width)));
        }
    }
    out
}

pub fn subsumption(v: &SubsumptionVerdict, short: bool, fmt: Format) -> String {
    let label = match v.value {
        Verdict::Subsumed => "SUBSUMED",
        Verdict::NotSubsumed => "NOT SUBSUMED",
        Verdict::Unknown => "UNKNOWN",
    };
    if fmt == Format::JsonLines {
        let value = match v.value {
            Verdict::Subsumed => "subsumed",
            Verdict::NotSubsumed => "not-subsumed",
            Verdict::Unknown => "unknown",
        };
        let mut obj = json!({ "verdict": value, "engine": v.engine.to_string() });
        if let Some(w) = &v.witness {
            obj["witness"] = interpretation_json(w);
            obj["element"] = json!(0);
        }
        return line(obj);
    }
    let mut out = if short {
        format!("{label} ({})\n", v.engine)
    } else {
        format!("{label} (engine: {})\n", v.engine)
    };
    if let Some(w) = &v.witness {
        out.push_str("witness (element 0):\n");
        out.push_str(&w.to_string());
    }
    out
}

pub fn satisfiable(model: Option<&Interpretation>, fmt: Format) -> String {
    match (fmt, model) {
        (Format::JsonLines, Some(m)) => line(json!({ "satisfiable": true, "model": interpretation_json(m), "element": 0 })),
        (Format::JsonLines, None) => line(json!({ "satisfiable": false })),
        (_, Some(m)) => format!("SATISFIABLE\nmodel (element 0):\n{m}"),
        (_, None) => "UNSATISFIABLE\n".to_string(),
    }
}

pub fn entailment(ind: &str, witness: Option<&AboxModel>, fmt: Format) -> String {
    if fmt == Format::JsonLines {
        let mut obj = json!({ "individual": ind, "entailed": witness.is_none() });
        if let Some(m) = witness {
            obj["witness"] = interpretation_json(&m.interpretation);
            obj["mapping"] = json!(m.mapping);
        }
        return line(obj);
    }
    let Some(m) = witness else { return "ENTAILED\n".to_string() };
    let mapping: Vec<String> = m.mapping.iter().map(|(k, v)| format!("{} = {v}", print_individual(k))).collect();
    format!("NOT ENTAILED\nwitness:\n{}individuals: {}\n", m.interpretation, mapping.join(", "))
}

pub fn individuals(label: &str, names: &BTreeSet<String>, fmt: Format) -> String {
    match fmt {
        Format::JsonLines => line(json!({ "query": label, "individuals": names })),
        _ => format!("{}\n", set_text(names)),
    }
}

pub fn description(name: &str, fmt: Format) -> String {
    match fmt {
        Format::JsonLines => line(json!({ "individual": name })),
        _ => format!("{}\n", print_individual(name)),
    }
}

pub fn oracle(witness: Option<(&Interpretation, usize)>, max: usize, fmt: Format) -> String {
    match (fmt, witness) {
        (Format::JsonLines, None) => line(json!({ "verdict": "no-counterexample", "max_domain": max })),
        (Format::JsonLines, Some((w, e))) => line(json!({
            "verdict": "not-subsumed", "engine": "oracle", "witness": interpretation_json(w), "element": e
        })),
        (_, None) => format!("NO COUNTEREXAMPLE (domain size <= {max})\n"),
        (_, Some((w, e))) => format!("NOT SUBSUMED (engine: oracle)\nwitness (element {e}):\n{w}"),
    }
}

pub fn taxonomy(t: &Taxonomy, fmt: Format) -> String {
    match fmt {
        Format::Text => t.to_text(),
        Format::Dot => t.to_dot(),
        Format::JsonLines => t
            .nodes()
            .map(|n| line(json!({ "node": n, "members": t.class_of(n).unwrap(), "parents": t.parents(n).unwrap() })))
            .collect(),
    }
}

pub fn report(r: &EventReport, fmt: Format) -> String {
    if fmt != Format::JsonLines {
        return r.to_string();
    }
    let changes: Vec<Value> = r
        .changes
        .iter()
        .map(|c| json!({ "view": c.view, "world": c.world, "added": c.added, "removed": c.removed }))
        .collect();
    line(json!({ "event": r.event, "mutated": r.mutated, "changes": changes }))
}

pub fn worlds(wl: &WorldLine, fmt: Format) -> String {
    if fmt == Format::JsonLines {
        let ids: Vec<&str> = wl.worlds().map(|w| w.id.as_str()).collect();
        return line(json!({ "worlds": ids, "current": wl.current(), "last_event": wl.last_event() }));
    }
    let mut out = String::new();
    for w in wl.worlds() {
        let mark = if w.id == wl.current() { '*' } else { ' ' };
        out.push_str(&format!("{mark} {} ({} assertions)\n", w.id, w.abox.len()));
    }
    out
}
