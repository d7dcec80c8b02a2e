use std::fmt::Write as _;

use super::{fmt_set, ViewMode, WorldLine};
use crate::error::{Error, Result};
use crate::model::{ABox, KnowledgeBase};
use crate::reasoner::TableauConfig;
use crate::syntax::{parse_document, print_assertion, print_concept, write_declarations};

impl WorldLine {
    /// Canonical text for the whole world line, caches included. Equal
    /// world lines produce identical text.
    pub fn snapshot(&self) -> String {
        let mut out = String::new();
        let kb = KnowledgeBase { signature: self.signature.clone(), tbox: self.tbox.clone(), abox: ABox::new() };
        write_declarations(&mut out, &kb);
        for v in self.views.values() {
            let _ = writeln!(out, "view {} := {} {};", v.name, print_concept(&v.body), v.mode);
        }
        for e in self.events.values() {
            let _ = write!(out, "event {} {{", e.name);
            for a in &e.script {
                let _ = write!(out, " {a};");
            }
            out.push_str(" }\n");
        }
        if let Some(ev) = &self.evolver {
            out.push_str("evolver {");
            if !ev.initial.is_empty() {
                let _ = write!(out, " initial {};", ev.initial.iter().cloned().collect::<Vec<_>>().join(", "));
            }
            for (from, next) in ev.allowed.iter().filter(|(_, n)| !n.is_empty()) {
                let _ = write!(out, " {from} -> {};", next.iter().cloned().collect::<Vec<_>>().join(", "));
            }
            out.push_str(" }\n");
        }
        for w in self.worlds.values() {
            let _ = writeln!(out, "world {} {{", w.id);
            for a in w.abox.assertions() {
                let _ = writeln!(out, "  {};", print_assertion(&a));
            }
            out.push_str("}\n");
        }
        let _ = writeln!(out, "current {};", self.current);
        if let Some(e) = &self.last_event {
            let _ = writeln!(out, "last {e};");
        }
        for v in self.views.values() {
            for (w, members) in v.cache.iter().flatten() {
                let set = fmt_set(members);
                let inner = &set[1..set.len() - 1];
                if inner.is_empty() {
                    let _ = writeln!(out, "cache {} {w} {{ }};", v.name);
                } else {
                    let _ = writeln!(out, "cache {} {w} {{ {inner} }};", v.name);
                }
            }
        }
        out
    }

    /// Reads a snapshot back. Every actual view must carry a cache for every
    /// world, and each cache must match recomputation.
    pub fn restore(text: &str) -> Result<Self> {
        Self::restore_with(text, &TableauConfig::default())
    }

    pub fn restore_with(text: &str, config: &TableauConfig) -> Result<Self> {
        let doc = parse_document(text)?;
        let recorded: Vec<(String, String)> = doc.caches.iter().map(|c| (c.view.clone(), c.world.clone())).collect();
        let wl = Self::from_document(doc, config)?;
        for v in wl.views.values().filter(|v| v.mode == ViewMode::Actual) {
            for w in wl.worlds.keys() {
                if !recorded.iter().any(|(rv, rw)| *rv == v.name && rw == w) {
                    return Err(Error::IntegrityError {
                        view: v.name.clone(),
                        detail: format!("no cache recorded for world `{w}`"),
                    });
                }
            }
        }
        Ok(wl)
    }
}
