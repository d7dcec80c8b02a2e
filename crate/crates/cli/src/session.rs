use std::fs;

use adelog_core::model::Concept;
use adelog_core::reasoner::{
    classify_with, instance_check_with, retrieve_instances_with, subsumes_using, tableau_satisfiable_with,
    EngineChoice, InstanceVerdict, Satisfiability, TableauConfig, Verdict,
};
use adelog_core::semantics::{oracle_subsumes, ModelSearchConfig, OracleVerdict};
use adelog_core::views::{ViewMode, WorldLine};
use adelog_core::Error;
use serde_json::json;

use crate::render::{self, Format};

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Load(String),
    Classify,
    Subsumes(Concept, Concept),
    Satisfiable(Concept),
    Instances(Concept),
    Check(String, Concept),
    DefineView { name: String, body: Concept, mode: ViewMode },
    QueryView { name: String, world: Option<String> },
    Fire(String),
    Worlds,
    Describe { body: Concept, world: Option<String> },
    Snapshot(String),
    Restore(String),
    Oracle { c: Concept, d: Concept, max_domain: Option<usize> },
    Help,
    Quit,
}

/// Exit codes shared by batch mode and the REPL's per-command status.
pub mod code {
    pub const OK: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RESOURCE: u8 = 3;
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } | Error::BudgetExceeded(_) => code::RESOURCE,
        _ => code::USAGE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Batch,
    Repl,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub engine: EngineChoice,
    pub max_domain: usize,
    pub tableau: TableauConfig,
    pub format: Format,
    pub style: Style,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            engine: EngineChoice::Auto,
            max_domain: ModelSearchConfig::default().max_domain_size,
            tableau: TableauConfig::default(),
            format: Format::Text,
            style: Style::Batch,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: code::OK }
    }

    fn negative(text: String) -> Self {
        Outcome { text, code: code::NEGATIVE }
    }
}

pub struct Session {
    pub settings: Settings,
    pub world_line: WorldLine,
}

impl Session {
    pub fn new(settings: Settings) -> Self {
        let world_line = WorldLine::load("").expect("empty file").with_config(settings.tableau);
        Session { settings, world_line }
    }

    pub fn load_file(&mut self, path: &str) -> Result<(), (Error, Option<String>)> {
        let text = fs::read_to_string(path)
            .map_err(|e| (Error::Invalid(format!("cannot read `{path}`: {e}")), None))?;
        let doc = adelog_core::syntax::parse_document(&text).map_err(|e| (e, Some(text.clone())))?;
        self.world_line = WorldLine::from_document(doc, &self.settings.tableau).map_err(|e| (e, Some(text)))?;
        Ok(())
    }

    fn fail(&self, e: Error, source: Option<&str>) -> Outcome {
        Outcome { code: error_code(&e), text: render::error(&e, source, self.settings.format) }
    }

    fn check_names(&self, cs: &[&Concept]) -> Result<(), Error> {
        let kb = self.world_line.kb(None)?;
        cs.iter().try_for_each(|c| kb.check_concept(c))
    }

    /// Runs one command. State only changes when the command succeeds.
    pub fn execute(&mut self, cmd: &Command) -> Outcome {
        match self.run(cmd) {
            Ok(out) => out,
            Err(e) => self.fail(e, None),
        }
    }

    fn run(&mut self, cmd: &Command) -> Result<Outcome, Error> {
        let fmt = self.settings.format;
        let cfg = self.settings.tableau;
        Ok(match cmd {
            Command::Load(path) => match self.load_file(path) {
                Ok(()) => Outcome::ok(render::message(&format!("loaded {path}"), fmt)),
                Err((e, src)) => self.fail(e, src.as_deref()),
            },
            Command::Classify => {
                let kb = self.world_line.kb(None)?;
                let t = classify_with(&kb, self.settings.engine, &cfg)?;
                Outcome::ok(render::taxonomy(&t, fmt))
            }
            Command::Subsumes(c, d) => {
                self.check_names(&[c, d])?;
                let v = subsumes_using(c, d, self.world_line.tbox(), self.settings.engine, &cfg)?;
                let text = render::subsumption(&v, self.settings.style == Style::Repl, fmt);
                match v.value {
                    Verdict::Subsumed => Outcome::ok(text),
                    _ => Outcome::negative(text),
                }
            }
            Command::Satisfiable(c) => {
                self.check_names(&[c])?;
                match tableau_satisfiable_with(c, self.world_line.tbox(), &cfg)? {
                    Satisfiability::Satisfiable(m) => Outcome::ok(render::satisfiable(Some(&m), fmt)),
                    Satisfiability::Unsatisfiable => Outcome::negative(render::satisfiable(None, fmt)),
                }
            }
            Command::Instances(c) => {
                let kb = self.world_line.kb(None)?;
                let found = retrieve_instances_with(&kb, c, &cfg)?;
                Outcome::ok(render::individuals("instances", &found, fmt))
            }
            Command::Check(ind, c) => {
                let kb = self.world_line.kb(None)?;
                match instance_check_with(&kb, ind, c, &cfg)? {
                    InstanceVerdict::Entailed => Outcome::ok(render::entailment(ind, None, fmt)),
                    InstanceVerdict::NotEntailed(m) => Outcome::negative(render::entailment(ind, Some(&m), fmt)),
                }
            }
            Command::DefineView { name, body, mode } => {
                self.world_line = self.world_line.define_view(name, body.clone(), *mode)?;
                Outcome::ok(render::message(&format!("view {name} defined ({mode})"), fmt))
            }
            Command::QueryView { name, world } => {
                let found = self.world_line.query_view(name, world.as_deref())?;
                Outcome::ok(render::individuals(name, &found, fmt))
            }
            Command::Fire(event) => {
                let (next, report) = self.world_line.fire_event(event)?;
                self.world_line = next;
                Outcome::ok(render::report(&report, fmt))
            }
            Command::Worlds => Outcome::ok(render::worlds(&self.world_line, fmt)),
            Command::Describe { body, world } => match self.world_line.describe(body, world.as_deref()) {
                Ok(a) => Outcome::ok(render::description(&a, fmt)),
                Err(e @ (Error::NoSuchIndividual | Error::NotUnique(_))) => {
                    Outcome::negative(render::error(&e, None, fmt))
                }
                Err(e) => return Err(e),
            },
            Command::Snapshot(path) => {
                fs::write(path, self.world_line.snapshot())
                    .map_err(|e| Error::Invalid(format!("cannot write `{path}`: {e}")))?;
                Outcome::ok(render::message(&format!("snapshot written to {path}"), fmt))
            }
            Command::Restore(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("cannot read `{path}`: {e}")))?;
                match WorldLine::restore_with(&text, &cfg) {
                    Ok(wl) => {
                        self.world_line = wl;
                        Outcome::ok(render::message(&format!("restored {path}"), fmt))
                    }
                    Err(e) => self.fail(e, Some(&text)),
                }
            }
            Command::Oracle { c, d, max_domain } => {
                self.check_names(&[c, d])?;
                let max = max_domain.unwrap_or(self.settings.max_domain);
                let search = ModelSearchConfig::with_max_domain(max);
                match oracle_subsumes(c, d, self.world_line.tbox(), &search)? {
                    OracleVerdict::NoCounterexampleFound => Outcome::ok(render::oracle(None, max, fmt)),
                    OracleVerdict::NotSubsumed { witness, element } => {
                        Outcome::negative(render::oracle(Some((&witness, element)), max, fmt))
                    }
                }
            }
            Command::Help => Outcome::ok(crate::repl::HELP.to_string()),
            Command::Quit => Outcome::ok(String::new()),
        })
    }

    /// Summary line for a successfully loaded file.
    pub fn summary(&self) -> String {
        let wl = &self.world_line;
        let sig = wl.signature();
        let counts = [
            ("primitives", sig.primitive_concepts().len()),
            ("roles", sig.roles().len()),
            ("individuals", sig.individuals().len()),
            ("definitions", wl.tbox().len()),
            ("views", wl.views().count()),
            ("events", wl.events().count()),
            ("worlds", wl.worlds().count()),
        ];
        if self.settings.format == Format::JsonLines {
            let mut obj = serde_json::Map::new();
            obj.insert("status".into(), json!("ok"));
            for (k, v) in counts {
                obj.insert(k.into(), json!(v));
            }
            format!("{}\n", serde_json::Value::Object(obj))
        } else {
            let parts: Vec<String> = counts.iter().map(|(k, v)| format!("{v} {k}")).collect();
            format!("ok: {}\n", parts.join(", "))
        }
    }
}
