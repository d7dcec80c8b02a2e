//! Worlds, events, virtual and actual views.
//!
//! A [`WorldLine`] holds one ABox per world over a shared signature and
//! TBox. Events mutate the current world; actual views keep a cached
//! extension per world which is recomputed whenever that world changes.

mod snapshot;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{ABox, Assertion, Concept, KnowledgeBase, Signature, TBox};
use crate::reasoner::{retrieve_instances_with, TableauConfig};
use crate::syntax::{parse_document, print_assertion, print_individual, Document};

/// Name of the world created when a file declares none.
pub const DEFAULT_WORLD: &str = "w0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViewMode {
    /// Recomputed on every query.
    Virtual,
    /// Materialized per world and refreshed by events.
    Actual,
}

impl fmt::Display for ViewMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViewMode::Virtual => "virtual",
            ViewMode::Actual => "actual",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Add(Assertion),
    /// Removing an absent assertion does nothing.
    Remove(Assertion),
    SwitchWorld(String),
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Add(a) => write!(f, "add {}", print_assertion(a)),
            Action::Remove(a) => write!(f, "remove {}", print_assertion(a)),
            Action::SwitchWorld(w) => write!(f, "switch {w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub name: String,
    pub script: Vec<Action>,
}

/// Permitted orderings of events.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Evolver {
    /// Events allowed as the first one.
    pub initial: BTreeSet<String>,
    /// Event → events allowed directly after it.
    pub allowed: BTreeMap<String, BTreeSet<String>>,
}

impl Evolver {
    pub fn permits(&self, last: Option<&str>, next: &str) -> bool {
        match last {
            None => self.initial.contains(next),
            Some(prev) => self.allowed.get(prev).is_some_and(|s| s.contains(next)),
        }
    }

    fn names(&self) -> impl Iterator<Item = &String> {
        self.initial
            .iter()
            .chain(self.allowed.iter().flat_map(|(k, v)| std::iter::once(k).chain(v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewDef {
    pub name: String,
    pub body: Concept,
    pub mode: ViewMode,
    /// World → extension; present exactly for actual views.
    pub cache: Option<BTreeMap<String, BTreeSet<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct World {
    pub id: String,
    pub abox: ABox,
}

/// How one actual view changed in one world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewChange {
    pub view: String,
    pub world: String,
    pub added: BTreeSet<String>,
    pub removed: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventReport {
    pub event: String,
    /// Worlds whose ABox changed.
    pub mutated: BTreeSet<String>,
    pub changes: Vec<ViewChange>,
}

fn fmt_set(names: &BTreeSet<String>) -> String {
    let items: Vec<String> = names.iter().map(|n| print_individual(n)).collect();
    format!("{{{}}}", items.join(", "))
}

impl fmt::Display for EventReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.changes.is_empty() {
            return writeln!(f, "event {}: no view changed", self.event);
        }
        writeln!(f, "event {}:", self.event)?;
        for c in &self.changes {
            writeln!(f, "  {} @ {}: added {} removed {}", c.view, c.world, fmt_set(&c.added), fmt_set(&c.removed))?;
        }
        Ok(())
    }
}

/// Shared terminology plus a family of worlds, views and events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldLine {
    signature: Signature,
    tbox: TBox,
    worlds: BTreeMap<String, World>,
    current: String,
    views: BTreeMap<String, ViewDef>,
    events: BTreeMap<String, Event>,
    evolver: Option<Evolver>,
    last_event: Option<String>,
    config: TableauConfig,
}

impl WorldLine {
    /// A single world holding the KB's ABox.
    pub fn new(kb: KnowledgeBase) -> Self {
        let KnowledgeBase { signature, tbox, abox } = kb;
        let world = World { id: DEFAULT_WORLD.to_string(), abox };
        WorldLine {
            signature,
            tbox,
            worlds: BTreeMap::from([(DEFAULT_WORLD.to_string(), world)]),
            current: DEFAULT_WORLD.to_string(),
            views: BTreeMap::new(),
            events: BTreeMap::new(),
            evolver: None,
            last_event: None,
            config: TableauConfig::default(),
        }
    }

    /// Parses a KB or snapshot file. Cached extensions present in the file
    /// must match recomputation; missing ones are computed.
    pub fn load(text: &str) -> Result<Self> {
        Self::from_document(parse_document(text)?, &TableauConfig::default())
    }

    pub fn with_config(mut self, config: TableauConfig) -> Self {
        self.config = config;
        self
    }

    pub fn config(&self) -> &TableauConfig {
        &self.config
    }

    /// Builds a world line from a parsed file. Without `world` blocks the
    /// top-level assertions form the single world `w0`; otherwise they are
    /// added to every declared world.
    pub fn from_document(doc: Document, config: &TableauConfig) -> Result<Self> {
        let Document { kb, worlds, current, last_event, views, caches, events, evolver } = doc;
        let KnowledgeBase { signature, tbox, abox } = kb;
        let mut world_map = BTreeMap::new();
        if worlds.is_empty() {
            world_map.insert(DEFAULT_WORLD.to_string(), World { id: DEFAULT_WORLD.to_string(), abox });
        } else {
            for (id, mut own) in worlds {
                for a in abox.assertions() {
                    own.insert(a);
                }
                world_map.insert(id.clone(), World { id, abox: own });
            }
        }
        let current = match current {
            Some(w) if world_map.contains_key(&w) => w,
            Some(w) => return Err(Error::UnknownWorld(w)),
            None => world_map.keys().next().cloned().unwrap_or_default(),
        };
        let events: BTreeMap<String, Event> = events.into_iter().map(|e| (e.name.clone(), e)).collect();
        if let Some(e) = &last_event {
            if !events.contains_key(e) {
                return Err(Error::UnknownEvent(e.clone()));
            }
        }
        if let Some(ev) = &evolver {
            if let Some(e) = ev.names().find(|n| !events.contains_key(*n)) {
                return Err(Error::UnknownEvent(e.clone()));
            }
        }
        let mut wl = WorldLine {
            signature,
            tbox,
            worlds: world_map,
            current,
            views: BTreeMap::new(),
            events,
            evolver,
            last_event,
            config: *config,
        };
        for v in views {
            wl = wl.define_view(&v.name, v.body, v.mode)?;
        }
        for c in caches {
            let view = wl.views.get(&c.view).ok_or_else(|| Error::UnknownView(c.view.clone()))?;
            let Some(cache) = &view.cache else {
                return Err(Error::IntegrityError {
                    view: c.view,
                    detail: "a virtual view has no cache".to_string(),
                });
            };
            let Some(expected) = cache.get(&c.world) else {
                return Err(Error::UnknownWorld(c.world));
            };
            if *expected != c.members {
                return Err(Error::IntegrityError {
                    detail: format!(
                        "cache for world `{}` is {} but the view evaluates to {}",
                        c.world,
                        fmt_set(&c.members),
                        fmt_set(expected)
                    ),
                    view: c.view,
                });
            }
        }
        Ok(wl)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn tbox(&self) -> &TBox {
        &self.tbox
    }

    pub fn current(&self) -> &str {
        &self.current
    }

    pub fn last_event(&self) -> Option<&str> {
        self.last_event.as_deref()
    }

    pub fn worlds(&self) -> impl Iterator<Item = &World> {
        self.worlds.values()
    }

    pub fn world(&self, id: &str) -> Result<&World> {
        self.worlds.get(id).ok_or_else(|| Error::UnknownWorld(id.to_string()))
    }

    pub fn views(&self) -> impl Iterator<Item = &ViewDef> {
        self.views.values()
    }

    pub fn view(&self, name: &str) -> Result<&ViewDef> {
        self.views.get(name).ok_or_else(|| Error::UnknownView(name.to_string()))
    }

    pub fn events(&self) -> impl Iterator<Item = &Event> {
        self.events.values()
    }

    pub fn evolver(&self) -> Option<&Evolver> {
        self.evolver.as_ref()
    }

    /// The knowledge base seen from one world (defaults to the current one).
    pub fn kb(&self, world: Option<&str>) -> Result<KnowledgeBase> {
        let w = self.world(world.unwrap_or(&self.current))?;
        Ok(KnowledgeBase { signature: self.signature.clone(), tbox: self.tbox.clone(), abox: w.abox.clone() })
    }

    fn evaluate(&self, body: &Concept, world: &str) -> Result<BTreeSet<String>> {
        retrieve_instances_with(&self.kb(Some(world))?, body, &self.config)
    }

    /// Adds a world and materializes actual views over it.
    pub fn add_world(&self, id: &str, abox: ABox) -> Result<Self> {
        if self.worlds.contains_key(id) {
            return Err(Error::RedefinedName(id.to_string()));
        }
        let kb = self.kb(None)?;
        for a in abox.assertions() {
            kb.check_assertion(&a)?;
        }
        let mut next = self.clone();
        next.worlds.insert(id.to_string(), World { id: id.to_string(), abox });
        for name in self.views.keys().cloned().collect::<Vec<_>>() {
            next.refresh(&name, id)?;
        }
        Ok(next)
    }

    /// Registers an event. Assertions in the script must use declared names;
    /// world switches are checked when the event fires.
    pub fn add_event(&self, event: Event) -> Result<Self> {
        if self.events.contains_key(&event.name) {
            return Err(Error::RedefinedName(event.name));
        }
        if event.script.is_empty() {
            return Err(Error::Invalid(format!("event `{}` has an empty script", event.name)));
        }
        let kb = self.kb(None)?;
        for action in &event.script {
            if let Action::Add(a) | Action::Remove(a) = action {
                kb.check_assertion(a)?;
            }
        }
        let mut next = self.clone();
        next.events.insert(event.name.clone(), event);
        Ok(next)
    }

    pub fn set_evolver(&self, evolver: Option<Evolver>) -> Result<Self> {
        if let Some(ev) = &evolver {
            if let Some(e) = ev.names().find(|n| !self.events.contains_key(*n)) {
                return Err(Error::UnknownEvent(e.clone()));
            }
        }
        let mut next = self.clone();
        next.evolver = evolver;
        Ok(next)
    }

    pub fn define_view(&self, name: &str, body: Concept, mode: ViewMode) -> Result<Self> {
        if self.views.contains_key(name) {
            return Err(Error::RedefinedName(name.to_string()));
        }
        self.kb(None)?.check_concept(&body)?;
        let cache = match mode {
            ViewMode::Virtual => None,
            ViewMode::Actual => {
                let mut cache = BTreeMap::new();
                for w in self.worlds.keys() {
                    cache.insert(w.clone(), self.evaluate(&body, w)?);
                }
                Some(cache)
            }
        };
        let mut next = self.clone();
        next.views.insert(name.to_string(), ViewDef { name: name.to_string(), body, mode, cache });
        Ok(next)
    }

    /// Recomputes an actual view's cache entry; returns the old and new sets.
    fn refresh(&mut self, view: &str, world: &str) -> Result<Option<(BTreeSet<String>, BTreeSet<String>)>> {
        let v = &self.views[view];
        if v.mode != ViewMode::Actual {
            return Ok(None);
        }
        let fresh = self.evaluate(&v.body, world)?;
        let cache = self.views.get_mut(view).unwrap().cache.get_or_insert_with(BTreeMap::new);
        let old = cache.insert(world.to_string(), fresh.clone()).unwrap_or_default();
        Ok(Some((old, fresh)))
    }

    /// Extension of a view at a world (defaults to the current one).
    pub fn query_view(&self, name: &str, world: Option<&str>) -> Result<BTreeSet<String>> {
        let v = self.view(name)?;
        let world = world.unwrap_or(&self.current);
        self.world(world)?;
        match &v.cache {
            Some(cache) => Ok(cache.get(world).cloned().unwrap_or_default()),
            None => self.evaluate(&v.body, world),
        }
    }

    /// Extension of a view at every world.
    pub fn variable_domain(&self, name: &str) -> Result<BTreeMap<String, BTreeSet<String>>> {
        self.view(name)?;
        self.worlds.keys().map(|w| Ok((w.clone(), self.query_view(name, Some(w))?))).collect()
    }

    /// The unique declared individual satisfying `body` at a world.
    pub fn describe(&self, body: &Concept, world: Option<&str>) -> Result<String> {
        let kb = self.kb(world)?;
        kb.check_concept(body)?;
        let ext = retrieve_instances_with(&kb, body, &self.config)?;
        let mut it = ext.iter();
        match (it.next(), it.next()) {
            (None, _) => Err(Error::NoSuchIndividual),
            (Some(a), None) => Ok(a.clone()),
            _ => Err(Error::NotUnique(ext)),
        }
    }

    /// Runs an event's script against the current world. On error the
    /// receiver is untouched and no new world line is produced.
    pub fn fire_event(&self, name: &str) -> Result<(Self, EventReport)> {
        let event = self.events.get(name).ok_or_else(|| Error::UnknownEvent(name.to_string()))?;
        if let Some(ev) = &self.evolver {
            if !ev.permits(self.last_event.as_deref(), name) {
                return Err(Error::EvolverViolation { event: name.to_string(), after: self.last_event.clone() });
            }
        }
        let kb = self.kb(None)?;
        let mut next = self.clone();
        let mut mutated = BTreeSet::new();
        for action in &event.script {
            match action {
                Action::SwitchWorld(w) => {
                    self.world(w)?;
                    next.current = w.clone();
                }
                Action::Add(a) => {
                    kb.check_assertion(a)?;
                    if next.worlds.get_mut(&next.current).unwrap().abox.insert(a.clone()) {
                        mutated.insert(next.current.clone());
                    }
                }
                Action::Remove(a) => {
                    kb.check_assertion(a)?;
                    if next.worlds.get_mut(&next.current).unwrap().abox.remove(a) {
                        mutated.insert(next.current.clone());
                    }
                }
            }
        }
        // An add followed by a remove may leave the ABox as it was.
        mutated.retain(|w| self.worlds[w].abox != next.worlds[w].abox);
        let mut changes = Vec::new();
        for view in self.views.keys() {
            for w in &mutated {
                if let Some((old, new)) = next.refresh(view, w)? {
                    if old != new {
                        changes.push(ViewChange {
                            view: view.clone(),
                            world: w.clone(),
                            added: new.difference(&old).cloned().collect(),
                            removed: old.difference(&new).cloned().collect(),
                        });
                    }
                }
            }
        }
        next.last_event = Some(name.to_string());
        Ok((next, EventReport { event: name.to_string(), mutated, changes }))
    }

    /// Checks every actual cache against recomputation.
    pub fn verify_caches(&self) -> Result<()> {
        for v in self.views.values() {
            let Some(cache) = &v.cache else { continue };
            for w in self.worlds.keys() {
                let fresh = self.evaluate(&v.body, w)?;
                if cache.get(w) != Some(&fresh) {
                    return Err(Error::IntegrityError {
                        view: v.name.clone(),
                        detail: format!("cache for world `{w}` is stale"),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_concept;

    const PAPER: &str = r#"
        primitive person, technical, InformationTechnologies;
        role paper;
        individual Rick, Anna, P2;
        individual "Logics in Humanities";
        author := person and (> 0 paper);
        person(Rick); person(Anna);
        paper(Rick, "Logics in Humanities");
        (all paper.technical)(Rick);
        view authors := author actual;
        view authorsV := author virtual;
        event addAnnaPaper { add paper(Anna, P2); }
        event noop { add person(Rick); }
        event dropRick { remove paper(Rick, "Logics in Humanities"); }
    "#;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn actual_view_is_materialized() {
        let wl = WorldLine::load(PAPER).unwrap();
        let cache = wl.view("authors").unwrap().cache.clone().unwrap();
        assert_eq!(cache, BTreeMap::from([("w0".to_string(), set(&["Rick"]))]));
        assert_eq!(wl.query_view("authors", None).unwrap(), set(&["Rick"]));
        assert_eq!(wl.query_view("authorsV", Some("w0")).unwrap(), set(&["Rick"]));
        assert!(wl.view("authorsV").unwrap().cache.is_none());
    }

    #[test]
    fn firing_updates_actual_views() {
        let wl = WorldLine::load(PAPER).unwrap();
        let (next, report) = wl.fire_event("addAnnaPaper").unwrap();
        assert_eq!(report.changes.len(), 1);
        assert_eq!(report.changes[0].view, "authors");
        assert_eq!(report.changes[0].added, set(&["Anna"]));
        assert!(report.changes[0].removed.is_empty());
        assert_eq!(report.to_string(), "event addAnnaPaper:\n  authors @ w0: added {Anna} removed {}\n");
        assert_eq!(next.query_view("authors", None).unwrap(), set(&["Anna", "Rick"]));
        assert_eq!(next.query_view("authorsV", None).unwrap(), set(&["Anna", "Rick"]));
        assert_eq!(next.last_event(), Some("addAnnaPaper"));
        assert_eq!(wl.query_view("authors", None).unwrap(), set(&["Rick"]));
    }

    #[test]
    fn idempotent_add_reports_nothing() {
        let wl = WorldLine::load(PAPER).unwrap();
        let (_, report) = wl.fire_event("noop").unwrap();
        assert!(report.changes.is_empty());
        assert!(report.mutated.is_empty());
        assert_eq!(report.to_string(), "event noop: no view changed\n");
    }

    #[test]
    fn removing_the_defining_assertion_empties_the_view() {
        let wl = WorldLine::load(PAPER).unwrap();
        let (next, report) = wl.fire_event("dropRick").unwrap();
        assert_eq!(report.changes[0].removed, set(&["Rick"]));
        assert!(next.query_view("authors", None).unwrap().is_empty());
        assert!(next.query_view("authorsV", None).unwrap().is_empty());
    }

    #[test]
    fn evolver_violations_do_not_mutate() {
        let text = format!("{PAPER} evolver {{ initial noop; noop -> addAnnaPaper; }}");
        let wl = WorldLine::load(&text).unwrap();
        let err = wl.fire_event("addAnnaPaper").unwrap_err();
        assert_eq!(err, Error::EvolverViolation { event: "addAnnaPaper".into(), after: None });
        let (wl2, _) = wl.fire_event("noop").unwrap();
        let (wl3, _) = wl2.fire_event("addAnnaPaper").unwrap();
        assert!(matches!(wl3.fire_event("noop"), Err(Error::EvolverViolation { .. })));
    }

    #[test]
    fn unknown_things() {
        let wl = WorldLine::load(PAPER).unwrap();
        assert_eq!(wl.fire_event("nope").unwrap_err(), Error::UnknownEvent("nope".into()));
        assert_eq!(wl.query_view("nope", None).unwrap_err(), Error::UnknownView("nope".into()));
        assert_eq!(wl.query_view("authors", Some("w9")).unwrap_err(), Error::UnknownWorld("w9".into()));
        assert!(matches!(wl.define_view("authors", Concept::Top, ViewMode::Virtual), Err(Error::RedefinedName(_))));
    }

    #[test]
    fn switch_to_unknown_world_is_atomic() {
        let text = format!("{PAPER} event bad {{ add paper(Anna, P2); switch nowhere; }}");
        let wl = WorldLine::load(&text).unwrap();
        assert_eq!(wl.fire_event("bad").unwrap_err(), Error::UnknownWorld("nowhere".into()));
        assert_eq!(wl.query_view("authors", None).unwrap(), set(&["Rick"]));
    }

    #[test]
    fn worlds_and_variable_domains() {
        let text = r#"
            primitive person; role paper; individual Rick, Anna, P;
            author := person and (> 0 paper);
            person(Rick); person(Anna);
            world w0 { paper(Rick, P); }
            world w1 { paper(Rick, P); paper(Anna, P); }
            current w1;
            view authors := author actual;
            event back { switch w0; add paper(Anna, P); }
        "#;
        let wl = WorldLine::load(text).unwrap();
        assert_eq!(wl.current(), "w1");
        let vd = wl.variable_domain("authors").unwrap();
        assert_eq!(vd["w0"], set(&["Rick"]));
        assert_eq!(vd["w1"], set(&["Anna", "Rick"]));
        let (next, report) = wl.fire_event("back").unwrap();
        assert_eq!(next.current(), "w0");
        assert_eq!(report.mutated, set(&["w0"]));
        assert_eq!(next.variable_domain("authors").unwrap()["w0"], set(&["Anna", "Rick"]));
    }

    #[test]
    fn bottom_view_is_empty_everywhere() {
        let wl = WorldLine::load(PAPER).unwrap().define_view("none", Concept::Bottom, ViewMode::Actual).unwrap();
        assert!(wl.variable_domain("none").unwrap().values().all(BTreeSet::is_empty));
        let wl = wl.define_view("everyone", Concept::Top, ViewMode::Virtual).unwrap();
        assert_eq!(wl.query_view("everyone", None).unwrap().len(), 4);
    }

    #[test]
    fn definite_descriptions() {
        let wl = WorldLine::load(PAPER).unwrap();
        assert_eq!(wl.describe(&c("author"), None).unwrap(), "Rick");
        assert_eq!(wl.describe(&Concept::Bottom, None).unwrap_err(), Error::NoSuchIndividual);
        assert!(matches!(wl.describe(&c("person"), None), Err(Error::NotUnique(s)) if s == set(&["Anna", "Rick"])));
    }

    #[test]
    fn added_world_gets_a_cache() {
        let wl = WorldLine::load(PAPER).unwrap();
        let wl = wl.add_world("w1", ABox::new()).unwrap();
        assert!(wl.query_view("authors", Some("w1")).unwrap().is_empty());
        wl.verify_caches().unwrap();
    }
}
