use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::tableau::{tableau_satisfiable_with, TableauConfig};
use super::{subsumes_using, EngineChoice};
use crate::error::Result;
use crate::model::{Concept, KnowledgeBase, TBox};

pub const TOP_NAME: &str = "TOP";
pub const BOTTOM_NAME: &str = "BOTTOM";

const TOP: usize = 0;
const BOTTOM: usize = 1;

/// Concept hierarchy: equivalence classes of names joined by direct-subsumer
/// edges. `TOP` and `BOTTOM` are always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    /// Representative name → members of its class.
    classes: BTreeMap<String, BTreeSet<String>>,
    /// Representative → representatives of its direct subsumers.
    parents: BTreeMap<String, BTreeSet<String>>,
    representative: BTreeMap<String, String>,
}

impl Taxonomy {
    /// Representatives of all nodes, `TOP` and `BOTTOM` included.
    pub fn nodes(&self) -> impl Iterator<Item = &String> {
        self.classes.keys()
    }

    /// Members of every node, keyed implicitly by representative.
    pub fn equivalence_classes(&self) -> impl Iterator<Item = &BTreeSet<String>> {
        self.classes.values()
    }

    pub fn class_of(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.representative.get(name).map(|r| &self.classes[r])
    }

    pub fn representative(&self, name: &str) -> Option<&str> {
        self.representative.get(name).map(String::as_str)
    }

    /// Direct subsumers of the node holding `name`.
    pub fn parents(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.representative.get(name).map(|r| &self.parents[r])
    }

    pub fn children(&self, name: &str) -> Option<BTreeSet<String>> {
        let rep = self.representative.get(name)?;
        Some(
            self.parents
                .iter()
                .filter(|(_, ps)| ps.contains(rep))
                .map(|(c, _)| c.clone())
                .collect(),
        )
    }

    /// `(child, parent)` pairs between representatives.
    pub fn edges(&self) -> BTreeSet<(String, String)> {
        self.parents
            .iter()
            .flat_map(|(c, ps)| ps.iter().map(move |p| (c.clone(), p.clone())))
            .collect()
    }

    /// Whether `sub ⊑ sup` according to the hierarchy.
    pub fn is_subsumed(&self, sub: &str, sup: &str) -> Option<bool> {
        let from = self.representative.get(sub)?;
        let to = self.representative.get(sup)?;
        let mut stack = vec![from];
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if n == to {
                return Some(true);
            }
            if seen.insert(n) {
                stack.extend(self.parents[n].iter());
            }
        }
        Some(false)
    }

    fn label(&self, rep: &str) -> String {
        let members = &self.classes[rep];
        let mut out = rep.to_string();
        for m in members.iter().filter(|m| *m != rep) {
            out.push_str(" = ");
            out.push_str(m);
        }
        out
    }

    fn ordered(&self) -> Vec<&String> {
        let mut reps: Vec<&String> = self
            .classes
            .keys()
            .filter(|r| *r != TOP_NAME && *r != BOTTOM_NAME)
            .collect();
        reps.insert(0, self.classes.get_key_value(TOP_NAME).unwrap().0);
        reps.push(self.classes.get_key_value(BOTTOM_NAME).unwrap().0);
        reps
    }

    /// One line per node: `label < parent, parent`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rep in self.ordered() {
            out.push_str(&self.label(rep));
            let ps = &self.parents[rep];
            if !ps.is_empty() {
                out.push_str(" < ");
                out.push_str(&ps.iter().cloned().collect::<Vec<_>>().join(", "));
            }
            out.push('\n');
        }
        out
    }

    /// Graphviz rendering with edges pointing from child to parent.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph taxonomy {\n  rankdir=BT;\n");
        for rep in self.ordered() {
            let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", rep, self.label(rep));
        }
        for (c, p) in self.edges() {
            let _ = writeln!(out, "  \"{c}\" -> \"{p}\";");
        }
        out.push_str("}\n");
        out
    }
}

struct Node {
    members: BTreeSet<String>,
    concept: Concept,
    parents: BTreeSet<usize>,
    children: BTreeSet<usize>,
}

struct Builder<'a> {
    tbox: &'a TBox,
    choice: EngineChoice,
    cfg: &'a TableauConfig,
    nodes: Vec<Node>,
    cache: BTreeMap<(usize, usize), bool>,
}

impl Builder<'_> {
    fn top_search(&mut self, c: &Concept) -> Result<BTreeSet<usize>> {
        const NEW: usize = usize::MAX;
        let mut found = BTreeSet::new();
        let mut visited = BTreeSet::new();
        let mut stack = vec![TOP];
        while let Some(n) = stack.pop() {
            if !visited.insert(n) {
                continue;
            }
            let mut any = false;
            let children: Vec<usize> = self.nodes[n].children.iter().copied().collect();
            for ch in children {
                let ch_concept = self.nodes[ch].concept.clone();
                let sub = match self.cache.get(&(NEW, ch)) {
                    Some(&v) => v,
                    None => {
                        let v = ch != BOTTOM
                            && subsumes_using(c, &ch_concept, self.tbox, self.choice, self.cfg)?.is_subsumed();
                        self.cache.insert((NEW, ch), v);
                        v
                    }
                };
                if sub {
                    any = true;
                    stack.push(ch);
                }
            }
            if !any {
                found.insert(n);
            }
        }
        Ok(found)
    }

    fn bottom_search(&mut self, c: &Concept) -> Result<BTreeSet<usize>> {
        const NEW: usize = usize::MAX;
        let mut found = BTreeSet::new();
        let mut visited = BTreeSet::new();
        let mut stack = vec![BOTTOM];
        while let Some(n) = stack.pop() {
            if !visited.insert(n) {
                continue;
            }
            let mut any = false;
            let parents: Vec<usize> = self.nodes[n].parents.iter().copied().collect();
            for p in parents {
                let sup = match self.cache.get(&(p, NEW)) {
                    Some(&v) => v,
                    None => {
                        let pc = self.nodes[p].concept.clone();
                        let v = subsumes_using(&pc, c, self.tbox, self.choice, self.cfg)?.is_subsumed();
                        self.cache.insert((p, NEW), v);
                        v
                    }
                };
                if sup {
                    any = true;
                    stack.push(p);
                }
            }
            if !any {
                found.insert(n);
            }
        }
        Ok(found)
    }

    fn insert(&mut self, name: &str) -> Result<()> {
        self.cache.clear();
        let c = Concept::atomic(name);
        let parents = self.top_search(&c)?;
        let children = self.bottom_search(&c)?;
        if let Some(&same) = parents.intersection(&children).next() {
            self.nodes[same].members.insert(name.to_string());
            return Ok(());
        }
        let id = self.nodes.len();
        for &p in &parents {
            for &k in &children {
                self.nodes[p].children.remove(&k);
                self.nodes[k].parents.remove(&p);
            }
            self.nodes[p].children.insert(id);
        }
        for &k in &children {
            self.nodes[k].parents.insert(id);
        }
        self.nodes.push(Node {
            members: BTreeSet::from([name.to_string()]),
            concept: c,
            parents,
            children,
        });
        Ok(())
    }
}

/// Classifies every primitive and defined concept name of the KB.
pub fn classify(kb: &KnowledgeBase) -> Result<Taxonomy> {
    classify_with(kb, EngineChoice::Auto, &TableauConfig::default())
}

pub fn classify_with(kb: &KnowledgeBase, choice: EngineChoice, cfg: &TableauConfig) -> Result<Taxonomy> {
    let tbox = &kb.tbox;
    let mut b = Builder {
        tbox,
        choice,
        cfg,
        nodes: vec![
            Node {
                members: BTreeSet::from([TOP_NAME.to_string()]),
                concept: Concept::Top,
                parents: BTreeSet::new(),
                children: BTreeSet::from([BOTTOM]),
            },
            Node {
                members: BTreeSet::from([BOTTOM_NAME.to_string()]),
                concept: Concept::Bottom,
                parents: BTreeSet::from([TOP]),
                children: BTreeSet::new(),
            },
        ],
        cache: BTreeMap::new(),
    };
    for name in kb.concept_names() {
        let c = Concept::atomic(name.as_str());
        if !tableau_satisfiable_with(&c, tbox, cfg)?.is_satisfiable() {
            b.nodes[BOTTOM].members.insert(name);
            continue;
        }
        b.insert(&name)?;
    }
    Ok(assemble(&b.nodes))
}

fn assemble(nodes: &[Node]) -> Taxonomy {
    let rep_of = |i: usize| -> String {
        match i {
            TOP => TOP_NAME.to_string(),
            BOTTOM => BOTTOM_NAME.to_string(),
            _ => nodes[i].members.iter().next().unwrap().clone(),
        }
    };
    let mut classes = BTreeMap::new();
    let mut parents = BTreeMap::new();
    let mut representative = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        let rep = rep_of(i);
        for m in &n.members {
            representative.insert(m.clone(), rep.clone());
        }
        parents.insert(rep.clone(), n.parents.iter().map(|&p| rep_of(p)).collect());
        classes.insert(rep, n.members.clone());
    }
    Taxonomy { classes, parents, representative }
}
