//! Completion-graph tableau for the full concept language.
//!
//! Rules: ⊓ and ∀ are applied eagerly; then ⊔ (branching, disjuncts in
//! order), ≤ (branching over mergeable pairs), ∃ and ≥ (node generation).
//! An edge carries a set of primitive roles; a node is an `R`-successor when
//! its edge label contains every primitive of `R`. Merging two successors
//! unions their labels, edges and inequalities. Named nodes (ABox
//! individuals) are pairwise distinct and are never merged into each other.
//!
//! The terminology is unfolded up front and there are no general inclusions,
//! so labels shrink in depth along edges and no blocking is needed.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Resource, Result};
use crate::model::{simplify, Comparator, Concept, KnowledgeBase, RoleExpr, TBox};
use crate::semantics::Interpretation;

/// Budgets for one tableau run. Exhausting either is reported as
/// [`Error::ResourceLimit`], never as a satisfiability answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableauConfig {
    pub max_nodes: usize,
    pub max_branches: usize,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig { max_nodes: 100_000, max_branches: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Satisfiability {
    /// A model with the concept's witness at element 0.
    Satisfiable(Interpretation),
    Unsatisfiable,
}

impl Satisfiability {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, Satisfiability::Satisfiable(_))
    }
}

/// A model of an ABox extracted from a complete clash-free graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AboxModel {
    pub interpretation: Interpretation,
    /// Element assigned to each individual.
    pub mapping: BTreeMap<String, usize>,
}

pub fn tableau_satisfiable(c: &Concept, tbox: &TBox) -> Result<Satisfiability> {
    tableau_satisfiable_with(c, tbox, &TableauConfig::default())
}

pub fn tableau_satisfiable_with(c: &Concept, tbox: &TBox, cfg: &TableauConfig) -> Result<Satisfiability> {
    let unfolded = tbox.unfold(c)?;
    let mut g = Graph::default();
    let root = g.add_node(None);
    g.nodes[root].label.insert(simplify(&unfolded));
    let mut run = Run { cfg: *cfg, nodes: 1, branches: 0 };
    Ok(match run.complete(g)? {
        None => Satisfiability::Unsatisfiable,
        Some(done) => {
            let mut interp = done.to_interpretation().0;
            for n in unfolded.concept_names() {
                interp.declare_concept(n);
            }
            for r in unfolded.role_names() {
                interp.declare_role(r);
            }
            Satisfiability::Satisfiable(interp)
        }
    })
}

/// Checks whether the ABox of `kb`, together with the extra assertions
/// `extra` (individual, concept), has a model under the unique-name
/// assumption. Returns the model found, if any.
pub fn abox_model(kb: &KnowledgeBase, extra: &[(String, Concept)], cfg: &TableauConfig) -> Result<Option<AboxModel>> {
    let mut g = Graph::default();
    let mut index = BTreeMap::new();
    for ind in kb.signature.individuals() {
        let id = g.add_node(Some(ind.clone()));
        index.insert(ind.clone(), id);
    }
    let named: Vec<usize> = index.values().copied().collect();
    for &a in &named {
        g.nodes[a].distinct.extend(named.iter().copied().filter(|&b| b != a));
    }
    let lookup = |name: &String| index.get(name).copied().ok_or_else(|| Error::UndefinedName(name.clone()));
    for (c, ind) in kb.abox.concept_assertions() {
        let id = lookup(ind)?;
        g.nodes[id].label.insert(simplify(&kb.tbox.unfold(c)?));
    }
    for (ind, c) in extra {
        let id = lookup(ind)?;
        g.nodes[id].label.insert(simplify(&kb.tbox.unfold(c)?));
    }
    for (r, s, o) in kb.abox.role_assertions() {
        let (s, o) = (lookup(s)?, lookup(o)?);
        g.edges.entry((s, o)).or_default().insert(r.clone());
    }

    let mut run = Run { cfg: *cfg, nodes: g.nodes.len(), branches: 0 };
    let Some(done) = run.complete(g)? else {
        return Ok(None);
    };
    let (mut interp, renumber) = done.to_interpretation();
    interp.declare_signature(&kb.signature);
    let mapping = index.into_iter().map(|(name, id)| (name, renumber[&id])).collect();
    Ok(Some(AboxModel { interpretation: interp, mapping }))
}

#[derive(Debug, Clone)]
struct Node {
    label: BTreeSet<Concept>,
    alive: bool,
    named: Option<String>,
    distinct: BTreeSet<usize>,
}

#[derive(Debug, Clone, Default)]
struct Graph {
    nodes: Vec<Node>,
    edges: BTreeMap<(usize, usize), BTreeSet<String>>,
}

impl Graph {
    fn add_node(&mut self, named: Option<String>) -> usize {
        self.nodes.push(Node { label: BTreeSet::new(), alive: true, named, distinct: BTreeSet::new() });
        self.nodes.len() - 1
    }

    fn alive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].alive)
    }

    fn out_edges(&self, x: usize) -> impl Iterator<Item = (usize, &BTreeSet<String>)> + '_ {
        self.edges.range((x, 0)..=(x, usize::MAX)).map(|(&(_, y), l)| (y, l))
    }

    /// Successors of `x` reached through an edge containing every primitive of `r`.
    fn successors(&self, x: usize, r: &RoleExpr) -> Vec<usize> {
        self.out_edges(x)
            .filter(|(_, l)| r.names().is_subset(l))
            .map(|(y, _)| y)
            .collect()
    }

    fn are_distinct(&self, a: usize, b: usize) -> bool {
        self.nodes[a].distinct.contains(&b)
    }

    fn has_clash(&self, x: usize) -> bool {
        let label = &self.nodes[x].label;
        label.iter().any(|c| match c {
            Concept::Bottom => true,
            Concept::Not(inner) => label.contains(inner),
            // At-least against an at-most over a role with fewer primitives.
            Concept::Number(Comparator::Ge, m, r) => label.iter().any(|d| {
                matches!(d, Concept::Number(Comparator::Le, n, s) if m > n && s.names().is_subset(r.names()))
            }),
            _ => false,
        })
    }

    /// Merges `gone` into `keep`; `keep` inherits labels, edges and inequalities.
    fn merge(&mut self, gone: usize, keep: usize) {
        let label = std::mem::take(&mut self.nodes[gone].label);
        self.nodes[keep].label.extend(label);
        let moved: Vec<((usize, usize), BTreeSet<String>)> = self
            .edges
            .iter()
            .filter(|((a, b), _)| *a == gone || *b == gone)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for (k, roles) in moved {
            self.edges.remove(&k);
            let remap = |n: usize| if n == gone { keep } else { n };
            self.edges.entry((remap(k.0), remap(k.1))).or_default().extend(roles);
        }
        let distinct = std::mem::take(&mut self.nodes[gone].distinct);
        for &d in &distinct {
            self.nodes[d].distinct.remove(&gone);
            self.nodes[d].distinct.insert(keep);
        }
        self.nodes[keep].distinct.extend(distinct);
        self.nodes[gone].alive = false;
    }

    /// Whether `x` has `n` pairwise-distinct nodes among `succ`.
    fn has_distinct_clique(&self, succ: &[usize], n: usize) -> bool {
        fn extend(g: &Graph, succ: &[usize], chosen: &mut Vec<usize>, from: usize, n: usize) -> bool {
            if chosen.len() == n {
                return true;
            }
            for i in from..succ.len() {
                if chosen.iter().all(|&c| g.are_distinct(c, succ[i])) {
                    chosen.push(succ[i]);
                    if extend(g, succ, chosen, i + 1, n) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        n <= succ.len() && extend(self, succ, &mut Vec::new(), 0, n)
    }

    /// Alive nodes become elements `0..k` in node order.
    fn to_interpretation(&self) -> (Interpretation, BTreeMap<usize, usize>) {
        let renumber: BTreeMap<usize, usize> = self.alive().enumerate().map(|(i, n)| (n, i)).collect();
        let mut interp = Interpretation::new(renumber.len()).expect("graph has a root");
        for (&node, &elem) in &renumber {
            for c in &self.nodes[node].label {
                if let Concept::Atomic(a) = c {
                    interp.insert_concept(a, elem);
                }
            }
        }
        for (&(a, b), roles) in &self.edges {
            for r in roles {
                interp.insert_pair(r, renumber[&a], renumber[&b]);
            }
        }
        (interp, renumber)
    }
}

struct Run {
    cfg: TableauConfig,
    nodes: usize,
    branches: usize,
}

enum Step {
    Branch(Vec<Graph>),
    Expanded,
    Complete,
}

impl Run {
    fn new_node(&mut self, g: &mut Graph) -> Result<usize> {
        self.nodes += 1;
        if self.nodes > self.cfg.max_nodes {
            return Err(Error::ResourceLimit { resource: Resource::Nodes, limit: self.cfg.max_nodes });
        }
        Ok(g.add_node(None))
    }

    fn branch(&mut self) -> Result<()> {
        self.branches += 1;
        if self.branches > self.cfg.max_branches {
            return Err(Error::ResourceLimit { resource: Resource::Branches, limit: self.cfg.max_branches });
        }
        Ok(())
    }

    /// Expands `g` until it is complete or every branch clashes.
    fn complete(&mut self, mut g: Graph) -> Result<Option<Graph>> {
        loop {
            if !saturate(&mut g) {
                return Ok(None);
            }
            match self.step(&mut g)? {
                Step::Expanded => continue,
                Step::Complete => return Ok(Some(g)),
                Step::Branch(alternatives) => {
                    for alt in alternatives {
                        self.branch()?;
                        if let Some(done) = self.complete(alt)? {
                            return Ok(Some(done));
                        }
                    }
                    return Ok(None);
                }
            }
        }
    }

    /// Applies the first applicable non-deterministic or generating rule.
    fn step(&mut self, g: &mut Graph) -> Result<Step> {
        let alive: Vec<usize> = g.alive().collect();

        for &x in &alive {
            for c in &g.nodes[x].label {
                if let Concept::Or(items) = c {
                    if items.iter().any(|i| g.nodes[x].label.contains(i)) {
                        continue;
                    }
                    let alts = items
                        .iter()
                        .map(|item| {
                            let mut alt = g.clone();
                            alt.nodes[x].label.insert(item.clone());
                            alt
                        })
                        .collect();
                    return Ok(Step::Branch(alts));
                }
            }
        }

        for &x in &alive {
            for c in &g.nodes[x].label {
                if let Concept::Number(Comparator::Le, n, r) = c {
                    let succ = g.successors(x, r);
                    if succ.len() as u64 <= u64::from(*n) {
                        continue;
                    }
                    let mut alts = Vec::new();
                    for (i, &y) in succ.iter().enumerate() {
                        for &z in &succ[i + 1..] {
                            if g.are_distinct(y, z) {
                                continue;
                            }
                            let mut alt = g.clone();
                            match (&g.nodes[y].named, &g.nodes[z].named) {
                                (Some(_), Some(_)) => continue,
                                (Some(_), None) => alt.merge(z, y),
                                _ => alt.merge(y, z),
                            }
                            alts.push(alt);
                        }
                    }
                    // No mergeable pair: more pairwise-distinct successors than allowed.
                    return Ok(Step::Branch(alts));
                }
            }
        }

        for &x in &alive {
            let label: Vec<Concept> = g.nodes[x].label.iter().cloned().collect();
            for c in &label {
                match c {
                    Concept::Some(r, body) => {
                        let satisfied = g.successors(x, r).iter().any(|&y| g.nodes[y].label.contains(body));
                        if !satisfied {
                            let y = self.new_node(g)?;
                            g.nodes[y].label.insert((**body).clone());
                            g.edges.insert((x, y), r.names().clone());
                            return Ok(Step::Expanded);
                        }
                    }
                    Concept::Number(Comparator::Ge, n, r) => {
                        let n = *n as usize;
                        if n > self.cfg.max_nodes {
                            return Err(Error::ResourceLimit { resource: Resource::Nodes, limit: self.cfg.max_nodes });
                        }
                        if !g.has_distinct_clique(&g.successors(x, r), n) {
                            let mut fresh = Vec::with_capacity(n);
                            for _ in 0..n {
                                let y = self.new_node(g)?;
                                g.edges.insert((x, y), r.names().clone());
                                fresh.push(y);
                            }
                            for &a in &fresh {
                                g.nodes[a].distinct.extend(fresh.iter().copied().filter(|&b| b != a));
                            }
                            return Ok(Step::Expanded);
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(Step::Complete)
    }
}

/// Applies the ⊓- and ∀-rules to a fixpoint. Returns false on a clash.
fn saturate(g: &mut Graph) -> bool {
    loop {
        let mut changed = false;
        for x in 0..g.nodes.len() {
            if !g.nodes[x].alive {
                continue;
            }
            let label: Vec<Concept> = g.nodes[x].label.iter().cloned().collect();
            for c in label {
                match c {
                    Concept::And(items) => {
                        for item in items {
                            changed |= g.nodes[x].label.insert(item);
                        }
                    }
                    Concept::All(r, body) => {
                        for y in g.successors(x, &r) {
                            changed |= g.nodes[y].label.insert((*body).clone());
                        }
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    g.alive().all(|x| !g.has_clash(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::eval_concept;
    use crate::syntax::{parse_concept, parse_kb};

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    fn sat(s: &str) -> Satisfiability {
        tableau_satisfiable(&c(s), &TBox::new()).unwrap()
    }

    fn assert_model(s: &str) -> Interpretation {
        let Satisfiability::Satisfiable(m) = sat(s) else { panic!("{s} should be satisfiable") };
        assert!(eval_concept(&c(s), &m).unwrap().contains(&0), "model does not satisfy {s}:\n{m}");
        m
    }

    #[test]
    fn counting_clash() {
        assert_eq!(sat("(>= 2 paper) and (<= 1 paper)"), Satisfiability::Unsatisfiable);
    }

    #[test]
    fn role_conjunction_clash() {
        assert_eq!(sat("(some (p1 and p2).A) and (all p1.(not A))"), Satisfiability::Unsatisfiable);
        assert_model("(some p1.A) and (all (p1 and p2).(not A))");
    }

    #[test]
    fn c1_is_satisfiable_with_two_elements() {
        let tbox = parse_kb(
            "primitive person, technical, InformationTechnologies; role paper;
             C1 := person and (all paper.technical) and (<= 6 paper) and (some paper.InformationTechnologies);",
        )
        .unwrap()
        .tbox;
        let Satisfiability::Satisfiable(m) = tableau_satisfiable(&c("C1"), &tbox).unwrap() else {
            panic!("C1 should be satisfiable")
        };
        assert_eq!(m.size(), 2);
        let body = tbox.unfold(&c("C1")).unwrap();
        assert!(eval_concept(&body, &m).unwrap().contains(&0));
    }

    #[test]
    fn disjunction_and_negation() {
        assert_eq!(sat("A and (not A or BOTTOM)"), Satisfiability::Unsatisfiable);
        assert_model("(A or B) and not A");
        assert_eq!(sat("not (A or not A)"), Satisfiability::Unsatisfiable);
    }

    #[test]
    fn merging_is_forced_by_at_most() {
        assert_model("(some r.A) and (some r.B) and (<= 1 r)");
        assert_eq!(
            sat("(some r.A) and (some r.(not A)) and (<= 1 r)"),
            Satisfiability::Unsatisfiable
        );
        let m = assert_model("(>= 2 r) and (some r.A) and (some r.B) and (<= 2 r)");
        assert!(m.size() <= 3);
    }

    #[test]
    fn merging_unions_edge_labels() {
        // The p-successor and the q-successor must coincide, so it gets both
        // value restrictions.
        assert_eq!(
            sat("(some p.A) and (some (p and q).B) and (<= 1 p) and (all q.(not A))"),
            Satisfiability::Unsatisfiable
        );
        assert_model("(some p.A) and (some q.B) and (<= 1 p) and (all q.(not A))");
    }

    #[test]
    fn nested_numbers() {
        assert_eq!(
            sat("(>= 3 r) and (all r.(>= 2 s)) and (all r.(<= 1 s))"),
            Satisfiability::Unsatisfiable
        );
        assert_model("(>= 3 r) and (all r.((>= 2 s) and (all s.A))) and (<= 3 r)");
        assert_eq!(sat("(= 2 r) and (< 2 r)"), Satisfiability::Unsatisfiable);
        assert_model("(= 2 r) and (> 1 r)");
    }

    #[test]
    fn budgets_are_reported() {
        let cfg = TableauConfig { max_nodes: 5, max_branches: 10 };
        let err = tableau_satisfiable_with(&c("(>= 10 r)"), &TBox::new(), &cfg).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { resource: Resource::Nodes, .. }));
        let cfg = TableauConfig { max_nodes: 1000, max_branches: 1 };
        let err = tableau_satisfiable_with(&c("(A or B) and (C or D) and not A and not C"), &TBox::new(), &cfg)
            .unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { resource: Resource::Branches, .. }));
    }

    #[test]
    fn abox_models_respect_una() {
        let kb = parse_kb("role r; individual a, b, c; r(a, b); r(a, c); (<= 1 r)(a);").unwrap();
        assert!(abox_model(&kb, &[], &TableauConfig::default()).unwrap().is_none());

        let kb = parse_kb("role r; primitive A; individual a, b; r(a, b); (some r.A)(a); (<= 1 r)(a);").unwrap();
        let m = abox_model(&kb, &[], &TableauConfig::default()).unwrap().unwrap();
        assert_eq!(m.interpretation.size(), 2);
        assert!(m.interpretation.concept_extension("A").unwrap().contains(&m.mapping["b"]));
    }
}
