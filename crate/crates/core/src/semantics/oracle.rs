//! Bounded refutation oracle.
//!
//! Searches all interpretations up to a domain-size bound for an element in
//! the extension of a concept. The search assigns extension bits one at a
//! time and evaluates the concept under a three-valued reading of the partial
//! interpretation: every element gets a lower bound (in the extension in all
//! completions) and an upper bound (in it in some completion). A branch is
//! abandoned once element 0 falls outside the upper bound, and a model is
//! reported once element 0 is inside the lower bound. Only element 0 is
//! tested as the witness since any witness can be relabeled to 0.
//!
//! The evaluator works directly on the constructors, so the oracle stays
//! independent of the rewrite pipeline it is used to check. Finding no
//! counterexample up to the bound does not prove subsumption.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Comparator, Concept, TBox};

use super::enumerate::ModelSearchConfig;
use super::interp::Interpretation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    /// `element` is in the first concept but not in the second.
    NotSubsumed { witness: Interpretation, element: usize },
    /// No counterexample up to the domain bound; subsumption is not proved.
    NoCounterexampleFound,
}

/// Searches for an interpretation with an element in `c` but not in `d`.
pub fn oracle_subsumes(c: &Concept, d: &Concept, tbox: &TBox, cfg: &ModelSearchConfig) -> Result<OracleVerdict> {
    let target = Concept::And(vec![c.clone(), Concept::not(d.clone())]);
    Ok(match oracle_find_model(&target, tbox, cfg)? {
        Some((witness, element)) => OracleVerdict::NotSubsumed { witness, element },
        None => OracleVerdict::NoCounterexampleFound,
    })
}

/// Searches for an interpretation where `c` has a non-empty extension,
/// trying domain sizes `1..=max_domain_size` in order. Returns the model and
/// an element of the extension.
pub fn oracle_find_model(c: &Concept, tbox: &TBox, cfg: &ModelSearchConfig) -> Result<Option<(Interpretation, usize)>> {
    cfg.validate()?;
    let c = tbox.unfold(c)?;
    let mut names = Names::default();
    let node = names.compile(&c);
    let mut visited = 0u64;
    for k in 1..=cfg.max_domain_size {
        let mut search = Search::new(&names, k, cfg.max_models, visited);
        let found = search.dfs(&node, 0)?;
        visited = search.visited;
        if found {
            return Ok(Some((search.to_interpretation(&names), 0)));
        }
    }
    Ok(None)
}

#[derive(Default)]
struct Names {
    concepts: Vec<String>,
    roles: Vec<String>,
    concept_idx: BTreeMap<String, usize>,
    role_idx: BTreeMap<String, usize>,
}

enum Node {
    Const(bool),
    Atom(usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    All(Vec<usize>, Box<Node>),
    Some(Vec<usize>, Box<Node>),
    Count(Comparator, u32, Vec<usize>),
}

impl Names {
    fn concept(&mut self, n: &str) -> usize {
        if let Some(&i) = self.concept_idx.get(n) {
            return i;
        }
        self.concepts.push(n.to_string());
        self.concept_idx.insert(n.to_string(), self.concepts.len() - 1);
        self.concepts.len() - 1
    }

    fn role(&mut self, n: &str) -> usize {
        if let Some(&i) = self.role_idx.get(n) {
            return i;
        }
        self.roles.push(n.to_string());
        self.role_idx.insert(n.to_string(), self.roles.len() - 1);
        self.roles.len() - 1
    }

    fn compile(&mut self, c: &Concept) -> Node {
        match c {
            Concept::Top => Node::Const(true),
            Concept::Bottom => Node::Const(false),
            Concept::Atomic(n) => Node::Atom(self.concept(n)),
            Concept::Not(x) => Node::Not(Box::new(self.compile(x))),
            Concept::And(xs) => Node::And(xs.iter().map(|x| self.compile(x)).collect()),
            Concept::Or(xs) => Node::Or(xs.iter().map(|x| self.compile(x)).collect()),
            Concept::All(r, x) => {
                let r = r.names().iter().map(|n| self.role(n)).collect();
                Node::All(r, Box::new(self.compile(x)))
            }
            Concept::Some(r, x) => {
                let r = r.names().iter().map(|n| self.role(n)).collect();
                Node::Some(r, Box::new(self.compile(x)))
            }
            Concept::Number(cmp, n, r) => Node::Count(*cmp, *n, r.names().iter().map(|n| self.role(n)).collect()),
        }
    }
}

#[derive(Clone, Copy)]
enum Var {
    Concept(usize, usize),
    Pair(usize, usize, usize),
}

struct Search {
    k: usize,
    full: u32,
    /// Known members / known non-members, per concept.
    c_pos: Vec<u32>,
    c_neg: Vec<u32>,
    /// Known / excluded successors, per role and element.
    r_pos: Vec<Vec<u32>>,
    r_neg: Vec<Vec<u32>>,
    vars: Vec<Var>,
    cap: Option<u64>,
    visited: u64,
}

impl Search {
    fn new(names: &Names, k: usize, cap: Option<u64>, visited: u64) -> Self {
        let (nc, nr) = (names.concepts.len(), names.roles.len());
        // Element by element: its memberships, then its outgoing pairs.
        let mut vars = Vec::with_capacity(nc * k + nr * k * k);
        for e in 0..k {
            vars.extend((0..nc).map(|c| Var::Concept(c, e)));
            for r in 0..nr {
                vars.extend((0..k).map(|b| Var::Pair(r, e, b)));
            }
        }
        Search {
            k,
            full: (1u32 << k) - 1,
            c_pos: vec![0; nc],
            c_neg: vec![0; nc],
            r_pos: vec![vec![0; k]; nr],
            r_neg: vec![vec![0; k]; nr],
            vars,
            cap,
            visited,
        }
    }

    fn set(&mut self, v: Var, value: Option<bool>) {
        let (pos, neg, bit) = match v {
            Var::Concept(c, e) => (&mut self.c_pos[c], &mut self.c_neg[c], 1u32 << e),
            Var::Pair(r, a, b) => (&mut self.r_pos[r][a], &mut self.r_neg[r][a], 1u32 << b),
        };
        *pos &= !bit;
        *neg &= !bit;
        match value {
            Some(true) => *pos |= bit,
            Some(false) => *neg |= bit,
            None => {}
        }
    }

    /// Definite and possible successor masks of `h` under a role conjunction.
    fn successors(&self, roles: &[usize], h: usize) -> (u32, u32) {
        let mut def = self.full;
        let mut poss = self.full;
        for &r in roles {
            def &= self.r_pos[r][h];
            poss &= !self.r_neg[r][h];
        }
        (def, poss & self.full)
    }

    /// Lower and upper bounds of the extension of `node`.
    fn eval(&self, node: &Node) -> (u32, u32) {
        match node {
            Node::Const(true) => (self.full, self.full),
            Node::Const(false) => (0, 0),
            Node::Atom(c) => (self.c_pos[*c], self.full & !self.c_neg[*c]),
            Node::Not(x) => {
                let (lo, hi) = self.eval(x);
                (self.full & !hi, self.full & !lo)
            }
            Node::And(xs) => xs.iter().fold((self.full, self.full), |(lo, hi), x| {
                let (l, h) = self.eval(x);
                (lo & l, hi & h)
            }),
            Node::Or(xs) => xs.iter().fold((0, 0), |(lo, hi), x| {
                let (l, h) = self.eval(x);
                (lo | l, hi | h)
            }),
            Node::All(r, x) => {
                let (blo, bhi) = self.eval(x);
                let (mut lo, mut hi) = (0, 0);
                for h in 0..self.k {
                    let (def, poss) = self.successors(r, h);
                    if poss & !blo == 0 {
                        lo |= 1 << h;
                    }
                    if def & !bhi == 0 {
                        hi |= 1 << h;
                    }
                }
                (lo, hi)
            }
            Node::Some(r, x) => {
                let (blo, bhi) = self.eval(x);
                let (mut lo, mut hi) = (0, 0);
                for h in 0..self.k {
                    let (def, poss) = self.successors(r, h);
                    if def & blo != 0 {
                        lo |= 1 << h;
                    }
                    if poss & bhi != 0 {
                        hi |= 1 << h;
                    }
                }
                (lo, hi)
            }
            Node::Count(cmp, n, r) => {
                let (mut lo, mut hi) = (0, 0);
                for h in 0..self.k {
                    let (def, poss) = self.successors(r, h);
                    let (min, max) = (u64::from(def.count_ones()), u64::from(poss.count_ones()));
                    // Every count in min..=max is reachable by some completion.
                    let always = (min..=max).all(|m| cmp.holds(m, *n));
                    let sometimes = (min..=max).any(|m| cmp.holds(m, *n));
                    if always {
                        lo |= 1 << h;
                    }
                    if sometimes {
                        hi |= 1 << h;
                    }
                }
                (lo, hi)
            }
        }
    }

    fn dfs(&mut self, node: &Node, depth: usize) -> Result<bool> {
        self.visited += 1;
        if let Some(cap) = self.cap {
            if self.visited > cap {
                return Err(Error::BudgetExceeded(cap));
            }
        }
        let (lo, hi) = self.eval(node);
        if hi & 1 == 0 {
            return Ok(false);
        }
        if lo & 1 != 0 {
            return Ok(true);
        }
        let var = self.vars[depth];
        for value in [false, true] {
            self.set(var, Some(value));
            if self.dfs(node, depth + 1)? {
                return Ok(true);
            }
        }
        self.set(var, None);
        Ok(false)
    }

    /// Unassigned bits default to false.
    fn to_interpretation(&self, names: &Names) -> Interpretation {
        let mut interp = Interpretation::new(self.k).unwrap();
        for (i, name) in names.concepts.iter().enumerate() {
            interp.declare_concept(name.clone());
            for e in 0..self.k {
                if self.c_pos[i] & (1 << e) != 0 {
                    interp.insert_concept(name, e);
                }
            }
        }
        for (i, name) in names.roles.iter().enumerate() {
            interp.declare_role(name.clone());
            for a in 0..self.k {
                for b in 0..self.k {
                    if self.r_pos[i][a] & (1 << b) != 0 {
                        interp.insert_pair(name, a, b);
                    }
                }
            }
        }
        interp
    }
}
