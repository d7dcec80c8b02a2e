//! Seeded random generators for concepts, terminologies, ABoxes and event
//! scripts. Used by the property and acceptance tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{ABox, Assertion, Comparator, Concept, RoleExpr, Signature, TBox};
use crate::views::{Action, Event};

/// Which constructors a generated concept may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// Every constructor, conjoined roles included.
    Full,
    /// Names, conjunction, value and number restrictions over single roles.
    Structural,
}

#[derive(Debug, Clone)]
pub struct ConceptGen {
    /// Atomic names to draw from; may include defined names.
    pub names: Vec<String>,
    pub roles: Vec<String>,
    pub max_depth: usize,
    pub max_number: u32,
    pub fragment: Fragment,
}

impl ConceptGen {
    pub fn new(names: &[&str], roles: &[&str], max_depth: usize, max_number: u32) -> Self {
        ConceptGen {
            names: names.iter().map(|s| s.to_string()).collect(),
            roles: roles.iter().map(|s| s.to_string()).collect(),
            max_depth,
            max_number,
            fragment: Fragment::Full,
        }
    }

    pub fn fragment(mut self, fragment: Fragment) -> Self {
        self.fragment = fragment;
        self
    }

    pub fn concept<R: Rng + ?Sized>(&self, rng: &mut R) -> Concept {
        self.at_depth(rng, self.max_depth)
    }

    fn role<R: Rng + ?Sized>(&self, rng: &mut R) -> RoleExpr {
        if self.fragment == Fragment::Structural || self.roles.len() == 1 || rng.gen_bool(0.7) {
            return RoleExpr::primitive(self.roles.choose(rng).unwrap().as_str());
        }
        let k = rng.gen_range(1..=self.roles.len());
        RoleExpr::new(self.roles.choose_multiple(rng, k).cloned()).unwrap()
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Concept {
        match rng.gen_range(0..12) {
            0 => Concept::Top,
            1 if self.fragment == Fragment::Full => Concept::Bottom,
            2 | 3 if !self.roles.is_empty() => self.number(rng),
            _ => Concept::atomic(self.names.choose(rng).unwrap().as_str()),
        }
    }

    fn number<R: Rng + ?Sized>(&self, rng: &mut R) -> Concept {
        let cmp = *Comparator::ALL.choose(rng).unwrap();
        Concept::number(cmp, rng.gen_range(0..=self.max_number), self.role(rng))
    }

    fn at_depth<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Concept {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.leaf(rng);
        }
        let kinds: &[u8] = match (self.fragment, self.roles.is_empty()) {
            (Fragment::Full, false) => &[0, 1, 2, 3, 4],
            (Fragment::Full, true) => &[0, 1, 2],
            (Fragment::Structural, false) => &[0, 3],
            (Fragment::Structural, true) => &[0],
        };
        match kinds.choose(rng).unwrap() {
            0 => {
                let n = rng.gen_range(2..=3);
                Concept::And((0..n).map(|_| self.at_depth(rng, depth - 1)).collect())
            }
            1 => {
                let n = rng.gen_range(2..=3);
                Concept::Or((0..n).map(|_| self.at_depth(rng, depth - 1)).collect())
            }
            2 => Concept::not(self.at_depth(rng, depth - 1)),
            3 => Concept::all(self.role(rng), self.at_depth(rng, depth - 1)),
            _ => Concept::some(self.role(rng), self.at_depth(rng, depth - 1)),
        }
    }
}

/// An acyclic terminology `D0 .. D{n-1}` where each definition may mention
/// the primitives and earlier defined names.
pub fn random_tbox<R: Rng + ?Sized>(rng: &mut R, primitives: &[&str], roles: &[&str], defined: usize, depth: usize) -> TBox {
    let mut tbox = TBox::new();
    let mut names: Vec<String> = primitives.iter().map(|s| s.to_string()).collect();
    for i in 0..defined {
        let g = ConceptGen {
            names: names.clone(),
            roles: roles.iter().map(|s| s.to_string()).collect(),
            max_depth: depth,
            max_number: 2,
            fragment: Fragment::Full,
        };
        let name = format!("D{i}");
        tbox.define(name.clone(), g.concept(rng)).expect("fresh acyclic definition");
        names.push(name);
    }
    tbox
}

/// A primitive assertion (concept or role) over the signature.
pub fn random_assertion<R: Rng + ?Sized>(rng: &mut R, sig: &Signature) -> Assertion {
    let inds: Vec<&String> = sig.individuals().iter().collect();
    let prims: Vec<&String> = sig.primitive_concepts().iter().collect();
    let roles: Vec<&String> = sig.roles().iter().collect();
    let ind = |rng: &mut R| (*inds.choose(rng).unwrap()).clone();
    if roles.is_empty() || (!prims.is_empty() && rng.gen_bool(0.5)) {
        let c = Concept::atomic(prims.choose(rng).unwrap().as_str());
        let c = if rng.gen_bool(0.2) { Concept::not(c) } else { c };
        Assertion::Concept(c, ind(rng))
    } else {
        let r = (*roles.choose(rng).unwrap()).clone();
        Assertion::Role(r, ind(rng), ind(rng))
    }
}

pub fn random_abox<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, size: usize) -> ABox {
    (0..size).map(|_| random_assertion(rng, sig)).collect()
}

/// An event with a short script of adds and removes, optionally switching
/// to one of `worlds` first.
pub fn random_event<R: Rng + ?Sized>(rng: &mut R, name: &str, sig: &Signature, worlds: &[&str]) -> Event {
    let mut script = Vec::new();
    if !worlds.is_empty() && rng.gen_bool(0.3) {
        script.push(Action::SwitchWorld(worlds.choose(rng).unwrap().to_string()));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let a = random_assertion(rng, sig);
        script.push(if rng.gen_bool(0.6) { Action::Add(a) } else { Action::Remove(a) });
    }
    Event { name: name.to_string(), script }
}
