//! Signatures, terminologies, assertion boxes and the knowledge base that
//! bundles them.

use std::collections::{BTreeMap, BTreeSet};

use super::concept::Concept;
use crate::error::{Error, Result};

/// What kind of symbol a declared name stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameKind {
    Primitive,
    Role,
    Individual,
}

/// The declared vocabulary. The three name sets are pairwise disjoint.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    primitive_concepts: BTreeSet<String>,
    roles: BTreeSet<String>,
    individuals: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn primitive_concepts(&self) -> &BTreeSet<String> {
        &self.primitive_concepts
    }

    pub fn roles(&self) -> &BTreeSet<String> {
        &self.roles
    }

    pub fn individuals(&self) -> &BTreeSet<String> {
        &self.individuals
    }

    pub fn kind_of(&self, name: &str) -> Option<NameKind> {
        if self.primitive_concepts.contains(name) {
            Some(NameKind::Primitive)
        } else if self.roles.contains(name) {
            Some(NameKind::Role)
        } else if self.individuals.contains(name) {
            Some(NameKind::Individual)
        } else {
            None
        }
    }

    /// Declares a name. Re-declaring with the same kind is a no-op; declaring
    /// it with a different kind is a `RedefinedName` error.
    pub fn declare(&mut self, kind: NameKind, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        match self.kind_of(&name) {
            Some(k) if k == kind => return Ok(()),
            Some(_) => return Err(Error::RedefinedName(name)),
            None => {}
        }
        match kind {
            NameKind::Primitive => self.primitive_concepts.insert(name),
            NameKind::Role => self.roles.insert(name),
            NameKind::Individual => self.individuals.insert(name),
        };
        Ok(())
    }

    pub fn with_primitives<I: IntoIterator<Item = S>, S: Into<String>>(mut self, names: I) -> Result<Self> {
        for n in names {
            self.declare(NameKind::Primitive, n)?;
        }
        Ok(self)
    }

    pub fn with_roles<I: IntoIterator<Item = S>, S: Into<String>>(mut self, names: I) -> Result<Self> {
        for n in names {
            self.declare(NameKind::Role, n)?;
        }
        Ok(self)
    }

    pub fn with_individuals<I: IntoIterator<Item = S>, S: Into<String>>(mut self, names: I) -> Result<Self> {
        for n in names {
            self.declare(NameKind::Individual, n)?;
        }
        Ok(self)
    }
}

/// Acyclic concept definitions `Name := C`.
///
/// Definitions are full (necessary and sufficient). Names not defined here
/// are treated as primitive by [`TBox::unfold`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TBox {
    definitions: BTreeMap<String, Concept>,
}

impl TBox {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn definitions(&self) -> &BTreeMap<String, Concept> {
        &self.definitions
    }

    pub fn get(&self, name: &str) -> Option<&Concept> {
        self.definitions.get(name)
    }

    pub fn is_defined(&self, name: &str) -> bool {
        self.definitions.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.definitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty()
    }

    /// Adds `name := body`. An identical repeated definition is accepted; a
    /// different one is `RedefinedName`. Rejects definitions that would make
    /// the terminology cyclic.
    pub fn define(&mut self, name: impl Into<String>, body: Concept) -> Result<()> {
        let name = name.into();
        if let Some(existing) = self.definitions.get(&name) {
            return if *existing == body {
                Ok(())
            } else {
                Err(Error::RedefinedName(name))
            };
        }
        if let Some(mut path) = self.path_to(&body, &name) {
            path.insert(0, name);
            return Err(Error::CyclicTBox(path));
        }
        self.definitions.insert(name, body);
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, body: Concept) -> Result<Self> {
        self.define(name, body)?;
        Ok(self)
    }

    /// A chain of defined names leading from `c` to `target`, if one exists.
    fn path_to(&self, c: &Concept, target: &str) -> Option<Vec<String>> {
        for name in c.concept_names() {
            if name == target {
                return Some(vec![name]);
            }
            if let Some(def) = self.definitions.get(&name) {
                if let Some(mut rest) = self.path_to(def, target) {
                    rest.insert(0, name);
                    return Some(rest);
                }
            }
        }
        None
    }

    /// Replaces every defined name by its definition, to a fixpoint.
    pub fn unfold(&self, c: &Concept) -> Result<Concept> {
        let mut memo = BTreeMap::new();
        self.unfold_inner(c, &mut Vec::new(), &mut memo)
    }

    fn unfold_inner(
        &self,
        c: &Concept,
        stack: &mut Vec<String>,
        memo: &mut BTreeMap<String, Concept>,
    ) -> Result<Concept> {
        Ok(match c {
            Concept::Atomic(name) => match self.definitions.get(name) {
                None => c.clone(),
                Some(def) => {
                    if let Some(done) = memo.get(name) {
                        return Ok(done.clone());
                    }
                    if stack.contains(name) {
                        let mut cycle = stack.clone();
                        cycle.push(name.clone());
                        return Err(Error::CyclicTBox(cycle));
                    }
                    stack.push(name.clone());
                    let out = self.unfold_inner(def, stack, memo)?;
                    stack.pop();
                    memo.insert(name.clone(), out.clone());
                    out
                }
            },
            Concept::Top | Concept::Bottom | Concept::Number(..) => c.clone(),
            Concept::Not(inner) => Concept::not(self.unfold_inner(inner, stack, memo)?),
            Concept::And(cs) => Concept::And(
                cs.iter()
                    .map(|x| self.unfold_inner(x, stack, memo))
                    .collect::<Result<_>>()?,
            ),
            Concept::Or(cs) => Concept::Or(
                cs.iter()
                    .map(|x| self.unfold_inner(x, stack, memo))
                    .collect::<Result<_>>()?,
            ),
            Concept::All(r, inner) => Concept::all(r.clone(), self.unfold_inner(inner, stack, memo)?),
            Concept::Some(r, inner) => Concept::some(r.clone(), self.unfold_inner(inner, stack, memo)?),
        })
    }
}

/// A single ABox fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assertion {
    /// `C(a)`
    Concept(Concept, String),
    /// `P(a, b)` with `P` a primitive role.
    Role(String, String, String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ABox {
    concept_assertions: BTreeSet<(Concept, String)>,
    role_assertions: BTreeSet<(String, String, String)>,
}

impl ABox {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn concept_assertions(&self) -> &BTreeSet<(Concept, String)> {
        &self.concept_assertions
    }

    pub fn role_assertions(&self) -> &BTreeSet<(String, String, String)> {
        &self.role_assertions
    }

    pub fn is_empty(&self) -> bool {
        self.concept_assertions.is_empty() && self.role_assertions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.concept_assertions.len() + self.role_assertions.len()
    }

    /// Returns whether the assertion was newly added.
    pub fn insert(&mut self, a: Assertion) -> bool {
        match a {
            Assertion::Concept(c, i) => self.concept_assertions.insert((c, i)),
            Assertion::Role(r, s, o) => self.role_assertions.insert((r, s, o)),
        }
    }

    /// Returns whether the assertion was present.
    pub fn remove(&mut self, a: &Assertion) -> bool {
        match a {
            Assertion::Concept(c, i) => self.concept_assertions.remove(&(c.clone(), i.clone())),
            Assertion::Role(r, s, o) => self.role_assertions.remove(&(r.clone(), s.clone(), o.clone())),
        }
    }

    pub fn contains(&self, a: &Assertion) -> bool {
        match a {
            Assertion::Concept(c, i) => self.concept_assertions.contains(&(c.clone(), i.clone())),
            Assertion::Role(r, s, o) => self.role_assertions.contains(&(r.clone(), s.clone(), o.clone())),
        }
    }

    pub fn assertions(&self) -> impl Iterator<Item = Assertion> + '_ {
        self.concept_assertions
            .iter()
            .map(|(c, i)| Assertion::Concept(c.clone(), i.clone()))
            .chain(
                self.role_assertions
                    .iter()
                    .map(|(r, s, o)| Assertion::Role(r.clone(), s.clone(), o.clone())),
            )
    }
}

impl FromIterator<Assertion> for ABox {
    fn from_iter<T: IntoIterator<Item = Assertion>>(iter: T) -> Self {
        let mut abox = ABox::new();
        for a in iter {
            abox.insert(a);
        }
        abox
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub signature: Signature,
    pub tbox: TBox,
    pub abox: ABox,
}

impl KnowledgeBase {
    pub fn new(signature: Signature, tbox: TBox, abox: ABox) -> Result<Self> {
        let kb = KnowledgeBase { signature, tbox, abox };
        kb.validate()?;
        Ok(kb)
    }

    /// Checks every cross-reference between the three parts.
    pub fn validate(&self) -> Result<()> {
        for (name, body) in self.tbox.definitions() {
            if self.signature.kind_of(name).is_some() {
                return Err(Error::RedefinedName(name.clone()));
            }
            self.check_concept(body)?;
        }
        for a in self.abox.assertions() {
            self.check_assertion(&a)?;
        }
        Ok(())
    }

    /// Checks that `c` mentions only declared concept and role names.
    pub fn check_concept(&self, c: &Concept) -> Result<()> {
        for n in c.concept_names() {
            if !self.signature.primitive_concepts().contains(&n) && !self.tbox.is_defined(&n) {
                return Err(Error::UndefinedName(n));
            }
        }
        for r in c.role_names() {
            if !self.signature.roles().contains(&r) {
                return Err(Error::UndefinedName(r));
            }
        }
        Ok(())
    }

    pub fn check_individual(&self, name: &str) -> Result<()> {
        if self.signature.individuals().contains(name) {
            Ok(())
        } else {
            Err(Error::UndefinedName(name.to_string()))
        }
    }

    pub fn check_assertion(&self, a: &Assertion) -> Result<()> {
        match a {
            Assertion::Concept(c, i) => {
                self.check_concept(c)?;
                self.check_individual(i)
            }
            Assertion::Role(r, s, o) => {
                if !self.signature.roles().contains(r) {
                    return Err(Error::UndefinedName(r.clone()));
                }
                self.check_individual(s)?;
                self.check_individual(o)
            }
        }
    }

    /// Validates names, then unfolds against the terminology.
    pub fn unfold(&self, c: &Concept) -> Result<Concept> {
        self.check_concept(c)?;
        self.tbox.unfold(c)
    }

    /// All concept names: primitive and defined.
    pub fn concept_names(&self) -> BTreeSet<String> {
        let mut names = self.signature.primitive_concepts().clone();
        names.extend(self.tbox.definitions().keys().cloned());
        names
    }

    pub fn with_abox(&self, abox: ABox) -> KnowledgeBase {
        KnowledgeBase {
            signature: self.signature.clone(),
            tbox: self.tbox.clone(),
            abox,
        }
    }
}
