use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::model::{Assertion, Concept, KnowledgeBase, RoleExpr, Signature};

/// A finite interpretation over the domain `{0, ..., size-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    size: usize,
    concepts: BTreeMap<String, FixedBitSet>,
    /// Successor rows, one per domain element.
    roles: BTreeMap<String, Vec<FixedBitSet>>,
}

impl Interpretation {
    /// An interpretation with a non-empty domain and no names.
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("an interpretation needs a non-empty domain".into()));
        }
        Ok(Interpretation { size, concepts: BTreeMap::new(), roles: BTreeMap::new() })
    }

    /// An interpretation where every name of `sig` has an empty extension.
    pub fn empty_over(sig: &Signature, size: usize) -> Result<Self> {
        let mut i = Self::new(size)?;
        i.declare_signature(sig);
        Ok(i)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn declare_concept(&mut self, name: impl Into<String>) {
        let size = self.size;
        self.concepts.entry(name.into()).or_insert_with(|| FixedBitSet::with_capacity(size));
    }

    pub fn declare_role(&mut self, name: impl Into<String>) {
        let size = self.size;
        self.roles
            .entry(name.into())
            .or_insert_with(|| vec![FixedBitSet::with_capacity(size); size]);
    }

    /// Gives every name of `sig` an (empty, if new) extension.
    pub fn declare_signature(&mut self, sig: &Signature) {
        for c in sig.primitive_concepts() {
            self.declare_concept(c.clone());
        }
        for r in sig.roles() {
            self.declare_role(r.clone());
        }
    }

    /// Adds `element` to the extension of `concept`, declaring it if needed.
    pub fn insert_concept(&mut self, concept: &str, element: usize) {
        assert!(element < self.size, "element {element} outside domain of size {}", self.size);
        self.declare_concept(concept);
        self.concepts.get_mut(concept).unwrap().insert(element);
    }

    /// Adds the pair `(from, to)` to `role`, declaring it if needed.
    pub fn insert_pair(&mut self, role: &str, from: usize, to: usize) {
        assert!(from < self.size && to < self.size, "pair outside domain");
        self.declare_role(role);
        self.roles.get_mut(role).unwrap()[from].insert(to);
    }

    pub fn concept_names(&self) -> impl Iterator<Item = &String> {
        self.concepts.keys()
    }

    pub fn role_names(&self) -> impl Iterator<Item = &String> {
        self.roles.keys()
    }

    pub fn concept_extension(&self, name: &str) -> Option<BTreeSet<usize>> {
        self.concepts.get(name).map(|b| b.ones().collect())
    }

    pub fn role_extension(&self, name: &str) -> Option<BTreeSet<(usize, usize)>> {
        self.roles.get(name).map(|rows| {
            rows.iter()
                .enumerate()
                .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
                .collect()
        })
    }

    fn full(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.size);
        b.insert_range(..);
        b
    }

    /// Successor rows of a role conjunction: the intersection of its parts.
    pub(crate) fn role_rows(&self, r: &RoleExpr) -> Result<Vec<FixedBitSet>> {
        let mut out: Option<Vec<FixedBitSet>> = None;
        for name in r.names() {
            let rows = self.roles.get(name).ok_or_else(|| Error::UndefinedName(name.clone()))?;
            out = Some(match out {
                None => rows.clone(),
                Some(mut acc) => {
                    for (a, row) in acc.iter_mut().zip(rows) {
                        a.intersect_with(row);
                    }
                    acc
                }
            });
        }
        Ok(out.expect("role expressions are non-empty"))
    }

    pub(crate) fn eval_bits(&self, c: &Concept) -> Result<FixedBitSet> {
        Ok(match c {
            Concept::Top => self.full(),
            Concept::Bottom => FixedBitSet::with_capacity(self.size),
            Concept::Atomic(n) => self.concepts.get(n).cloned().ok_or_else(|| Error::UndefinedName(n.clone()))?,
            Concept::Not(inner) => {
                let mut b = self.eval_bits(inner)?;
                b.toggle_range(..);
                b
            }
            Concept::And(items) => {
                let mut acc = self.full();
                for item in items {
                    acc.intersect_with(&self.eval_bits(item)?);
                }
                acc
            }
            Concept::Or(items) => {
                let mut acc = FixedBitSet::with_capacity(self.size);
                for item in items {
                    acc.union_with(&self.eval_bits(item)?);
                }
                acc
            }
            Concept::All(r, inner) => {
                let rows = self.role_rows(r)?;
                let body = self.eval_bits(inner)?;
                let mut out = FixedBitSet::with_capacity(self.size);
                for (h, row) in rows.iter().enumerate() {
                    if row.is_subset(&body) {
                        out.insert(h);
                    }
                }
                out
            }
            Concept::Some(r, inner) => {
                let rows = self.role_rows(r)?;
                let body = self.eval_bits(inner)?;
                let mut out = FixedBitSet::with_capacity(self.size);
                for (h, row) in rows.iter().enumerate() {
                    if !row.is_disjoint(&body) {
                        out.insert(h);
                    }
                }
                out
            }
            Concept::Number(cmp, n, r) => {
                let rows = self.role_rows(r)?;
                let mut out = FixedBitSet::with_capacity(self.size);
                for (h, row) in rows.iter().enumerate() {
                    if cmp.holds(row.count_ones(..) as u64, *n) {
                        out.insert(h);
                    }
                }
                out
            }
        })
    }

    /// Whether `element` belongs to the extension of `c`.
    pub fn contains(&self, c: &Concept, element: usize) -> Result<bool> {
        Ok(self.eval_bits(c)?.contains(element))
    }
}

/// The extension of a role conjunction: the intersection of the primitive
/// role extensions.
pub fn eval_role(r: &RoleExpr, interp: &Interpretation) -> Result<BTreeSet<(usize, usize)>> {
    let rows = interp.role_rows(r)?;
    Ok(rows
        .iter()
        .enumerate()
        .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
        .collect())
}

/// The extension of a concept. `c` must already be unfolded.
pub fn eval_concept(c: &Concept, interp: &Interpretation) -> Result<BTreeSet<usize>> {
    Ok(interp.eval_bits(c)?.ones().collect())
}

/// Whether `interp`, with individuals placed by `mapping`, is a model of the
/// KB's assertions. Concept assertions are unfolded against the KB's TBox.
///
/// Fails if the mapping misses an individual or is not injective.
pub fn satisfies_abox(kb: &KnowledgeBase, interp: &Interpretation, mapping: &BTreeMap<String, usize>) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for ind in kb.signature.individuals() {
        let e = *mapping.get(ind).ok_or_else(|| Error::UndefinedName(ind.clone()))?;
        if e >= interp.size() || !seen.insert(e) {
            return Err(Error::Invalid(format!("mapping of `{ind}` is out of range or not injective")));
        }
    }
    let place = |ind: &String| -> Result<usize> {
        mapping.get(ind).copied().ok_or_else(|| Error::UndefinedName(ind.clone()))
    };
    for a in kb.abox.assertions() {
        let holds = match &a {
            Assertion::Concept(c, ind) => interp.contains(&kb.tbox.unfold(c)?, place(ind)?)?,
            Assertion::Role(r, s, o) => {
                let rows = interp.roles.get(r).ok_or_else(|| Error::UndefinedName(r.clone()))?;
                rows[place(s)?].contains(place(o)?)
            }
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for Interpretation {
    /// One line for the domain, then one line per concept and role.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dom: Vec<String> = self.domain().map(|e| e.to_string()).collect();
        writeln!(f, "domain = {{{}}}", dom.join(", "))?;
        for (name, bits) in &self.concepts {
            let items: Vec<String> = bits.ones().map(|e| e.to_string()).collect();
            writeln!(f, "concept {name} = {{{}}}", items.join(", "))?;
        }
        for name in self.roles.keys() {
            let pairs: Vec<String> = self
                .role_extension(name)
                .unwrap()
                .into_iter()
                .map(|(a, b)| format!("({a}, {b})"))
                .collect();
            writeln!(f, "role {name} = {{{}}}", pairs.join(", "))?;
        }
        Ok(())
    }
}
