//! Normalize-compare subsumption.
//!
//! Both concepts are brought into a [`NormalForm`] that groups conjuncts by
//! kind and role; then every component of the candidate subsumer must be
//! implied by some component of the subsumee.
//!
//! The comparison is sound everywhere. It is also complete, and answers
//! `NotSubsumed`, only on the fragment of primitives, negated primitives,
//! conjunction, value restrictions and number restrictions in which the role
//! expressions used at each level are pairwise disjoint. Outside that
//! fragment a failed comparison yields `Unknown`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::model::{canonicalize, simplify, Comparator, Concept, RoleExpr, TBox};

/// Conjuncts of a concept grouped by constructor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalForm {
    pub primitives: BTreeSet<String>,
    pub negated_primitives: BTreeSet<String>,
    /// `∀R.C` conjuncts, bodies merged per role expression.
    pub value_restrictions: BTreeMap<RoleExpr, NormalForm>,
    /// `∃R.C` conjuncts with `C` other than `TOP`; each body is conjoined
    /// with the value restrictions that reach the successor.
    pub existentials: Vec<(RoleExpr, NormalForm)>,
    /// `(>= n R)` with `n >= 1`; `∃R.TOP` contributes `1`.
    pub min_card: BTreeMap<RoleExpr, u32>,
    pub max_card: BTreeMap<RoleExpr, u32>,
    pub disjunctions: Vec<Concept>,
    pub is_bottom: bool,
    /// Value restriction bodies as concepts, for recombination.
    value_bodies: BTreeMap<RoleExpr, Concept>,
}

/// Three-valued comparison result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

pub fn normalize(c: &Concept, tbox: &TBox) -> Result<NormalForm> {
    Ok(NormalForm::from_simplified(&simplify(&tbox.unfold(c)?)))
}

/// `Yes` when `c ⊑ d` is proved, `No` when refuted, `Unknown` otherwise.
pub fn structural_compare(c: &Concept, d: &Concept, tbox: &TBox) -> Result<Tri> {
    Ok(compare(&normalize(c, tbox)?, &normalize(d, tbox)?))
}

impl NormalForm {
    fn bottom() -> Self {
        NormalForm { is_bottom: true, ..Self::default() }
    }

    /// Buckets a concept that is already unfolded, in NNF and canonical.
    pub fn from_simplified(c: &Concept) -> Self {
        let conjuncts: Vec<&Concept> = match c {
            Concept::Top => return NormalForm::default(),
            Concept::Bottom => return NormalForm::bottom(),
            Concept::And(items) => items.iter().collect(),
            other => vec![other],
        };
        let mut nf = NormalForm::default();
        let mut bodies: BTreeMap<RoleExpr, Vec<Concept>> = BTreeMap::new();
        let mut raw_existentials = Vec::new();
        for conjunct in conjuncts {
            match conjunct {
                Concept::Top => {}
                Concept::Bottom => return NormalForm::bottom(),
                Concept::Atomic(a) => {
                    nf.primitives.insert(a.clone());
                }
                Concept::Not(inner) => match &**inner {
                    Concept::Atomic(a) => {
                        nf.negated_primitives.insert(a.clone());
                    }
                    other => nf.disjunctions.push(Concept::not(other.clone())),
                },
                Concept::All(r, body) => bodies.entry(r.clone()).or_default().push((**body).clone()),
                Concept::Some(r, body) if **body == Concept::Top => nf.raise_min(r, 1),
                Concept::Some(r, body) => raw_existentials.push((r.clone(), (**body).clone())),
                Concept::Number(Comparator::Ge, 0, _) => {}
                Concept::Number(Comparator::Ge, n, r) => nf.raise_min(r, *n),
                Concept::Number(Comparator::Le, n, r) => nf.lower_max(r, *n),
                // Not produced by the rewrite pipeline.
                Concept::Number(..) => nf.disjunctions.push(conjunct.clone()),
                Concept::Or(_) => nf.disjunctions.push(conjunct.clone()),
                Concept::And(_) => unreachable!("canonical conjunctions are flat"),
            }
        }

        for (r, items) in bodies {
            let body = canonicalize(&Concept::and(items));
            if body == Concept::Top {
                continue;
            }
            let body_nf = NormalForm::from_simplified(&body);
            if body_nf.is_bottom {
                nf.lower_max(&r, 0);
            }
            nf.value_bodies.insert(r.clone(), body);
            nf.value_restrictions.insert(r, body_nf);
        }
        for (r, body) in raw_existentials {
            let full = nf.successor_body(&r, Some(&body));
            nf.existentials.push((r, full));
        }

        if nf.detect_clash() {
            return NormalForm::bottom();
        }
        nf
    }

    fn raise_min(&mut self, r: &RoleExpr, n: u32) {
        let e = self.min_card.entry(r.clone()).or_insert(n);
        *e = (*e).max(n);
    }

    fn lower_max(&mut self, r: &RoleExpr, n: u32) {
        let e = self.max_card.entry(r.clone()).or_insert(n);
        *e = (*e).min(n);
    }

    /// Normal form of what every `r`-successor must satisfy: all value
    /// restrictions over roles with fewer primitives, plus `extra`.
    fn successor_body(&self, r: &RoleExpr, extra: Option<&Concept>) -> NormalForm {
        let mut items: Vec<Concept> = self
            .value_bodies
            .iter()
            .filter(|(r0, _)| r0.contains_relation(r))
            .map(|(_, b)| b.clone())
            .collect();
        items.extend(extra.cloned());
        if items.is_empty() {
            return NormalForm::default();
        }
        NormalForm::from_simplified(&canonicalize(&Concept::and(items)))
    }

    /// The largest number of successors any `r`-filler set can be forced to have.
    fn forced_min(&self, r: &RoleExpr) -> u32 {
        let explicit = self
            .min_card
            .iter()
            .filter(|(r1, _)| r.contains_relation(r1))
            .map(|(_, &m)| m)
            .max()
            .unwrap_or(0);
        let from_exists = self.existentials.iter().any(|(r1, _)| r.contains_relation(r1));
        explicit.max(u32::from(from_exists))
    }

    /// The bound on `r`-successors implied by at-most restrictions and by
    /// unsatisfiable successor bodies.
    fn effective_max(&self, r: &RoleExpr) -> Option<u32> {
        if self.successor_body(r, None).is_bottom {
            return Some(0);
        }
        self.max_card
            .iter()
            .filter(|(r0, _)| r0.contains_relation(r))
            .map(|(_, &n)| n)
            .min()
    }

    fn detect_clash(&self) -> bool {
        if !self.primitives.is_disjoint(&self.negated_primitives) {
            return true;
        }
        for (r, &m) in &self.min_card {
            if self.effective_max(r).is_some_and(|n| m > n) {
                return true;
            }
        }
        for (r, body) in &self.existentials {
            if body.is_bottom || self.effective_max(r) == Some(0) {
                return true;
            }
        }
        false
    }

    fn roles_used(&self) -> BTreeSet<&RoleExpr> {
        self.value_restrictions
            .keys()
            .chain(self.min_card.keys())
            .chain(self.max_card.keys())
            .chain(self.existentials.iter().map(|(r, _)| r))
            .collect()
    }

    /// Whether this form lies in the fragment where comparison is complete.
    pub fn in_complete_fragment(&self) -> bool {
        self.is_bottom
            || (self.disjunctions.is_empty()
                && self.existentials.is_empty()
                && pairwise_disjoint(self.roles_used())
                && self.value_restrictions.values().all(NormalForm::in_complete_fragment))
    }
}

fn pairwise_disjoint(roles: BTreeSet<&RoleExpr>) -> bool {
    let roles: Vec<&RoleExpr> = roles.into_iter().collect();
    roles
        .iter()
        .enumerate()
        .all(|(i, a)| roles[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

/// Compares two normal forms: does the first imply the second?
pub fn compare(c: &NormalForm, d: &NormalForm) -> Tri {
    if c.is_bottom {
        return Tri::Yes;
    }
    let c_complete = c.in_complete_fragment();
    if d.is_bottom {
        return if c_complete { Tri::No } else { Tri::Unknown };
    }
    if !c.disjunctions.is_empty() || !d.disjunctions.is_empty() {
        return Tri::Unknown;
    }
    let mut complete = c_complete
        && d.in_complete_fragment()
        && pairwise_disjoint(c.roles_used().into_iter().chain(d.roles_used()).collect());
    let mut proved = d.primitives.is_subset(&c.primitives)
        && d.negated_primitives.is_subset(&c.negated_primitives)
        && d.min_card.iter().all(|(r, &m)| c.forced_min(r) >= m)
        && d.max_card.iter().all(|(r, &n)| c.effective_max(r).is_some_and(|k| k <= n));

    for (r, body) in &d.value_restrictions {
        if c.effective_max(r) == Some(0) {
            continue;
        }
        match compare(&c.successor_body(r, None), body) {
            Tri::Yes => {}
            Tri::No => proved = false,
            Tri::Unknown => {
                proved = false;
                complete = false;
            }
        }
    }

    for (r, body) in &d.existentials {
        let from_exists = c
            .existentials
            .iter()
            .filter(|(r1, _)| r.contains_relation(r1))
            .any(|(_, x)| compare(x, body) == Tri::Yes);
        let from_min = c
            .min_card
            .keys()
            .filter(|r1| r.contains_relation(r1))
            .any(|r1| compare(&c.successor_body(r1, None), body) == Tri::Yes);
        if !(from_exists || from_min) {
            proved = false;
            complete = false;
        }
    }

    if proved {
        Tri::Yes
    } else if complete {
        Tri::No
    } else {
        Tri::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_kb};

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    fn role(s: &str) -> RoleExpr {
        RoleExpr::primitive(s)
    }

    fn research_tbox() -> TBox {
        parse_kb(
            "primitive person, technical, InformationTechnologies; role paper;
             author := person and (> 0 paper);
             C1 := person and (all paper.technical) and (<= 6 paper) and (some paper.InformationTechnologies);",
        )
        .unwrap()
        .tbox
    }

    fn cmp(a: &str, b: &str) -> Tri {
        structural_compare(&c(a), &c(b), &TBox::new()).unwrap()
    }

    #[test]
    fn normal_form_of_author() {
        let nf = normalize(&c("author"), &research_tbox()).unwrap();
        assert_eq!(nf.primitives, BTreeSet::from(["person".to_string()]));
        assert_eq!(nf.min_card, BTreeMap::from([(role("paper"), 1)]));
        assert!(nf.max_card.is_empty() && nf.value_restrictions.is_empty() && !nf.is_bottom);
    }

    #[test]
    fn direct_clash_is_bottom() {
        assert!(normalize(&c("A and not A"), &TBox::new()).unwrap().is_bottom);
        assert!(normalize(&c("(>= 3 r) and (<= 2 r)"), &TBox::new()).unwrap().is_bottom);
        assert!(normalize(&c("(>= 1 (r and s)) and (<= 0 r)"), &TBox::new()).unwrap().is_bottom);
        assert!(normalize(&c("(>= 1 r) and (all r.BOTTOM)"), &TBox::new()).unwrap().is_bottom);
        assert!(normalize(&c("(some r.A) and (all r.(not A))"), &TBox::new()).unwrap().is_bottom);
    }

    #[test]
    fn value_restrictions_merge_per_role() {
        let nf = normalize(&c("(all paper.A) and (all paper.B)"), &TBox::new()).unwrap();
        assert_eq!(nf.value_restrictions.len(), 1);
        let body = &nf.value_restrictions[&role("paper")];
        assert_eq!(body.primitives, BTreeSet::from(["A".to_string(), "B".to_string()]));
    }

    #[test]
    fn c1_is_subsumed_by_author() {
        assert_eq!(structural_compare(&c("C1"), &c("author"), &research_tbox()).unwrap(), Tri::Yes);
        assert_eq!(structural_compare(&c("author"), &c("C1"), &research_tbox()).unwrap(), Tri::Unknown);
    }

    #[test]
    fn person_is_not_an_author() {
        assert_eq!(structural_compare(&c("person"), &c("author"), &research_tbox()).unwrap(), Tri::No);
    }

    #[test]
    fn disjunction_is_unknown() {
        assert_eq!(cmp("A", "A or B"), Tri::Unknown);
        assert_eq!(cmp("A or B", "A"), Tri::Unknown);
    }

    #[test]
    fn conjunct_projection_and_bottom() {
        assert_eq!(cmp("A and B", "A"), Tri::Yes);
        assert_eq!(cmp("A", "A and B"), Tri::No);
        assert_eq!(cmp("BOTTOM", "A"), Tri::Yes);
        assert_eq!(cmp("A", "BOTTOM"), Tri::No);
        assert_eq!(cmp("A", "TOP"), Tri::Yes);
    }

    #[test]
    fn number_restrictions_respect_role_direction() {
        assert_eq!(cmp("(>= 2 (r and s))", "(>= 1 r)"), Tri::Yes);
        assert_eq!(cmp("(>= 2 r)", "(>= 1 (r and s))"), Tri::Unknown);
        assert_eq!(cmp("(>= 2 r)", "(>= 3 r)"), Tri::No);
        assert_eq!(cmp("(<= 1 r)", "(<= 2 (r and s))"), Tri::Yes);
        assert_eq!(cmp("(<= 1 (r and s))", "(<= 2 r)"), Tri::Unknown);
        assert_eq!(cmp("(<= 1 r)", "(<= 2 r)"), Tri::Yes);
        assert_eq!(cmp("(<= 3 r)", "(<= 2 r)"), Tri::No);
        assert_eq!(cmp("all r.BOTTOM", "(<= 0 r)"), Tri::Yes);
    }

    #[test]
    fn value_restriction_comparison() {
        assert_eq!(cmp("all r.(A and B)", "all r.A"), Tri::Yes);
        assert_eq!(cmp("(all r.A) and (all r.B)", "all r.(A and B)"), Tri::Yes);
        assert_eq!(cmp("all r.A", "all r.B"), Tri::No);
        assert_eq!(cmp("(<= 0 r)", "all r.B"), Tri::Yes);
        assert_eq!(cmp("all r.A", "all (r and s).A"), Tri::Yes);
        assert_eq!(cmp("all r.(all s.A)", "all r.(all s.(A or B))"), Tri::Unknown);
    }

    #[test]
    fn existentials_are_sound_only() {
        assert_eq!(cmp("some (r and s).(A and B)", "some r.A"), Tri::Yes);
        assert_eq!(cmp("(some r.A) and (all r.B)", "some r.(A and B)"), Tri::Yes);
        assert_eq!(cmp("(>= 1 r) and (all r.B)", "some r.B"), Tri::Yes);
        assert_eq!(cmp("some r.A", "some r.B"), Tri::Unknown);
        assert_eq!(cmp("some r.A", "(>= 1 r)"), Tri::Yes);
    }
}
