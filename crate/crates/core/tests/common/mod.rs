#![allow(dead_code)]

use std::collections::BTreeSet;

use adelog_core::model::{Comparator, Concept, RoleExpr};
use adelog_core::semantics::{enumerate_models, eval_concept, Interpretation, ModelSearchConfig};
use adelog_core::Signature;
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

pub fn role(roles: &'static [&'static str]) -> impl Strategy<Value = RoleExpr> + Clone {
    subsequence(roles, 1..=roles.len()).prop_map(|rs| RoleExpr::new(rs).unwrap())
}

/// Concepts over the given names and roles, up to `depth` levels of nesting.
pub fn concept(
    names: &'static [&'static str],
    roles: &'static [&'static str],
    depth: u32,
) -> impl Strategy<Value = Concept> + Clone {
    let leaf = prop_oneof![
        1 => Just(Concept::Top),
        1 => Just(Concept::Bottom),
        6 => select(names).prop_map(Concept::atomic),
        3 => (select(&Comparator::ALL[..]), 0u32..=3, role(roles)).prop_map(|(c, n, r)| Concept::number(c, n, r)),
    ];
    leaf.prop_recursive(depth, 48, 3, move |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Concept::And),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Concept::Or),
            inner.clone().prop_map(Concept::not),
            (role(roles), inner.clone()).prop_map(|(r, c)| Concept::all(r, c)),
            (role(roles), inner).prop_map(|(r, c)| Concept::some(r, c)),
        ]
    })
}

pub fn signature(concepts: &[&str], roles: &[&str]) -> Signature {
    Signature::new().with_primitives(concepts.iter().copied()).unwrap().with_roles(roles.iter().copied()).unwrap()
}

/// Every interpretation over the signature up to the given domain size.
pub fn all_models(sig: &Signature, max: usize) -> Vec<Interpretation> {
    enumerate_models(sig, &ModelSearchConfig::with_max_domain(max)).unwrap().collect()
}

pub fn ext(c: &Concept, i: &Interpretation) -> BTreeSet<usize> {
    eval_concept(c, i).unwrap()
}
