mod common;

use std::collections::{BTreeMap, BTreeSet};

use adelog_core::gen::{random_abox, random_tbox, ConceptGen, Fragment};
use adelog_core::model::{Assertion, Concept, KnowledgeBase, TBox};
use adelog_core::reasoner::{
    classify, instance_check, structural_subsumes, subsumes, tableau_satisfiable, tableau_subsumes, InstanceVerdict,
    Satisfiability, TableauConfig, Verdict, BOTTOM_NAME, TOP_NAME,
};
use adelog_core::semantics::{oracle_find_model, oracle_subsumes, satisfies_abox, ModelSearchConfig, OracleVerdict};
use adelog_core::Signature;
use common::{concept, ext};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NAMES: &[&str] = &["A", "B", "C", "D"];
const ROLES: &[&str] = &["r", "s"];

fn tab(c: &Concept, d: &Concept) -> Verdict {
    tableau_subsumes(c, d, &TBox::new(), &TableauConfig::default()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn engines_agree(c in concept(NAMES, ROLES, 4), d in concept(NAMES, ROLES, 4)) {
        let tbox = TBox::new();
        let structural = structural_subsumes(&c, &d, &tbox).unwrap().value;
        let tableau = tableau_subsumes(&c, &d, &tbox, &TableauConfig::default()).unwrap();
        if structural != Verdict::Unknown {
            prop_assert_eq!(structural, tableau.value);
        }
        if let Some(w) = &tableau.witness {
            prop_assert!(ext(&c, w).contains(&0));
            prop_assert!(!ext(&d, w).contains(&0));
        }
        let oracle = oracle_subsumes(&c, &d, &tbox, &ModelSearchConfig::with_max_domain(2)).unwrap();
        if matches!(oracle, OracleVerdict::NotSubsumed { .. }) {
            prop_assert_eq!(tableau.value, Verdict::NotSubsumed);
        }
        let combined = subsumes(&c, &d, &tbox).unwrap();
        prop_assert_eq!(combined.value, tableau.value);
    }

    #[test]
    fn tableau_models_and_refutations_check_out(c in concept(NAMES, ROLES, 4)) {
        match tableau_satisfiable(&c, &TBox::new()).unwrap() {
            Satisfiability::Satisfiable(model) => prop_assert!(ext(&c, &model).contains(&0)),
            Satisfiability::Unsatisfiable => {
                let found = oracle_find_model(&c, &TBox::new(), &ModelSearchConfig::with_max_domain(3)).unwrap();
                prop_assert!(found.is_none());
            }
        }
    }

    #[test]
    fn subsumption_is_a_preorder(
        a in concept(NAMES, ROLES, 3),
        b in concept(NAMES, ROLES, 3),
        c in concept(NAMES, ROLES, 3),
    ) {
        prop_assert_eq!(tab(&a, &a), Verdict::Subsumed);
        if tab(&a, &b) == Verdict::Subsumed && tab(&b, &c) == Verdict::Subsumed {
            prop_assert_eq!(tab(&a, &c), Verdict::Subsumed);
        }
    }
}

#[test]
fn structural_is_complete_on_its_fragment() {
    let g = ConceptGen::new(NAMES, ROLES, 4, 3).fragment(Fragment::Structural);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut counts = BTreeMap::new();
    for _ in 0..600 {
        let (c, d) = (g.concept(&mut rng), g.concept(&mut rng));
        let s = structural_subsumes(&c, &d, &TBox::new()).unwrap().value;
        assert_ne!(s, Verdict::Unknown, "{c} vs {d}");
        assert_eq!(s, tab(&c, &d), "{c} vs {d}");
        *counts.entry(format!("{s:?}")).or_insert(0) += 1;
    }
    assert!(counts.len() == 2, "both outcomes should occur: {counts:?}");
}

/// Taxonomy edges recomputed from the full pairwise tableau matrix.
fn reduced_matrix(kb: &KnowledgeBase) -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
    let mut names: Vec<String> = kb.concept_names().into_iter().collect();
    names.push(TOP_NAME.into());
    names.push(BOTTOM_NAME.into());
    let as_concept = |n: &str| match n {
        TOP_NAME => Concept::Top,
        BOTTOM_NAME => Concept::Bottom,
        _ => Concept::atomic(n),
    };
    let cfg = TableauConfig::default();
    let below: BTreeMap<(usize, usize), bool> = (0..names.len())
        .flat_map(|i| (0..names.len()).map(move |j| (i, j)))
        .map(|(i, j)| {
            let v = tableau_subsumes(&as_concept(&names[i]), &as_concept(&names[j]), &kb.tbox, &cfg).unwrap();
            ((i, j), v.is_subsumed())
        })
        .collect();
    let class = |i: usize| -> BTreeSet<String> {
        (0..names.len()).filter(|&j| below[&(i, j)] && below[&(j, i)]).map(|j| names[j].clone()).collect()
    };
    let mut edges = BTreeSet::new();
    for i in 0..names.len() {
        for j in 0..names.len() {
            let strict = |a: usize, b: usize| below[&(a, b)] && !below[&(b, a)];
            if strict(i, j) && !(0..names.len()).any(|k| strict(i, k) && strict(k, j)) {
                edges.insert((class(i), class(j)));
            }
        }
    }
    edges
}

#[test]
fn taxonomies_are_transitive_reductions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..30 {
        let defined = 2 + round % 15;
        let tbox = random_tbox(&mut rng, &["A", "B", "C", "D"], &["r", "s"], defined, 2);
        let sig = Signature::new().with_primitives(["A", "B", "C", "D"]).unwrap().with_roles(["r", "s"]).unwrap();
        let kb = KnowledgeBase::new(sig, tbox, Default::default()).unwrap();
        let t = classify(&kb).unwrap();
        let got: BTreeSet<(BTreeSet<String>, BTreeSet<String>)> = t
            .edges()
            .into_iter()
            .map(|(c, p)| (t.class_of(&c).unwrap().clone(), t.class_of(&p).unwrap().clone()))
            .collect();
        assert_eq!(got, reduced_matrix(&kb), "round {round}");
    }
}

#[test]
fn entailment_is_monotone_and_witnesses_are_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sig = Signature::new()
        .with_primitives(["A", "B"])
        .unwrap()
        .with_roles(["r"])
        .unwrap()
        .with_individuals(["a", "b", "c"])
        .unwrap();
    let g = ConceptGen::new(&["A", "B"], &["r"], 2, 2);
    for _ in 0..150 {
        let small = random_abox(&mut rng, &sig, 3);
        let mut large = small.clone();
        for a in random_abox(&mut rng, &sig, 2).assertions() {
            large.insert(a);
        }
        let c = g.concept(&mut rng);
        let kb_small = KnowledgeBase::new(sig.clone(), TBox::new(), small).unwrap();
        let kb_large = KnowledgeBase::new(sig.clone(), TBox::new(), large).unwrap();
        for ind in ["a", "b", "c"] {
            let before = instance_check(&kb_small, ind, &c).unwrap();
            let after = instance_check(&kb_large, ind, &c).unwrap();
            if before.is_entailed() {
                assert!(after.is_entailed(), "{c}({ind}) lost entailment");
            }
            for (kb, v) in [(&kb_small, before), (&kb_large, after)] {
                if let InstanceVerdict::NotEntailed(m) = v {
                    assert!(satisfies_abox(kb, &m.interpretation, &m.mapping).unwrap());
                    assert!(!ext(&c, &m.interpretation).contains(&m.mapping[ind]));
                }
            }
        }
    }
}

#[test]
fn asserted_membership_is_entailed() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sig = Signature::new()
        .with_primitives(["A", "B"])
        .unwrap()
        .with_roles(["r"])
        .unwrap()
        .with_individuals(["a", "b"])
        .unwrap();
    for _ in 0..50 {
        let abox = random_abox(&mut rng, &sig, 4);
        let kb = KnowledgeBase::new(sig.clone(), TBox::new(), abox.clone()).unwrap();
        for a in abox.assertions() {
            if let Assertion::Concept(c, i) = a {
                assert!(instance_check(&kb, &i, &c).unwrap().is_entailed());
            }
        }
    }
}
