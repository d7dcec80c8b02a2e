mod common;

use std::sync::OnceLock;

use adelog_core::model::{canonicalize, is_nnf, nnf, rewrite_number_restrictions, simplify, Concept, TBox};
use adelog_core::semantics::Interpretation;
use adelog_core::syntax::{parse_concept, parse_kb};
use common::{all_models, concept, ext, signature};
use proptest::prelude::*;

const NAMES: &[&str] = &["A", "B"];
const ROLES: &[&str] = &["r", "s"];

fn models() -> &'static [Interpretation] {
    static M: OnceLock<Vec<Interpretation>> = OnceLock::new();
    M.get_or_init(|| all_models(&signature(NAMES, ROLES), 2))
}

fn tbox() -> &'static TBox {
    static T: OnceLock<TBox> = OnceLock::new();
    T.get_or_init(|| {
        parse_kb(
            "primitive A, B; role r, s;
             D0 := A and (some r.B);
             D1 := (not D0) or (<= 1 (r and s));
             D2 := all s.(D0 and D1);",
        )
        .unwrap()
        .tbox
    })
}

fn same_extensions(a: &Concept, b: &Concept) -> bool {
    models().iter().all(|i| ext(a, i) == ext(b, i))
}

fn only_le_ge(c: &Concept) -> bool {
    let mut ok = true;
    c.visit(&mut |x| {
        if let Concept::Number(cmp, _, _) = x {
            ok &= matches!(cmp.symbol(), "<=" | ">=");
        }
    });
    ok
}

type Rewrite = fn(&Concept) -> Concept;

const REWRITES: [(&str, Rewrite); 3] = [
    ("canonicalize", canonicalize),
    ("rewrite_number_restrictions", rewrite_number_restrictions),
    ("nnf", nnf),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rewrites_preserve_extensions(c in concept(NAMES, ROLES, 4)) {
        for (name, f) in REWRITES {
            prop_assert!(same_extensions(&c, &f(&c)), "{name} changed the extension of {c}");
        }
        prop_assert!(same_extensions(&c, &simplify(&c)));
    }

    #[test]
    fn unfolding_preserves_extensions(c in concept(&["A", "B", "D0", "D1", "D2"], ROLES, 3)) {
        let unfolded = tbox().unfold(&c).unwrap();
        let mut defined = false;
        unfolded.visit(&mut |x| defined |= matches!(x, Concept::Atomic(n) if n.starts_with('D')));
        prop_assert!(!defined);
        prop_assert_eq!(tbox().unfold(&unfolded).unwrap(), unfolded.clone());
        for i in models() {
            let mut expected = i.clone();
            for name in ["D0", "D1", "D2"] {
                let body = tbox().unfold(&Concept::atomic(name)).unwrap();
                expected.declare_concept(name);
                for e in ext(&body, i) {
                    expected.insert_concept(name, e);
                }
            }
            prop_assert_eq!(ext(&unfolded, i), ext(&c, &expected));
        }
    }

    #[test]
    fn rewrites_are_idempotent(c in concept(NAMES, ROLES, 5)) {
        for (name, f) in REWRITES {
            let once = f(&c);
            prop_assert_eq!(f(&once), once, "{} is not idempotent", name);
        }
        let s = simplify(&c);
        prop_assert_eq!(simplify(&s), s.clone());
        prop_assert!(is_nnf(&s));
        prop_assert!(only_le_ge(&s));
        prop_assert!(only_le_ge(&rewrite_number_restrictions(&c)));
        prop_assert!(is_nnf(&nnf(&c)));
    }

    #[test]
    fn rewrites_commute_up_to_canonical_form(c in concept(NAMES, ROLES, 5)) {
        for (fname, f) in REWRITES {
            for (gname, g) in REWRITES {
                prop_assert_eq!(
                    canonicalize(&f(&g(&c))),
                    canonicalize(&g(&f(&c))),
                    "{} and {} disagree on {}", fname, gname, c
                );
            }
        }
    }

    #[test]
    fn unfolding_commutes_up_to_simplification(c in concept(&["A", "B", "D0", "D1", "D2"], ROLES, 4)) {
        let unfold = |x: &Concept| tbox().unfold(x).unwrap();
        for (name, f) in REWRITES {
            prop_assert_eq!(simplify(&unfold(&f(&c))), simplify(&f(&unfold(&c))), "unfold and {} disagree", name);
        }
    }
}

#[test]
fn canonical_forms_are_order_insensitive() {
    let a = parse_concept("B and (all r.(A or B)) and A").unwrap();
    let b = parse_concept("A and ((all r.(B or A)) and B) and A").unwrap();
    assert_eq!(canonicalize(&a), canonicalize(&b));
    assert!(same_extensions(&a, &b));
}

#[test]
fn number_rewrite_examples() {
    let c = |s: &str| parse_concept(s).unwrap();
    assert_eq!(rewrite_number_restrictions(&c("(< 0 paper)")), Concept::Bottom);
    assert_eq!(rewrite_number_restrictions(&c("(> 0 paper)")), c("(>= 1 paper)"));
    assert_eq!(rewrite_number_restrictions(&c("(= 6 paper)")), c("(<= 6 paper) and (>= 6 paper)"));
    assert_eq!(nnf(&c("not (all paper.technical)")), c("some paper.(not technical)"));
}
