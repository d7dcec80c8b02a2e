//! Extension-preserving rewrites: canonical ordering, number-restriction
//! normalization, negation normal form.
//!
//! Cardinalities are bounded by `u32::MAX`: no individual is assumed to have
//! more fillers than that, so `(> u32::MAX R)` denotes the empty set.

use super::concept::{Comparator, Concept};

/// Flattens and sorts conjunctions and disjunctions, removes duplicates and
/// applies the `Top`/`Bottom` identities. Idempotent.
pub fn canonicalize(c: &Concept) -> Concept {
    match c {
        Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Number(..) => c.clone(),
        Concept::Not(inner) => match canonicalize(inner) {
            Concept::Top => Concept::Bottom,
            Concept::Bottom => Concept::Top,
            other => Concept::not(other),
        },
        Concept::All(r, inner) => Concept::all(r.clone(), canonicalize(inner)),
        Concept::Some(r, inner) => Concept::some(r.clone(), canonicalize(inner)),
        Concept::And(items) => {
            let mut flat = Vec::with_capacity(items.len());
            for item in items {
                match canonicalize(item) {
                    Concept::Top => {}
                    Concept::Bottom => return Concept::Bottom,
                    Concept::And(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            flat.sort();
            flat.dedup();
            Concept::and(flat)
        }
        Concept::Or(items) => {
            let mut flat = Vec::with_capacity(items.len());
            for item in items {
                match canonicalize(item) {
                    Concept::Bottom => {}
                    Concept::Top => return Concept::Top,
                    Concept::Or(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            flat.sort();
            flat.dedup();
            Concept::or(flat)
        }
    }
}

/// Rewrites every number restriction into `<=`/`>=` form.
pub fn rewrite_number_restrictions(c: &Concept) -> Concept {
    match c {
        Concept::Top | Concept::Bottom | Concept::Atomic(_) => c.clone(),
        Concept::Not(inner) => Concept::not(rewrite_number_restrictions(inner)),
        Concept::And(items) => Concept::And(items.iter().map(rewrite_number_restrictions).collect()),
        Concept::Or(items) => Concept::Or(items.iter().map(rewrite_number_restrictions).collect()),
        Concept::All(r, inner) => Concept::all(r.clone(), rewrite_number_restrictions(inner)),
        Concept::Some(r, inner) => Concept::some(r.clone(), rewrite_number_restrictions(inner)),
        Concept::Number(cmp, n, r) => {
            let (n, r) = (*n, r.clone());
            match cmp {
                Comparator::Le => Concept::at_most(n, r),
                Comparator::Ge if n == 0 => Concept::Top,
                Comparator::Ge => Concept::at_least(n, r),
                Comparator::Lt if n == 0 => Concept::Bottom,
                Comparator::Lt => Concept::at_most(n - 1, r),
                Comparator::Gt => match n.checked_add(1) {
                    Some(m) => Concept::at_least(m, r),
                    None => Concept::Bottom,
                },
                Comparator::Eq if n == 0 => Concept::at_most(0, r),
                Comparator::Eq => Concept::And(vec![Concept::at_most(n, r.clone()), Concept::at_least(n, r)]),
            }
        }
    }
}

/// Pushes negation down to concept names.
pub fn nnf(c: &Concept) -> Concept {
    match c {
        Concept::Not(inner) => negate(inner),
        Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Number(..) => c.clone(),
        Concept::And(items) => Concept::And(items.iter().map(nnf).collect()),
        Concept::Or(items) => Concept::Or(items.iter().map(nnf).collect()),
        Concept::All(r, inner) => Concept::all(r.clone(), nnf(inner)),
        Concept::Some(r, inner) => Concept::some(r.clone(), nnf(inner)),
    }
}

/// NNF of `¬c`.
fn negate(c: &Concept) -> Concept {
    match c {
        Concept::Top => Concept::Bottom,
        Concept::Bottom => Concept::Top,
        Concept::Atomic(_) => Concept::not(c.clone()),
        Concept::Not(inner) => nnf(inner),
        Concept::And(items) => Concept::Or(items.iter().map(negate).collect()),
        Concept::Or(items) => Concept::And(items.iter().map(negate).collect()),
        Concept::All(r, inner) => Concept::some(r.clone(), negate(inner)),
        Concept::Some(r, inner) => Concept::all(r.clone(), negate(inner)),
        Concept::Number(cmp, n, r) => {
            let (n, r) = (*n, r.clone());
            match cmp {
                Comparator::Le => match n.checked_add(1) {
                    Some(m) => Concept::at_least(m, r),
                    None => Concept::Bottom,
                },
                Comparator::Ge if n == 0 => Concept::Bottom,
                Comparator::Ge => Concept::at_most(n - 1, r),
                Comparator::Lt => Concept::at_least(n, r),
                Comparator::Gt => Concept::at_most(n, r),
                Comparator::Eq => Concept::Or(vec![
                    Concept::number(Comparator::Lt, n, r.clone()),
                    Concept::number(Comparator::Gt, n, r),
                ]),
            }
        }
    }
}

/// Whether `c` is in negation normal form.
pub fn is_nnf(c: &Concept) -> bool {
    let mut ok = true;
    c.visit(&mut |x| {
        if let Concept::Not(inner) = x {
            if !matches!(**inner, Concept::Atomic(_)) {
                ok = false;
            }
        }
    });
    ok
}

/// The full pipeline used by the reasoners: number restrictions, NNF, then
/// canonical form. Expects an unfolded concept.
pub fn simplify(c: &Concept) -> Concept {
    canonicalize(&nnf(&rewrite_number_restrictions(c)))
}
