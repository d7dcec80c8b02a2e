use std::fmt::Write;

use super::parser::is_keyword;
use crate::model::{Assertion, Concept, KnowledgeBase, RoleExpr};

/// Fully parenthesized text for a concept; re-parses to the same tree.
pub fn print_concept(c: &Concept) -> String {
    let mut out = String::new();
    write_concept(&mut out, c);
    out
}

fn write_concept(out: &mut String, c: &Concept) {
    match c {
        Concept::Top => out.push_str("TOP"),
        Concept::Bottom => out.push_str("BOTTOM"),
        Concept::Atomic(n) => out.push_str(n),
        Concept::Not(inner) => {
            out.push_str("(not ");
            write_concept(out, inner);
            out.push(')');
        }
        Concept::And(items) | Concept::Or(items) if items.len() < 2 => match items.first() {
            Some(only) => write_concept(out, only),
            None if matches!(c, Concept::And(_)) => out.push_str("TOP"),
            None => out.push_str("BOTTOM"),
        },
        Concept::And(items) | Concept::Or(items) => {
            let sep = if matches!(c, Concept::And(_)) { " and " } else { " or " };
            out.push('(');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write_concept(out, item);
            }
            out.push(')');
        }
        Concept::All(r, inner) | Concept::Some(r, inner) => {
            out.push_str(if matches!(c, Concept::All(..)) { "(all " } else { "(some " });
            out.push_str(&print_role(r));
            out.push('.');
            write_concept(out, inner);
            out.push(')');
        }
        Concept::Number(cmp, n, r) => {
            let _ = write!(out, "({} {} {})", cmp.symbol(), n, print_role(r));
        }
    }
}

pub fn print_role(r: &RoleExpr) -> String {
    let names: Vec<&str> = r.names().iter().map(String::as_str).collect();
    match names.as_slice() {
        [one] => (*one).to_string(),
        many => format!("({})", many.join(" and ")),
    }
}

/// Individual names that are not plain identifiers are double-quoted.
pub fn print_individual(name: &str) -> String {
    let bare = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !is_keyword(name);
    if bare {
        name.to_string()
    } else {
        let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
        format!("\"{escaped}\"")
    }
}

pub fn print_assertion(a: &Assertion) -> String {
    match a {
        Assertion::Concept(c, i) => format!("{}({})", print_concept(c), print_individual(i)),
        Assertion::Role(r, s, o) => format!("{}({}, {})", r, print_individual(s), print_individual(o)),
    }
}

/// Canonical file text for a knowledge base: declarations, definitions, then
/// assertions, each group sorted.
pub fn print_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    write_declarations(&mut out, kb);
    for a in kb.abox.assertions() {
        let _ = writeln!(out, "{};", print_assertion(&a));
    }
    out
}

pub(crate) fn write_declarations(out: &mut String, kb: &KnowledgeBase) {
    for n in kb.signature.primitive_concepts() {
        let _ = writeln!(out, "primitive {n};");
    }
    for n in kb.signature.roles() {
        let _ = writeln!(out, "role {n};");
    }
    for n in kb.signature.individuals() {
        let _ = writeln!(out, "individual {};", print_individual(n));
    }
    for (name, body) in kb.tbox.definitions() {
        let _ = writeln!(out, "{name} := {};", print_concept(body));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Comparator;
    use crate::syntax::{parse_concept, parse_kb};

    #[test]
    fn prints_constants_and_operators() {
        assert_eq!(print_concept(&Concept::Bottom), "BOTTOM");
        assert_eq!(
            print_concept(&Concept::And(vec![Concept::atomic("A"), Concept::atomic("B")])),
            "(A and B)"
        );
        assert_eq!(
            print_concept(&Concept::number(Comparator::Le, 6, RoleExpr::primitive("paper"))),
            "(<= 6 paper)"
        );
        assert_eq!(
            print_concept(&Concept::all(RoleExpr::new(["p2", "p1"]).unwrap(), Concept::atomic("A"))),
            "(all (p1 and p2).A)"
        );
    }

    #[test]
    fn role_conjunction_round_trips() {
        let c = parse_concept("all (p1 and p2).A").unwrap();
        assert_eq!(parse_concept(&print_concept(&c)).unwrap(), c);
    }

    #[test]
    fn quotes_unusual_individuals() {
        assert_eq!(print_individual("Rick"), "Rick");
        assert_eq!(print_individual("Logics in Humanities"), "\"Logics in Humanities\"");
        assert_eq!(print_individual("add"), "\"add\"");
        assert_eq!(print_individual("a\"b"), "\"a\\\"b\"");
    }

    #[test]
    fn kb_text_round_trips() {
        let text = r#"role paper; primitive technical; individual Rick; individual "Logics in Humanities";
            good := all paper.technical;
            paper(Rick, "Logics in Humanities"); (all paper.technical)(Rick); technical("Logics in Humanities");"#;
        let kb = parse_kb(text).unwrap();
        let printed = print_kb(&kb);
        assert_eq!(parse_kb(&printed).unwrap(), kb);
        assert_eq!(print_kb(&parse_kb(&printed).unwrap()), printed);
    }
}
