//! Text grammar for concept expressions and KB files.
//!
//! ```text
//! expr  := conj ('or' conj)*
//! conj  := unary ('and' unary)*
//! unary := 'not' unary | ('all' | 'some') role '.' unary
//!        | 'TOP' | 'BOTTOM' | NAME | '(' cmp INT role ')' | '(' expr ')'
//! role  := NAME | '(' NAME ('and' NAME)* ')'
//! cmp   := '<' | '<=' | '=' | '>=' | '>'
//! ```
//!
//! File statements end with `;` and `#` starts a comment:
//! `primitive N;`, `role N;`, `individual N;`, `N := expr;`, `C(a);`,
//! `P(a, b);`, `view N := expr [virtual|actual];`,
//! `event N { add A; remove A; switch W; }`, `world W { A; ... }`,
//! `current W;`, `last E;`, `cache V W { a, b };`,
//! `evolver { initial E, ...; E -> F, ...; }`.

mod lexer;
mod parser;
mod printer;

pub use parser::{
    is_keyword, parse_assertion, parse_concept, parse_concept_prefix, parse_document, parse_individual_prefix,
    parse_kb, CacheDecl, Document, ViewDecl, KEYWORDS,
};
pub(crate) use printer::write_declarations;
pub use printer::{print_assertion, print_concept, print_individual, print_kb, print_role};
