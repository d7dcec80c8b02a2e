//! Expression trees, knowledge-base containers and canonical rewrites.

mod concept;
mod kb;
mod rewrite;

pub use concept::{Comparator, Concept, RoleExpr};
pub use kb::{ABox, Assertion, KnowledgeBase, NameKind, Signature, TBox};
pub use rewrite::{canonicalize, is_nnf, nnf, rewrite_number_restrictions, simplify};
