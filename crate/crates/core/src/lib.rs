//! Description-logic knowledge bases: concept language, finite semantics,
//! structural and tableau reasoning, and views over event-driven worlds.
//!
//! ```
//! use adelog_core::reasoner::{subsumes, Engine, Verdict};
//! use adelog_core::syntax::{parse_concept, parse_kb};
//!
//! let kb = parse_kb("primitive person; role paper; author := person and (> 0 paper);").unwrap();
//! let c = parse_concept("person and (some paper.TOP)").unwrap();
//! let v = subsumes(&c, &parse_concept("author").unwrap(), &kb.tbox).unwrap();
//! assert_eq!((v.value, v.engine), (Verdict::Subsumed, Engine::Structural));
//! ```

pub mod error;
pub mod gen;
pub mod model;
pub mod reasoner;
pub mod semantics;
pub mod syntax;
pub mod views;

pub use error::{Error, ParseError, Result, SourceSpan};
pub use model::{ABox, Assertion, Comparator, Concept, KnowledgeBase, RoleExpr, Signature, TBox};
