//! Set semantics over finite interpretations, plus the brute-force oracles
//! used to check the reasoners.

mod enumerate;
mod interp;
mod oracle;

pub use enumerate::{enumerate_models, model_count, ModelIter, ModelSearchConfig, MAX_DOMAIN_SIZE};
pub use interp::{eval_concept, eval_role, satisfies_abox, Interpretation};
pub use oracle::{oracle_find_model, oracle_subsumes, OracleVerdict};
