//! Reasoning services: structural and tableau subsumption, satisfiability,
//! classification and instance checking.

mod classify;
mod instance;
mod structural;
mod tableau;

use std::fmt;

pub use classify::{classify, classify_with, Taxonomy, BOTTOM_NAME, TOP_NAME};
pub use instance::{instance_check, instance_check_with, retrieve_instances, retrieve_instances_with, InstanceVerdict};
pub use structural::{compare, normalize, structural_compare, NormalForm, Tri};
pub use tableau::{
    abox_model, tableau_satisfiable, tableau_satisfiable_with, AboxModel, Satisfiability, TableauConfig,
};

use crate::error::Result;
use crate::model::{Concept, TBox};
use crate::semantics::Interpretation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Subsumed,
    NotSubsumed,
    /// Only the structural engine answers this.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Structural,
    Tableau,
    Oracle,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Structural => "structural",
            Engine::Tableau => "tableau",
            Engine::Oracle => "oracle",
        })
    }
}

/// Which engines `subsumes_using` may consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineChoice {
    Structural,
    Tableau,
    /// Structural first, tableau when the structural answer is unknown.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumptionVerdict {
    pub value: Verdict,
    pub engine: Engine,
    /// An interpretation whose element 0 is in the subsumee but not in the
    /// subsumer; only present with `NotSubsumed`.
    pub witness: Option<Interpretation>,
}

impl SubsumptionVerdict {
    pub fn is_subsumed(&self) -> bool {
        self.value == Verdict::Subsumed
    }
}

/// Normalize-compare subsumption. Never guesses: a failed comparison outside
/// the complete fragment is `Unknown`.
pub fn structural_subsumes(c: &Concept, d: &Concept, tbox: &TBox) -> Result<SubsumptionVerdict> {
    let value = match structural_compare(c, d, tbox)? {
        Tri::Yes => Verdict::Subsumed,
        Tri::No => Verdict::NotSubsumed,
        Tri::Unknown => Verdict::Unknown,
    };
    Ok(SubsumptionVerdict { value, engine: Engine::Structural, witness: None })
}

/// Decides `c ⊑ d` through the unsatisfiability of `c ⊓ ¬d`.
pub fn tableau_subsumes(c: &Concept, d: &Concept, tbox: &TBox, cfg: &TableauConfig) -> Result<SubsumptionVerdict> {
    let test = Concept::And(vec![c.clone(), Concept::not(d.clone())]);
    Ok(match tableau_satisfiable_with(&test, tbox, cfg)? {
        Satisfiability::Unsatisfiable => SubsumptionVerdict {
            value: Verdict::Subsumed,
            engine: Engine::Tableau,
            witness: None,
        },
        Satisfiability::Satisfiable(model) => SubsumptionVerdict {
            value: Verdict::NotSubsumed,
            engine: Engine::Tableau,
            witness: Some(model),
        },
    })
}

/// Structural first; the tableau decides when the structural answer is
/// unknown.
pub fn subsumes(c: &Concept, d: &Concept, tbox: &TBox) -> Result<SubsumptionVerdict> {
    subsumes_using(c, d, tbox, EngineChoice::Auto, &TableauConfig::default())
}

/// Like [`subsumes`] with an explicit engine choice. A structural
/// `NotSubsumed` is returned with a counter-model built by the tableau.
pub fn subsumes_using(
    c: &Concept,
    d: &Concept,
    tbox: &TBox,
    choice: EngineChoice,
    cfg: &TableauConfig,
) -> Result<SubsumptionVerdict> {
    if choice == EngineChoice::Tableau {
        return tableau_subsumes(c, d, tbox, cfg);
    }
    let mut verdict = structural_subsumes(c, d, tbox)?;
    match verdict.value {
        Verdict::Subsumed => Ok(verdict),
        Verdict::NotSubsumed => {
            let from_tableau = tableau_subsumes(c, d, tbox, cfg)?;
            debug_assert_eq!(from_tableau.value, Verdict::NotSubsumed, "structural refutation not confirmed");
            verdict.witness = from_tableau.witness;
            Ok(verdict)
        }
        Verdict::Unknown if choice == EngineChoice::Auto => tableau_subsumes(c, d, tbox, cfg),
        Verdict::Unknown => Ok(verdict),
    }
}
