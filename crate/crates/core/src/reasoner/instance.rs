use std::collections::BTreeSet;

use super::tableau::{abox_model, AboxModel, TableauConfig};
use crate::error::Result;
use crate::model::{Concept, KnowledgeBase};

/// Open-world instance check result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceVerdict {
    Entailed,
    /// A model of the ABox in which the individual is outside the concept.
    NotEntailed(AboxModel),
}

impl InstanceVerdict {
    pub fn is_entailed(&self) -> bool {
        matches!(self, InstanceVerdict::Entailed)
    }
}

/// Whether every model of the ABox (under the unique-name assumption)
/// places `individual` in `c`.
pub fn instance_check(kb: &KnowledgeBase, individual: &str, c: &Concept) -> Result<InstanceVerdict> {
    instance_check_with(kb, individual, c, &TableauConfig::default())
}

pub fn instance_check_with(
    kb: &KnowledgeBase,
    individual: &str,
    c: &Concept,
    cfg: &TableauConfig,
) -> Result<InstanceVerdict> {
    kb.check_individual(individual)?;
    kb.check_concept(c)?;
    let negated = Concept::not(c.clone());
    Ok(match abox_model(kb, &[(individual.to_string(), negated)], cfg)? {
        None => InstanceVerdict::Entailed,
        Some(model) => InstanceVerdict::NotEntailed(model),
    })
}

/// All declared individuals entailed to be instances of `c`.
pub fn retrieve_instances(kb: &KnowledgeBase, c: &Concept) -> Result<BTreeSet<String>> {
    retrieve_instances_with(kb, c, &TableauConfig::default())
}

pub fn retrieve_instances_with(kb: &KnowledgeBase, c: &Concept, cfg: &TableauConfig) -> Result<BTreeSet<String>> {
    kb.check_concept(c)?;
    let mut out = BTreeSet::new();
    for ind in kb.signature.individuals() {
        if instance_check_with(kb, ind, c, cfg)?.is_entailed() {
            out.insert(ind.clone());
        }
    }
    Ok(out)
}
