use crate::error::{Error, Result};
use crate::model::Signature;

use super::interp::Interpretation;

/// Bounds for exhaustive model search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelSearchConfig {
    /// Largest domain size tried; between 1 and [`MAX_DOMAIN_SIZE`].
    pub max_domain_size: usize,
    /// Cap on the number of interpretations produced or examined.
    pub max_models: Option<u64>,
}

pub const MAX_DOMAIN_SIZE: usize = 5;

impl Default for ModelSearchConfig {
    fn default() -> Self {
        ModelSearchConfig { max_domain_size: 3, max_models: None }
    }
}

impl ModelSearchConfig {
    pub fn with_max_domain(max_domain_size: usize) -> Self {
        ModelSearchConfig { max_domain_size, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if (1..=MAX_DOMAIN_SIZE).contains(&self.max_domain_size) {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "max domain size must be between 1 and {MAX_DOMAIN_SIZE}, got {}",
                self.max_domain_size
            )))
        }
    }
}

/// `Σ_k 2^(c·k) · 2^(r·k²)` over `k = 1..=max`, or `None` on overflow.
pub fn model_count(sig: &Signature, max_domain_size: usize) -> Option<u128> {
    let c = sig.primitive_concepts().len();
    let r = sig.roles().len();
    (1..=max_domain_size).try_fold(0u128, |acc, k| {
        let bits = c.checked_mul(k)?.checked_add(r.checked_mul(k * k)?)?;
        let n = 1u128.checked_shl(u32::try_from(bits).ok()?)?;
        if bits >= 128 {
            return None;
        }
        acc.checked_add(n)
    })
}

/// Every interpretation of `sig` over the domains `{0..k-1}` for
/// `k = 1..=max_domain_size`, smallest domains first. Isomorphic copies are
/// not removed.
///
/// Fails up front with `BudgetExceeded` when the total would exceed
/// `max_models`.
pub fn enumerate_models(sig: &Signature, cfg: &ModelSearchConfig) -> Result<ModelIter> {
    cfg.validate()?;
    if let Some(cap) = cfg.max_models {
        match model_count(sig, cfg.max_domain_size) {
            Some(n) if n <= u128::from(cap) => {}
            _ => return Err(Error::BudgetExceeded(cap)),
        }
    }
    Ok(ModelIter {
        concepts: sig.primitive_concepts().iter().cloned().collect(),
        roles: sig.roles().iter().cloned().collect(),
        max: cfg.max_domain_size,
        size: 1,
        bits: None,
    })
}

pub struct ModelIter {
    concepts: Vec<String>,
    roles: Vec<String>,
    max: usize,
    size: usize,
    /// Counter over all extension bits of the current domain size.
    bits: Option<Vec<bool>>,
}

impl ModelIter {
    fn build(&self) -> Interpretation {
        let k = self.size;
        let bits = self.bits.as_ref().unwrap();
        let mut interp = Interpretation::new(k).unwrap();
        let mut at = 0;
        for c in &self.concepts {
            interp.declare_concept(c.clone());
            for e in 0..k {
                if bits[at] {
                    interp.insert_concept(c, e);
                }
                at += 1;
            }
        }
        for r in &self.roles {
            interp.declare_role(r.clone());
            for a in 0..k {
                for b in 0..k {
                    if bits[at] {
                        interp.insert_pair(r, a, b);
                    }
                    at += 1;
                }
            }
        }
        interp
    }
}

impl Iterator for ModelIter {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        loop {
            if self.size > self.max {
                return None;
            }
            match &mut self.bits {
                None => {
                    let k = self.size;
                    self.bits = Some(vec![false; self.concepts.len() * k + self.roles.len() * k * k]);
                    return Some(self.build());
                }
                Some(bits) => {
                    // Binary increment; overflow moves to the next domain size.
                    let mut carry = true;
                    for b in bits.iter_mut() {
                        if *b {
                            *b = false;
                        } else {
                            *b = true;
                            carry = false;
                            break;
                        }
                    }
                    if carry {
                        self.bits = None;
                        self.size += 1;
                        continue;
                    }
                    return Some(self.build());
                }
            }
        }
    }
}
