use ideal_combinatorics::{is_self_dual, validate_c, FlagShape, IdealSequence};
use nilpotent_core::{build_realization, JordanDatum, NilpotentRealization};
use serde::{Deserialize, Serialize};

use crate::FlagError;

/// Which connected component of the Lagrangian flags to keep in even orthogonal type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentPolicy {
    #[default]
    Both,
    /// Last subspace W with dim(W ∩ W_ref) ≡ n (mod 2).
    Plus,
    Minus,
}

/// A nilpotent orbit, a flag shape and an ideal sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySpec {
    pub jordan: JordanDatum,
    pub shape: FlagShape,
    pub ideal: IdealSequence,
    #[serde(default)]
    pub component_policy: ComponentPolicy,
}

impl VarietySpec {
    pub fn new(jordan: JordanDatum, shape: FlagShape, ideal: IdealSequence) -> Self {
        VarietySpec { jordan, shape, ideal, component_policy: ComponentPolicy::Both }
    }

    pub fn with_policy(mut self, policy: ComponentPolicy) -> Self {
        self.component_policy = policy;
        self
    }

    pub fn variety(&self) -> Result<FlagVariety, FlagError> {
        if self.jordan.form != self.shape.form || self.jordan.m() != self.shape.m {
            return Err(FlagError::Inconsistent(format!(
                "Jordan type {:?} of size {} does not match a {:?} flag in dimension {}",
                self.jordan.parts,
                self.jordan.m(),
                self.shape.form,
                self.shape.m
            )));
        }
        let r = build_realization(&self.jordan)?;
        FlagVariety::new(r, self.shape.clone(), self.ideal.clone(), self.component_policy)
    }
}

/// A validated variety: an explicit nilpotent in a weight basis together with the flag
/// data. Built from a [`VarietySpec`] or directly from a (possibly trimmed) realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVariety {
    realization: NilpotentRealization,
    shape: FlagShape,
    c: IdealSequence,
    policy: ComponentPolicy,
}

impl FlagVariety {
    pub fn new(
        realization: NilpotentRealization,
        shape: FlagShape,
        c: IdealSequence,
        policy: ComponentPolicy,
    ) -> Result<Self, FlagError> {
        shape.validate()?;
        if realization.form() != shape.form || realization.m() != shape.m {
            return Err(FlagError::Inconsistent(format!(
                "realization of dimension {} does not carry a {:?} flag in dimension {}",
                realization.m(),
                shape.form,
                shape.m
            )));
        }
        validate_c(&c, shape.c_len())?;
        if shape.form.has_form() && !is_self_dual(&c) {
            return Err(FlagError::NotSelfDual(c));
        }
        if policy != ComponentPolicy::Both && !shape.is_two_component() {
            return Err(FlagError::PolicyNotApplicable);
        }
        Ok(FlagVariety { realization, shape, c, policy })
    }

    pub fn realization(&self) -> &NilpotentRealization {
        &self.realization
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn c(&self) -> &[usize] {
        &self.c
    }

    pub fn policy(&self) -> ComponentPolicy {
        self.policy
    }

    pub fn with_policy(&self, policy: ComponentPolicy) -> Result<Self, FlagError> {
        FlagVariety::new(self.realization.clone(), self.shape.clone(), self.c.clone(), policy)
    }
}
