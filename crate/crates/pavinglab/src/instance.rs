use std::path::{Path, PathBuf};

use flag_engine::{ComponentPolicy, CountMode, VarietySpec};
use ideal_combinatorics::FlagShape;
use nilpotent_core::{FormKind, JordanDatum};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Count,
    FixedCount,
    Poincare,
    Pave,
    ClassifyIdeal,
    Validate,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Count => "count",
            Mode::FixedCount => "fixed-count",
            Mode::Poincare => "poincare",
            Mode::Pave => "pave",
            Mode::ClassifyIdeal => "classify-ideal",
            Mode::Validate => "validate",
        }
    }
}

/// A batch job: one mode applied to every record, in file order.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub mode: Mode,
    /// Primes for count and fixed-count; sample primes for poincare when given.
    #[serde(default)]
    pub q_list: Vec<u64>,
    pub budget: Option<u64>,
    pub holdout_prime: Option<u64>,
    /// What poincare interpolates; full point counts by default.
    pub count_mode: Option<CountMode>,
    /// Output directory used when --out is not given, relative to the instance file.
    pub out: Option<PathBuf>,
    pub specs: Vec<SpecRecord>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecRecord {
    pub id: Option<String>,
    pub form: FormKind,
    /// Jordan type of e; classify-ideal needs only `m`.
    #[serde(default)]
    pub parts: Vec<usize>,
    pub m: Option<usize>,
    pub d: Vec<usize>,
    pub c: Option<Vec<usize>>,
    #[serde(default)]
    pub component_policy: ComponentPolicy,
    /// Roots in ε-coordinates, for classify-ideal.
    #[serde(default)]
    pub roots: Vec<Vec<i32>>,
}

impl SpecRecord {
    pub fn id(&self, index: usize) -> String {
        self.id.clone().unwrap_or_else(|| format!("spec{index}"))
    }

    pub fn dimension(&self) -> Result<usize, CliError> {
        let sum: usize = self.parts.iter().sum();
        match (self.m, self.parts.is_empty()) {
            (Some(m), false) if m != sum => {
                Err(CliError::Input(format!("m = {m} but the parts {:?} sum to {sum}", self.parts)))
            }
            (Some(m), _) => Ok(m),
            (None, false) => Ok(sum),
            (None, true) => Err(CliError::Input("give the Jordan type `parts` or the dimension `m`".into())),
        }
    }

    pub fn shape(&self) -> Result<FlagShape, CliError> {
        Ok(FlagShape::new(self.form, self.dimension()?, self.d.clone())?)
    }

    pub fn variety_spec(&self) -> Result<VarietySpec, CliError> {
        if self.parts.is_empty() {
            return Err(CliError::Input("missing the Jordan type `parts`".into()));
        }
        let c = self.c.clone().ok_or_else(|| CliError::Input("missing the ideal sequence `c`".into()))?;
        let jordan = JordanDatum::new(self.form, self.parts.clone())?;
        let shape = self.shape()?;
        Ok(VarietySpec::new(jordan, shape, c).with_policy(self.component_policy))
    }
}

pub fn load(path: &Path) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let instance: InstanceFile =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if instance.specs.is_empty() {
        return Err(CliError::Input(format!("{}: no specs", path.display())));
    }
    Ok(instance)
}
