//! Scenario configuration: JSON file with a versioned schema, overridable
//! field by field from the command line.

use crate::dynamics::Potential;
use crate::symmetry::RotationClass;
use crate::tol::Tolerances;
use serde::{Deserialize, Serialize};

/// Potential specification: plain coefficient list (ascending powers) or a
/// rational numerator/denominator pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PotentialSpec {
    Coefficients(Vec<f64>),
    Rational { num: Vec<f64>, den: Vec<f64> },
}

impl PotentialSpec {
    pub fn to_potential(&self) -> Potential {
        match self {
            PotentialSpec::Coefficients(c) => Potential::polynomial(c.clone()),
            PotentialSpec::Rational { num, den } => Potential::rational(num.clone(), den.clone()),
        }
    }
}

/// Initial condition: full phase point or reduced point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InitialCondition {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full: Option<[f64; 6]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default)]
    pub class: Option<RotationClass>,
    #[serde(default)]
    pub potential: Option<PotentialSpec>,
    /// Shorthand: linear potential slope, taking precedence over `potential`.
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub initial: Option<InitialCondition>,
    #[serde(default)]
    pub jsq: Option<f64>,
    #[serde(default)]
    pub energy: Option<f64>,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub summary_out: Option<String>,
    #[serde(default)]
    pub compare: bool,
}

fn default_schema() -> u32 {
    1
}

fn default_dt() -> f64 {
    1e-3
}

fn default_steps() -> usize {
    10_000
}

fn default_seed() -> u64 {
    42
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            schema: default_schema(),
            class: None,
            potential: None,
            c: None,
            initial: None,
            jsq: None,
            energy: None,
            dt: default_dt(),
            steps: default_steps(),
            seed: default_seed(),
            tolerances: Tolerances::default(),
            out: None,
            summary_out: None,
            compare: false,
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let cfg: ScenarioConfig = serde_json::from_str(text)?;
        Ok(cfg)
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // negated so NaN fails too
    pub fn validate(&self) -> Result<(), String> {
        if self.schema != 1 {
            return Err(format!("unsupported schema version {}", self.schema));
        }
        if !(self.dt > 0.0) {
            return Err(format!("dt must be positive, got {}", self.dt));
        }
        Ok(())
    }

    /// Effective potential: `c` shorthand wins, then the explicit spec, then
    /// the free geodesic case.
    pub fn effective_potential(&self) -> Potential {
        if let Some(c) = self.c {
            return Potential::linear(c);
        }
        match &self.potential {
            Some(spec) => spec.to_potential(),
            None => Potential::zero(),
        }
    }

    pub fn require_class(&self) -> Result<RotationClass, String> {
        self.class
            .ok_or_else(|| "missing class (elliptic|hyperbolic|parabolic)".to_string())
    }
}
