//! Tolerance configuration shared across the crate.

use serde::{Deserialize, Serialize};

/// Numerical tolerances. Defaults target double precision with modest
/// condition factors; everything is overridable via config files or the
/// `HYPERPEND_TOL_OVERRIDE` environment variable (a JSON fragment).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Constraint residual bound for points accepted as lying on the variety.
    pub tol_constraint: f64,
    /// Bound for polynomial identities checked at sampled points.
    pub tol_identity: f64,
    /// Below this `|<x,x>|` the Dirac correction matrix is considered singular.
    pub tol_degenerate: f64,
    /// First-integral drift bound over unit time at the default step size.
    pub tol_drift: f64,
    /// Slack used when binning levels against degenerate case boundaries.
    pub tol_case: f64,
    /// Smallest singular value below which a Jacobian counts as rank-deficient.
    pub tol_rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_constraint: 1e-10,
            tol_identity: 1e-9,
            tol_degenerate: 1e-8,
            tol_drift: 1e-7,
            tol_case: 1e-9,
            tol_rank: 1e-6,
        }
    }
}

impl Tolerances {
    /// Apply a JSON fragment override, e.g. `{"tol_drift": 1e-6}`.
    pub fn merged_with_json(mut self, fragment: &str) -> Result<Self, serde_json::Error> {
        let map: serde_json::Map<String, serde_json::Value> = serde_json::from_str(fragment)?;
        let mut value = serde_json::to_value(self)?;
        if let Some(obj) = value.as_object_mut() {
            for (k, v) in map {
                obj.insert(k, v);
            }
        }
        self = serde_json::from_value(value)?;
        Ok(self)
    }

    /// Apply `HYPERPEND_TOL_OVERRIDE` from the environment if present.
    pub fn with_env_override(self) -> Result<Self, serde_json::Error> {
        match std::env::var("HYPERPEND_TOL_OVERRIDE") {
            Ok(fragment) if !fragment.trim().is_empty() => self.merged_with_json(&fragment),
            _ => Ok(self),
        }
    }
}
