use std::path::Path;

use liepoisson::{AlgebraSpec, PotentialSpec, WongState};
use serde::{Deserialize, Serialize};

use crate::Failure;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub antisymmetry_tol: f64,
    pub leibniz_tol: f64,
    pub jacobi_tol: f64,
    pub equivalence_tol: f64,
    pub casimir_tol: f64,
    pub covariance_tol: f64,
    /// Relative drift allowed for the energy.
    pub drift_tol: f64,
    /// Relative drift allowed for the charge Casimir.
    pub casimir_drift_tol: f64,
    pub rank_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            antisymmetry_tol: 1e-12,
            leibniz_tol: 5e-5,
            jacobi_tol: 1e-4,
            equivalence_tol: 5e-5,
            casimir_tol: 1e-6,
            covariance_tol: 1e-6,
            drift_tol: 1e-8,
            casimir_drift_tol: 1e-7,
            rank_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Outputs {
    pub report: String,
    pub trajectory: String,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            report: "report.json".into(),
            trajectory: "trajectory.csv".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub algebra: AlgebraSpec,
    pub potential: PotentialSpec,
    /// Base dimension; defaults to the length of `initial.q`, else 3.
    pub n_base: Option<usize>,
    /// Generalized momentum `f(z)` for `reduce`, one expression per algebra index.
    pub f_spec: Option<Vec<String>>,
    /// Point `ζ^r` for `reduce`; seeded random when absent.
    pub zr: Option<Vec<f64>>,
    pub initial: Option<WongState>,
    pub dt: f64,
    pub steps: usize,
    /// Random samples per property check.
    pub samples: usize,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub outputs: Outputs,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            algebra: AlgebraSpec::Builtin("so3".into()),
            potential: PotentialSpec::Zero,
            n_base: None,
            f_spec: None,
            zr: None,
            initial: None,
            dt: 1e-3,
            steps: 10_000,
            samples: 10,
            seed: None,
            tolerances: Tolerances::default(),
            outputs: Outputs::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let cfg: RunConfig = match path {
            None => RunConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Failure::Config(format!("cannot read {}: {e}", p.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), Failure> {
        let t = &self.tolerances;
        let tols = [
            ("antisymmetry_tol", t.antisymmetry_tol),
            ("leibniz_tol", t.leibniz_tol),
            ("jacobi_tol", t.jacobi_tol),
            ("equivalence_tol", t.equivalence_tol),
            ("casimir_tol", t.casimir_tol),
            ("covariance_tol", t.covariance_tol),
            ("drift_tol", t.drift_tol),
            ("casimir_drift_tol", t.casimir_drift_tol),
            ("rank_tol", t.rank_tol),
        ];
        for (name, v) in tols {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Failure::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.dt > 0.0) || !(self.dt * self.steps as f64).is_finite() {
            return Err(Failure::Config(format!(
                "dt = {} with {} steps is not usable",
                self.dt, self.steps
            )));
        }
        if self.steps == 0 || self.samples == 0 {
            return Err(Failure::Config("steps and samples must be positive".into()));
        }
        if let (Some(n), Some(s)) = (self.n_base, &self.initial) {
            if s.q.len() != n {
                return Err(Failure::Config(format!(
                    "n_base = {n} but initial.q has {} entries",
                    s.q.len()
                )));
            }
        }
        Ok(())
    }

    pub fn n_base(&self) -> usize {
        self.n_base
            .or(self.initial.as_ref().map(|s| s.q.len()))
            .unwrap_or(3)
    }
}
