use std::path::Path;

use serde::{Deserialize, Serialize};

use super::problem::Problem;
use super::reference::{OMEGA_MAX, TABLE_X};
use crate::error::{Error, Result};
use crate::kernel::FractionalOrder;

fn default_n_samples() -> usize {
    512
}
fn default_t_max() -> f64 {
    std::f64::consts::TAU
}
fn default_n_x() -> usize {
    100
}
fn default_omega_max() -> Vec<f64> {
    OMEGA_MAX.to_vec()
}
fn default_repetitions() -> usize {
    20
}
fn default_x() -> Vec<f64> {
    TABLE_X.to_vec()
}
fn default_tol() -> f64 {
    1e-10
}
fn default_max_iter() -> usize {
    200
}
fn default_noise_levels() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3, 1e-4]
}
fn default_n_list() -> Vec<u32> {
    vec![50, 200, 1000]
}

/// Every knob of the experiments. Unknown keys are rejected when parsing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub alpha: f64,
    #[serde(default = "default_n_samples")]
    pub n_samples: usize,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    /// Space cells on `[0, 1]`; every entry of `x` must be a node.
    #[serde(default = "default_n_x")]
    pub n_x: usize,
    /// Cutoffs, one table column each. `solve` uses the first one and no
    /// truncation when the list is empty.
    #[serde(default = "default_omega_max")]
    pub omega_max: Vec<f64>,
    /// Amplitude `δ` of the multiplicative noise for `solve` and `table`.
    #[serde(default)]
    pub noise_amplitude: f64,
    /// Target measured noise levels for the rate study.
    #[serde(default = "default_noise_levels")]
    pub noise_levels: Vec<f64>,
    /// Amplitudes tried when matching the published tables.
    #[serde(default)]
    pub noise_sweep: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    /// Rows at which errors are reported.
    #[serde(default = "default_x")]
    pub x: Vec<f64>,
    #[serde(default)]
    pub problem: Problem,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    /// Band positions for the instability demo.
    #[serde(default = "default_n_list")]
    pub n_list: Vec<u32>,
    /// CSV file with columns `t,g,h` replacing the built-in boundary data
    /// for `solve`.
    #[serde(default)]
    pub data_file: Option<String>,
}

impl ExperimentConfig {
    /// Defaults for order `alpha`.
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            n_samples: default_n_samples(),
            t_max: default_t_max(),
            n_x: default_n_x(),
            omega_max: default_omega_max(),
            noise_amplitude: 0.0,
            noise_levels: default_noise_levels(),
            noise_sweep: Vec::new(),
            seed: 0,
            repetitions: default_repetitions(),
            x: default_x(),
            problem: Problem::default(),
            tol: default_tol(),
            max_iter: default_max_iter(),
            n_list: default_n_list(),
            data_file: None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn order(&self) -> Result<FractionalOrder> {
        FractionalOrder::new(self.alpha)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if let Err(e) = self.order() {
            return bad(e.to_string());
        }
        if self.n_samples < 2 || !self.n_samples.is_power_of_two() {
            return bad(format!(
                "n_samples must be a power of two >= 2, got {}",
                self.n_samples
            ));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return bad(format!("t_max must be positive, got {}", self.t_max));
        }
        if self.n_x == 0 {
            return bad("n_x must be at least 1".into());
        }
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1".into());
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1".into());
        }
        if let Some(w) = self
            .omega_max
            .iter()
            .find(|w| !(**w > 0.0) || !w.is_finite())
        {
            return bad(format!("omega_max entries must be positive, got {w}"));
        }
        if !(self.noise_amplitude >= 0.0) {
            return bad(format!(
                "noise_amplitude must be nonnegative, got {}",
                self.noise_amplitude
            ));
        }
        if let Some(a) = self.noise_sweep.iter().find(|a| !(**a >= 0.0)) {
            return bad(format!("noise_sweep entries must be nonnegative, got {a}"));
        }
        if let Some(d) = self.noise_levels.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return bad(format!("noise_levels entries must lie in (0, 1), got {d}"));
        }
        for &x in &self.x {
            if !(0.0..=1.0).contains(&x) {
                return bad(format!("x = {x} is outside [0, 1]"));
            }
            let pos = x * self.n_x as f64;
            if (pos - pos.round()).abs() > 1e-9 {
                return bad(format!(
                    "x = {x} is not a node of the grid with n_x = {}",
                    self.n_x
                ));
            }
        }
        if self.n_list.contains(&0) {
            return bad("n_list entries must be positive".into());
        }
        Ok(())
    }
}
