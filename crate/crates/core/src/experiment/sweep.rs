use super::config::ExperimentConfig;
use super::reference::{log_mismatch, published_table, OMEGA_MAX, TABLE_X};
use super::table::{run_table_with_amplitude, ErrorTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub amplitude: f64,
    /// Mean `|ln(ours / published)|` over the cells.
    pub score: f64,
    pub table: ErrorTable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub entries: Vec<SweepEntry>,
    /// Index of the entry with the lowest score.
    pub best: usize,
}

impl SweepResult {
    pub fn best_entry(&self) -> &SweepEntry {
        &self.entries[self.best]
    }
}

/// Runs the table once per amplitude of `cfg.noise_sweep` and scores each
/// against the published table for `cfg.alpha`. The configuration must use
/// the published rows and cutoffs.
pub fn noise_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let published = published_table(cfg.alpha).ok_or_else(|| {
        Error::InvalidParameter(format!("no published table for alpha = {}", cfg.alpha))
    })?;
    if cfg.x != TABLE_X || cfg.omega_max != OMEGA_MAX {
        return Err(Error::InvalidParameter(
            "the sweep needs the published rows and cutoffs".into(),
        ));
    }
    if cfg.noise_sweep.is_empty() {
        return Err(Error::InvalidParameter("noise_sweep is empty".into()));
    }
    let entries = cfg
        .noise_sweep
        .iter()
        .map(|&amplitude| {
            let table = run_table_with_amplitude(cfg, amplitude)?;
            Ok(SweepEntry {
                amplitude,
                score: log_mismatch(&table.means(), published),
                table,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = entries
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.score.total_cmp(&b.1.score))
        .map(|(i, _)| i)
        .expect("at least one amplitude");
    Ok(SweepResult { entries, best })
}
