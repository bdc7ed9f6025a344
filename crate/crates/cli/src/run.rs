//! Check and sweep runs on a resolved [`RunConfig`].

use std::path::Path;

use qdeform_core::dsl::{parse_presentation, AlgebraPresentation};
use qdeform_core::exotic::{
    evaluate, nu_sweep, CheckSettings, Evaluation, ModelConfig, RelationSource,
};

use crate::config::{RunConfig, SourceSpec};
use crate::CliError;

/// Reads and parses a `.qdl` file.
pub fn load_presentation(path: &Path) -> Result<AlgebraPresentation, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_presentation(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn relation_source(cfg: &RunConfig) -> Result<RelationSource, CliError> {
    Ok(match &cfg.source {
        SourceSpec::Preset(p) => RelationSource::Preset(*p),
        SourceSpec::Dsl(path) => RelationSource::Custom(load_presentation(path)?),
    })
}

pub fn model_config(cfg: &RunConfig, nu: f64) -> ModelConfig {
    ModelConfig {
        dim: cfg.dim,
        lambda: cfg.lambda,
        nu,
        sign: cfg.sign,
        mu_omega: cfg.mu_omega,
        alphas: cfg.alphas.clone(),
        f_choice: cfg.f_choice,
        momentum: cfg.momentum,
    }
}

pub fn check_settings(cfg: &RunConfig) -> CheckSettings {
    CheckSettings {
        tolerance: cfg.tolerance,
        mask: cfg.mask,
        measure_only: cfg.measure_only,
    }
}

/// Evaluates the relation set at the first configured ν.
pub fn run_check(cfg: &RunConfig) -> Result<Evaluation, CliError> {
    let source = relation_source(cfg)?;
    let nu = cfg.nus.first().copied().unwrap_or(0.0);
    Ok(evaluate(
        &source,
        &model_config(cfg, nu),
        &check_settings(cfg),
    )?)
}

/// Evaluates the relation set at every grid point, ordered by ν.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<(f64, Evaluation)>, CliError> {
    let source = relation_source(cfg)?;
    Ok(nu_sweep(
        &cfg.nus,
        &source,
        &model_config(cfg, 0.0),
        &check_settings(cfg),
    )?)
}

pub fn sweep_passes(points: &[(f64, Evaluation)]) -> bool {
    points.iter().all(|(_, e)| e.report.overall_pass())
}
