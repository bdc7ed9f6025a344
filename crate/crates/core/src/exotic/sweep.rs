//! ν sweeps over a fixed representation size.

use rayon::prelude::*;

use super::model::{evaluate, CheckSettings, Evaluation, ModelConfig, RelationSource};
use super::presets::Preset;
use super::ExoticError;

/// Relation families a sweep can run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    Bosonic,
    FermionicCase1,
    FermionicCase2,
    Case1,
    Case2,
}

impl SweepFamily {
    pub fn preset(self) -> Preset {
        match self {
            SweepFamily::Bosonic => Preset::Bosonic,
            SweepFamily::FermionicCase1 => Preset::FermionicCase1,
            SweepFamily::FermionicCase2 => Preset::FermionicCase2,
            SweepFamily::Case1 => Preset::Case1,
            SweepFamily::Case2 => Preset::Case2,
        }
    }
}

/// `start, start + step, ..` up to `stop`, which is included when it lies on
/// the grid to within 1e-12.
pub fn nu_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, ExoticError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(ExoticError::invalid("grid bounds must be finite"));
    }
    if step <= 0.0 {
        return Err(ExoticError::invalid(format!(
            "grid step must be positive, got {step}"
        )));
    }
    if stop < start {
        return Err(ExoticError::invalid(format!(
            "grid stop {stop} is below start {start}"
        )));
    }
    let span = stop - start;
    let k = span / step;
    let nearest = k.round();
    let (count, inclusive) = if (span - nearest * step).abs() <= 1e-12 {
        (nearest as usize, true)
    } else {
        (k.floor() as usize, false)
    };
    let mut grid: Vec<f64> = (0..=count).map(|i| start + i as f64 * step).collect();
    if inclusive {
        *grid.last_mut().expect("grid is non-empty") = stop;
    }
    Ok(grid)
}

/// Evaluates `source` at every ν of `grid`; results come back sorted by ν.
pub fn nu_sweep(
    grid: &[f64],
    source: &RelationSource,
    config: &ModelConfig,
    settings: &CheckSettings,
) -> Result<Vec<(f64, Evaluation)>, ExoticError> {
    let mut out = grid
        .par_iter()
        .map(|&nu| {
            let cfg = ModelConfig {
                nu,
                ..config.clone()
            };
            evaluate(source, &cfg, settings).map(|e| (nu, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

pub fn family_sweep(
    grid: &[f64],
    family: SweepFamily,
    config: &ModelConfig,
    settings: &CheckSettings,
) -> Result<Vec<(f64, Evaluation)>, ExoticError> {
    nu_sweep(
        grid,
        &RelationSource::Preset(family.preset()),
        config,
        settings,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_stop() {
        let g = nu_grid(0.0, 1.0, 0.05).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(*g.last().unwrap(), 1.0);
        let g = nu_grid(0.0, 1.0, 0.3).unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[3] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn grid_rejects_bad_step() {
        assert!(nu_grid(0.0, 1.0, 0.0).is_err());
        assert!(nu_grid(1.0, 0.0, 0.1).is_err());
        assert!(nu_grid(0.0, f64::NAN, 0.1).is_err());
    }

    #[test]
    fn sweep_is_ordered() {
        let cfg = ModelConfig {
            dim: 4,
            ..ModelConfig::default()
        };
        let grid = [0.5, 0.0, 0.25];
        let out =
            family_sweep(&grid, SweepFamily::Bosonic, &cfg, &CheckSettings::default()).unwrap();
        let nus: Vec<f64> = out.iter().map(|(n, _)| *n).collect();
        assert_eq!(nus, vec![0.0, 0.25, 0.5]);
    }
}
