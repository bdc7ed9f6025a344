//! Binding presentations to the exotic representation and evaluating them.

use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;

use super::mode::{build_mode, ModeRep, MomentumChoice};
use super::params::{make_params, DeformationParams, FChoice, Sign};
use super::presets::{
    assign_parameters, case1_relation_set, case2_relation_set, cross_mode_labels,
    specialize_brackets, Preset,
};
use super::two_mode::assemble_two_mode;
use super::ExoticError;
use crate::dsl::{
    bind_generators, AlgebraPresentation, BindError, BoundAlgebra, BoundGenerator, CheckOptions,
    MaskPolicy, ResidualReport,
};
use crate::fock::{make_fock_space, StructureFunctionSpec};

/// Everything needed to build a representation, short of the relations.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    /// Levels per mode.
    pub dim: usize,
    pub lambda: usize,
    pub nu: f64,
    pub sign: Sign,
    pub mu_omega: f64,
    /// Structure-function alphas; all zero when absent.
    pub alphas: Option<Vec<f64>>,
    pub f_choice: FChoice,
    pub momentum: MomentumChoice,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            dim: 16,
            lambda: 2,
            nu: 0.0,
            sign: Sign::Plus,
            mu_omega: 1.0,
            alphas: None,
            f_choice: FChoice::HalfChi,
            momentum: MomentumChoice::Inversion,
        }
    }
}

impl ModelConfig {
    pub fn params(&self) -> Result<DeformationParams, ExoticError> {
        make_params(
            self.nu,
            self.sign,
            self.mu_omega,
            self.lambda,
            self.f_choice,
        )
    }

    pub fn structure_spec(&self) -> Result<StructureFunctionSpec, ExoticError> {
        match &self.alphas {
            Some(a) => {
                if a.len() != self.lambda {
                    return Err(ExoticError::invalid(format!(
                        "{} alphas given, lambda = {} needs exactly lambda values",
                        a.len(),
                        self.lambda
                    )));
                }
                Ok(StructureFunctionSpec::new(a.clone())?)
            }
            None => Ok(StructureFunctionSpec::undeformed(self.lambda)),
        }
    }

    pub fn build_mode(&self) -> Result<ModeRep, ExoticError> {
        let basis = make_fock_space(self.dim, self.lambda)?;
        build_mode(&basis, &self.params()?, &self.structure_spec()?)
    }
}

/// Where a relation set comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum RelationSource {
    Preset(Preset),
    Custom(AlgebraPresentation),
}

impl RelationSource {
    pub fn name(&self) -> &str {
        match self {
            RelationSource::Preset(p) => p.name(),
            RelationSource::Custom(p) => &p.name,
        }
    }

    /// The relation set with parameters bound for `params`.
    pub fn presentation(
        &self,
        params: &DeformationParams,
        alphas: &[f64],
    ) -> Result<AlgebraPresentation, ExoticError> {
        Ok(match self {
            RelationSource::Preset(Preset::Case1) => case1_relation_set(params),
            RelationSource::Preset(Preset::Case2) => case2_relation_set(params),
            RelationSource::Preset(p) => specialize_brackets(assign_parameters(
                p.presentation(params.lambda)?,
                params,
                alphas,
            )),
            RelationSource::Custom(p) => assign_parameters(p.clone(), params, alphas),
        })
    }
}

const TWO_MODE_STEMS: &[&str] = &[
    "x", "p", "bm", "bp", "xi", "xiinv", "K", "N", "eK", "emK", "F", "a",
];

/// Two-mode iff some generator is a known stem followed by `1` or `2`.
pub fn is_two_mode(p: &AlgebraPresentation) -> bool {
    p.generators.iter().any(|g| {
        g.strip_suffix('1')
            .or_else(|| g.strip_suffix('2'))
            .is_some_and(|stem| TWO_MODE_STEMS.contains(&stem))
    })
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub bound: BoundAlgebra,
    pub params: DeformationParams,
    pub warnings: Vec<String>,
    pub cross_mode: Vec<String>,
    pub two_mode: bool,
}

/// Builds the representation `config` describes and binds `source` to it.
pub fn instantiate(source: &RelationSource, config: &ModelConfig) -> Result<Instance, ExoticError> {
    let params = config.params()?;
    let spec = config.structure_spec()?;
    let presentation = source.presentation(&params, spec.alphas())?;
    let mode = build_mode(&make_fock_space(config.dim, config.lambda)?, &params, &spec)?;
    let two_mode = is_two_mode(&presentation);
    let mut warnings = params.warnings();
    let momentum_undefined = matches!(
        mode.phase_space(config.momentum),
        Err(ExoticError::MomentumUndefined { .. })
    );
    if let Ok((_, _, singular)) = mode.phase_space(config.momentum) {
        if !singular.is_empty() && uses_momentum(&presentation) {
            warnings.push("momentum_singular_levels".to_string());
        }
    }
    let mut table: HashMap<String, BoundGenerator> = if two_mode {
        assemble_two_mode(mode.clone(), mode)?
            .symbols_where(config.momentum, |k| {
                presentation.generators.iter().any(|g| g == k)
            })?
            .into_iter()
            .collect()
    } else {
        mode.symbols(config.momentum)?
            .into_iter()
            .filter(|(k, _, _)| presentation.generators.contains(k))
            .map(|(k, m, excluded)| {
                (
                    k,
                    BoundGenerator {
                        matrix: m,
                        excluded_columns: excluded,
                    },
                )
            })
            .collect()
    };
    for g in &presentation.generators {
        if !table.contains_key(g) {
            let stem = g.trim_end_matches(['1', '2']);
            if stem == "p" && momentum_undefined {
                return Err(ExoticError::MomentumUndefined {
                    lambda: config.lambda,
                });
            }
            return Err(BindError::MissingBinding(g.clone()).into());
        }
    }
    table.retain(|k, _| presentation.generators.contains(k));
    let values: HashMap<String, Complex64> = presentation.parameters.iter().cloned().collect();
    let cross_mode = if two_mode {
        cross_mode_labels(&presentation)
    } else {
        Vec::new()
    };
    let bound = bind_generators(&presentation, table, &values)?;
    Ok(Instance {
        bound,
        params,
        warnings,
        cross_mode,
        two_mode,
    })
}

fn uses_momentum(p: &AlgebraPresentation) -> bool {
    p.generators
        .iter()
        .any(|g| g.trim_end_matches(['1', '2']) == "p")
}

/// Residual-check settings shared by single checks and sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSettings {
    pub tolerance: f64,
    pub mask: MaskPolicy,
    /// Report cross-mode relations without a pass/fail claim.
    pub measure_only: bool,
}

impl Default for CheckSettings {
    fn default() -> Self {
        Self {
            tolerance: crate::dsl::DEFAULT_TOLERANCE,
            mask: MaskPolicy::Auto,
            measure_only: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub report: ResidualReport,
    pub params: DeformationParams,
    pub warnings: Vec<String>,
}

pub fn evaluate(
    source: &RelationSource,
    config: &ModelConfig,
    settings: &CheckSettings,
) -> Result<Evaluation, ExoticError> {
    let inst = instantiate(source, config)?;
    let measured: BTreeSet<String> = if settings.measure_only {
        inst.cross_mode.iter().cloned().collect()
    } else {
        BTreeSet::new()
    };
    let opts = CheckOptions {
        tolerance: settings.tolerance,
        mask: Some(settings.mask),
        measured,
    };
    let report = inst.bound.check(&opts)?;
    Ok(Evaluation {
        report,
        params: inst.params,
        warnings: inst.warnings,
    })
}
