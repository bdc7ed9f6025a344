//! Binding generators to matrices and measuring relation residuals.

use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;
use rayon::prelude::*;

use super::ast::{AlgebraPresentation, Expr, Relation, Scalar};
use super::error::{BindError, EvalError};
use crate::fock::{q_bracket, FockBasis, OperatorMatrix};

/// Default pass threshold on the relative Frobenius residual.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// A generator's matrix together with the columns on which it is not
/// defined (e.g. levels where a momentum denominator vanishes). Excluded
/// columns are stored as zero and dropped from residual norms.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundGenerator {
    pub matrix: OperatorMatrix,
    pub excluded_columns: Vec<usize>,
}

impl From<OperatorMatrix> for BoundGenerator {
    fn from(matrix: OperatorMatrix) -> Self {
        Self {
            matrix,
            excluded_columns: Vec::new(),
        }
    }
}

/// A presentation closed over concrete matrices and parameter values.
#[derive(Debug, Clone)]
pub struct BoundAlgebra {
    presentation: AlgebraPresentation,
    basis: FockBasis,
    generators: HashMap<String, BoundGenerator>,
    params: HashMap<String, Complex64>,
}

/// Binds every declared generator to a matrix on a common basis. Parameters
/// missing from `params` fall back to their declared default.
pub fn bind_representation(
    p: &AlgebraPresentation,
    bindings: &HashMap<String, OperatorMatrix>,
    params: &HashMap<String, Complex64>,
) -> Result<BoundAlgebra, BindError> {
    let full: HashMap<String, BoundGenerator> = bindings
        .iter()
        .filter(|(k, _)| p.generators.contains(k))
        .map(|(k, v)| (k.clone(), BoundGenerator::from(v.clone())))
        .collect();
    bind_generators(p, full, params)
}

/// Like [`bind_representation`], with per-generator excluded columns.
pub fn bind_generators(
    p: &AlgebraPresentation,
    mut bindings: HashMap<String, BoundGenerator>,
    params: &HashMap<String, Complex64>,
) -> Result<BoundAlgebra, BindError> {
    let first = p.generators.first().ok_or(BindError::NoGenerators)?;
    let reference = bindings
        .get(first)
        .ok_or_else(|| BindError::MissingBinding(first.clone()))?
        .matrix
        .basis()
        .clone();
    let mut generators = HashMap::new();
    for g in &p.generators {
        let b = bindings
            .remove(g)
            .ok_or_else(|| BindError::MissingBinding(g.clone()))?;
        if b.matrix.basis() != &reference {
            return Err(BindError::BasisMismatch {
                name: g.clone(),
                reference: first.clone(),
            });
        }
        generators.insert(g.clone(), b);
    }
    let mut values = HashMap::new();
    for (name, default) in &p.parameters {
        let v = params.get(name).copied().unwrap_or(*default);
        values.insert(name.clone(), v);
    }
    Ok(BoundAlgebra {
        presentation: p.clone(),
        basis: reference,
        generators,
        params: values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskPolicy {
    /// Mask as many top levels as the relation's ladder depth.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub tolerance: f64,
    pub mask: Option<MaskPolicy>,
    /// Relation labels evaluated and reported without a pass/fail claim.
    pub measured: BTreeSet<String>,
}

impl CheckOptions {
    pub fn new(tolerance: f64, mask: MaskPolicy) -> Self {
        Self {
            tolerance,
            mask: Some(mask),
            measured: BTreeSet::new(),
        }
    }

    pub fn with_measured<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.measured.extend(labels.into_iter().map(Into::into));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationStatus {
    Pass,
    Fail,
    /// Evaluated for information only; no representation claim is made.
    Measured,
    /// Every column was excluded, so nothing could be measured.
    Undefined,
}

impl RelationStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationStatus::Pass => "pass",
            RelationStatus::Fail => "fail",
            RelationStatus::Measured => "measured",
            RelationStatus::Undefined => "undefined",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationRecord {
    pub label: String,
    pub raw_norm: f64,
    pub masked_norm: f64,
    /// `masked_norm / max(1, |LHS|)` on the same block.
    pub relative_norm: f64,
    pub mask_levels: usize,
    pub excluded_columns: usize,
    pub tolerance: f64,
    pub status: RelationStatus,
}

impl RelationRecord {
    /// `Some(pass)` for asserted relations, `None` for measured ones.
    pub fn pass(&self) -> Option<bool> {
        match self.status {
            RelationStatus::Pass => Some(true),
            RelationStatus::Fail | RelationStatus::Undefined => Some(false),
            RelationStatus::Measured => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub presentation: String,
    pub mode_dims: Vec<usize>,
    pub lambda: usize,
    pub params: Vec<(String, Complex64)>,
    pub records: Vec<RelationRecord>,
}

impl ResidualReport {
    /// True iff no asserted relation fails. Measured relations carry no
    /// claim and do not affect the verdict.
    pub fn overall_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass() != Some(false))
    }

    pub fn record(&self, label: &str) -> Option<&RelationRecord> {
        self.records.iter().find(|r| r.label == label)
    }

    pub fn dim(&self) -> usize {
        self.mode_dims.iter().product()
    }
}

impl BoundAlgebra {
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn param(&self, name: &str) -> Option<Complex64> {
        self.params.get(name).copied()
    }

    pub fn eval_scalar(&self, s: &Scalar) -> Option<Complex64> {
        s.evaluate(&|name: &str| self.params.get(name).copied())
    }

    /// Evaluates `e` to a matrix. `relation` only labels errors.
    pub fn eval_expr(&self, e: &Expr, relation: &str) -> Result<OperatorMatrix, EvalError> {
        let op = |source| EvalError::Operator {
            relation: relation.to_string(),
            source,
        };
        let scalar = |s: &Scalar| {
            self.eval_scalar(s)
                .ok_or_else(|| EvalError::Unbound {
                    relation: relation.to_string(),
                    symbol: s.clone().param_name().unwrap_or_default(),
                })
                .and_then(|z| {
                    if z.re.is_finite() && z.im.is_finite() {
                        Ok(z)
                    } else {
                        Err(EvalError::NonFinite {
                            relation: relation.to_string(),
                        })
                    }
                })
        };
        let m = match e {
            Expr::Identity => OperatorMatrix::identity(&self.basis),
            Expr::Gen(g) => self
                .generators
                .get(g)
                .ok_or_else(|| EvalError::Unbound {
                    relation: relation.to_string(),
                    symbol: g.clone(),
                })?
                .matrix
                .clone(),
            Expr::Scalar(s) => OperatorMatrix::identity(&self.basis).scale(scalar(s)?),
            Expr::Scaled(s, x) => self.eval_expr(x, relation)?.scale(scalar(s)?),
            Expr::Product(xs) => {
                let mut acc = self.eval_expr(&xs[0], relation)?;
                for x in &xs[1..] {
                    acc = acc.mul(&self.eval_expr(x, relation)?).map_err(op)?;
                }
                acc
            }
            Expr::Add(a, b) => self
                .eval_expr(a, relation)?
                .add(&self.eval_expr(b, relation)?)
                .map_err(op)?,
            Expr::Sub(a, b) => self
                .eval_expr(a, relation)?
                .sub(&self.eval_expr(b, relation)?)
                .map_err(op)?,
            Expr::Neg(x) => self.eval_expr(x, relation)?.neg(),
            Expr::Bracket(a, b, q) => {
                let q = scalar(q)?;
                q_bracket(
                    &self.eval_expr(a, relation)?,
                    &self.eval_expr(b, relation)?,
                    q,
                )
                .map_err(op)?
            }
            Expr::AntiBracket(a, b) => q_bracket(
                &self.eval_expr(a, relation)?,
                &self.eval_expr(b, relation)?,
                Complex64::new(-1.0, 0.0),
            )
            .map_err(op)?,
            Expr::Dagger(x) => self.eval_expr(x, relation)?.adjoint(),
            Expr::Power(x, k) => self.eval_expr(x, relation)?.pow(*k),
        };
        if !m.is_finite() {
            return Err(EvalError::NonFinite {
                relation: relation.to_string(),
            });
        }
        Ok(m)
    }

    /// Highest total power of off-diagonal generators along any product in
    /// `e`: the number of top levels a truncated representation can corrupt.
    pub fn ladder_depth(&self, e: &Expr) -> usize {
        match e {
            Expr::Identity | Expr::Scalar(_) => 0,
            Expr::Gen(g) => match self.generators.get(g) {
                Some(b) if b.matrix.is_diagonal() => 0,
                _ => 1,
            },
            Expr::Dagger(x) | Expr::Scaled(_, x) | Expr::Neg(x) => self.ladder_depth(x),
            Expr::Product(xs) => xs.iter().map(|x| self.ladder_depth(x)).sum(),
            Expr::Add(a, b) | Expr::Sub(a, b) => self.ladder_depth(a).max(self.ladder_depth(b)),
            Expr::Bracket(a, b, _) | Expr::AntiBracket(a, b) => {
                self.ladder_depth(a) + self.ladder_depth(b)
            }
            Expr::Power(x, k) => self.ladder_depth(x) * (*k as usize),
        }
    }

    fn excluded_columns(&self, r: &Relation) -> BTreeSet<usize> {
        r.generators()
            .into_iter()
            .filter_map(|g| self.generators.get(g))
            .flat_map(|b| b.excluded_columns.iter().copied())
            .collect()
    }

    fn check_one(&self, r: &Relation, opts: &CheckOptions) -> Result<RelationRecord, EvalError> {
        let lhs = self.eval_expr(&r.lhs, &r.label)?;
        let rhs = self.eval_expr(&r.rhs, &r.label)?;
        let residual = lhs.sub(&rhs).map_err(|source| EvalError::Operator {
            relation: r.label.clone(),
            source,
        })?;
        let min_mode = self.basis.mode_dims().iter().copied().min().unwrap_or(0);
        let mask_levels = match opts.mask.unwrap_or(MaskPolicy::Auto) {
            MaskPolicy::Fixed(k) => {
                if k >= min_mode {
                    return Err(EvalError::InvalidMask(format!(
                        "mask {k} must be below the mode dimension {min_mode}"
                    )));
                }
                k
            }
            MaskPolicy::Auto => self
                .ladder_depth(&r.lhs)
                .max(self.ladder_depth(&r.rhs))
                .min(min_mode - 1),
        };
        let excluded = self.excluded_columns(r);
        let rows = self.basis.retained_indices(mask_levels);
        let cols: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|c| !excluded.contains(c))
            .collect();
        let raw_norm = residual.frobenius_norm();
        let masked_norm = residual.restricted_norm(&rows, &cols);
        let lhs_norm = lhs.restricted_norm(&rows, &cols);
        let relative_norm = masked_norm / lhs_norm.max(1.0);
        if !raw_norm.is_finite() || !masked_norm.is_finite() {
            return Err(EvalError::NonFinite {
                relation: r.label.clone(),
            });
        }
        let status = if opts.measured.contains(&r.label) {
            RelationStatus::Measured
        } else if cols.is_empty() {
            RelationStatus::Undefined
        } else if relative_norm <= opts.tolerance {
            RelationStatus::Pass
        } else {
            RelationStatus::Fail
        };
        Ok(RelationRecord {
            label: r.label.clone(),
            raw_norm,
            masked_norm,
            relative_norm,
            mask_levels,
            excluded_columns: excluded.len(),
            tolerance: opts.tolerance,
            status,
        })
    }

    pub fn check(&self, opts: &CheckOptions) -> Result<ResidualReport, EvalError> {
        if !(opts.tolerance > 0.0 && opts.tolerance.is_finite()) {
            return Err(EvalError::InvalidTolerance(opts.tolerance));
        }
        let records = self
            .presentation
            .relations
            .par_iter()
            .map(|r| self.check_one(r, opts))
            .collect::<Result<Vec<_>, _>>()?;
        let mut params: Vec<(String, Complex64)> = self
            .presentation
            .parameters
            .iter()
            .map(|(n, _)| (n.clone(), self.params[n]))
            .collect();
        params.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(ResidualReport {
            presentation: self.presentation.name.clone(),
            mode_dims: self.basis.mode_dims().to_vec(),
            lambda: self.basis.lambda(),
            params,
            records,
        })
    }
}

impl Scalar {
    fn param_name(self) -> Option<String> {
        let mut names = Vec::new();
        self.visit_params(&mut names);
        names.first().map(|s| s.to_string())
    }
}

/// Residual check of every relation, in declaration order.
pub fn check_relations(
    b: &BoundAlgebra,
    tolerance: f64,
    mask_policy: MaskPolicy,
) -> Result<ResidualReport, EvalError> {
    b.check(&CheckOptions::new(tolerance, mask_policy))
}
