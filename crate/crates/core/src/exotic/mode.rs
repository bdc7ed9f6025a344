//! Single-mode exotic representation: ladder pair, Klein and ξ operators and
//! the two phase-space pairs built from them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::params::DeformationParams;
use super::ExoticError;
use crate::fock::{
    klein_operator, ladder_operators, number_operator, projectors, root_of_unity,
    structure_function_operator, FockBasis, OperatorMatrix, StructureFunctionSpec,
};

/// Below this modulus a denominator is treated as vanishing.
const SINGULAR_EPS: f64 = 1e-12;

/// Which position/momentum pair a relation set is bound to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentumChoice {
    /// Inverting the ladder definitions `b∓ = s(x ± (i/μω) ξ^{±1} p)`.
    #[default]
    Inversion,
    /// The closed Fock-space action with the `e^{2πin/λ} - e^{-2πin/λ}`
    /// denominator.
    FockAction,
}

impl MomentumChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentumChoice::Inversion => "inversion",
            MomentumChoice::FockAction => "fock_action",
        }
    }
}

impl FromStr for MomentumChoice {
    type Err = ExoticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inversion" | "ladder" => Ok(MomentumChoice::Inversion),
            "fock_action" | "fock" => Ok(MomentumChoice::FockAction),
            other => Err(ExoticError::invalid(format!(
                "unknown momentum choice `{other}` (expected inversion or fock_action)"
            ))),
        }
    }
}

impl fmt::Display for MomentumChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Momentum together with the levels where it is undefined. Columns of
/// singular levels are stored as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Momentum {
    pub matrix: OperatorMatrix,
    pub singular_levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MomentumAction {
    Defined(Momentum),
    /// Every level is singular.
    Undefined {
        lambda: usize,
    },
}

impl MomentumAction {
    pub fn defined(&self) -> Option<&Momentum> {
        match self {
            MomentumAction::Defined(m) => Some(m),
            MomentumAction::Undefined { .. } => None,
        }
    }
}

/// `x` and `p` from inverting the ladder definitions, with the levels where
/// `ξ + ξ^{-1}` is not invertible.
#[derive(Debug, Clone, PartialEq)]
pub struct InvertedPair {
    pub position: OperatorMatrix,
    pub momentum: OperatorMatrix,
    pub singular_levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeRep {
    pub basis: FockBasis,
    pub params: DeformationParams,
    pub lowering: OperatorMatrix,
    pub raising: OperatorMatrix,
    pub number: OperatorMatrix,
    pub klein: OperatorMatrix,
    pub projectors: Vec<OperatorMatrix>,
    pub structure: OperatorMatrix,
    pub xi: OperatorMatrix,
    pub xi_inverse: OperatorMatrix,
    /// `e^{iπK}`.
    pub exp_ipi_k: OperatorMatrix,
    /// `e^{-iπK}`.
    pub exp_mipi_k: OperatorMatrix,
    pub position: OperatorMatrix,
    pub momentum: MomentumAction,
    pub inverted: InvertedPair,
}

fn diag(basis: &FockBasis, values: impl IntoIterator<Item = Complex64>) -> OperatorMatrix {
    OperatorMatrix::from_diagonal(basis, values).expect("one value per level")
}

/// `diag(e^{c ω_n})` over the Klein eigenvalues `ω_n = e^{2πin/λ}`.
fn klein_exponential(basis: &FockBasis, c: Complex64) -> OperatorMatrix {
    let lambda = basis.lambda();
    diag(
        basis,
        (0..basis.dim()).map(|n| (c * root_of_unity(n, lambda)).exp()),
    )
}

/// `ξ = e^{iνπK}` evaluated on the spectrum of the diagonal `K`.
pub fn xi_operator(basis: &FockBasis, nu: f64) -> OperatorMatrix {
    klein_exponential(basis, Complex64::new(0.0, nu * PI))
}

/// `e^{iπK}` (`sign = 1`) or `e^{-iπK}` (`sign = -1`).
pub fn exp_pi_klein(basis: &FockBasis, sign: f64) -> OperatorMatrix {
    klein_exponential(basis, Complex64::new(0.0, sign * PI))
}

/// Levels `n` with `2n ≡ 0 (mod λ)`, where `sin(2πn/λ)` vanishes.
pub fn momentum_singular_levels(basis: &FockBasis) -> Vec<usize> {
    let lambda = basis.lambda();
    (0..basis.dim()).filter(|n| (2 * n) % lambda == 0).collect()
}

fn check_lambda(basis: &FockBasis, params: &DeformationParams) -> Result<(), ExoticError> {
    if !basis.is_single_mode() {
        return Err(ExoticError::invalid("a single-mode basis is required"));
    }
    if params.lambda != basis.lambda() {
        return Err(ExoticError::invalid(format!(
            "parameter lambda {} does not match the basis lambda {}",
            params.lambda,
            basis.lambda()
        )));
    }
    Ok(())
}

/// Position and momentum through the closed Fock-space action
/// `x|n> = (f(√n)|n-1> + f(√(n+1))|n+1>)/√(2μω)` and
/// `p|n> = i√(2μω)(-f(√n)|n-1> + f(√(n+1))|n+1>)/(e^{2πin/λ} - e^{-2πin/λ})`,
/// with `f(√n)` the ladder element `√F(n)`.
pub fn position_momentum_action(
    basis: &FockBasis,
    params: &DeformationParams,
    spec: &StructureFunctionSpec,
) -> Result<(OperatorMatrix, MomentumAction), ExoticError> {
    check_lambda(basis, params)?;
    let (lowering, raising) = ladder_operators(basis, spec)?;
    let root = (2.0 * params.mu_omega).sqrt();
    let x = lowering
        .add(&raising)?
        .scale(Complex64::new(1.0 / root, 0.0));
    let singular = momentum_singular_levels(basis);
    if singular.len() == basis.dim() {
        return Ok((
            x,
            MomentumAction::Undefined {
                lambda: basis.lambda(),
            },
        ));
    }
    let lambda = basis.lambda() as f64;
    let column_scale = diag(
        basis,
        (0..basis.dim()).map(|n| {
            if singular.contains(&n) {
                Complex64::new(0.0, 0.0)
            } else {
                // i√(2μω) / (2i sin(2πn/λ))
                let s = (2.0 * PI * (n % basis.lambda()) as f64 / lambda).sin();
                Complex64::new(root / (2.0 * s), 0.0)
            }
        }),
    );
    let p = raising.sub(&lowering)?.mul(&column_scale)?;
    Ok((
        x,
        MomentumAction::Defined(Momentum {
            matrix: p,
            singular_levels: singular,
        }),
    ))
}

/// `x = (1/s)(ξ+ξ^{-1})^{-1}(ξ^{-1}b⁻ + ξb⁺)`,
/// `p = -i√(2μω)(ξ+ξ^{-1})^{-1}(b⁻ - b⁺)` with `s = √(μω/2)`.
fn inverted_pair(
    basis: &FockBasis,
    params: &DeformationParams,
    lowering: &OperatorMatrix,
    raising: &OperatorMatrix,
    xi: &OperatorMatrix,
    xi_inverse: &OperatorMatrix,
) -> Result<InvertedPair, ExoticError> {
    let sum = xi.add(xi_inverse)?.diagonal();
    let mut singular = Vec::new();
    let inv = diag(
        basis,
        sum.iter().enumerate().map(|(n, z)| {
            if z.norm() < SINGULAR_EPS {
                singular.push(n);
                Complex64::new(0.0, 0.0)
            } else {
                z.inv()
            }
        }),
    );
    let s = (params.mu_omega / 2.0).sqrt();
    let x = inv
        .mul(&xi_inverse.mul(lowering)?.add(&xi.mul(raising)?)?)?
        .scale(Complex64::new(1.0 / s, 0.0));
    let p = inv
        .mul(&lowering.sub(raising)?)?
        .scale(Complex64::new(0.0, -(2.0 * params.mu_omega).sqrt()));
    Ok(InvertedPair {
        position: x,
        momentum: p,
        singular_levels: singular,
    })
}

pub fn build_mode(
    basis: &FockBasis,
    params: &DeformationParams,
    spec: &StructureFunctionSpec,
) -> Result<ModeRep, ExoticError> {
    check_lambda(basis, params)?;
    let (lowering, raising) = ladder_operators(basis, spec)?;
    let xi = xi_operator(basis, params.nu);
    let xi_inverse = xi_operator(basis, -params.nu);
    let (position, momentum) = position_momentum_action(basis, params, spec)?;
    let inverted = inverted_pair(basis, params, &lowering, &raising, &xi, &xi_inverse)?;
    Ok(ModeRep {
        basis: basis.clone(),
        params: params.clone(),
        number: number_operator(basis),
        klein: klein_operator(basis),
        projectors: projectors(basis)?,
        structure: structure_function_operator(basis, spec)?,
        exp_ipi_k: exp_pi_klein(basis, 1.0),
        exp_mipi_k: exp_pi_klein(basis, -1.0),
        lowering,
        raising,
        xi,
        xi_inverse,
        position,
        momentum,
        inverted,
    })
}

impl ModeRep {
    /// Position, momentum and the levels whose momentum columns are
    /// undefined, for the chosen construction.
    pub fn phase_space(
        &self,
        choice: MomentumChoice,
    ) -> Result<(OperatorMatrix, OperatorMatrix, Vec<usize>), ExoticError> {
        match choice {
            MomentumChoice::Inversion => Ok((
                self.inverted.position.clone(),
                self.inverted.momentum.clone(),
                self.inverted.singular_levels.clone(),
            )),
            MomentumChoice::FockAction => match &self.momentum {
                MomentumAction::Defined(m) => Ok((
                    self.position.clone(),
                    m.matrix.clone(),
                    m.singular_levels.clone(),
                )),
                MomentumAction::Undefined { lambda } => {
                    Err(ExoticError::MomentumUndefined { lambda: *lambda })
                }
            },
        }
    }

    /// Frobenius distance between the two position operators and between
    /// the two momenta on the columns where both are defined.
    pub fn phase_space_disagreement(&self) -> Option<(f64, f64)> {
        let m = self.momentum.defined()?;
        let d = self.basis.dim();
        let rows: Vec<usize> = (0..d).collect();
        let cols: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|c| {
                !m.singular_levels.contains(c) && !self.inverted.singular_levels.contains(c)
            })
            .collect();
        let dx = self.position.sub(&self.inverted.position).ok()?;
        let dp = m.matrix.sub(&self.inverted.momentum).ok()?;
        Some((
            dx.restricted_norm(&rows, &rows),
            dp.restricted_norm(&rows, &cols),
        ))
    }

    /// Named operators in the table used to bind presentations.
    pub fn symbols(
        &self,
        choice: MomentumChoice,
    ) -> Result<Vec<(String, OperatorMatrix, Vec<usize>)>, ExoticError> {
        let mut out = vec![
            ("a".to_string(), self.lowering.clone(), vec![]),
            ("bm".to_string(), self.lowering.clone(), vec![]),
            ("bp".to_string(), self.raising.clone(), vec![]),
            ("N".to_string(), self.number.clone(), vec![]),
            ("K".to_string(), self.klein.clone(), vec![]),
            ("F".to_string(), self.structure.clone(), vec![]),
            ("xi".to_string(), self.xi.clone(), vec![]),
            ("xiinv".to_string(), self.xi_inverse.clone(), vec![]),
            ("eK".to_string(), self.exp_ipi_k.clone(), vec![]),
            ("emK".to_string(), self.exp_mipi_k.clone(), vec![]),
        ];
        for (mu, p) in self.projectors.iter().enumerate() {
            out.push((format!("P{mu}"), p.clone(), vec![]));
        }
        match self.phase_space(choice) {
            Ok((x, p, singular)) => {
                out.push(("x".to_string(), x, vec![]));
                out.push(("p".to_string(), p, singular));
            }
            Err(ExoticError::MomentumUndefined { .. }) => {
                out.push(("x".to_string(), self.position.clone(), vec![]));
            }
            Err(e) => return Err(e),
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exotic::params::{make_params, FChoice, Sign};
    use crate::fock::{make_fock_space, q_bracket};

    fn params(nu: f64, lambda: usize) -> DeformationParams {
        make_params(nu, Sign::Plus, 1.0, lambda, FChoice::HalfChi).unwrap()
    }

    #[test]
    fn bosonic_mode_has_unit_xi() {
        let b = make_fock_space(6, 2).unwrap();
        let m = build_mode(&b, &params(0.0, 2), &StructureFunctionSpec::undeformed(2)).unwrap();
        assert!(
            m.xi.sub(&OperatorMatrix::identity(&b))
                .unwrap()
                .frobenius_norm()
                < 1e-15
        );
        assert!((m.raising.get(1, 0).re - 1.0).abs() < 1e-15);
        assert!((m.raising.get(2, 1).re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn xi_alternates_for_lambda_two() {
        let b = make_fock_space(4, 2).unwrap();
        let nu = 0.3;
        let xi = xi_operator(&b, nu).diagonal();
        let e = Complex64::new(0.0, nu * PI).exp();
        for (n, z) in xi.iter().enumerate() {
            let want = if n % 2 == 0 { e } else { e.conj() };
            assert!((z - want).norm() < 1e-15);
        }
    }

    #[test]
    fn momentum_bookkeeping() {
        let b = make_fock_space(8, 4).unwrap();
        let (x, p) =
            position_momentum_action(&b, &params(0.0, 4), &StructureFunctionSpec::undeformed(4))
                .unwrap();
        assert!((x.get(1, 0).re - 0.5f64.sqrt()).abs() < 1e-15);
        let p = p.defined().unwrap();
        assert_eq!(p.singular_levels, vec![0, 2, 4, 6]);
        for &n in &p.singular_levels {
            assert!(
                (0..8).all(|r| p.matrix.get(r, n) == Complex64::new(0.0, 0.0)),
                "column {n}"
            );
        }
        // level 1: denominator 2i, so p|1> = (√2/2)(-|0> + √2|2>)
        assert!((p.matrix.get(0, 1).re + 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((p.matrix.get(2, 1).re - 1.0).abs() < 1e-15);

        let b2 = make_fock_space(4, 2).unwrap();
        let (_, p2) =
            position_momentum_action(&b2, &params(0.0, 2), &StructureFunctionSpec::undeformed(2))
                .unwrap();
        assert_eq!(p2, MomentumAction::Undefined { lambda: 2 });
    }

    #[test]
    fn inverted_pair_is_canonical_at_nu_zero() {
        let d = 12;
        let b = make_fock_space(d, 3).unwrap();
        let m = build_mode(&b, &params(0.0, 3), &StructureFunctionSpec::undeformed(3)).unwrap();
        let (x, p, singular) = m.phase_space(MomentumChoice::Inversion).unwrap();
        assert!(singular.is_empty());
        let c = q_bracket(&p, &x, Complex64::new(1.0, 0.0)).unwrap();
        let keep: Vec<usize> = (0..d - 1).collect();
        let target = OperatorMatrix::identity(&b).scale(Complex64::new(0.0, -1.0));
        assert!(c.sub(&target).unwrap().restricted_norm(&keep, &keep) < 1e-12);
    }

    #[test]
    fn inverted_pair_reproduces_ladder() {
        let b = make_fock_space(10, 4).unwrap();
        let prm = make_params(0.2, Sign::Plus, 1.7, 4, FChoice::HalfChi).unwrap();
        let m = build_mode(&b, &prm, &StructureFunctionSpec::undeformed(4)).unwrap();
        let s = Complex64::new((prm.mu_omega / 2.0).sqrt(), 0.0);
        let k = Complex64::new(0.0, 1.0 / prm.mu_omega);
        let sum = m.xi.add(&m.xi_inverse).unwrap();
        // b⁻ - b⁺ = (i/μω) s (ξ+ξ⁻¹) p
        let dp = m.lowering.sub(&m.raising).unwrap();
        let rp = sum.mul(&m.inverted.momentum).unwrap().scale(k * s);
        assert!(dp.sub(&rp).unwrap().frobenius_norm() < 1e-12);
        // ξ⁻¹b⁻ + ξb⁺ = s (ξ+ξ⁻¹) x
        let dx = m
            .xi_inverse
            .mul(&m.lowering)
            .unwrap()
            .add(&m.xi.mul(&m.raising).unwrap())
            .unwrap();
        let rx = sum.mul(&m.inverted.position).unwrap().scale(s);
        assert!(dx.sub(&rx).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn lambda_mismatch_is_rejected() {
        let b = make_fock_space(4, 2).unwrap();
        assert!(build_mode(&b, &params(0.0, 3), &StructureFunctionSpec::undeformed(3)).is_err());
    }
}
