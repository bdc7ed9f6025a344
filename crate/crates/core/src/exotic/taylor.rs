//! Truncated Taylor form of `[b⁻_i, b⁺_j]_χ`: `(I + ℜ)δ_ij + A ε_ij + Q`.

use num_complex::Complex64;

use super::mode::{build_mode, MomentumChoice};
use super::params::DeformationParams;
use super::presets::truncation_orders;
use super::ExoticError;
use crate::dsl::{RelationRecord, RelationStatus, ResidualReport};
use crate::fock::{q_bracket, FockBasis, OperatorMatrix, StructureFunctionSpec};

/// `K^λ = I` is required to this accuracy.
const KLEIN_PERIOD_TOL: f64 = 1e-10;
/// Floor added to analytic bounds so exact agreement passes at `nu = 0`.
const BOUND_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorBlocks {
    pub r: OperatorMatrix,
    pub q: OperatorMatrix,
    pub a: OperatorMatrix,
    /// `κ_{ν,ℓ} = (iνπ)^{2ℓ-1}/(2ℓ-1)!`, `ℓ = 1..(n+1)/2`.
    pub kappa_odd: Vec<Complex64>,
    /// `κ_{ν,k} = (iνπ)^{2k}/(2k)!`, `k = 1..m/2`.
    pub kappa_even: Vec<Complex64>,
    /// Highest power kept, `λ - 1`.
    pub order: usize,
    /// `(νπ)^λ/λ! · e^{νπ}`, bounding the per-entry exponential tail.
    pub remainder_bound: f64,
}

impl TaylorBlocks {
    /// `(I + ℜ)δ + Aε + Q`.
    pub fn block_form(&self, delta: f64, eps: f64) -> Result<OperatorMatrix, ExoticError> {
        let id = OperatorMatrix::identity(self.r.basis());
        Ok(id
            .add(&self.r)?
            .scale(Complex64::new(delta, 0.0))
            .add(&self.a.scale(Complex64::new(eps, 0.0)))?
            .add(&self.q)?)
    }
}

pub fn remainder_bound(nu: f64, lambda: usize) -> f64 {
    let x = (nu * std::f64::consts::PI).abs();
    let mut term = 1.0;
    for k in 1..=lambda {
        term *= x / k as f64;
    }
    term * x.exp()
}

fn check_period(k: &OperatorMatrix, lambda: usize) -> Result<(), ExoticError> {
    let dev = k
        .pow(lambda as u32)
        .sub(&OperatorMatrix::identity(k.basis()))?
        .frobenius_norm();
    if dev > KLEIN_PERIOD_TOL {
        return Err(ExoticError::invalid(format!(
            "K^lambda = I violated by {dev:e} (lambda = {lambda})"
        )));
    }
    Ok(())
}

pub fn taylor_blocks(
    params: &DeformationParams,
    k_i: &OperatorMatrix,
    k_j: &OperatorMatrix,
    c_ji: &OperatorMatrix,
    d_ji: &OperatorMatrix,
) -> Result<TaylorBlocks, ExoticError> {
    let lambda = params.lambda;
    check_period(k_i, lambda)?;
    check_period(k_j, lambda)?;
    let basis = k_i.basis().clone();
    let c = |p: usize| params.taylor_coefficient(p);
    let (n, m) = truncation_orders(lambda);
    let half = Complex64::new(0.5, 0.0);

    let kappa_odd: Vec<Complex64> = (1..=n).step_by(2).map(c).collect();
    let kappa_even: Vec<Complex64> = (2..=m).step_by(2).map(c).collect();
    let mut r = OperatorMatrix::zeros(&basis);
    for (l, kappa) in kappa_odd.iter().enumerate() {
        let p = (2 * l + 1) as u32;
        r = r.add(&k_i.pow(p).sub(&k_j.pow(p))?.scale(kappa * half))?;
    }
    for (k, kappa) in kappa_even.iter().enumerate() {
        let p = (2 * k + 2) as u32;
        r = r.add(&k_i.pow(p).add(&k_j.pow(p))?.scale(kappa * half))?;
    }

    let minus_kj = k_j.neg();
    let mut q = OperatorMatrix::zeros(&basis);
    for p in 0..lambda {
        let term = minus_kj
            .pow(p as u32)
            .mul(c_ji)?
            .sub(&k_i.pow(p as u32).mul(d_ji)?)?;
        q = q.add(&term.scale(c(p)))?;
    }
    let q = q.scale(Complex64::new(0.0, -0.5));

    let diff = k_i.sub(k_j)?;
    let mut series = OperatorMatrix::identity(&basis);
    for alpha in 0..lambda {
        series = series.add(&diff.pow(alpha as u32).scale(c(alpha)))?;
    }
    let a = series.scale(Complex64::new(0.0, 1.0) * params.theta * params.mu_omega * 0.5);

    Ok(TaylorBlocks {
        r,
        q,
        a,
        kappa_odd,
        kappa_even,
        order: lambda.saturating_sub(1),
        remainder_bound: remainder_bound(params.nu, lambda),
    })
}

/// Block forms of `[b⁺_i, b⁺_j]_χ` and `[b⁻_i, b⁻_j]_χ`, in that order.
/// Unlike the `[b⁻, b⁺]` form these use `K_j^p` (no sign) in the `C`/`D`
/// sum, and the `b⁺b⁺` form expands in `(-iνπ)`.
pub fn ladder_pair_blocks(
    params: &DeformationParams,
    k_i: &OperatorMatrix,
    k_j: &OperatorMatrix,
    c_ji: &OperatorMatrix,
    d_ji: &OperatorMatrix,
    delta: f64,
    eps: f64,
) -> Result<(OperatorMatrix, OperatorMatrix), ExoticError> {
    let lambda = params.lambda;
    check_period(k_i, lambda)?;
    check_period(k_j, lambda)?;
    let basis = k_i.basis();
    let sum_k = k_i.add(k_j)?;
    let theta_term = Complex64::new(0.0, -0.5) * params.mu_omega * params.theta;
    let build = |conj: bool| -> Result<OperatorMatrix, ExoticError> {
        let coeff = |p: usize| {
            let c = params.taylor_coefficient(p);
            if conj {
                c.conj()
            } else {
                c
            }
        };
        let mut acc = OperatorMatrix::zeros(basis);
        for alpha in 1..lambda {
            let a = alpha as u32;
            let diff = if conj {
                k_j.pow(a).sub(&k_i.pow(a))?
            } else {
                k_i.pow(a).sub(&k_j.pow(a))?
            };
            acc = acc
                .add(&diff.scale(coeff(alpha) * 0.5 * delta))?
                .add(&sum_k.pow(a).scale(coeff(alpha) * theta_term * eps))?;
        }
        let mut q = OperatorMatrix::zeros(basis);
        for p in 0..lambda {
            let term = k_j
                .pow(p as u32)
                .mul(c_ji)?
                .sub(&k_i.pow(p as u32).mul(d_ji)?)?;
            q = q.add(&term.scale(coeff(p)))?;
        }
        let sign = if conj { -0.5 } else { 0.5 };
        Ok(acc.add(&q.scale(Complex64::new(0.0, sign)))?)
    };
    Ok((build(true)?, build(false)?))
}

/// `Σ_{p<λ} (iνπ)^p/p! K^p`.
pub fn xi_polynomial(
    params: &DeformationParams,
    k: &OperatorMatrix,
) -> Result<OperatorMatrix, ExoticError> {
    let mut acc = OperatorMatrix::zeros(k.basis());
    for p in 0..params.lambda {
        acc = acc.add(&k.pow(p as u32).scale(params.taylor_coefficient(p)))?;
    }
    Ok(acc)
}

fn record(
    label: &str,
    diff: &OperatorMatrix,
    lhs: &OperatorMatrix,
    mask: usize,
    tolerance: f64,
    measured: bool,
) -> RelationRecord {
    let keep = diff.basis().retained_indices(mask);
    let masked = diff.restricted_norm(&keep, &keep);
    let status = if measured {
        RelationStatus::Measured
    } else if masked <= tolerance {
        RelationStatus::Pass
    } else {
        RelationStatus::Fail
    };
    RelationRecord {
        label: label.to_string(),
        raw_norm: diff.frobenius_norm(),
        masked_norm: masked,
        relative_norm: masked / lhs.restricted_norm(&keep, &keep).max(1.0),
        mask_levels: mask,
        excluded_columns: 0,
        tolerance,
        status,
    }
}

/// Compares the single-mode `[b⁻, b⁺]_χ` with its block form. Records, each
/// judged on the absolute masked norm against an analytic bound:
///
/// - `bracket_vs_blocks`: matrix bracket against `I + ℜ + Q`, bound `√D b`.
/// - `exact_rhs_vs_blocks`: exact-ξ right-hand side against the blocks,
///   bound `b (√D + (|C| + |D|)/2)`.
/// - `xi_exact_vs_poly`: spectral ξ against its truncated series, bound `√D b`.
/// - `bpbp_vs_blocks`, `bmbm_vs_blocks`: the same-sign brackets against
///   their block forms; measured only.
/// - `bracket_vs_exact_rhs`: matrix bracket against the exact right-hand
///   side; measured only.
pub fn check_taylor_consistency(
    basis: &FockBasis,
    params: &DeformationParams,
    spec: &StructureFunctionSpec,
) -> Result<ResidualReport, ExoticError> {
    if basis.lambda() < 3 {
        return Err(ExoticError::invalid(
            "the Taylor-block check needs lambda >= 3",
        ));
    }
    let mode = build_mode(basis, params, spec)?;
    let (x, p, _) = mode.phase_space(MomentumChoice::Inversion)?;
    let one_minus_chi = Complex64::new(1.0, 0.0) - params.chi;
    let c = p.mul(&x)?.scale(one_minus_chi);
    let d = x.mul(&p)?.scale(one_minus_chi);
    let blocks = taylor_blocks(params, &mode.klein, &mode.klein, &c, &d)?;
    let block_rhs = blocks.block_form(1.0, 0.0)?;
    let lhs = q_bracket(&mode.lowering, &mode.raising, params.chi)?;

    let half = Complex64::new(0.5, 0.0);
    let exact_rhs = mode.xi.add(&mode.xi_inverse)?.scale(half).sub(
        &mode
            .xi_inverse
            .mul(&c)?
            .sub(&mode.xi.mul(&d)?)?
            .scale(Complex64::new(0.0, 0.5)),
    )?;
    let b = blocks.remainder_bound;
    let root_d = (basis.dim() as f64).sqrt();
    let poly = xi_polynomial(params, &mode.klein)?;
    let pair = ladder_pair_blocks(params, &mode.klein, &mode.klein, &c, &d, 1.0, 0.0)?;

    let records = vec![
        record(
            "bracket_vs_blocks",
            &lhs.sub(&block_rhs)?,
            &lhs,
            2,
            root_d * b + BOUND_FLOOR,
            false,
        ),
        record(
            "exact_rhs_vs_blocks",
            &exact_rhs.sub(&block_rhs)?,
            &exact_rhs,
            0,
            b * (root_d + 0.5 * (c.frobenius_norm() + d.frobenius_norm())) + BOUND_FLOOR,
            false,
        ),
        record(
            "xi_exact_vs_poly",
            &mode.xi.sub(&poly)?,
            &mode.xi,
            0,
            root_d * b + BOUND_FLOOR,
            false,
        ),
        record(
            "bpbp_vs_blocks",
            &q_bracket(&mode.raising, &mode.raising, params.chi)?.sub(&pair.0)?,
            &mode.raising,
            2,
            root_d * b + BOUND_FLOOR,
            true,
        ),
        record(
            "bmbm_vs_blocks",
            &q_bracket(&mode.lowering, &mode.lowering, params.chi)?.sub(&pair.1)?,
            &mode.lowering,
            2,
            root_d * b + BOUND_FLOOR,
            true,
        ),
        record(
            "bracket_vs_exact_rhs",
            &lhs.sub(&exact_rhs)?,
            &lhs,
            2,
            root_d * b + BOUND_FLOOR,
            true,
        ),
    ];
    Ok(ResidualReport {
        presentation: "taylor_blocks".to_string(),
        mode_dims: basis.mode_dims().to_vec(),
        lambda: basis.lambda(),
        params: vec![
            ("chi".to_string(), params.chi),
            ("nu".to_string(), Complex64::new(params.nu, 0.0)),
            ("theta".to_string(), params.theta),
        ],
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exotic::{make_params, FChoice, Sign};
    use crate::fock::{klein_operator, make_fock_space};

    fn params(nu: f64, lambda: usize) -> DeformationParams {
        make_params(nu, Sign::Plus, 1.0, lambda, FChoice::HalfChi).unwrap()
    }

    #[test]
    fn kappa_values() {
        let b = make_fock_space(8, 4).unwrap();
        let k = klein_operator(&b);
        let z = OperatorMatrix::zeros(&b);
        let t = taylor_blocks(&params(0.1, 4), &k, &k, &z, &z).unwrap();
        assert!((t.kappa_odd[0] - Complex64::new(0.0, 0.1 * std::f64::consts::PI)).norm() < 1e-16);
        assert_eq!(t.kappa_odd.len(), 2);
        assert_eq!(t.kappa_even.len(), 1);
        assert_eq!(t.order, 3);
    }

    #[test]
    fn nu_zero_blocks() {
        let b = make_fock_space(8, 4).unwrap();
        let k = klein_operator(&b);
        let c = OperatorMatrix::identity(&b);
        let d = c.scale(Complex64::new(3.0, 0.0));
        let t = taylor_blocks(&params(0.0, 4), &k, &k, &c, &d).unwrap();
        assert_eq!(t.r.frobenius_norm(), 0.0);
        assert_eq!(t.a.frobenius_norm(), 0.0);
        // Q = -(i/2)(C - D)
        let want = c.sub(&d).unwrap().scale(Complex64::new(0.0, -0.5));
        assert!(t.q.sub(&want).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn odd_part_cancels_on_the_diagonal() {
        let b = make_fock_space(8, 4).unwrap();
        let k = klein_operator(&b);
        let z = OperatorMatrix::zeros(&b);
        let prm = params(0.2, 4);
        let t = taylor_blocks(&prm, &k, &k, &z, &z).unwrap();
        let even = k.pow(2).scale(prm.taylor_coefficient(2));
        assert!(t.r.sub(&even).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn bound_arithmetic() {
        let x = 0.1 * std::f64::consts::PI;
        let b4 = remainder_bound(0.1, 4);
        assert!((b4 - x.powi(4) / 24.0 * x.exp()).abs() < 1e-18);
        assert!((b4 - 5.6e-4).abs() < 0.1e-4, "{b4}");
        let b8 = remainder_bound(0.1, 8);
        assert!((b8 - x.powi(8) / 40320.0 * x.exp()).abs() < 1e-22);
        assert!((b8 - 3.22e-9).abs() < 0.01e-9, "{b8}");
    }

    #[test]
    fn same_sign_blocks_vanish_at_nu_zero_without_c_and_d() {
        let b = make_fock_space(8, 4).unwrap();
        let k = klein_operator(&b);
        let z = OperatorMatrix::zeros(&b);
        let (pp, mm) = ladder_pair_blocks(&params(0.0, 4), &k, &k, &z, &z, 1.0, 0.0).unwrap();
        assert_eq!(pp.frobenius_norm(), 0.0);
        assert_eq!(mm.frobenius_norm(), 0.0);
    }

    #[test]
    fn period_violation_is_rejected() {
        let b = make_fock_space(8, 4).unwrap();
        let k = klein_operator(&b).scale(Complex64::new(1.1, 0.0));
        let z = OperatorMatrix::zeros(&b);
        assert!(taylor_blocks(&params(0.1, 4), &k, &k, &z, &z).is_err());
    }

    #[test]
    fn consistency_at_nu_zero() {
        let b = make_fock_space(16, 4).unwrap();
        let rep =
            check_taylor_consistency(&b, &params(0.0, 4), &StructureFunctionSpec::undeformed(4))
                .unwrap();
        for r in &rep.records {
            assert!(r.masked_norm < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn truncation_checks_hold_for_small_nu() {
        let b = make_fock_space(16, 4).unwrap();
        let rep =
            check_taylor_consistency(&b, &params(0.1, 4), &StructureFunctionSpec::undeformed(4))
                .unwrap();
        assert_eq!(
            rep.record("xi_exact_vs_poly").unwrap().status,
            RelationStatus::Pass
        );
        assert_eq!(
            rep.record("exact_rhs_vs_blocks").unwrap().status,
            RelationStatus::Pass
        );
    }
}
