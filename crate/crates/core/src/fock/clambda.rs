//! Building blocks of the C_λ-extended oscillator algebra on a single mode:
//! number operator, grading projectors, Klein operator, structure function
//! and the ladder pair it defines.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{FockBasis, FockError, OperatorMatrix};

/// Agreement required between the exponential-sum projector and the
/// congruence indicator.
pub const PROJECTOR_CROSSCHECK_TOL: f64 = 1e-13;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `e^{2πi k/λ}` with `k` already reduced modulo `λ`, so the angle stays in
/// `[0, 2π)` and carries no large-argument rounding.
pub(crate) fn root_of_unity(k: usize, lambda: usize) -> Complex64 {
    let r = k % lambda;
    if (4 * r).is_multiple_of(lambda) {
        return match 4 * r / lambda {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / lambda as f64)
}

/// `N|n> = n|n>`.
pub fn number_operator(basis: &FockBasis) -> OperatorMatrix {
    OperatorMatrix::from_diagonal(basis, (0..basis.dim()).map(|n| real(n as f64)))
        .expect("diagonal length equals basis dimension")
}

/// Projector onto the levels `n ≡ mu (mod λ)`.
///
/// Evaluated as `(1/λ) Σ_ν e^{2πiν(n-μ)/λ}` and cross-checked against the
/// congruence indicator; disagreement beyond [`PROJECTOR_CROSSCHECK_TOL`]
/// is reported as an error rather than papered over.
pub fn projector(basis: &FockBasis, mu: usize) -> Result<OperatorMatrix, FockError> {
    let lambda = basis.lambda();
    if mu >= lambda {
        return Err(FockError::invalid(format!(
            "projector index mu < lambda violated (mu = {mu}, lambda = {lambda})"
        )));
    }
    let mut diag = Vec::with_capacity(basis.dim());
    for n in 0..basis.dim() {
        // (n - mu) mod λ, kept non-negative
        let shift = (n + lambda - mu % lambda) % lambda;
        let sum: Complex64 = (0..lambda)
            .map(|nu| root_of_unity(nu * shift, lambda))
            .sum();
        let value = sum / lambda as f64;
        let expected = if n % lambda == mu { 1.0 } else { 0.0 };
        let dev = (value - real(expected)).norm();
        if dev > PROJECTOR_CROSSCHECK_TOL {
            return Err(FockError::ProjectorMismatch {
                mu,
                level: n,
                deviation: dev,
            });
        }
        diag.push(value);
    }
    OperatorMatrix::from_diagonal(basis, diag)
}

/// All `λ` projectors `P_0 .. P_{λ-1}`.
pub fn projectors(basis: &FockBasis) -> Result<Vec<OperatorMatrix>, FockError> {
    (0..basis.lambda()).map(|mu| projector(basis, mu)).collect()
}

/// `K = e^{2πiN/λ}`; for `λ = 2` this is `(-1)^N`.
pub fn klein_operator(basis: &FockBasis) -> OperatorMatrix {
    let lambda = basis.lambda();
    OperatorMatrix::from_diagonal(basis, (0..basis.dim()).map(|n| root_of_unity(n, lambda)))
        .expect("diagonal length equals basis dimension")
}

/// Deformation coefficients `α_0 .. α_{λ-1}` of a generalized deformed
/// oscillator, with the partial sums `β_μ = Σ_{ν<μ} α_ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureFunctionSpec {
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

impl StructureFunctionSpec {
    /// Validates `Σ α = 0` (to input precision) and `β_μ > -1` for
    /// `μ = 1 .. λ-1`.
    pub fn new(alphas: Vec<f64>) -> Result<Self, FockError> {
        if alphas.is_empty() {
            return Err(FockError::invalid("alphas must have lambda >= 1 entries"));
        }
        if let Some(a) = alphas.iter().find(|a| !a.is_finite()) {
            return Err(FockError::invalid(format!("alpha {a} is not finite")));
        }
        let mut failures = Vec::new();
        let total: f64 = alphas.iter().sum();
        let scale: f64 = 1.0 + alphas.iter().map(|a| a.abs()).sum::<f64>();
        if total.abs() > 1e-12 * scale {
            failures.push(format!("sum of alphas = 0 violated (sum = {total:e})"));
        }
        let mut betas = Vec::with_capacity(alphas.len());
        let mut partial = 0.0;
        for (mu, a) in alphas.iter().enumerate() {
            if mu > 0 && partial <= -1.0 {
                failures.push(format!(
                    "partial-sum constraint beta_{mu} > -1 violated (beta_{mu} = {partial})"
                ));
            }
            betas.push(partial);
            partial += a;
        }
        if !failures.is_empty() {
            return Err(FockError::InvalidArgument(failures.join("; ")));
        }
        Ok(Self { alphas, betas })
    }

    /// The undeformed spec `α = 0` of period `lambda`.
    pub fn undeformed(lambda: usize) -> Self {
        Self::new(vec![0.0; lambda.max(1)]).expect("zero alphas are valid")
    }

    /// Calogero–Vasiliev coefficients `(κ, -κ)`.
    pub fn calogero_vasiliev(kappa: f64) -> Result<Self, FockError> {
        Self::new(vec![kappa, -kappa])
    }

    pub fn lambda(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// `F(n) = n + β_{n mod λ}`.
    pub fn value(&self, n: usize) -> f64 {
        n as f64 + self.betas[n % self.lambda()]
    }
}

fn check_period(basis: &FockBasis, spec: &StructureFunctionSpec) -> Result<(), FockError> {
    if spec.lambda() != basis.lambda() {
        return Err(FockError::invalid(format!(
            "structure function has {} alphas but basis lambda is {}",
            spec.lambda(),
            basis.lambda()
        )));
    }
    Ok(())
}

/// `F(N) = N + Σ β_μ P_μ` as a diagonal matrix.
pub fn structure_function_operator(
    basis: &FockBasis,
    spec: &StructureFunctionSpec,
) -> Result<OperatorMatrix, FockError> {
    check_period(basis, spec)?;
    OperatorMatrix::from_diagonal(basis, (0..basis.dim()).map(|n| real(spec.value(n))))
}

/// Ladder pair `(a, a†)` with `a†|n> = √F(n+1)|n+1>` and `a|n> = √F(n)|n-1>`.
pub fn ladder_operators(
    basis: &FockBasis,
    spec: &StructureFunctionSpec,
) -> Result<(OperatorMatrix, OperatorMatrix), FockError> {
    check_period(basis, spec)?;
    let d = basis.dim();
    let mut raising = DMatrix::zeros(d, d);
    for n in 0..d - 1 {
        let f = spec.value(n + 1);
        if f < 0.0 {
            return Err(FockError::RepresentationFailure {
                level: n + 1,
                value: f,
            });
        }
        raising[(n + 1, n)] = real(f.sqrt());
    }
    let lowering = raising.transpose();
    Ok((
        OperatorMatrix::new(basis.clone(), lowering)?,
        OperatorMatrix::new(basis.clone(), raising)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_fock_space, masked_residual, q_bracket};

    fn diag_re(m: &OperatorMatrix) -> Vec<f64> {
        m.diagonal().iter().map(|z| z.re).collect()
    }

    #[test]
    fn number_operator_levels() {
        let b = make_fock_space(3, 1).unwrap();
        assert_eq!(diag_re(&number_operator(&b)), vec![0.0, 1.0, 2.0]);
        let b = make_fock_space(2, 2).unwrap();
        assert_eq!(diag_re(&number_operator(&b)), vec![0.0, 1.0]);
        let tr: f64 = diag_re(&number_operator(&make_fock_space(5, 1).unwrap()))
            .iter()
            .sum();
        assert_eq!(tr, 10.0);
    }

    #[test]
    fn parity_projectors() {
        let b = make_fock_space(4, 2).unwrap();
        let p0 = projector(&b, 0).unwrap();
        let p1 = projector(&b, 1).unwrap();
        let close = |v: Vec<f64>, w: [f64; 4]| v.iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-15);
        assert!(close(diag_re(&p0), [1.0, 0.0, 1.0, 0.0]));
        assert!(close(diag_re(&p1), [0.0, 1.0, 0.0, 1.0]));
        assert!(projector(&b, 2).is_err());
    }

    #[test]
    fn period_three_projector_matches_direct_sum() {
        // independent evaluation of (1/3) Σ_ν exp(2πiν(n-2)/3) without
        // integer reduction of the exponent
        let b = make_fock_space(6, 3).unwrap();
        let p2 = projector(&b, 2).unwrap();
        for n in 0..6 {
            let direct: Complex64 = (0..3)
                .map(|nu| {
                    let ang = 2.0 * PI * nu as f64 * (n as f64 - 2.0) / 3.0;
                    Complex64::new(ang.cos(), ang.sin())
                })
                .sum::<Complex64>()
                / 3.0;
            let want = if n % 3 == 2 { 1.0 } else { 0.0 };
            assert!((direct - want).norm() < 1e-14);
            assert!((p2.get(n, n) - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn klein_values() {
        let b = make_fock_space(4, 2).unwrap();
        let k = klein_operator(&b);
        let want = [1.0, -1.0, 1.0, -1.0];
        for (n, w) in want.iter().enumerate() {
            assert!((k.get(n, n) - w).norm() < 1e-15);
        }
        let b = make_fock_space(5, 1).unwrap();
        assert_eq!(klein_operator(&b), OperatorMatrix::identity(&b));
        let b = make_fock_space(4, 4).unwrap();
        let k = klein_operator(&b);
        let want = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        for (n, w) in want.iter().enumerate() {
            assert!((k.get(n, n) - w).norm() < 1e-15);
        }
    }

    #[test]
    fn structure_function_examples() {
        let b = make_fock_space(4, 2).unwrap();
        let s = StructureFunctionSpec::calogero_vasiliev(0.5).unwrap();
        assert_eq!(
            diag_re(&structure_function_operator(&b, &s).unwrap()),
            vec![0.0, 1.5, 2.0, 3.5]
        );
        let b3 = make_fock_space(3, 2).unwrap();
        let s0 = StructureFunctionSpec::undeformed(2);
        assert_eq!(
            diag_re(&structure_function_operator(&b3, &s0).unwrap()),
            vec![0.0, 1.0, 2.0]
        );
    }

    #[test]
    fn structure_function_constraints() {
        let err = StructureFunctionSpec::new(vec![-1.5, 1.5])
            .unwrap_err()
            .to_string();
        assert!(err.contains("beta_1 > -1"), "{err}");
        let err = StructureFunctionSpec::new(vec![0.5, 0.25])
            .unwrap_err()
            .to_string();
        assert!(err.contains("sum of alphas"), "{err}");
        let err = StructureFunctionSpec::new(vec![-2.0, 0.5, 1.5])
            .unwrap_err()
            .to_string();
        assert!(err.contains("beta_1") && err.contains("beta_2"), "{err}");
        // lambda mismatch between spec and basis
        let b = make_fock_space(4, 3).unwrap();
        assert!(structure_function_operator(&b, &StructureFunctionSpec::undeformed(2)).is_err());
    }

    #[test]
    fn ladder_examples() {
        let b = make_fock_space(3, 2).unwrap();
        let (a, ad) = ladder_operators(&b, &StructureFunctionSpec::undeformed(2)).unwrap();
        assert_eq!(ad.get(1, 0).re, 1.0);
        assert_eq!(ad.get(2, 1).re, 2f64.sqrt());
        let aad = a.mul(&ad).unwrap();
        assert!((aad.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((aad.get(1, 1).re - 2.0).abs() < 1e-15);

        let b = make_fock_space(4, 2).unwrap();
        let (a, ad) =
            ladder_operators(&b, &StructureFunctionSpec::new(vec![0.5, -0.5]).unwrap()).unwrap();
        let sub: Vec<f64> = (0..3).map(|n| ad.get(n + 1, n).re).collect();
        assert_eq!(sub, vec![1.5f64.sqrt(), 2f64.sqrt(), 3.5f64.sqrt()]);
        // a|0> = 0
        assert!((0..4).all(|i| a.get(i, 0).norm() == 0.0));
    }

    #[test]
    fn undeformed_heisenberg_residual() {
        let b = make_fock_space(4, 1).unwrap();
        let (a, ad) = ladder_operators(&b, &StructureFunctionSpec::undeformed(1)).unwrap();
        let r = q_bracket(&a, &ad, Complex64::new(1.0, 0.0))
            .unwrap()
            .sub(&OperatorMatrix::identity(&b))
            .unwrap();
        let m0 = masked_residual(&r, 0).unwrap();
        assert!((m0.raw_norm - 4.0).abs() < 1e-14);
        assert!(masked_residual(&r, 1).unwrap().masked_norm < 1e-14);
    }
}
