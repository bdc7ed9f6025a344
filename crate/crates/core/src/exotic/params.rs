use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::ExoticError;

/// Rotation-direction branch of `chi = exp(±i nu pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl FromStr for Sign {
    type Err = ExoticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(ExoticError::invalid(format!(
                "sign must be + or -, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Choice of the scalar function `f(nu)` entering `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FChoice {
    /// `f = (1 + chi) / 2`. Complex, but `(1 + chi) / f = 2` for every nu.
    #[default]
    HalfChi,
    /// `f = cos^2(nu pi / 2)`. Real, vanishes at nu = 1.
    CosSquared,
    Unit,
}

impl FChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            FChoice::HalfChi => "default",
            FChoice::CosSquared => "cos_squared",
            FChoice::Unit => "unit",
        }
    }
}

impl FromStr for FChoice {
    type Err = ExoticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "default" | "half_chi" => Ok(FChoice::HalfChi),
            "cos_squared" | "cos2" => Ok(FChoice::CosSquared),
            "unit" | "one" => Ok(FChoice::Unit),
            other => Err(ExoticError::invalid(format!(
                "unknown f choice `{other}` (expected default, cos_squared or unit)"
            ))),
        }
    }
}

impl fmt::Display for FChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `exp(sign i nu pi)`, with the exact values at integer nu.
pub fn chi(nu: f64, sign: Sign) -> Complex64 {
    let phase = sign.as_f64() * nu * PI;
    if nu.fract() == 0.0 {
        let even = (nu as i64).rem_euclid(2) == 0;
        return Complex64::new(if even { 1.0 } else { -1.0 }, 0.0);
    }
    Complex64::new(phase.cos(), phase.sin())
}

/// The default `f`: `(1 + exp(i nu pi)) / 2` on the `+` branch.
pub fn default_f(nu: f64) -> Complex64 {
    default_f_branch(nu, Sign::Plus)
}

pub fn default_f_branch(nu: f64, sign: Sign) -> Complex64 {
    (Complex64::new(1.0, 0.0) + chi(nu, sign)) * 0.5
}

fn cos_two_pi(nu: f64) -> f64 {
    // exact at the quarter points so eta(0) = eta(1) = 1 holds to the bit
    let x = (2.0 * nu).rem_euclid(2.0);
    if x == 0.0 {
        1.0
    } else if x == 1.0 {
        -1.0
    } else if x == 0.5 || x == 1.5 {
        0.0
    } else {
        (2.0 * PI * nu).cos()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationParams {
    pub nu: f64,
    pub sign: Sign,
    pub mu_omega: f64,
    pub lambda: usize,
    pub chi: Complex64,
    pub theta: Complex64,
    pub eta: Complex64,
    pub f: Complex64,
    pub f_choice: FChoice,
}

pub fn make_params(
    nu: f64,
    sign: Sign,
    mu_omega: f64,
    lambda: usize,
    f_choice: FChoice,
) -> Result<DeformationParams, ExoticError> {
    if !nu.is_finite() {
        return Err(ExoticError::invalid(format!("nu must be finite, got {nu}")));
    }
    if !(mu_omega > 0.0 && mu_omega.is_finite()) {
        return Err(ExoticError::invalid(format!(
            "mu_omega must be > 0, got {mu_omega}"
        )));
    }
    if lambda < 1 {
        return Err(ExoticError::invalid("lambda must be >= 1"));
    }
    let one = Complex64::new(1.0, 0.0);
    let chi = chi(nu, sign);
    let theta = (one + chi) * nu;
    let (f, ratio) = match f_choice {
        FChoice::HalfChi => (default_f_branch(nu, sign), Complex64::new(2.0, 0.0)),
        FChoice::CosSquared => {
            let c = (nu * PI / 2.0).cos();
            let f = c * c;
            if f.abs() < 1e-15 {
                return Err(ExoticError::invalid(format!(
                    "f(nu) = cos^2(nu pi/2) vanishes at nu = {nu}, so eta is undefined"
                )));
            }
            (Complex64::new(f, 0.0), (one + chi) / f)
        }
        FChoice::Unit => (one, one + chi),
    };
    let eta = ratio * 0.5 * cos_two_pi(nu);
    Ok(DeformationParams {
        nu,
        sign,
        mu_omega,
        lambda,
        chi,
        theta,
        eta,
        f,
        f_choice,
    })
}

impl DeformationParams {
    /// Bosonic values: nu = 0, mu omega = 1.
    pub fn bosonic(lambda: usize) -> Self {
        make_params(0.0, Sign::Plus, 1.0, lambda, FChoice::HalfChi).expect("valid bosonic params")
    }

    pub fn chi_inverse(&self) -> Complex64 {
        self.chi.conj()
    }

    /// `(i nu pi)^p / p!`, the Taylor coefficients of `exp(i nu pi K)`.
    pub fn taylor_coefficient(&self, p: usize) -> Complex64 {
        let z = Complex64::new(0.0, self.nu * PI);
        let mut c = Complex64::new(1.0, 0.0);
        for k in 1..=p {
            c = c * z / k as f64;
        }
        c
    }

    /// `conj(theta) - chi^{-1} theta`.
    pub fn theta_hermiticity_defect(&self) -> f64 {
        (self.theta.conj() - self.chi_inverse() * self.theta).norm()
    }

    pub fn eta_hermiticity_defect(&self) -> f64 {
        (self.eta.conj() - self.chi_inverse() * self.eta).norm()
    }

    /// `theta = -(1/mu omega)^2 theta^{-1}`, i.e. `theta^2 (mu omega)^2 = -1`.
    /// `None` when theta vanishes and the condition is meaningless.
    pub fn theta_condition_defect(&self) -> Option<f64> {
        if self.theta.norm() < 1e-15 {
            return None;
        }
        Some((self.theta * self.theta * self.mu_omega * self.mu_omega + 1.0).norm())
    }

    /// Machine-readable warnings about conditions the chosen parameters
    /// break.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.f_choice == FChoice::HalfChi && self.nu != 0.0 {
            w.push("f_hermiticity_violated".to_string());
        }
        if self.eta_hermiticity_defect() > 1e-12 {
            w.push("eta_hermiticity_violated".to_string());
        }
        if self.theta_condition_defect().is_some_and(|d| d > 1e-12) {
            w.push("theta_condition_violated".to_string());
        }
        w
    }
}
