use num_complex::Complex64;
use qdeform_core::exotic::*;

fn grid() -> impl Iterator<Item = f64> {
    (0..=100).map(|k| k as f64 / 100.0)
}

#[test]
fn theta_conjugates_through_chi_inverse() {
    for sign in [Sign::Plus, Sign::Minus] {
        for nu in grid() {
            let p = make_params(nu, sign, 1.0, 2, FChoice::HalfChi).unwrap();
            let dev = (p.theta.conj() - p.chi.inv() * p.theta).norm();
            assert!(dev <= 1e-14, "nu = {nu}, sign = {sign}: {dev:e}");
        }
    }
}

#[test]
fn default_eta_is_one_at_both_ends() {
    for sign in [Sign::Plus, Sign::Minus] {
        for nu in [0.0, 1.0] {
            let p = make_params(nu, sign, 1.0, 2, FChoice::HalfChi).unwrap();
            assert!(
                (p.eta - Complex64::new(1.0, 0.0)).norm() <= 1e-14,
                "nu = {nu}: {}",
                p.eta
            );
            assert!(p.theta.norm() <= 1e-14);
        }
    }
}

#[test]
fn default_eta_follows_cos_two_pi_nu() {
    for sign in [Sign::Plus, Sign::Minus] {
        for nu in grid() {
            let p = make_params(nu, sign, 1.0, 2, FChoice::HalfChi).unwrap();
            let want = (2.0 * std::f64::consts::PI * nu).cos();
            assert!(
                (p.eta - Complex64::new(want, 0.0)).norm() <= 1e-14,
                "nu = {nu}"
            );
        }
    }
}

#[test]
fn half_integer_anchor() {
    let p = make_params(0.5, Sign::Plus, 1.0, 2, FChoice::HalfChi).unwrap();
    assert!((p.chi - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    assert!((p.theta - Complex64::new(0.5, 0.5)).norm() < 1e-15);
    assert!((p.eta - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    assert!((p.f - Complex64::new(0.5, 0.5)).norm() < 1e-15);
    assert!((Complex64::new(1.0, 0.0) - p.chi - Complex64::new(1.0, -1.0)).norm() < 1e-15);
}

#[test]
fn f_limits() {
    assert!((default_f(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    assert!(default_f(1.0).norm() < 1e-15);
    let p = make_params(1.0, Sign::Plus, 1.0, 2, FChoice::HalfChi).unwrap();
    assert!((p.chi + Complex64::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn sign_branches_are_conjugate() {
    for nu in grid() {
        let plus = make_params(nu, Sign::Plus, 1.0, 2, FChoice::HalfChi).unwrap();
        let minus = make_params(nu, Sign::Minus, 1.0, 2, FChoice::HalfChi).unwrap();
        assert!((plus.chi - minus.chi.conj()).norm() < 1e-15);
        assert!((plus.theta - minus.theta.conj()).norm() < 1e-15);
    }
}

#[test]
fn warnings_track_the_default_f() {
    let p = make_params(0.0, Sign::Plus, 1.0, 2, FChoice::HalfChi).unwrap();
    assert!(!p.warnings().iter().any(|w| w == "f_hermiticity_violated"));
    for nu in [0.1, 0.5, 1.0] {
        let p = make_params(nu, Sign::Plus, 1.0, 2, FChoice::HalfChi).unwrap();
        assert!(
            p.warnings().iter().any(|w| w == "f_hermiticity_violated"),
            "nu = {nu}"
        );
    }
}

#[test]
fn taylor_coefficient_first_odd() {
    let b = qdeform_core::fock::make_fock_space(8, 4).unwrap();
    let k = qdeform_core::fock::klein_operator(&b);
    let z = qdeform_core::fock::OperatorMatrix::zeros(&b);
    let p = make_params(0.1, Sign::Plus, 1.0, 4, FChoice::HalfChi).unwrap();
    let t = taylor_blocks(&p, &k, &k, &z, &z).unwrap();
    assert!((t.kappa_odd[0] - Complex64::new(0.0, 0.314159)).norm() < 1e-5);
}
