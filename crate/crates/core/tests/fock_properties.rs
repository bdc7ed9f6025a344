mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use qdeform_core::fock::*;

fn diag_close(m: &OperatorMatrix, want: impl Fn(usize) -> f64, tol: f64) -> bool {
    (0..m.dim()).all(|n| (m.get(n, n) - Complex64::new(want(n), 0.0)).norm() <= tol)
}

fn off_diagonal_norm(m: &OperatorMatrix) -> f64 {
    let mut s = 0.0;
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            if r != c {
                s += m.get(r, c).norm_sqr();
            }
        }
    }
    s.sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projectors_resolve_identity(lambda in 1usize..=16, extra in 0usize..=96) {
        let dim = lambda.max(2) + extra;
        let b = make_fock_space(dim, lambda).unwrap();
        let ps = projectors(&b).unwrap();
        let id = OperatorMatrix::identity(&b);
        let mut sum = OperatorMatrix::zeros(&b);
        for p in &ps {
            sum = sum.add(p).unwrap();
        }
        prop_assert!(sum.sub(&id).unwrap().frobenius_norm() < 1e-13);
        for (mu, p) in ps.iter().enumerate() {
            for (nu, q) in ps.iter().enumerate() {
                let prod = p.mul(q).unwrap();
                let want = if mu == nu { q.clone() } else { OperatorMatrix::zeros(&b) };
                prop_assert!(prod.sub(&want).unwrap().frobenius_norm() < 1e-13);
            }
        }
        let n = number_operator(&b);
        for p in &ps {
            prop_assert_eq!(q_bracket(&n, p, Complex64::new(1.0, 0.0)).unwrap().frobenius_norm(), 0.0);
        }
    }

    #[test]
    fn klein_has_period_lambda(lambda in 1usize..=16, extra in 0usize..=64) {
        let dim = lambda.max(2) + extra;
        let b = make_fock_space(dim, lambda).unwrap();
        let k = klein_operator(&b);
        let dev = k.pow(lambda as u32).sub(&OperatorMatrix::identity(&b)).unwrap().frobenius_norm();
        prop_assert!(dev < 1e-12);
    }

    #[test]
    fn ladders_reproduce_the_structure_function(lambda in 1usize..=6, extra in 0usize..=40, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let spec = StructureFunctionSpec::new(common::random_alphas(&mut rng, lambda)).unwrap();
        let dim = lambda.max(2) + extra;
        let b = make_fock_space(dim, lambda).unwrap();
        let (a, ad) = ladder_operators(&b, &spec).unwrap();
        let ada = ad.mul(&a).unwrap();
        prop_assert!(off_diagonal_norm(&ada) < 1e-12);
        prop_assert!(diag_close(&ada, |n| spec.value(n), 1e-12));
        let aad = a.mul(&ad).unwrap();
        let f_next = OperatorMatrix::from_diagonal(&b, (0..dim).map(|n| Complex64::new(spec.value(n + 1), 0.0))).unwrap();
        prop_assert!(masked_residual(&aad.sub(&f_next).unwrap(), 1).unwrap().masked_norm < 1e-12);
        let ps = projectors(&b).unwrap();
        for mu in 0..lambda {
            let lhs = ad.mul(&ps[mu]).unwrap();
            let rhs = ps[(mu + 1) % lambda].mul(&ad).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() < 1e-13);
        }
    }

    #[test]
    fn q_bracket_is_bilinear(d in 2usize..=8, seed in any::<u64>(), qr in -2.0f64..2.0, qi in -2.0f64..2.0) {
        let mut rng = common::rng(seed);
        let b = make_fock_space(d, 1).unwrap();
        let m = |rng: &mut _| OperatorMatrix::new(b.clone(), common::random_matrix(rng, d)).unwrap();
        let (x, y, z) = (m(&mut rng), m(&mut rng), m(&mut rng));
        let q = Complex64::new(qr, qi);
        let s = Complex64::new(0.3, -1.2);
        let lhs = q_bracket(&x.add(&y.scale(s)).unwrap(), &z, q).unwrap();
        let rhs = q_bracket(&x, &z, q).unwrap().add(&q_bracket(&y, &z, q).unwrap().scale(s)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() < 1e-12);
        let lhs = q_bracket(&z, &x.add(&y.scale(s)).unwrap(), q).unwrap();
        let rhs = q_bracket(&z, &x, q).unwrap().add(&q_bracket(&z, &y, q).unwrap().scale(s)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() < 1e-12);
        let one = Complex64::new(1.0, 0.0);
        let anti = q_bracket(&x, &y, one).unwrap().add(&q_bracket(&y, &x, one).unwrap()).unwrap();
        prop_assert!(anti.frobenius_norm() < 1e-12);
    }
}

#[test]
fn boson_truncation_artifact_sits_in_the_top_level() {
    let b = make_fock_space(4, 1).unwrap();
    let (a, ad) = ladder_operators(&b, &StructureFunctionSpec::undeformed(1)).unwrap();
    let c = q_bracket(&a, &ad, Complex64::new(1.0, 0.0)).unwrap();
    assert!(diag_close(&c, |n| if n == 3 { -3.0 } else { 1.0 }, 1e-14));
    let r = c.sub(&OperatorMatrix::identity(&b)).unwrap();
    let res = masked_residual(&r, 0).unwrap();
    assert!((res.raw_norm - 4.0).abs() < 1e-14);
    assert!(masked_residual(&r, 1).unwrap().masked_norm < 1e-15);
}

#[test]
fn calogero_vasiliev_closure() {
    let b = make_fock_space(64, 2).unwrap();
    let k = klein_operator(&b);
    for kappa in [-0.9, -0.5, 0.0, 0.5, 2.0] {
        let (a, ad) = ladder_operators(
            &b,
            &StructureFunctionSpec::calogero_vasiliev(kappa).unwrap(),
        )
        .unwrap();
        let lhs = q_bracket(&a, &ad, Complex64::new(1.0, 0.0)).unwrap();
        let rhs = OperatorMatrix::identity(&b)
            .add(&k.scale(Complex64::new(kappa, 0.0)))
            .unwrap();
        assert!(
            masked_residual(&lhs.sub(&rhs).unwrap(), 1)
                .unwrap()
                .masked_norm
                < 1e-12
        );
        let anti = q_bracket(&k, &ad, Complex64::new(-1.0, 0.0)).unwrap();
        assert_eq!(anti.frobenius_norm(), 0.0, "kappa = {kappa}");
    }
}

#[test]
fn partial_sum_violation_is_reported() {
    let err = StructureFunctionSpec::new(vec![-1.5, 1.5]).unwrap_err();
    assert!(err.to_string().contains("beta_1 > -1"), "{err}");
}
