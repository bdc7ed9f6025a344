//! Random presentations, an independent matrix oracle and fuzz inputs.
//! Shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use qdeform_core::dsl::{AlgebraPresentation, Expr, Relation, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GENS: [&str; 3] = ["a", "b", "c"];
pub const PARAMS: [&str; 2] = ["s", "t"];
const LITERALS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 3.5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng, depth: u32) -> Scalar {
    let leaf = depth == 0 || rng.random_bool(0.5);
    if leaf {
        return match rng.random_range(0..5) {
            0 => Scalar::Real(LITERALS[rng.random_range(0..LITERALS.len())]),
            1 => Scalar::Imag(LITERALS[rng.random_range(0..LITERALS.len())]),
            2 => Scalar::Unit,
            3 => Scalar::Pi,
            _ => Scalar::param(PARAMS[rng.random_range(0..PARAMS.len())]),
        };
    }
    let op = rng.random_range(0..7);
    let mut sub = || Box::new(random_scalar(rng, depth - 1));
    match op {
        0 => Scalar::Neg(sub()),
        1 => Scalar::Add(sub(), sub()),
        2 => Scalar::Sub(sub(), sub()),
        3 => Scalar::Mul(sub(), sub()),
        4 => Scalar::Div(sub(), sub()),
        5 => Scalar::Exp(sub()),
        _ => Scalar::Cos(sub()),
    }
}

/// True when no generator or identity occurs, so the tree could be read
/// back as a scalar once parenthesized.
fn scalar_only(e: &Expr) -> bool {
    match e {
        Expr::Scalar(_) => true,
        Expr::Identity | Expr::Gen(_) | Expr::Bracket(..) | Expr::AntiBracket(..) => false,
        Expr::Dagger(x) | Expr::Power(x, _) | Expr::Neg(x) | Expr::Scaled(_, x) => scalar_only(x),
        Expr::Add(a, b) | Expr::Sub(a, b) => scalar_only(a) && scalar_only(b),
        Expr::Product(xs) => xs.iter().all(scalar_only),
    }
}

fn gen_leaf(rng: &mut ChaCha8Rng) -> Expr {
    Expr::gen(GENS[rng.random_range(0..GENS.len())])
}

/// A tree in the shape the parser produces for its own rendering.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..10) {
            0 => Expr::Identity,
            1..=3 => Expr::Scalar(random_scalar(rng, 1)),
            _ => gen_leaf(rng),
        };
    }
    let d = depth - 1;
    let e = match rng.random_range(0..9) {
        0 => Expr::Add(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
        1 => Expr::Sub(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
        2 => Expr::Neg(Box::new(random_expr(rng, d))),
        3 => {
            let n = rng.random_range(2..4);
            Expr::Product((0..n).map(|_| random_expr(rng, d)).collect())
        }
        4 => {
            let inner = match random_expr(rng, d) {
                Expr::Scalar(_) | Expr::Scaled(..) => gen_leaf(rng),
                x => x,
            };
            Expr::Scaled(random_scalar(rng, 1), Box::new(inner))
        }
        5 => Expr::Bracket(
            Box::new(random_expr(rng, d)),
            Box::new(random_expr(rng, d)),
            random_scalar(rng, 1),
        ),
        6 => Expr::AntiBracket(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
        7 => Expr::Dagger(Box::new(random_expr(rng, d))),
        _ => Expr::Power(Box::new(random_expr(rng, d)), rng.random_range(0..4)),
    };
    if scalar_only(&e) {
        gen_leaf(rng)
    } else {
        e
    }
}

pub fn random_params(rng: &mut ChaCha8Rng) -> Vec<(String, Complex64)> {
    PARAMS
        .iter()
        .map(|p| {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            (p.to_string(), z)
        })
        .collect()
}

pub fn random_presentation(rng: &mut ChaCha8Rng) -> AlgebraPresentation {
    let n = rng.random_range(1..5);
    AlgebraPresentation {
        name: format!("random{}", rng.random_range(0..1000)),
        generators: GENS.iter().map(|g| g.to_string()).collect(),
        parameters: random_params(rng),
        relations: (0..n)
            .map(|k| Relation::new(format!("r{k}"), random_expr(rng, 3), random_expr(rng, 2)))
            .collect(),
    }
}

pub fn oracle_scalar(s: &Scalar, params: &HashMap<String, Complex64>) -> Complex64 {
    let r = |x: &Scalar| oracle_scalar(x, params);
    match s {
        Scalar::Real(x) => Complex64::new(*x, 0.0),
        Scalar::Imag(x) => Complex64::new(0.0, *x),
        Scalar::Unit => Complex64::i(),
        Scalar::Pi => Complex64::new(std::f64::consts::PI, 0.0),
        Scalar::Param(p) => params[p],
        Scalar::Neg(x) => -r(x),
        Scalar::Add(a, b) => r(a) + r(b),
        Scalar::Sub(a, b) => r(a) - r(b),
        Scalar::Mul(a, b) => r(a) * r(b),
        Scalar::Div(a, b) => r(a) / r(b),
        Scalar::Exp(x) => r(x).exp(),
        Scalar::Cos(x) => r(x).cos(),
    }
}

/// Straight-line evaluation on bare matrices.
pub fn oracle_eval(
    e: &Expr,
    gens: &HashMap<String, DMatrix<Complex64>>,
    params: &HashMap<String, Complex64>,
    d: usize,
) -> DMatrix<Complex64> {
    let ev = |x: &Expr| oracle_eval(x, gens, params, d);
    let id = DMatrix::<Complex64>::identity(d, d);
    match e {
        Expr::Identity => id,
        Expr::Gen(g) => gens[g].clone(),
        Expr::Scalar(s) => id * oracle_scalar(s, params),
        Expr::Scaled(s, x) => ev(x) * oracle_scalar(s, params),
        Expr::Product(xs) => xs.iter().fold(id, |acc, x| acc * ev(x)),
        Expr::Add(a, b) => ev(a) + ev(b),
        Expr::Sub(a, b) => ev(a) - ev(b),
        Expr::Neg(x) => -ev(x),
        Expr::Bracket(a, b, q) => {
            let (x, y) = (ev(a), ev(b));
            &x * &y - (&y * &x) * oracle_scalar(q, params)
        }
        Expr::AntiBracket(a, b) => {
            let (x, y) = (ev(a), ev(b));
            &x * &y + &y * &x
        }
        Expr::Dagger(x) => ev(x).adjoint(),
        Expr::Power(x, k) => {
            let m = ev(x);
            (0..*k).fold(id, |acc, _| acc * &m)
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

const VOCAB: &[&str] = &[
    "algebra",
    "gen",
    "param",
    "rel",
    "bracket(",
    "antibracket(",
    "dagger(",
    "power(",
    "exp(",
    "cos(",
    "I",
    "i",
    "pi",
    "a",
    "b",
    "x1",
    "q",
    ";",
    ":",
    ",",
    "=",
    "+",
    "-",
    "*",
    "/",
    "(",
    ")",
    "1",
    "0.5",
    "2.5i",
    "1e308",
    "1e-400",
    "#c\n",
    "\n",
    " ",
    "\u{3bb}",
    "99999999999",
];

const SEED_SOURCE: &str = "algebra f;\ngen a, b;\nparam q = 0.5 - 1.0i;\n\
rel r1: bracket(a, dagger(a), q) = I + 2.0*power(b, 2);\n\
rel r2: antibracket(a, b) = -(a b) + exp(i*pi/2)*b;\n";

/// Random bytes, token soup, or a mutated valid source, by turns.
pub fn fuzz_input(rng: &mut ChaCha8Rng, k: usize) -> String {
    match k % 3 {
        0 => {
            let n = rng.random_range(0..200);
            let bytes: Vec<u8> = (0..n).map(|_| rng.random()).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        }
        1 => {
            let n = rng.random_range(0..80);
            (0..n)
                .map(|_| VOCAB[rng.random_range(0..VOCAB.len())])
                .collect::<Vec<_>>()
                .join(" ")
        }
        _ => {
            let mut chars: Vec<char> = SEED_SOURCE.chars().collect();
            for _ in 0..rng.random_range(1..6) {
                let pos = rng.random_range(0..=chars.len());
                match rng.random_range(0..3) {
                    0 if pos < chars.len() => {
                        chars.remove(pos);
                    }
                    1 => {
                        let v = VOCAB[rng.random_range(0..VOCAB.len())];
                        for (j, c) in v.chars().enumerate() {
                            chars.insert(pos + j, c);
                        }
                    }
                    _ if pos + 1 < chars.len() => chars.swap(pos, pos + 1),
                    _ => {}
                }
            }
            chars.into_iter().collect()
        }
    }
}

/// Deeply nested input that must come back as a diagnostic.
pub fn deep_input(depth: usize) -> String {
    format!(
        "algebra d; gen a; rel r: {}a{} = a;",
        "(".repeat(depth),
        ")".repeat(depth)
    )
}

/// A valid alpha vector of period `lambda`: partial sums drawn in
/// `(-0.95, 3)`, differenced back to alphas, total zero.
pub fn random_alphas(rng: &mut ChaCha8Rng, lambda: usize) -> Vec<f64> {
    let mut betas = vec![0.0];
    betas.extend((1..lambda).map(|_| rng.random_range(-0.95..3.0)));
    betas.push(0.0);
    (0..lambda).map(|mu| betas[mu + 1] - betas[mu]).collect()
}

/// Presentations whose render does not parse back to the same tree.
pub fn round_trip_failures(presentations: &[AlgebraPresentation]) -> Vec<String> {
    use qdeform_core::dsl::{parse_presentation, render_presentation};
    presentations
        .iter()
        .filter_map(|p| {
            let text = render_presentation(p);
            match parse_presentation(&text) {
                Ok(q) if q == *p => None,
                Ok(_) => Some(format!("structure changed:\n{text}")),
                Err(e) => Some(format!("{e}:\n{text}")),
            }
        })
        .collect()
}

/// Largest entrywise gap between the evaluator and [`oracle_eval`] over
/// `draws` random expressions on random `d × d` matrices, scaled by
/// `max(1, max |oracle entry|)`.
pub fn evaluator_max_error(seed: u64, draws: usize, d: usize) -> f64 {
    use qdeform_core::dsl::bind_representation;
    use qdeform_core::fock::{make_fock_space, OperatorMatrix};
    let mut rng = rng(seed);
    let basis = make_fock_space(d, 1).unwrap();
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < draws {
        let mats: HashMap<String, DMatrix<Complex64>> = GENS
            .iter()
            .map(|g| (g.to_string(), random_matrix(&mut rng, d)))
            .collect();
        let params: HashMap<String, Complex64> = random_params(&mut rng).into_iter().collect();
        let e = random_expr(&mut rng, 4);
        let want = oracle_eval(&e, &mats, &params, d);
        if want.iter().any(|z| !z.is_finite()) {
            continue;
        }
        let p = AlgebraPresentation {
            name: "oracle".into(),
            generators: GENS.iter().map(|g| g.to_string()).collect(),
            parameters: params.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            relations: vec![Relation::new("r", e.clone(), Expr::zero())],
        };
        let ops: HashMap<String, OperatorMatrix> = mats
            .iter()
            .map(|(k, m)| {
                (
                    k.clone(),
                    OperatorMatrix::new(basis.clone(), m.clone()).unwrap(),
                )
            })
            .collect();
        let bound = bind_representation(&p, &ops, &params).unwrap();
        let got = bound
            .eval_expr(&e, "r")
            .expect("finite oracle value evaluates");
        let scale = want.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let gap = (got.entries() - &want)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        worst = worst.max(gap / scale);
        done += 1;
    }
    worst
}

/// Parses `n` fuzz inputs; returns the number that panicked. Accepted
/// inputs must also survive a render/parse round trip.
pub fn fuzz_crashes(seed: u64, n: usize) -> usize {
    use qdeform_core::dsl::{parse_presentation, render_presentation};
    let mut rng = rng(seed);
    let mut crashes = 0;
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    for k in 0..n {
        let input = fuzz_input(&mut rng, k);
        let ok = std::panic::catch_unwind(|| match parse_presentation(&input) {
            Ok(p) => parse_presentation(&render_presentation(&p)).as_ref() == Ok(&p),
            Err(e) => !e.to_string().is_empty(),
        });
        if !matches!(ok, Ok(true)) {
            crashes += 1;
        }
    }
    std::panic::set_hook(hook);
    crashes
}
