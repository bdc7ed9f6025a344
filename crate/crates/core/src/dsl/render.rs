//! Canonical text form of presentations. Parsing the output reproduces the
//! input tree for any tree the parser itself can produce.

use std::fmt::Write;

use num_complex::Complex64;

use super::ast::{AlgebraPresentation, Expr, Relation, Scalar};

pub fn render_presentation(p: &AlgebraPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {};", p.name);
    if !p.generators.is_empty() {
        let _ = writeln!(out, "gen {};", p.generators.join(", "));
    }
    for (name, value) in &p.parameters {
        let _ = writeln!(out, "param {name} = {};", render_complex(*value));
    }
    for r in &p.relations {
        let _ = writeln!(
            out,
            "rel {}: {} = {};",
            r.label,
            render_expr(&r.lhs),
            render_expr(&r.rhs)
        );
    }
    out
}

/// `f64` text that the lexer reads back bit-exactly.
fn number(x: f64) -> String {
    format!("{x:?}")
}

pub fn render_complex(z: Complex64) -> String {
    render_scalar(&Scalar::from_complex(z))
}

pub fn render_scalar(s: &Scalar) -> String {
    scalar_at(s, 0)
}

fn scalar_prec(s: &Scalar) -> u8 {
    match s {
        Scalar::Add(..) | Scalar::Sub(..) => 1,
        Scalar::Mul(..) | Scalar::Div(..) => 2,
        Scalar::Neg(_) => 3,
        _ => 4,
    }
}

fn scalar_at(s: &Scalar, min_prec: u8) -> String {
    let body = match s {
        Scalar::Real(x) => number(*x),
        Scalar::Imag(x) => format!("{}i", number(*x)),
        Scalar::Unit => "i".to_string(),
        Scalar::Pi => "pi".to_string(),
        Scalar::Param(p) => p.clone(),
        Scalar::Neg(x) => format!("-{}", scalar_at(x, 3)),
        Scalar::Add(a, b) => format!("{} + {}", scalar_at(a, 1), scalar_at(b, 2)),
        Scalar::Sub(a, b) => format!("{} - {}", scalar_at(a, 1), scalar_at(b, 2)),
        Scalar::Mul(a, b) => format!("{}*{}", scalar_at(a, 2), scalar_at(b, 3)),
        Scalar::Div(a, b) => format!("{}/{}", scalar_at(a, 2), scalar_at(b, 3)),
        Scalar::Exp(x) => format!("exp({})", scalar_at(x, 0)),
        Scalar::Cos(x) => format!("cos({})", scalar_at(x, 0)),
    };
    if scalar_prec(s) < min_prec {
        format!("({body})")
    } else {
        body
    }
}

/// Scalar in factor position: must not start with `-` and must not contain
/// a top-level sum.
fn factor_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Neg(_) | Scalar::Add(..) | Scalar::Sub(..) => format!("({})", scalar_at(s, 0)),
        _ => scalar_at(s, 2),
    }
}

pub fn render_expr(e: &Expr) -> String {
    match e {
        Expr::Add(a, b) => format!("{} + {}", render_expr(a), term(b)),
        Expr::Sub(a, b) => format!("{} - {}", render_expr(a), term(b)),
        Expr::Neg(x) => format!("-{}", term(x)),
        other => term(other),
    }
}

fn term(e: &Expr) -> String {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => format!("({})", render_expr(e)),
        Expr::Product(xs) => xs.iter().map(factor).collect::<Vec<_>>().join(" "),
        other => factor(other),
    }
}

fn factor(e: &Expr) -> String {
    match e {
        Expr::Scalar(s) => factor_scalar(s),
        Expr::Scaled(s, x) => {
            let inner = match x.as_ref() {
                Expr::Scaled(..) | Expr::Scalar(_) => format!("({})", render_expr(x)),
                other => factor(other),
            };
            format!("{}*{}", factor_scalar(s), inner)
        }
        other => primary(other),
    }
}

fn primary(e: &Expr) -> String {
    match e {
        Expr::Identity => "I".to_string(),
        Expr::Gen(g) => g.clone(),
        Expr::Bracket(x, y, q) => format!(
            "bracket({}, {}, {})",
            render_expr(x),
            render_expr(y),
            render_scalar(q)
        ),
        Expr::AntiBracket(x, y) => {
            format!("antibracket({}, {})", render_expr(x), render_expr(y))
        }
        Expr::Dagger(x) => format!("dagger({})", primary(x)),
        Expr::Power(x, k) => format!("power({}, {k})", primary(x)),
        other => format!("({})", render_expr(other)),
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} = {}",
            self.label,
            render_expr(&self.lhs),
            render_expr(&self.rhs)
        )
    }
}
