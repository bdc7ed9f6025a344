//! Built-in relation sets. Each ships as `.qdl` text; the text is produced
//! by the generators below and the shipped files are checked against them.

use std::fmt::Write;

use num_complex::Complex64;

use super::params::DeformationParams;
use super::ExoticError;
use crate::dsl::{parse_presentation, AlgebraPresentation, Expr, Scalar};

const CASE1: &str = include_str!("../../presets/case1.qdl");
const CASE2: &str = include_str!("../../presets/case2.qdl");
const BOSONIC: &str = include_str!("../../presets/bosonic.qdl");
const FERMIONIC_C1: &str = include_str!("../../presets/fermionic_c1.qdl");
const FERMIONIC_C2: &str = include_str!("../../presets/fermionic_c2.qdl");
const GDOA: &str = include_str!("../../presets/gdoa.qdl");
const CALOGERO_VASILIEV: &str = include_str!("../../presets/calogero_vasiliev.qdl");
const DEFORMED_CLAMBDA: &str = include_str!("../../presets/deformed_clambda.qdl");
const BOSON: &str = include_str!("../../presets/boson.qdl");

/// Lambda of the shipped `gdoa.qdl` instance.
pub const GDOA_SHIPPED_LAMBDA: usize = 3;
/// Lambda of the shipped `deformed_clambda.qdl` instance.
pub const DEFORMED_CLAMBDA_SHIPPED_LAMBDA: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Case1,
    Case2,
    Bosonic,
    FermionicCase1,
    FermionicCase2,
    Gdoa,
    CalogeroVasiliev,
    DeformedClambda,
    Boson,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::Case1,
        Preset::Case2,
        Preset::Bosonic,
        Preset::FermionicCase1,
        Preset::FermionicCase2,
        Preset::Gdoa,
        Preset::CalogeroVasiliev,
        Preset::DeformedClambda,
        Preset::Boson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Case1 => "case1",
            Preset::Case2 => "case2",
            Preset::Bosonic => "bosonic",
            Preset::FermionicCase1 => "fermionic_c1",
            Preset::FermionicCase2 => "fermionic_c2",
            Preset::Gdoa => "gdoa",
            Preset::CalogeroVasiliev => "calogero_vasiliev",
            Preset::DeformedClambda => "deformed_clambda",
            Preset::Boson => "boson",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::Case1 => "deformed phase space with deformed [p, x]; two modes, 24 relations",
            Preset::Case2 => "deformed phase space with canonical [p, x]; two modes, 32 relations",
            Preset::Bosonic => "bosonic limit of the ladder relations, q = chi",
            Preset::FermionicCase1 => "nu = 1 anticommutator limit of case1",
            Preset::FermionicCase2 => "nu = 1 anticommutator limit of case2",
            Preset::Gdoa => "C_lambda-extended oscillator (generated for the chosen lambda)",
            Preset::CalogeroVasiliev => "[a, a+] = I + kappa K, {K, a+} = 0",
            Preset::DeformedClambda => {
                "Taylor-block form of the deformed C_lambda algebra (generated for the chosen lambda)"
            }
            Preset::Boson => "single-mode Heisenberg relation",
        }
    }

    pub fn from_name(name: &str) -> Result<Preset, ExoticError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| ExoticError::UnknownPreset(name.to_string()))
    }

    /// The shipped `.qdl` text.
    pub fn shipped_source(self) -> &'static str {
        match self {
            Preset::Case1 => CASE1,
            Preset::Case2 => CASE2,
            Preset::Bosonic => BOSONIC,
            Preset::FermionicCase1 => FERMIONIC_C1,
            Preset::FermionicCase2 => FERMIONIC_C2,
            Preset::Gdoa => GDOA,
            Preset::CalogeroVasiliev => CALOGERO_VASILIEV,
            Preset::DeformedClambda => DEFORMED_CLAMBDA,
            Preset::Boson => BOSON,
        }
    }

    /// Source for grading order `lambda`; only the lambda-dependent presets
    /// differ from the shipped text.
    pub fn source(self, lambda: usize) -> String {
        match self {
            Preset::Gdoa if lambda != GDOA_SHIPPED_LAMBDA => gdoa_source(lambda),
            Preset::DeformedClambda if lambda != DEFORMED_CLAMBDA_SHIPPED_LAMBDA => {
                deformed_clambda_source(lambda)
            }
            _ => self.shipped_source().to_string(),
        }
    }

    /// Source as produced by the generators.
    pub fn generated_source(self) -> String {
        match self {
            Preset::Case1 => case1_source(),
            Preset::Case2 => case2_source(),
            Preset::Bosonic => bosonic_source(),
            Preset::FermionicCase1 => fermionic_c1_source(),
            Preset::FermionicCase2 => fermionic_c2_source(),
            Preset::Gdoa => gdoa_source(GDOA_SHIPPED_LAMBDA),
            Preset::CalogeroVasiliev => calogero_vasiliev_source(),
            Preset::DeformedClambda => deformed_clambda_source(DEFORMED_CLAMBDA_SHIPPED_LAMBDA),
            Preset::Boson => boson_source(),
        }
    }

    pub fn presentation(self, lambda: usize) -> Result<AlgebraPresentation, ExoticError> {
        Ok(parse_presentation(&self.source(lambda))?)
    }
}

/// Labels of relations between different modes.
pub fn cross_mode_labels(p: &AlgebraPresentation) -> Vec<String> {
    p.relations
        .iter()
        .filter(|r| r.label.ends_with("_12") || r.label.ends_with("_21"))
        .map(|r| r.label.clone())
        .collect()
}

/// Numeric values for the parameter names the presets use.
pub fn parameter_value(
    name: &str,
    params: &DeformationParams,
    alphas: &[f64],
) -> Option<Complex64> {
    let re = |x: f64| Complex64::new(x, 0.0);
    match name {
        "chi" => Some(params.chi),
        "theta" => Some(params.theta),
        "eta" => Some(params.eta),
        "mw" => Some(re(params.mu_omega)),
        "nu" => Some(re(params.nu)),
        "f" => Some(params.f),
        "kappa" if alphas.len() == 2 => Some(re(alphas[0])),
        _ => {
            if let Some(k) = name
                .strip_prefix("alpha")
                .and_then(|s| s.parse::<usize>().ok())
            {
                return alphas.get(k).copied().map(re);
            }
            if let Some(p) = name.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
                return Some(params.taylor_coefficient(p));
            }
            None
        }
    }
}

/// Overwrites every recognised parameter with its value for `params`.
pub fn assign_parameters(
    p: AlgebraPresentation,
    params: &DeformationParams,
    alphas: &[f64],
) -> AlgebraPresentation {
    let values: Vec<(String, Complex64)> = p
        .parameters
        .iter()
        .filter_map(|(n, _)| parameter_value(n, params, alphas).map(|v| (n.clone(), v)))
        .collect();
    p.with_parameter_values(values.iter().map(|(n, v)| (n.as_str(), *v)))
}

/// At `chi = -1` every `chi`-bracket is an anticommutator; rewrites those
/// brackets so the presentation says so.
pub fn specialize_brackets(mut p: AlgebraPresentation) -> AlgebraPresentation {
    let Some(chi) = p.parameter("chi") else {
        return p;
    };
    if (chi + 1.0).norm() > 1e-12 {
        return p;
    }
    fn rewrite(e: &mut Expr) {
        match e {
            Expr::Bracket(a, b, q) if *q == Scalar::param("chi") => {
                rewrite(a);
                rewrite(b);
                let a = std::mem::replace(a.as_mut(), Expr::Identity);
                let b = std::mem::replace(b.as_mut(), Expr::Identity);
                *e = Expr::AntiBracket(Box::new(a), Box::new(b));
            }
            Expr::Bracket(a, b, _)
            | Expr::AntiBracket(a, b)
            | Expr::Add(a, b)
            | Expr::Sub(a, b) => {
                rewrite(a);
                rewrite(b);
            }
            Expr::Scaled(_, x) | Expr::Neg(x) | Expr::Dagger(x) | Expr::Power(x, _) => rewrite(x),
            Expr::Product(xs) => xs.iter_mut().for_each(rewrite),
            Expr::Identity | Expr::Gen(_) | Expr::Scalar(_) => {}
        }
    }
    for r in &mut p.relations {
        rewrite(&mut r.lhs);
        rewrite(&mut r.rhs);
    }
    p
}

fn load(src: &str) -> AlgebraPresentation {
    parse_presentation(src).expect("shipped presets parse")
}

/// Phase-space and ladder relations with deformed `[p, x]`, specialised to
/// `params`.
pub fn case1_relation_set(params: &DeformationParams) -> AlgebraPresentation {
    specialize_brackets(assign_parameters(load(CASE1), params, &[]))
}

/// Phase-space relations with canonical `[p, x]`, the derived chi-brackets
/// and the ladder relations, specialised to `params`.
pub fn case2_relation_set(params: &DeformationParams) -> AlgebraPresentation {
    specialize_brackets(assign_parameters(load(CASE2), params, &[]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitFamily {
    Bosonic,
    FermionicCase1,
    FermionicCase2,
}

pub fn limit_relation_set(which: LimitFamily) -> AlgebraPresentation {
    load(match which {
        LimitFamily::Bosonic => BOSONIC,
        LimitFamily::FermionicCase1 => FERMIONIC_C1,
        LimitFamily::FermionicCase2 => FERMIONIC_C2,
    })
}

// ---- generators ----

const PAIRS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn eps(i: usize, j: usize) -> i32 {
    match (i, j) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

fn delta(i: usize, j: usize) -> i32 {
    i32::from(i == j)
}

/// Right-hand side assembled from signed terms; zero-signed terms are
/// dropped and an empty sum renders as `0`.
#[derive(Default)]
struct Sum(Vec<(i32, String)>);

impl Sum {
    fn term(mut self, sign: i32, text: impl Into<String>) -> Self {
        if sign != 0 {
            self.0.push((sign, text.into()));
        }
        self
    }

    fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (sign, text)) in self.0.iter().enumerate() {
            match (k, *sign > 0) {
                (0, true) => out.push_str(text),
                (0, false) => {
                    out.push('-');
                    out.push_str(text);
                }
                (_, true) => {
                    out.push_str(" + ");
                    out.push_str(text);
                }
                (_, false) => {
                    out.push_str(" - ");
                    out.push_str(text);
                }
            }
        }
        out
    }
}

struct Source(String);

impl Source {
    fn new(name: &str, comment: &str) -> Self {
        let mut s = String::new();
        for line in comment.lines() {
            let _ = writeln!(s, "# {line}");
        }
        let _ = writeln!(s, "algebra {name};");
        Source(s)
    }

    fn gens(mut self, stems: &[&str], two_mode: bool) -> Self {
        let names: Vec<String> = if two_mode {
            stems
                .iter()
                .flat_map(|s| [format!("{s}1"), format!("{s}2")])
                .collect()
        } else {
            stems.iter().map(|s| s.to_string()).collect()
        };
        let _ = writeln!(self.0, "gen {};", names.join(", "));
        self
    }

    fn param(mut self, name: &str, default: &str) -> Self {
        let _ = writeln!(self.0, "param {name} = {default};");
        self
    }

    fn rel(&mut self, label: &str, lhs: &str, rhs: &Sum) {
        let _ = writeln!(self.0, "rel {label}: {lhs} = {};", rhs.render());
    }

    fn blank(&mut self) {
        self.0.push('\n');
    }
}

/// Shared `[x_i, x_j]_chi` and `[p_i, p_j]_chi` families.
fn phase_space_noncommutative(src: &mut Source) {
    for (i, j) in PAIRS {
        let e = eps(i, j);
        src.rel(
            &format!("xx_{i}{j}"),
            &format!("bracket(x{i}, x{j}, chi)"),
            &Sum::default().term(e, "i*theta*I"),
        );
    }
    for (i, j) in PAIRS {
        let e = eps(i, j);
        src.rel(
            &format!("pp_{i}{j}"),
            &format!("bracket(p{i}, p{j}, chi)"),
            &Sum::default().term(-e, "i*theta*mw*mw*I"),
        );
    }
}

pub fn case1_source() -> String {
    let mut s = Source::new(
        "case1",
        "Deformed phase space with deformed [p, x] and the ladder algebra it induces.\n\
         B_ij = (1/chi - chi) p_j x_i.",
    )
    .gens(&["x", "p", "bm", "bp", "xi", "xiinv"], true)
    .param("chi", "1")
    .param("theta", "0")
    .param("eta", "1")
    .param("mw", "1");
    s.blank();
    phase_space_noncommutative(&mut s);
    for (i, j) in PAIRS {
        s.rel(
            &format!("px_{i}{j}"),
            &format!("bracket(p{i}, x{j}, chi)"),
            &Sum::default().term(-delta(i, j), "i*eta*I"),
        );
    }
    s.blank();
    let b = |xi: &str, j: usize, i: usize| format!("0.5*i*(1/chi - chi)*{xi} p{j} x{i}");
    for (i, j) in PAIRS {
        let (d, e) = (delta(i, j), eps(i, j));
        s.rel(
            &format!("bmbp_{i}{j}"),
            &format!("bracket(bm{i}, bp{j}, chi)"),
            &Sum::default()
                .term(d, format!("0.5*eta*((1/chi)*xi{i} + xiinv{j})"))
                .term(e, format!("0.5*i*mw*theta*(I + xi{i} xiinv{j})"))
                .term(-1, b(&format!("xiinv{j}"), j, i)),
        );
    }
    for (i, j) in PAIRS {
        let (d, e) = (delta(i, j), eps(i, j));
        s.rel(
            &format!("bpbp_{i}{j}"),
            &format!("bracket(bp{i}, bp{j}, chi)"),
            &Sum::default()
                .term(d, format!("0.5*eta*(xiinv{j} - (1/chi)*xiinv{i})"))
                .term(e, format!("0.5*i*mw*theta*(I - xiinv{i} xiinv{j})"))
                .term(-1, b(&format!("xiinv{j}"), j, i)),
        );
    }
    for (i, j) in PAIRS {
        let (d, e) = (delta(i, j), eps(i, j));
        s.rel(
            &format!("bmbm_{i}{j}"),
            &format!("bracket(bm{i}, bm{j}, chi)"),
            &Sum::default()
                .term(d, format!("0.5*eta*((1/chi)*xi{i} - xi{j})"))
                .term(e, format!("0.5*i*mw*theta*(I - xi{i} xi{j})"))
                .term(1, b(&format!("xi{j}"), j, i)),
        );
    }
    s.0
}

pub fn case2_source() -> String {
    let mut s = Source::new(
        "case2",
        "Deformed phase space keeping [p, x] = -i, the derived chi-brackets and the\n\
         ladder algebra. C_ji = (1 - chi) p_j x_i, D_ji = (1 - chi) x_j p_i.",
    )
    .gens(&["x", "p", "bm", "bp", "xi", "xiinv"], true)
    .param("chi", "1")
    .param("theta", "0")
    .param("mw", "1");
    s.blank();
    phase_space_noncommutative(&mut s);
    for (i, j) in PAIRS {
        s.rel(
            &format!("px_{i}{j}"),
            &format!("bracket(p{i}, x{j}, 1)"),
            &Sum::default().term(-delta(i, j), "i*I"),
        );
    }
    s.blank();
    for (i, j) in PAIRS {
        s.rel(
            &format!("xp_{i}{j}"),
            &format!("bracket(x{i}, p{j}, chi)"),
            &Sum::default()
                .term(delta(i, j), "i*I")
                .term(1, format!("(1 - chi)*p{j} x{i}")),
        );
    }
    for (i, j) in PAIRS {
        s.rel(
            &format!("pxq_{i}{j}"),
            &format!("bracket(p{i}, x{j}, chi)"),
            &Sum::default()
                .term(-delta(i, j), "i*I")
                .term(1, format!("(1 - chi)*x{j} p{i}")),
        );
    }
    s.blank();
    let c = |op: &str, j: usize, i: usize| format!("0.5*i*(1 - chi)*{op} p{j} x{i}");
    let d = |op: &str, j: usize, i: usize| format!("0.5*i*(1 - chi)*{op} x{j} p{i}");
    for (i, j) in PAIRS {
        let (dl, e) = (delta(i, j), eps(i, j));
        s.rel(
            &format!("bmbp_{i}{j}"),
            &format!("bracket(bm{i}, bp{j}, chi)"),
            &Sum::default()
                .term(dl, format!("0.5*(xi{i} + xiinv{j})"))
                .term(e, format!("0.5*i*mw*theta*(I + xi{i} xiinv{j})"))
                .term(-1, c(&format!("xiinv{j}"), j, i))
                .term(1, d(&format!("xi{i}"), j, i)),
        );
    }
    for (i, j) in PAIRS {
        let (dl, e) = (delta(i, j), eps(i, j));
        s.rel(
            &format!("bpbp_{i}{j}"),
            &format!("bracket(bp{i}, bp{j}, chi)"),
            &Sum::default()
                .term(dl, format!("0.5*(xiinv{j} - xiinv{i})"))
                .term(e, format!("0.5*i*mw*theta*(I - xiinv{i} xiinv{j})"))
                .term(-1, c(&format!("xiinv{j}"), j, i))
                .term(-1, d(&format!("xiinv{i}"), j, i)),
        );
    }
    for (i, j) in PAIRS {
        let (dl, e) = (delta(i, j), eps(i, j));
        s.rel(
            &format!("bmbm_{i}{j}"),
            &format!("bracket(bm{i}, bm{j}, chi)"),
            &Sum::default()
                .term(dl, format!("0.5*(xi{i} - xi{j})"))
                .term(e, format!("0.5*i*mw*theta*(I - xi{i} xi{j})"))
                .term(1, c(&format!("xi{j}"), j, i))
                .term(1, d(&format!("xi{i}"), j, i)),
        );
    }
    s.0
}

pub fn bosonic_source() -> String {
    let mut s = Source::new(
        "bosonic",
        "Bosonic ladder relations. The brackets use q = chi, so binding chi away\n\
         from 1 measures the departure from the bosonic limit.",
    )
    .gens(&["bm", "bp"], true)
    .param("chi", "1");
    s.blank();
    for (i, j) in PAIRS {
        s.rel(
            &format!("bmbp_{i}{j}"),
            &format!("bracket(bm{i}, bp{j}, chi)"),
            &Sum::default().term(delta(i, j), "I"),
        );
    }
    for (i, j) in PAIRS {
        s.rel(
            &format!("bpbp_{i}{j}"),
            &format!("bracket(bp{i}, bp{j}, chi)"),
            &Sum::default(),
        );
    }
    for (i, j) in PAIRS {
        s.rel(
            &format!("bmbm_{i}{j}"),
            &format!("bracket(bm{i}, bm{j}, chi)"),
            &Sum::default(),
        );
    }
    s.0
}

pub fn fermionic_c1_source() -> String {
    let mut s = Source::new(
        "fermionic_c1",
        "Anticommutator limit of case1. eK = exp(i pi K), emK = exp(-i pi K).",
    )
    .gens(&["bm", "bp", "eK", "emK"], true);
    s.blank();
    for (i, j) in PAIRS {
        s.rel(
            &format!("bmbp_{i}{j}"),
            &format!("antibracket(bm{i}, bp{j})"),
            &Sum::default().term(delta(i, j), format!("0.5*(emK{j} - eK{i})")),
        );
    }
    for (i, j) in PAIRS {
        s.rel(
            &format!("bpbp_{i}{j}"),
            &format!("antibracket(bp{i}, bp{j})"),
            &Sum::default().term(delta(i, j), format!("0.5*(emK{j} + emK{i})")),
        );
    }
    for (i, j) in PAIRS {
        s.rel(
            &format!("bmbm_{i}{j}"),
            &format!("antibracket(bm{i}, bm{j})"),
            &Sum::default().term(delta(i, j), format!("0.5*(eK{i} + eK{j})")),
        );
    }
    s.0
}

pub fn fermionic_c2_source() -> String {
    let mut s = Source::new(
        "fermionic_c2",
        "Anticommutator limit of case2 (chi = -1, so C_ji = 2 p_j x_i and\n\
         D_ji = 2 x_j p_i). eK = exp(i pi K), emK = exp(-i pi K).",
    )
    .gens(&["x", "p", "bm", "bp", "eK", "emK"], true);
    s.blank();
    let c = |op: &str, j: usize, i: usize| format!("i*{op} p{j} x{i}");
    let d = |op: &str, j: usize, i: usize| format!("i*{op} x{j} p{i}");
    for (i, j) in PAIRS {
        s.rel(
            &format!("bmbp_{i}{j}"),
            &format!("antibracket(bm{i}, bp{j})"),
            &Sum::default()
                .term(delta(i, j), format!("0.5*(eK{i} + emK{j})"))
                .term(-1, c(&format!("emK{j}"), j, i))
                .term(1, d(&format!("eK{i}"), j, i)),
        );
    }
    for (i, j) in PAIRS {
        s.rel(
            &format!("bpbp_{i}{j}"),
            &format!("antibracket(bp{i}, bp{j})"),
            &Sum::default()
                .term(delta(i, j), format!("0.5*(emK{j} - emK{i})"))
                .term(-1, c(&format!("emK{j}"), j, i))
                .term(-1, d(&format!("emK{i}"), j, i)),
        );
    }
    for (i, j) in PAIRS {
        s.rel(
            &format!("bmbm_{i}{j}"),
            &format!("antibracket(bm{i}, bm{j})"),
            &Sum::default()
                .term(delta(i, j), format!("0.5*(eK{i} - eK{j})"))
                .term(1, c(&format!("eK{j}"), j, i))
                .term(1, d(&format!("eK{i}"), j, i)),
        );
    }
    s.0
}

/// `beta_mu = alpha_0 + ... + alpha_{mu-1}` as text; `None` for `mu = 0`.
fn beta_text(mu: usize) -> Option<String> {
    match mu {
        0 => None,
        1 => Some("alpha0".to_string()),
        _ => Some(format!(
            "({})",
            (0..mu)
                .map(|k| format!("alpha{k}"))
                .collect::<Vec<_>>()
                .join(" + ")
        )),
    }
}

pub fn gdoa_source(lambda: usize) -> String {
    let mut s = Source::new(
        "gdoa",
        &format!(
            "C_lambda-extended oscillator algebra, lambda = {lambda}. The alphas must sum\n\
             to zero; F(N) = N + sum_mu beta_mu P_mu."
        ),
    );
    let mut stems = vec!["a".to_string(), "N".to_string()];
    stems.extend((0..lambda).map(|mu| format!("P{mu}")));
    let stems: Vec<&str> = stems.iter().map(String::as_str).collect();
    s = s.gens(&stems, false);
    for mu in 0..lambda {
        s = s.param(&format!("alpha{mu}"), "0");
    }
    s.blank();
    s.rel(
        "n_adag",
        "bracket(N, dagger(a), 1)",
        &Sum::default().term(1, "dagger(a)"),
    );
    let mut rhs = Sum::default().term(1, "I");
    for mu in 0..lambda {
        rhs = rhs.term(1, format!("alpha{mu}*P{mu}"));
    }
    s.rel("a_adag", "bracket(a, dagger(a), 1)", &rhs);
    let sum: Vec<String> = (0..lambda).map(|mu| format!("P{mu}")).collect();
    s.rel("proj_sum", &sum.join(" + "), &Sum::default().term(1, "I"));
    for mu in 0..lambda {
        s.rel(
            &format!("n_p{mu}"),
            &format!("bracket(N, P{mu}, 1)"),
            &Sum::default(),
        );
    }
    for mu in 0..lambda {
        let next = (mu + 1) % lambda;
        s.rel(
            &format!("adag_p{mu}"),
            &format!("dagger(a) P{mu}"),
            &Sum::default().term(1, format!("P{next} dagger(a)")),
        );
    }
    let mut f = Sum::default().term(1, "N");
    for mu in 0..lambda {
        if let Some(b) = beta_text(mu) {
            f = f.term(1, format!("{b}*P{mu}"));
        }
    }
    s.rel("adag_a", "dagger(a) a", &f);
    let mut f1 = Sum::default().term(1, "N").term(1, "I");
    for class in 0..lambda {
        if let Some(b) = beta_text((class + 1) % lambda) {
            f1 = f1.term(1, format!("{b}*P{class}"));
        }
    }
    s.rel("a_adag_f", "a dagger(a)", &f1);
    s.0
}

pub fn calogero_vasiliev_source() -> String {
    let mut s = Source::new(
        "calogero_vasiliev",
        "Calogero-Vasiliev algebra; K = (-1)^N.",
    )
    .gens(&["a", "K"], false)
    .param("kappa", "0.5");
    s.blank();
    s.rel(
        "r1",
        "bracket(a, dagger(a), 1)",
        &Sum::default().term(1, "I").term(1, "kappa*K"),
    );
    s.rel("r2", "antibracket(K, dagger(a))", &Sum::default());
    s.0
}

pub fn boson_source() -> String {
    let mut s = Source::new("boson", "Single-mode Heisenberg relation.").gens(&["a"], false);
    s.rel(
        "heis",
        "bracket(a, dagger(a), 1)",
        &Sum::default().term(1, "I"),
    );
    s.0
}

/// Largest odd and largest even integers `<= lambda - 1`.
pub fn truncation_orders(lambda: usize) -> (usize, usize) {
    let top = lambda.saturating_sub(1);
    let n = if !top.is_multiple_of(2) {
        top
    } else {
        top.saturating_sub(1)
    };
    let m = if top.is_multiple_of(2) { top } else { top - 1 };
    (n, m)
}

pub fn deformed_clambda_source(lambda: usize) -> String {
    let mut s = Source::new(
        "deformed_clambda",
        &format!(
            "Deformed C_lambda-extended algebra in Taylor-block form, lambda = {lambda}.\n\
             c<p> = (i nu pi)^p / p!; C_ji = (1 - chi) p_j x_i, D_ji = (1 - chi) x_j p_i."
        ),
    )
    .gens(&["x", "p", "bm", "bp", "K", "N"], true)
    .param("chi", "1")
    .param("theta", "0")
    .param("mw", "1");
    for p in 0..lambda {
        s = s.param(&format!("c{p}"), if p == 0 { "1" } else { "0" });
    }
    s = s
        .param("w", &format!("exp(-2*pi*i/{lambda})"))
        .param("wbar", &format!("exp(2*pi*i/{lambda})"));
    s.blank();
    let (n, m) = truncation_orders(lambda);
    let alt = |p: usize| if p.is_multiple_of(2) { 1 } else { -1 };
    let c_term =
        |p: usize, k: &str, j: usize, i: usize| format!("0.5*i*c{p}*(1 - chi)*{k} p{j} x{i}");
    let d_term =
        |p: usize, k: &str, j: usize, i: usize| format!("0.5*i*c{p}*(1 - chi)*{k} x{j} p{i}");
    for (i, j) in PAIRS {
        let (dl, e) = (delta(i, j), eps(i, j));
        let mut rhs = Sum::default().term(dl, "I");
        for p in (1..=n).step_by(2) {
            rhs = rhs.term(
                dl,
                format!("0.5*c{p}*(power(K{i}, {p}) - power(K{j}, {p}))"),
            );
        }
        for p in (2..=m).step_by(2) {
            rhs = rhs.term(
                dl,
                format!("0.5*c{p}*(power(K{i}, {p}) + power(K{j}, {p}))"),
            );
        }
        if e != 0 {
            let series: Vec<String> = (0..lambda)
                .map(|a| format!("c{a}*power((K{i} - K{j}), {a})"))
                .collect();
            rhs = rhs.term(e, format!("0.5*i*theta*mw*(I + {})", series.join(" + ")));
        }
        for p in 0..lambda {
            rhs = rhs
                .term(-1, c_term(p, &format!("power((-K{j}), {p})"), j, i))
                .term(1, d_term(p, &format!("power(K{i}, {p})"), j, i));
        }
        s.rel(
            &format!("bmbp_{i}{j}"),
            &format!("bracket(bm{i}, bp{j}, chi)"),
            &rhs,
        );
    }
    for (i, j) in PAIRS {
        let (dl, e) = (delta(i, j), eps(i, j));
        let mut rhs = Sum::default();
        for a in 1..lambda {
            rhs = rhs.term(
                dl * alt(a),
                format!("0.5*c{a}*(power(K{j}, {a}) - power(K{i}, {a}))"),
            );
        }
        for a in 1..lambda {
            rhs = rhs.term(
                -e * alt(a),
                format!("0.5*i*mw*theta*c{a}*power((K{i} + K{j}), {a})"),
            );
        }
        for p in 0..lambda {
            rhs = rhs
                .term(-alt(p), c_term(p, &format!("power(K{j}, {p})"), j, i))
                .term(alt(p), d_term(p, &format!("power(K{i}, {p})"), j, i));
        }
        s.rel(
            &format!("bpbp_{i}{j}"),
            &format!("bracket(bp{i}, bp{j}, chi)"),
            &rhs,
        );
    }
    for (i, j) in PAIRS {
        let (dl, e) = (delta(i, j), eps(i, j));
        let mut rhs = Sum::default();
        for a in 1..lambda {
            rhs = rhs.term(
                dl,
                format!("0.5*c{a}*(power(K{i}, {a}) - power(K{j}, {a}))"),
            );
        }
        for a in 1..lambda {
            rhs = rhs.term(-e, format!("0.5*i*mw*theta*c{a}*power((K{i} + K{j}), {a})"));
        }
        for p in 0..lambda {
            rhs = rhs
                .term(1, c_term(p, &format!("power(K{j}, {p})"), j, i))
                .term(-1, d_term(p, &format!("power(K{i}, {p})"), j, i));
        }
        s.rel(
            &format!("bmbm_{i}{j}"),
            &format!("bracket(bm{i}, bm{j}, chi)"),
            &rhs,
        );
    }
    s.blank();
    for (i, j) in PAIRS {
        let rhs = Sum::default().term(-delta(i, j), format!("bm{j}"));
        s.rel(
            &format!("nbm_{i}{j}"),
            &format!("bracket(N{i}, bm{j}, 1)"),
            &rhs,
        );
    }
    for (i, j) in PAIRS {
        let rhs = Sum::default().term(delta(i, j), format!("bp{j}"));
        s.rel(
            &format!("nbp_{i}{j}"),
            &format!("bracket(N{i}, bp{j}, 1)"),
            &rhs,
        );
    }
    // Same-mode braiding; across modes the commutator is recorded.
    for (i, j) in PAIRS {
        if i == j {
            s.rel(
                &format!("kbm_{i}{j}"),
                &format!("K{i} bm{j}"),
                &Sum::default().term(1, format!("w*bm{j} K{i}")),
            );
        } else {
            s.rel(
                &format!("kbm_{i}{j}"),
                &format!("bracket(K{i}, bm{j}, 1)"),
                &Sum::default(),
            );
        }
    }
    for (i, j) in PAIRS {
        if i == j {
            s.rel(
                &format!("kbp_{i}{j}"),
                &format!("K{i} bp{j}"),
                &Sum::default().term(1, format!("wbar*bp{j} K{i}")),
            );
        } else {
            s.rel(
                &format!("kbp_{i}{j}"),
                &format!("bracket(K{i}, bp{j}, 1)"),
                &Sum::default(),
            );
        }
    }
    s.0
}
