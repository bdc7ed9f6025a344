use num_complex::Complex64;

/// Complex scalar expression. Parameters are referenced by name and resolved
/// at evaluation time.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    /// Non-negative real literal, e.g. `2.5`.
    Real(f64),
    /// Imaginary literal, e.g. `2.5i`.
    Imag(f64),
    /// The imaginary unit `i`.
    Unit,
    Pi,
    Param(String),
    Neg(Box<Scalar>),
    Add(Box<Scalar>, Box<Scalar>),
    Sub(Box<Scalar>, Box<Scalar>),
    Mul(Box<Scalar>, Box<Scalar>),
    Div(Box<Scalar>, Box<Scalar>),
    Exp(Box<Scalar>),
    Cos(Box<Scalar>),
}

impl Scalar {
    pub fn param(name: impl Into<String>) -> Self {
        Scalar::Param(name.into())
    }

    /// Canonical literal form of a complex value: the shape the parser
    /// produces for the rendered text of `z`.
    pub fn from_complex(z: Complex64) -> Self {
        let real_part = |x: f64| {
            if x.is_sign_negative() && x != 0.0 {
                Scalar::Neg(Box::new(Scalar::Real(-x)))
            } else {
                Scalar::Real(x.abs())
            }
        };
        if z.im == 0.0 {
            return real_part(z.re);
        }
        if z.re == 0.0 {
            return if z.im < 0.0 {
                Scalar::Neg(Box::new(Scalar::Imag(-z.im)))
            } else {
                Scalar::Imag(z.im)
            };
        }
        let re = Box::new(real_part(z.re));
        if z.im < 0.0 {
            Scalar::Sub(re, Box::new(Scalar::Imag(-z.im)))
        } else {
            Scalar::Add(re, Box::new(Scalar::Imag(z.im)))
        }
    }

    pub(crate) fn visit_params<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Scalar::Param(p) => out.push(p),
            Scalar::Neg(x) | Scalar::Exp(x) | Scalar::Cos(x) => x.visit_params(out),
            Scalar::Add(a, b) | Scalar::Sub(a, b) | Scalar::Mul(a, b) | Scalar::Div(a, b) => {
                a.visit_params(out);
                b.visit_params(out);
            }
            Scalar::Real(_) | Scalar::Imag(_) | Scalar::Unit | Scalar::Pi => {}
        }
    }
}

/// Operator expression over generators.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Identity,
    Gen(String),
    /// A bare scalar, standing for `scalar · I`.
    Scalar(Scalar),
    /// `scalar * factor`.
    Scaled(Scalar, Box<Expr>),
    /// Juxtaposition, two or more factors.
    Product(Vec<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// `[x, y]_q = xy - q yx`.
    Bracket(Box<Expr>, Box<Expr>, Scalar),
    /// `{x, y} = xy + yx`.
    AntiBracket(Box<Expr>, Box<Expr>),
    Dagger(Box<Expr>),
    Power(Box<Expr>, u32),
}

impl Expr {
    pub fn gen(name: impl Into<String>) -> Self {
        Expr::Gen(name.into())
    }

    pub fn zero() -> Self {
        Expr::Scalar(Scalar::Real(0.0))
    }

    /// Generators referenced anywhere in the tree, in first-seen order.
    pub fn generators(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let Expr::Gen(g) = e {
                if !out.contains(&g.as_str()) {
                    out.push(g.as_str());
                }
            }
        });
        out
    }

    /// Parameters referenced anywhere in the tree (with repeats).
    pub fn params(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.visit_scalars(&mut out);
        out
    }

    fn visit_scalars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Scalar(s) => s.visit_params(out),
            Expr::Scaled(s, x) => {
                s.visit_params(out);
                x.visit_scalars(out);
            }
            Expr::Bracket(a, b, q) => {
                a.visit_scalars(out);
                b.visit_scalars(out);
                q.visit_params(out);
            }
            Expr::Product(xs) => xs.iter().for_each(|x| x.visit_scalars(out)),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::AntiBracket(a, b) => {
                a.visit_scalars(out);
                b.visit_scalars(out);
            }
            Expr::Neg(x) | Expr::Dagger(x) | Expr::Power(x, _) => x.visit_scalars(out),
            Expr::Identity | Expr::Gen(_) => {}
        }
    }

    pub(crate) fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Scaled(_, x) | Expr::Neg(x) | Expr::Dagger(x) | Expr::Power(x, _) => x.visit(f),
            Expr::Product(xs) => xs.iter().for_each(|x| x.visit(f)),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::AntiBracket(a, b)
            | Expr::Bracket(a, b, _) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Identity | Expr::Gen(_) | Expr::Scalar(_) => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub label: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Relation {
    pub fn new(label: impl Into<String>, lhs: Expr, rhs: Expr) -> Self {
        Self {
            label: label.into(),
            lhs,
            rhs,
        }
    }

    pub fn generators(&self) -> Vec<&str> {
        let mut g = self.lhs.generators();
        for r in self.rhs.generators() {
            if !g.contains(&r) {
                g.push(r);
            }
        }
        g
    }
}

/// A parsed algebra: generators, complex parameters with defaults, and the
/// relation list.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub generators: Vec<String>,
    pub parameters: Vec<(String, Complex64)>,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    pub fn parameter(&self, name: &str) -> Option<Complex64> {
        self.parameters
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn relation(&self, label: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.label == label)
    }

    /// Overwrites defaults of parameters present in `values`; others keep
    /// their declared default.
    pub fn with_parameter_values<'a, I>(mut self, values: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, Complex64)>,
    {
        for (name, v) in values {
            if let Some(slot) = self.parameters.iter_mut().find(|(n, _)| n == name) {
                slot.1 = v;
            }
        }
        self
    }
}

impl Scalar {
    /// Evaluates with `lookup` resolving parameter names. Returns `None` on
    /// an unresolved parameter.
    pub fn evaluate(&self, lookup: &dyn Fn(&str) -> Option<Complex64>) -> Option<Complex64> {
        Some(match self {
            Scalar::Real(x) => Complex64::new(*x, 0.0),
            Scalar::Imag(x) => Complex64::new(0.0, *x),
            Scalar::Unit => Complex64::new(0.0, 1.0),
            Scalar::Pi => Complex64::new(std::f64::consts::PI, 0.0),
            Scalar::Param(p) => lookup(p)?,
            Scalar::Neg(x) => -x.evaluate(lookup)?,
            Scalar::Add(a, b) => a.evaluate(lookup)? + b.evaluate(lookup)?,
            Scalar::Sub(a, b) => a.evaluate(lookup)? - b.evaluate(lookup)?,
            Scalar::Mul(a, b) => a.evaluate(lookup)? * b.evaluate(lookup)?,
            Scalar::Div(a, b) => a.evaluate(lookup)? / b.evaluate(lookup)?,
            Scalar::Exp(x) => x.evaluate(lookup)?.exp(),
            Scalar::Cos(x) => x.evaluate(lookup)?.cos(),
        })
    }
}
