//! Symbolic normal form: expands an expression into a sorted linear
//! combination of generator words with numeric coefficients.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use super::ast::{Expr, Relation, Scalar};
use super::error::EvalError;

/// Components closer than this to an integer are snapped onto it.
const SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Default)]
pub struct FoldOptions {
    pub params: HashMap<String, Complex64>,
    /// Generators replaced by an expression before expansion.
    pub substitute: HashMap<String, Expr>,
}

impl FoldOptions {
    pub fn with_param(mut self, name: impl Into<String>, value: Complex64) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    pub fn with_substitution(mut self, name: impl Into<String>, e: Expr) -> Self {
        self.substitute.insert(name.into(), e);
        self
    }
}

fn snap(z: Complex64) -> Complex64 {
    let s = |x: f64| {
        let r = x.round();
        if (x - r).abs() <= SNAP {
            r + 0.0
        } else {
            x
        }
    };
    Complex64::new(s(z.re), s(z.im))
}

/// Word atoms: a generator or its adjoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Atom {
    name: String,
    dagger: bool,
}

type Word = Vec<Atom>;

#[derive(Debug, Clone, Default)]
struct Poly(BTreeMap<Word, Complex64>);

impl Poly {
    fn constant(c: Complex64) -> Self {
        let mut p = Poly::default();
        p.push(Vec::new(), c);
        p
    }

    fn push(&mut self, w: Word, c: Complex64) {
        *self.0.entry(w).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn scale(mut self, c: Complex64) -> Self {
        self.0.values_mut().for_each(|v| *v *= c);
        self
    }

    fn add(mut self, other: Poly) -> Self {
        for (w, c) in other.0 {
            self.push(w, c);
        }
        self
    }

    fn mul(&self, other: &Poly) -> Self {
        let mut out = Poly::default();
        for (wa, ca) in &self.0 {
            for (wb, cb) in &other.0 {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                out.push(w, ca * cb);
            }
        }
        out
    }

    fn adjoint(&self) -> Self {
        let mut out = Poly::default();
        for (w, c) in &self.0 {
            let w = w
                .iter()
                .rev()
                .map(|a| Atom {
                    name: a.name.clone(),
                    dagger: !a.dagger,
                })
                .collect();
            out.push(w, c.conj());
        }
        out
    }

    fn into_expr(self) -> Expr {
        let mut terms: Vec<(Word, Complex64)> = self
            .0
            .into_iter()
            .map(|(w, c)| (w, snap(c)))
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .collect();
        // Identity term first, then by word.
        terms.sort_by(|a, b| a.0.len().min(1).cmp(&b.0.len().min(1)).then(a.0.cmp(&b.0)));
        let mut out: Option<Expr> = None;
        for (w, c) in terms {
            let (negate, c) = if c.im == 0.0 && c.re < 0.0 && out.is_some() {
                (true, -c)
            } else {
                (false, c)
            };
            let term = term_expr(w, c);
            out = Some(match out {
                None => term,
                Some(acc) if negate => Expr::Sub(Box::new(acc), Box::new(term)),
                Some(acc) => Expr::Add(Box::new(acc), Box::new(term)),
            });
        }
        out.unwrap_or_else(Expr::zero)
    }
}

fn term_expr(w: Word, c: Complex64) -> Expr {
    let one = Complex64::new(1.0, 0.0);
    if w.is_empty() {
        return if c == one {
            Expr::Identity
        } else {
            Expr::Scalar(Scalar::from_complex(c))
        };
    }
    let mut factors: Vec<Expr> = w
        .into_iter()
        .map(|a| {
            let g = Expr::Gen(a.name);
            if a.dagger {
                Expr::Dagger(Box::new(g))
            } else {
                g
            }
        })
        .collect();
    let word = if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        Expr::Product(factors)
    };
    if c == one {
        word
    } else if c == -one {
        Expr::Neg(Box::new(word))
    } else {
        Expr::Scaled(Scalar::from_complex(c), Box::new(word))
    }
}

struct Folder<'a> {
    opts: &'a FoldOptions,
    relation: &'a str,
}

impl Folder<'_> {
    fn scalar(&self, s: &Scalar) -> Result<Complex64, EvalError> {
        let z = s
            .evaluate(&|n: &str| self.opts.params.get(n).copied().map(snap))
            .ok_or_else(|| {
                let mut names = Vec::new();
                s.visit_params(&mut names);
                let symbol = names
                    .into_iter()
                    .find(|n| !self.opts.params.contains_key(*n))
                    .unwrap_or_default()
                    .to_string();
                EvalError::Unbound {
                    relation: self.relation.to_string(),
                    symbol,
                }
            })?;
        if z.re.is_finite() && z.im.is_finite() {
            Ok(snap(z))
        } else {
            Err(EvalError::NonFinite {
                relation: self.relation.to_string(),
            })
        }
    }

    fn poly(&self, e: &Expr, depth: usize) -> Result<Poly, EvalError> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match e {
            Expr::Identity => Poly::constant(one),
            Expr::Gen(g) => match self.opts.substitute.get(g) {
                // substitutions are not themselves re-substituted
                Some(sub) if depth == 0 => self.poly(sub, 1)?,
                _ => {
                    let mut p = Poly::default();
                    p.push(
                        vec![Atom {
                            name: g.clone(),
                            dagger: false,
                        }],
                        one,
                    );
                    p
                }
            },
            Expr::Scalar(s) => Poly::constant(self.scalar(s)?),
            Expr::Scaled(s, x) => self.poly(x, depth)?.scale(self.scalar(s)?),
            Expr::Product(xs) => {
                let mut acc = Poly::constant(one);
                for x in xs {
                    acc = acc.mul(&self.poly(x, depth)?);
                }
                acc
            }
            Expr::Add(a, b) => self.poly(a, depth)?.add(self.poly(b, depth)?),
            Expr::Sub(a, b) => self.poly(a, depth)?.add(self.poly(b, depth)?.scale(-one)),
            Expr::Neg(x) => self.poly(x, depth)?.scale(-one),
            Expr::Bracket(a, b, q) => {
                let q = self.scalar(q)?;
                let (pa, pb) = (self.poly(a, depth)?, self.poly(b, depth)?);
                pa.mul(&pb).add(pb.mul(&pa).scale(-q))
            }
            Expr::AntiBracket(a, b) => {
                let (pa, pb) = (self.poly(a, depth)?, self.poly(b, depth)?);
                pa.mul(&pb).add(pb.mul(&pa))
            }
            Expr::Dagger(x) => self.poly(x, depth)?.adjoint(),
            Expr::Power(x, k) => {
                let base = self.poly(x, depth)?;
                let mut acc = Poly::constant(one);
                for _ in 0..*k {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }
}

/// Expands `e` into its normal form. Every parameter must have a value in
/// `opts.params`.
pub fn fold_expr(e: &Expr, opts: &FoldOptions) -> Result<Expr, EvalError> {
    let f = Folder { opts, relation: "" };
    Ok(f.poly(e, 0)?.into_expr())
}

/// Folds both sides of a relation independently.
pub fn fold_relation(r: &Relation, opts: &FoldOptions) -> Result<Relation, EvalError> {
    let f = Folder {
        opts,
        relation: &r.label,
    };
    Ok(Relation {
        label: r.label.clone(),
        lhs: f.poly(&r.lhs, 0)?.into_expr(),
        rhs: f.poly(&r.rhs, 0)?.into_expr(),
    })
}
