//! Recursive-descent parser for `.qdl` presentations.
//!
//! Identifiers are resolved while parsing, so every symbol must be declared
//! (`gen` or `param`) before a relation uses it. A parameter name in factor
//! position starts a scalar; a generator name starts a primary.

use std::collections::{HashMap, HashSet};

use num_complex::Complex64;

use super::ast::{AlgebraPresentation, Expr, Relation, Scalar};
use super::error::{ParseError, ParseErrorKind};
use super::lexer::{tokenize, Tok, Token};

/// Maximum nesting of parenthesized / bracketed sub-expressions.
pub const MAX_NESTING: usize = 96;

type PResult<T> = Result<T, ParseError>;

pub fn parse_presentation(source: &str) -> Result<AlgebraPresentation, ParseError> {
    let tokens = tokenize(source)?;
    Parser::new(tokens).program()
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    generators: Vec<String>,
    params: Vec<(String, Complex64)>,
    param_index: HashMap<String, usize>,
    labels: HashSet<String>,
    depth: usize,
    // positions where `( scalar )` is known not to parse
    failed_paren_scalar: HashSet<usize>,
}

const FACTOR_START: &[&str] = &[
    "IDENT",
    "NUMBER",
    "IMAG",
    "i",
    "pi",
    "exp",
    "cos",
    "I",
    "(",
    "bracket",
    "antibracket",
    "dagger",
    "power",
];
const SCALAR_START: &[&str] = &[
    "NUMBER",
    "IMAG",
    "i",
    "pi",
    "parameter",
    "exp",
    "cos",
    "(",
    "-",
];
const PRIMARY_START: &[&str] = &[
    "generator",
    "I",
    "(",
    "bracket",
    "antibracket",
    "dagger",
    "power",
];

impl Parser {
    fn new(toks: Vec<Token>) -> Self {
        Self {
            toks,
            pos: 0,
            generators: Vec::new(),
            params: Vec::new(),
            param_index: HashMap::new(),
            labels: HashSet::new(),
            depth: 0,
            failed_paren_scalar: HashSet::new(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = self.here();
        ParseError::new(t.line, t.column, kind)
    }

    fn syntax<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(self.error_here(ParseErrorKind::Syntax {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }))
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.syntax(&[tok.text()])
        }
    }

    fn ident(&mut self) -> PResult<(String, usize, usize)> {
        let t = self.here().clone();
        match t.tok {
            Tok::Ident(name) => {
                self.bump();
                Ok((name, t.line, t.column))
            }
            _ => self.syntax(&["IDENT"]),
        }
    }

    fn is_param(&self, name: &str) -> bool {
        self.param_index.contains_key(name)
    }

    fn is_generator(&self, name: &str) -> bool {
        self.generators.iter().any(|g| g == name)
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error_here(ParseErrorKind::NestingTooDeep(MAX_NESTING)));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn program(mut self) -> PResult<AlgebraPresentation> {
        self.expect(Tok::Algebra)?;
        let (name, ..) = self.ident()?;
        self.expect(Tok::Semi)?;
        let mut relations = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Gen => {
                    self.bump();
                    loop {
                        let (g, line, col) = self.ident()?;
                        self.declare(&g, line, col)?;
                        self.generators.push(g);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::Semi)?;
                }
                Tok::Param => {
                    self.bump();
                    let (p, line, col) = self.ident()?;
                    self.declare(&p, line, col)?;
                    self.expect(Tok::Eq)?;
                    let at = self.here().clone();
                    let s = self.scalar()?;
                    let value = self.constant_value(&s).ok_or_else(|| {
                        ParseError::new(
                            at.line,
                            at.column,
                            ParseErrorKind::InvalidLiteral(format!(
                                "default of `{p}` is not a finite complex number"
                            )),
                        )
                    })?;
                    self.expect(Tok::Semi)?;
                    self.param_index.insert(p.clone(), self.params.len());
                    self.params.push((p, value));
                }
                Tok::Rel => {
                    self.bump();
                    let (label, line, col) = self.ident()?;
                    if !self.labels.insert(label.clone()) {
                        return Err(ParseError::new(
                            line,
                            col,
                            ParseErrorKind::DuplicateIdentifier(label),
                        ));
                    }
                    self.expect(Tok::Colon)?;
                    let lhs = self.expr()?;
                    self.expect(Tok::Eq)?;
                    let rhs = self.expr()?;
                    self.expect(Tok::Semi)?;
                    relations.push(Relation { label, lhs, rhs });
                }
                _ => return self.syntax(&["gen", "param", "rel", "end of input"]),
            }
        }
        Ok(AlgebraPresentation {
            name,
            generators: self.generators,
            parameters: self.params,
            relations,
        })
    }

    fn declare(&self, name: &str, line: usize, col: usize) -> PResult<()> {
        if self.is_generator(name) || self.is_param(name) {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::DuplicateIdentifier(name.to_string()),
            ));
        }
        Ok(())
    }

    fn constant_value(&self, s: &Scalar) -> Option<Complex64> {
        let lookup = |name: &str| self.param_index.get(name).map(|&i| self.params[i].1);
        s.evaluate(&lookup)
            .filter(|z| z.re.is_finite() && z.im.is_finite())
            .map(|z| Complex64::new(z.re + 0.0, z.im + 0.0))
    }

    // expr := ["-"] term (("+"|"-") term)*
    fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let neg = self.eat(&Tok::Minus);
        let mut e = self.term()?;
        if neg {
            e = Expr::Neg(Box::new(e));
        }
        loop {
            if self.eat(&Tok::Plus) {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.leave();
        Ok(e)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::Number(..)
                | Tok::Imag(_)
                | Tok::Unit
                | Tok::Pi
                | Tok::Exp
                | Tok::Cos
                | Tok::Identity
                | Tok::LParen
                | Tok::Bracket
                | Tok::AntiBracket
                | Tok::Dagger
                | Tok::Power
        )
    }

    // term := factor factor*
    fn term(&mut self) -> PResult<Expr> {
        if !self.starts_factor() {
            return self.syntax(FACTOR_START);
        }
        let first = self.factor()?;
        if !self.starts_factor() {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.starts_factor() {
            items.push(self.factor()?);
        }
        Ok(Expr::Product(items))
    }

    // factor := scalar "*" factor | scalar | primary
    fn factor(&mut self) -> PResult<Expr> {
        if let Some(s) = self.try_factor_scalar()? {
            if self.eat(&Tok::Star) {
                self.enter()?;
                let inner = self.factor()?;
                self.leave();
                return Ok(Expr::Scaled(s, Box::new(inner)));
            }
            return Ok(Expr::Scalar(s));
        }
        self.primary()
    }

    /// A product/quotient chain of scalar atoms in factor position. Stops
    /// before a `*` whose right operand is not a scalar.
    fn try_factor_scalar(&mut self) -> PResult<Option<Scalar>> {
        let Some(mut acc) = self.try_atom()? else {
            return Ok(None);
        };
        loop {
            match self.peek() {
                Tok::Star => {
                    let save = self.pos;
                    self.bump();
                    match self.try_unary()? {
                        Some(rhs) => acc = Scalar::Mul(Box::new(acc), Box::new(rhs)),
                        None => {
                            self.pos = save;
                            break;
                        }
                    }
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = Scalar::Div(Box::new(acc), Box::new(rhs));
                }
                _ => break,
            }
        }
        Ok(Some(acc))
    }

    fn try_unary(&mut self) -> PResult<Option<Scalar>> {
        if *self.peek() == Tok::Minus {
            let save = self.pos;
            self.bump();
            self.enter()?;
            let inner = self.try_unary()?;
            self.leave();
            return match inner {
                Some(s) => Ok(Some(Scalar::Neg(Box::new(s)))),
                None => {
                    self.pos = save;
                    Ok(None)
                }
            };
        }
        self.try_atom()
    }

    /// Scalar atom if one starts here; `None` (with the position restored)
    /// otherwise. Only `( ... )` needs real backtracking.
    fn try_atom(&mut self) -> PResult<Option<Scalar>> {
        match self.peek().clone() {
            Tok::Number(..) | Tok::Imag(_) | Tok::Unit | Tok::Pi | Tok::Exp | Tok::Cos => {
                self.atom().map(Some)
            }
            Tok::Ident(name) if self.is_param(&name) => self.atom().map(Some),
            Tok::LParen => {
                let (save, depth) = (self.pos, self.depth);
                if self.failed_paren_scalar.contains(&save) {
                    return Ok(None);
                }
                match self.atom() {
                    Ok(s) => Ok(Some(s)),
                    Err(e) if matches!(e.kind, ParseErrorKind::NestingTooDeep(_)) => Err(e),
                    Err(_) => {
                        self.failed_paren_scalar.insert(save);
                        self.pos = save;
                        self.depth = depth;
                        Ok(None)
                    }
                }
            }
            _ => Ok(None),
        }
    }

    // scalar := sterm (("+"|"-") sterm)*
    fn scalar(&mut self) -> PResult<Scalar> {
        self.enter()?;
        let mut acc = self.scalar_term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Scalar::Add(Box::new(acc), Box::new(self.scalar_term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Scalar::Sub(Box::new(acc), Box::new(self.scalar_term()?));
            } else {
                break;
            }
        }
        self.leave();
        Ok(acc)
    }

    fn scalar_term(&mut self) -> PResult<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = Scalar::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat(&Tok::Slash) {
                acc = Scalar::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Scalar> {
        if self.eat(&Tok::Minus) {
            self.enter()?;
            let s = self.unary()?;
            self.leave();
            return Ok(Scalar::Neg(Box::new(s)));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Scalar> {
        match self.peek().clone() {
            Tok::Number(v, _) => {
                self.bump();
                Ok(Scalar::Real(v))
            }
            Tok::Imag(v) => {
                self.bump();
                Ok(Scalar::Imag(v))
            }
            Tok::Unit => {
                self.bump();
                Ok(Scalar::Unit)
            }
            Tok::Pi => {
                self.bump();
                Ok(Scalar::Pi)
            }
            Tok::Exp | Tok::Cos => {
                let f = self.bump();
                self.expect(Tok::LParen)?;
                let arg = self.scalar()?;
                self.expect(Tok::RParen)?;
                Ok(match f {
                    Tok::Exp => Scalar::Exp(Box::new(arg)),
                    _ => Scalar::Cos(Box::new(arg)),
                })
            }
            Tok::LParen => {
                self.bump();
                let s = self.scalar()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            Tok::Ident(name) => {
                if self.is_param(&name) {
                    self.bump();
                    Ok(Scalar::Param(name))
                } else if self.is_generator(&name) {
                    self.syntax(SCALAR_START)
                } else {
                    Err(self.error_here(ParseErrorKind::UnknownSymbol(name)))
                }
            }
            _ => self.syntax(SCALAR_START),
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                if self.is_generator(&name) {
                    self.bump();
                    Ok(Expr::Gen(name))
                } else {
                    Err(self.error_here(ParseErrorKind::UnknownSymbol(name)))
                }
            }
            Tok::Identity => {
                self.bump();
                Ok(Expr::Identity)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Bracket => {
                self.bump();
                self.expect(Tok::LParen)?;
                let x = self.expr()?;
                self.expect(Tok::Comma)?;
                let y = self.expr()?;
                self.expect(Tok::Comma)?;
                let q = self.scalar()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Bracket(Box::new(x), Box::new(y), q))
            }
            Tok::AntiBracket => {
                self.bump();
                self.expect(Tok::LParen)?;
                let x = self.expr()?;
                self.expect(Tok::Comma)?;
                let y = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::AntiBracket(Box::new(x), Box::new(y)))
            }
            Tok::Dagger => {
                self.bump();
                self.expect(Tok::LParen)?;
                self.enter()?;
                let x = self.primary()?;
                self.leave();
                self.expect(Tok::RParen)?;
                Ok(Expr::Dagger(Box::new(x)))
            }
            Tok::Power => {
                self.bump();
                self.expect(Tok::LParen)?;
                self.enter()?;
                let x = self.primary()?;
                self.leave();
                self.expect(Tok::Comma)?;
                let k = match self.peek().clone() {
                    Tok::Number(_, text) if text.bytes().all(|b| b.is_ascii_digit()) => {
                        match text.parse::<u32>() {
                            Ok(k) => {
                                self.bump();
                                k
                            }
                            Err(_) => {
                                return Err(self.error_here(ParseErrorKind::InvalidLiteral(text)))
                            }
                        }
                    }
                    _ => return self.syntax(&["INT"]),
                };
                self.expect(Tok::RParen)?;
                Ok(Expr::Power(Box::new(x), k))
            }
            _ => self.syntax(PRIMARY_START),
        }
    }
}
