use super::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Real literal with its source text (the text decides whether it is
    /// also a valid `INT`).
    Number(f64, String),
    Imag(f64),
    // keywords
    Algebra,
    Gen,
    Param,
    Rel,
    Identity,
    Unit,
    Pi,
    Bracket,
    AntiBracket,
    Dagger,
    Power,
    Exp,
    Cos,
    // punctuation
    Semi,
    Colon,
    Comma,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(_, s) => format!("number `{s}`"),
            Tok::Imag(v) => format!("imaginary literal `{v}i`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    pub fn text(&self) -> &'static str {
        match self {
            Tok::Algebra => "algebra",
            Tok::Gen => "gen",
            Tok::Param => "param",
            Tok::Rel => "rel",
            Tok::Identity => "I",
            Tok::Unit => "i",
            Tok::Pi => "pi",
            Tok::Bracket => "bracket",
            Tok::AntiBracket => "antibracket",
            Tok::Dagger => "dagger",
            Tok::Power => "power",
            Tok::Exp => "exp",
            Tok::Cos => "cos",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Ident(_) => "IDENT",
            Tok::Number(..) => "NUMBER",
            Tok::Imag(_) => "IMAG",
            Tok::Eof => "EOF",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "algebra" => Tok::Algebra,
        "gen" => Tok::Gen,
        "param" => Tok::Param,
        "rel" => Tok::Rel,
        "I" => Tok::Identity,
        "i" => Tok::Unit,
        "pi" => Tok::Pi,
        "bracket" => Tok::Bracket,
        "antibracket" => Tok::AntiBracket,
        "dagger" => Tok::Dagger,
        "power" => Tok::Power,
        "exp" => Tok::Exp,
        "cos" => Tok::Cos,
        _ => return None,
    })
}

pub fn is_keyword(word: &str) -> bool {
    keyword(word).is_some()
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let punct = match c {
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = punct {
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text.parse().map_err(|_| {
                ParseError::new(tl, tc, ParseErrorKind::InvalidLiteral(text.clone()))
            })?;
            if !value.is_finite() {
                return Err(ParseError::new(
                    tl,
                    tc,
                    ParseErrorKind::InvalidLiteral(text),
                ));
            }
            // `2.5i` is an imaginary literal unless the `i` starts a longer word
            let imag = i < chars.len()
                && chars[i] == 'i'
                && !(i + 1 < chars.len() && is_ident_char(chars[i + 1]));
            let tok = if imag {
                i += 1;
                Tok::Imag(value)
            } else {
                Tok::Number(value, text)
            };
            col += i - start;
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            });
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = keyword(&word).unwrap_or(Tok::Ident(word));
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            });
            continue;
        }
        return Err(ParseError::new(tl, tc, ParseErrorKind::UnexpectedChar(c)));
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}
