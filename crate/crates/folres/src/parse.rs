//! Expression parser for polynomial input: integers, rationals `a/b`, the
//! variables `x`, `y` (and `z` for homogeneous triples), bound parameter
//! names, `+ - * / ^` with the usual precedence, and parentheses. No
//! implicit multiplication; division only by a nonzero constant.

use std::collections::BTreeMap;

use num::{BigInt, Zero};

use crate::algebra::{BiPoly, Rat, TriPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: u32,
    col: u32,
}

fn err(line: u32, col: u32, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: line as usize,
        col: col as usize,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '/' => {
                bump(&mut chars);
                Tok::Slash
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Num(s.parse().expect("digit string"))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => return Err(err(tline, tcol, format!("unexpected character '{other}'"))),
        };
        out.push(Token {
            tok,
            line: tline,
            col: tcol,
        });
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    bindings: &'a BTreeMap<String, Rat>,
    allow_z: bool,
    end: (u32, u32),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (u32, u32) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<TriPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TriPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let (line, col) = self.here();
                    self.next();
                    let d = self.factor()?;
                    let c = constant_of(&d)
                        .ok_or_else(|| err(line, col, "division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(err(line, col, "division by zero"));
                    }
                    acc = acc.scale(&(Rat::from_integer(1.into()) / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<TriPoly> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            let (line, col) = self.here();
            self.next();
            let e = match self.next() {
                Some(Token {
                    tok: Tok::Num(n), ..
                }) => u32::try_from(&n)
                    .map_err(|_| err(line, col, "exponent too large"))?,
                Some(Token {
                    tok: Tok::Minus, ..
                }) => return Err(err(line, col, "negative exponent")),
                _ => return Err(err(line, col, "expected an integer exponent")),
            };
            let mut acc = TriPoly::constant(Rat::from_integer(1.into()));
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TriPoly> {
        let (line, col) = self.here();
        match self.next().map(|t| t.tok) {
            Some(Tok::Num(n)) => Ok(TriPoly::constant(Rat::from_integer(n))),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(TriPoly::var(0)),
                "y" => Ok(TriPoly::var(1)),
                "z" if self.allow_z => Ok(TriPoly::var(2)),
                _ => self
                    .bindings
                    .get(&name)
                    .map(|c| TriPoly::constant(c.clone()))
                    .ok_or_else(|| err(line, col, format!("unknown identifier '{name}'"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next().map(|t| t.tok) {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(line, col, "unclosed parenthesis")),
                }
            }
            Some(other) => Err(err(line, col, format!("unexpected token {other:?}"))),
            None => Err(err(line, col, "unexpected end of input")),
        }
    }
}

fn constant_of(p: &TriPoly) -> Option<Rat> {
    if p.is_zero() {
        return Some(Rat::zero());
    }
    let mut it = p.terms();
    let (&key, c) = it.next()?;
    (key == (0, 0, 0) && it.next().is_none()).then(|| c.clone())
}

fn parse(text: &str, bindings: &BTreeMap<String, Rat>, allow_z: bool) -> Result<TriPoly> {
    let tokens = lex(text)?;
    let end = text.lines().count().max(1) as u32;
    let end = (end, text.lines().last().map_or(1, |l| l.chars().count() as u32 + 1));
    let mut p = Parser {
        tokens,
        pos: 0,
        bindings,
        allow_z,
        end,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        let (line, col) = p.here();
        return Err(err(line, col, "trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial in `x, y, z` with parameter bindings.
pub fn parse_tripoly(text: &str, bindings: &BTreeMap<String, Rat>) -> Result<TriPoly> {
    parse(text, bindings, true)
}

/// Parses a polynomial in `x, y` with parameter bindings.
pub fn parse_bipoly(text: &str, bindings: &BTreeMap<String, Rat>) -> Result<BiPoly> {
    let t = parse(text, bindings, false)?;
    let mut out = BiPoly::zero();
    for (&(i, j, k), c) in t.terms() {
        debug_assert_eq!(k, 0);
        out = out.add(&BiPoly::monomial(i, j, c.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_rational, rat};

    fn b(text: &str) -> BiPoly {
        parse_bipoly(text, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn basic_expressions() {
        assert_eq!(
            b("x^2*y - 3/2*y^3"),
            BiPoly::monomial(2, 1, rat(1)).add(&BiPoly::monomial(0, 3, parse_rational("-3/2").unwrap()))
        );
        assert_eq!(b("-(x - y)"), BiPoly::var_y().sub(&BiPoly::var_x()));
        assert_eq!(b("2^3"), BiPoly::monomial(0, 0, rat(8)));
    }

    #[test]
    fn bindings_and_family_coefficients() {
        let mut env = BTreeMap::new();
        env.insert("L".to_string(), rat(1));
        let p = parse_bipoly("y*(2*x^4 + 2*(L+1)*x^2*y - y^2)", &env).unwrap();
        let expected = BiPoly::monomial(4, 1, rat(2))
            .add(&BiPoly::monomial(2, 2, rat(4)))
            .add(&BiPoly::monomial(0, 3, rat(-1)));
        assert_eq!(p, expected);
    }

    #[test]
    fn error_positions() {
        match parse_bipoly("x^-1", &BTreeMap::new()) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (1, 2));
                assert!(msg.contains("negative exponent"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_bipoly("x + w", &BTreeMap::new()),
            Err(Error::Parse { col: 5, .. })
        ));
        assert!(matches!(
            parse_bipoly("z", &BTreeMap::new()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_bipoly("x/(y-y)", &BTreeMap::new()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_bipoly("x/y", &BTreeMap::new()),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_bipoly("2 x", &BTreeMap::new()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn display_round_trip() {
        for text in ["x^2*y - 3/2*y^3 + 7", "x*y", "-x + y^4", "1/2*x^3 - y"] {
            let p = b(text);
            assert_eq!(b(&p.to_string()), p);
        }
        let t = parse_tripoly("x*z^2 - y^3 + 2*z^3", &BTreeMap::new()).unwrap();
        assert_eq!(parse_tripoly(&t.to_string(), &BTreeMap::new()).unwrap(), t);
    }
}
