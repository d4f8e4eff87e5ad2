//! Expression grammar for polynomials.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := INT ('/' INT)? | IDENT | '(' sum ')'
//! ```
//!
//! `IDENT` matches `[A-Za-z][A-Za-z0-9_]*` and must name a variable of the
//! context. Rendering emits the same grammar.

use num_bigint::BigInt;

use super::context::Ctx;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'/' => out.push((start, Tok::Slash)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(err(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a Ctx,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.here();
            let e = match self.bump() {
                Some(Tok::Int(n)) => u16::try_from(&n).map_err(|_| err(at, "exponent too large"))?,
                _ => return Err(err(at, "exponent must be a non-negative integer literal")),
            };
            if let Some(Tok::Caret) = self.peek() {
                return Err(err(self.here(), "chained exponents need parentheses"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut value = Rational::from_bigints(n, BigInt::from(1))?;
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dat = self.here();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            value = Rational::from_bigints(value.numer().clone(), d)
                                .map_err(|_| err(dat, "zero denominator"))?;
                        }
                        _ => return Err(err(dat, "denominator must be an integer literal")),
                    }
                }
                Ok(Polynomial::constant(self.ctx, value))
            }
            Some(Tok::Ident(name)) => match self.ctx.index_of(&name) {
                Ok(i) => Ok(Polynomial::var(self.ctx, i)),
                Err(_) => Err(Error::UnknownVariable(name)),
            },
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(self.toks.get(self.pos - 1).map(|t| t.0).unwrap_or(self.end), "expected `)`")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {}", describe(&t)))),
            None => Err(err(at, "unexpected end of expression")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

/// Parses `text` into a canonical polynomial over `ctx`.
pub fn parse_poly(text: &str, ctx: &Ctx) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ctx };
    let poly = p.sum()?;
    if p.pos < p.toks.len() {
        let (at, t) = &p.toks[p.pos];
        return Err(err(*at, format!("unexpected token {}", describe(t))));
    }
    Ok(poly)
}

pub(crate) fn render(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ctx = p.ctx();
    let mut out = String::new();
    for (k, t) in p.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let c = t.coeff.abs();
        let mut factors: Vec<String> = Vec::new();
        if !c.is_one() || t.mono.is_one() {
            factors.push(c.to_string());
        }
        for (i, &e) in t.mono.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ctx.name(i).to_string()),
                _ => factors.push(format!("{}^{}", ctx.name(i), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::context::VarContext;

    fn ctx() -> Ctx {
        VarContext::of(&["x", "y", "z"])
    }

    #[test]
    fn three_terms() {
        let p = parse_poly("x*y - z^2 + 1", &ctx()).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.render(), "x*y - z^2 + 1");
    }

    #[test]
    fn zero_is_empty() {
        let p = parse_poly("0", &ctx()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.render(), "0");
        assert!(parse_poly("x - x", &ctx()).unwrap().is_zero());
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_poly("x +* y", &ctx()), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(x + y", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x y", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("2x", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x / 2", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x $ 2", &ctx()), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn exponent_errors() {
        assert!(matches!(parse_poly("x^-1", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^y", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^1/2", &ctx()), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x^2^2", &ctx()), Err(Error::Parse { .. })));
    }

    #[test]
    fn unknown_identifier() {
        assert_eq!(parse_poly("x + w", &ctx()).unwrap_err(), Error::UnknownVariable("w".into()));
    }

    #[test]
    fn rationals_and_unary_minus() {
        let p = parse_poly("-x^2 + 1/2*y - 3/6", &ctx()).unwrap();
        assert_eq!(p.render(), "-x^2 + 1/2*y - 1/2");
        let q = parse_poly("-(x - y)^2", &ctx()).unwrap();
        assert_eq!(q.render(), "-x^2 + 2*x*y - y^2");
        assert_eq!(parse_poly("--x", &ctx()).unwrap().render(), "x");
    }
}
