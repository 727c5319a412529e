//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := rational | variable ('^' uint)? | '(' expr ')' ('^' uint)?
//! rational := int ('/' uint)?
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Monomial, Polynomial, RingContext};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'e' || bytes[i] == b'E') {
                return Err(Error::NonRationalCoefficient { pos: start });
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => return Err(Error::NonRationalCoefficient { pos: start }),
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ring: &'a Arc<RingContext>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = &acc * &f;
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.bump();
        match self.bump() {
            Some(Tok::Int(n)) => match u16::try_from(&n) {
                Ok(e) => Ok(e as u32),
                Err(_) => {
                    self.at -= 1;
                    self.syntax("exponent too large")
                }
            },
            _ => {
                self.at -= 1;
                self.syntax("expected a non-negative integer exponent")
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut q = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => q /= BigRational::from_integer(d),
                        Some(Tok::Int(_)) => {
                            self.at -= 1;
                            return self.syntax("zero denominator");
                        }
                        _ => {
                            self.at -= 1;
                            return self.syntax("expected an integer denominator");
                        }
                    }
                }
                Ok(Polynomial::constant(self.ring, q))
            }
            Some(Tok::Ident(name)) => {
                let Some(idx) = self.ring.var_index(&name) else {
                    return Err(Error::UnknownVariable { name, pos });
                };
                let e = self.exponent()?;
                Ok(Polynomial::term(
                    self.ring,
                    Monomial::var(self.ring.num_vars(), idx, e as u16),
                    BigRational::from_integer(1.into()),
                ))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.at -= 1;
                    return self.syntax("expected ')'");
                }
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            None => self.syntax("unexpected end of input"),
            Some(t) => {
                self.at -= 1;
                self.syntax(format!("unexpected token {t:?}"))
            }
        }
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<RingContext>) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), ring };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return p.syntax("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> Arc<RingContext> {
        RingContext::p3()
    }

    #[test]
    fn first_quartic() {
        let f = parse_polynomial("x*y^3 + y*z^3 + t^4", &r()).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.total_degree(), Some(4));
        assert!(f.is_homogeneous());
    }

    #[test]
    fn zero() {
        assert!(parse_polynomial("0", &r()).unwrap().is_zero());
        assert!(parse_polynomial("x - x", &r()).unwrap().is_zero());
    }

    #[test]
    fn expands_products() {
        let f = parse_polynomial("t^4 + x*y*(x-y)*(x+y)", &r()).unwrap();
        // brute-force expansion by hand: xy(x^2 - y^2) = x^3 y - x y^3
        let g = Polynomial::from_int_terms(
            &r(),
            &[(1, &[0, 0, 0, 4]), (1, &[3, 1, 0, 0]), (-1, &[1, 3, 0, 0])],
        );
        assert_eq!(f, g);
    }

    #[test]
    fn juxtaposition_and_rationals() {
        let a = parse_polynomial("3x y^2 + 1/3 z^3", &r()).unwrap();
        let b = parse_polynomial("3*x*y^2 + (1/3)*z^3", &r()).unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial("(x+y)(x-y)", &r()).unwrap();
        assert_eq!(c, parse_polynomial("x^2 - y^2", &r()).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("x + w", &r()) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_polynomial("1.5*x", &r()),
            Err(Error::NonRationalCoefficient { pos: 0 })
        ));
        assert!(matches!(parse_polynomial("x +", &r()), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("(x", &r()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^y", &r()), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_polynomial("1/0", &r()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x ) y", &r()), Err(Error::Syntax { .. })));
    }
}
