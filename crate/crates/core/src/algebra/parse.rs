//! Parser for the textual expression syntax produced by `Display`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*      // '/' needs a scalar right operand
//! unary := '-' unary | atom
//! atom  := integer | q | q^{a} | q^{a/b} | q^a | identifier | '(' expr ')'
//! ```

use super::expr::Expression;
use super::symbol::Letter;
use crate::error::{Error, Result};
use crate::qscalar::QScalar;
use crate::scalar::Dimension;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            let v = text.parse().map_err(|_| Error::Syntax { pos: start, msg: format!("integer `{text}` too large") })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((start, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^(){}".contains(c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(Error::Syntax { pos: k, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    dim: Dimension,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos();
                let d = self.unary()?;
                let c = as_scalar(&d).ok_or(Error::Syntax { pos: at, msg: "divisor must be a scalar".into() })?;
                if c.is_zero() {
                    return Err(Error::Syntax { pos: at, msg: "division by zero".into() });
                }
                acc = acc.scale(&c.inv());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expression> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(&-QScalar::one()));
        }
        self.atom()
    }

    /// Exponent after `q^`: `{a}`, `{a/b}`, `{-a/b}`, `a` or `-a`. Returns twice the exponent.
    fn exponent(&mut self) -> Result<i32> {
        let braced = self.eat('{');
        let neg = self.eat('-');
        let a = self.int()?;
        let mut e2 = 2 * a;
        if braced && self.eat('/') {
            let b = self.int()?;
            if b == 1 {
                e2 = 2 * a;
            } else if b == 2 {
                e2 = a;
            } else {
                return self.err("exponent denominator must be 1 or 2");
            }
        }
        if braced {
            self.expect('}')?;
        }
        Ok(if neg { -e2 } else { e2 })
    }

    fn int(&mut self) -> Result<i32> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) if v <= i32::MAX as i64 => {
                self.at += 1;
                Ok(v as i32)
            }
            _ => self.err("expected integer"),
        }
    }

    fn atom(&mut self) -> Result<Expression> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                Ok(Expression::scalar(QScalar::from_int(v)))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "q" {
                    if self.eat('^') {
                        let e2 = self.exponent()?;
                        return Ok(Expression::scalar(QScalar::s_pow(e2)));
                    }
                    return Ok(Expression::scalar(QScalar::q()));
                }
                let letter = resolve(&name).ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                letter.validate(self.dim)?;
                Ok(Expression::letter(letter))
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn as_scalar(e: &Expression) -> Option<QScalar> {
    if e.is_zero() {
        return Some(QScalar::zero());
    }
    if e.len() == 1 {
        let (w, c) = e.terms().next().unwrap();
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

/// Index syntax: digits, or `m` followed by digits for a negative index.
fn index(s: &str) -> Option<i32> {
    let (neg, digits) = match s.strip_prefix('m') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let v: i32 = digits.parse().ok()?;
    if neg && v == 0 {
        return None;
    }
    Some(if neg { -v } else { v })
}

/// Two single-digit indices, each optionally prefixed by `m`.
fn index_pair(s: &str) -> Option<(i32, i32)> {
    let b = s.as_bytes();
    let (first_len, _) = match b.first()? {
        b'm' => (2, ()),
        _ => (1, ()),
    };
    if s.len() <= first_len {
        return None;
    }
    let (a, rest) = s.split_at(first_len);
    let i = index(a)?;
    let j = index(rest)?;
    if rest.trim_start_matches('m').len() != 1 || a.trim_start_matches('m').len() != 1 {
        return None;
    }
    Some((i, j))
}

fn resolve(name: &str) -> Option<Letter> {
    match name {
        "Lam" => return Some(Letter::Lam(1)),
        "Laminv" => return Some(Letter::Lam(-1)),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("BL") {
        return index_pair(rest).map(|(i, j)| Letter::BL(i, j));
    }
    if let Some(rest) = name.strip_prefix('L') {
        return index_pair(rest).map(|(i, j)| Letter::L(i, j));
    }
    if let Some(rest) = name.strip_prefix('p') {
        return index(rest).map(Letter::P);
    }
    if let Some(rest) = name.strip_prefix('k') {
        for (suffix, e2) in [("sqrtinv", -1), ("sqrt", 1), ("inv", -2), ("", 2)] {
            if let Some(d) = rest.strip_suffix(suffix) {
                if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) {
                    return Some(Letter::K(d.parse().ok()?, e2));
                }
            }
        }
        return None;
    }
    if let Some(rest) = name.strip_prefix('W') {
        for (suffix, e) in [("inv", -1), ("", 1)] {
            if let Some(d) = rest.strip_suffix(suffix) {
                if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) {
                    return Some(Letter::W(d.parse().ok()?, e));
                }
            }
        }
    }
    None
}

/// Parses an expression for dimension N, validating every generator.
pub fn parse(src: &str, dim: Dimension) -> Result<Expression> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.chars().count(), dim };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn identifiers() {
        assert_eq!(resolve("pm1"), Some(Letter::P(-1)));
        assert_eq!(resolve("Lm2m1"), Some(Letter::L(-2, -1)));
        assert_eq!(resolve("L01"), Some(Letter::L(0, 1)));
        assert_eq!(resolve("BLm12"), Some(Letter::BL(-1, 2)));
        assert_eq!(resolve("k2sqrtinv"), Some(Letter::K(2, -1)));
        assert_eq!(resolve("W0inv"), Some(Letter::W(0, -1)));
        assert_eq!(resolve("x"), None);
    }

    #[test]
    fn scalars_and_errors() {
        let e = parse("q^{1/2} * p0 - 3/q * p1", d(3)).unwrap();
        assert_eq!(e.coefficient(&[Letter::P(0)]), QScalar::s_pow(1));
        assert_eq!(e.coefficient(&[Letter::P(1)]), QScalar::from_int(-3) * QScalar::q_pow(-1));
        assert!(matches!(parse("p2", d(3)), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse("p0", d(4)), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse("Lm11", d(3)), Err(Error::NotARoot { .. })));
        assert!(matches!(parse("p1 * ", d(3)), Err(Error::Syntax { .. })));
        assert!(matches!(parse("p1 / p0", d(3)), Err(Error::Syntax { .. })));
        assert!(matches!(parse("foo", d(3)), Err(Error::UnknownIdentifier(_))));
    }
}
