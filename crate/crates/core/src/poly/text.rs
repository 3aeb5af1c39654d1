//! Text form of polynomials.
//!
//! Grammar: terms separated by `+` or `-`; a term is `[coef][*]factors`
//! where the coefficient is an integer or `p/q` and factors are `name` or
//! `name^k` joined by `*`. Whitespace between tokens is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{Poly, Ring};
use super::Rational;

/// Grammar violation at a 1-based character column of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            _ => {
                return Err(ParseError { column: col, message: format!("unexpected character '{c}'") })
            }
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Ring,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.col(), message: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn coefficient(&mut self) -> Result<Option<Rational>, ParseError> {
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Ok(None);
        };
        self.pos += 1;
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(d)) => {
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    self.pos += 1;
                    Ok(Some(Rational::new(n, d)))
                }
                _ => self.err("expected denominator after '/'"),
            }
        } else {
            Ok(Some(Rational::from_integer(n)))
        }
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), ParseError> {
        let col = self.col();
        let name = match self.next() {
            Some(Tok::Ident(name)) => name,
            _ => {
                self.pos -= 1;
                return self.err("expected a variable name");
            }
        };
        let idx = self.ring.index_of(&name).ok_or(ParseError {
            column: col,
            message: format!("undeclared variable '{name}'"),
        })?;
        let mut power = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    power = u32::try_from(&k).or_else(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                }
                _ => return self.err("expected exponent after '^'"),
            }
        }
        exps[idx] = exps[idx]
            .checked_add(power)
            .ok_or(ParseError { column: col, message: "exponent too large".into() })?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let mut exps = vec![0u32; self.ring.len()];
        let coef = self.coefficient()?;
        let need_factor = match (&coef, self.peek()) {
            (Some(_), Some(Tok::Star)) => {
                self.pos += 1;
                true
            }
            (Some(_), Some(Tok::Ident(_))) => true,
            (Some(_), _) => false,
            (None, _) => true,
        };
        if need_factor {
            self.factor(&mut exps)?;
            while self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                self.factor(&mut exps)?;
            }
        }
        Ok((Monomial::new(exps), coef.unwrap_or_else(Rational::one)))
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        if self.toks.is_empty() {
            return self.err("empty polynomial");
        }
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * &sign));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
        Ok(Poly::from_terms(self.ring, terms))
    }
}

/// Parses `text` as a polynomial over `ring`; only the ring's variable names
/// are accepted.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0, ring, end_col: text.chars().count() + 1 };
    parser.poly()
}

/// Parses an exact rational such as `3`, `-2` or `1/2`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
    };
    let bad = || ParseError { column: 1, message: format!("not a rational number: '{text}'") };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    if n.is_empty() || !n.chars().all(|c| c.is_ascii_digit()) || !d.chars().all(|c| c.is_ascii_digit()) || d.is_empty() {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ParseError { column: 1, message: "zero denominator".into() });
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ring.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Terms are printed from largest to smallest in degrevlex.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms(MonomialOrder::DegRevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, self.ring(), m)?;
            }
        }
        Ok(())
    }
}
