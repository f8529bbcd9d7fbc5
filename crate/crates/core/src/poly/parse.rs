//! Text form of polynomials.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' expr ')'
//! ```
//!
//! The printer emits terms in descending graded-lex order, e.g.
//! `x^2*y - 3*x + 1`, and `parse(print(p)) == p` holds exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Monomial, Poly, Ring};
use crate::error::{Error, Result};

/// Largest total degree the parser will build.
pub const MAX_DEGREE: u32 = 1 << 16;
const MAX_NESTING: usize = 256;
/// Upper bound on term-pair products over one whole parse.
const MAX_WORK: usize = 1 << 22;
const MAX_COEFF_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!(
                        "unexpected character {:?}",
                        s[start..].chars().next().unwrap()
                    ),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
    work: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = self.bounded_mul(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            self.enter()?;
            let v = self.unary();
            self.depth -= 1;
            return Ok(-v?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Int(n)) => match u32::try_from(n) {
                    Ok(e) if e <= MAX_DEGREE => e,
                    _ => return self.err("exponent too large"),
                },
                _ => return self.err("expected a non-negative integer exponent"),
            };
            self.pos += 1;
            return self.bounded_pow(&base, e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.ring.constant(n))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(self.ring.var(i))
                }
                None => self.err(format!("unknown variable {name:?}")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                self.enter()?;
                let inner = self.expr();
                self.depth -= 1;
                let inner = inner?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return self.err("expression nested too deeply");
        }
        Ok(())
    }

    fn check_size(&mut self, a: &Poly, b: &Poly) -> Result<()> {
        self.work = self
            .work
            .saturating_add(a.num_terms().saturating_mul(b.num_terms()));
        if self.work > MAX_WORK {
            return self.err("expression too large");
        }
        let deg = |p: &Poly| p.total_degree().finite().unwrap_or(0) as u64;
        if deg(a) + deg(b) > MAX_DEGREE as u64 {
            return self.err("degree too large");
        }
        let bits = |p: &Poly| p.terms().map(|(_, c)| c.bits()).max().unwrap_or(0);
        let terms = a.num_terms().min(b.num_terms()) as u64;
        if bits(a) + bits(b) + 64 - terms.leading_zeros() as u64 > MAX_COEFF_BITS {
            return self.err("coefficients too large");
        }
        Ok(())
    }

    fn bounded_mul(&mut self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.check_size(a, b)?;
        Ok(a * b)
    }

    fn bounded_pow(&mut self, base: &Poly, e: u32) -> Result<Poly> {
        let deg = base.total_degree().finite().unwrap_or(0) as u64;
        if deg * e as u64 > MAX_DEGREE as u64 {
            return self.err("degree too large");
        }
        let mut acc = self.ring.one();
        for _ in 0..e {
            if base.is_one() || acc.is_zero() {
                break;
            }
            acc = self.bounded_mul(&acc, base)?;
        }
        Ok(acc)
    }
}

pub(super) fn parse_poly(ring: &Ring, s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: s.len(),
        depth: 0,
        work: 0,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

fn write_monomial(m: &Monomial, ring: &Ring, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (name, &e) in ring.vars().iter().zip(m.exps()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub(super) fn write_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let mag = c.abs();
        if m.is_one() {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_monomial(m, p.ring(), f)?;
        }
    }
    Ok(())
}
