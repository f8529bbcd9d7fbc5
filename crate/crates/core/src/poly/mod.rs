//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic. Iterating in reverse therefore yields the canonical
//! printing order (highest total degree first).

mod gcd;
mod parse;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use parse::MAX_DEGREE;

/// The variable list of a polynomial ring `Z[x_1, ..., x_m]`.
#[derive(Clone, Debug)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for Ring {}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(Error::InvalidArgument(format!(
                    "invalid variable name {v:?}"
                )));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate variable name {v:?}"
                )));
            }
            names.push(v.to_string());
        }
        Ok(Ring { vars: names.into() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Poly {
        Poly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Poly {
        self.constant(BigInt::one())
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> Poly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(self.nvars()), c);
        }
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    /// The polynomial `x_i`.
    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars(), "variable index out of range");
        let mut exps = SmallVec::from_elem(0, self.nvars());
        exps[i] = 1;
        self.term(Monomial::from_exps(exps), BigInt::one())
    }

    pub fn term(&self, m: Monomial, c: BigInt) -> Poly {
        assert_eq!(
            m.nvars(),
            self.nvars(),
            "monomial arity does not match ring"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    /// Parse a polynomial written with this ring's variables.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        parse::parse_poly(self, s)
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically with
/// the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u32; 4]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn new(exps: &[u32]) -> Self {
        Self::from_exps(SmallVec::from_slice(exps))
    }

    fn from_exps(exps: SmallVec<[u32; 4]>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self
                .degree
                .checked_add(other.degree)
                .expect("degree overflow"),
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            degree: other.degree - self.degree,
            exps,
        }
    }
}

/// Total degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `Z[x_1, ..., x_m]`. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn total_degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(m) => Degree::Finite(m.degree()),
            None => Degree::NegInfinity,
        }
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree() <= Degree::Finite(0)
    }

    /// Degree in the single variable `var`.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps[var]).max()
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(other, &BigInt::one(), None);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(other, &-BigInt::one(), None);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self += coeff * shift * other`, in place.
    fn add_scaled_shifted(&mut self, other: &Poly, coeff: &BigInt, shift: Option<&Monomial>) {
        for (m, c) in &other.terms {
            let key = match shift {
                Some(s) => s.mul(m),
                None => m.clone(),
            };
            let delta = c * coeff;
            match self.terms.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(delta);
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() += delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = self.ring.zero();
        for (m, c) in &small.terms {
            out.add_scaled_shifted(large, c, Some(m));
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Exact quotient `self / divisor`. Fails with `NotDivisible` as soon as
    /// a leading term cannot be cancelled; never truncates.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading().ok_or(Error::DivisionByZero)?;
        if divisor.terms.len() == 1 {
            return self.div_by_term(lm, lc);
        }
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(Error::not_divisible());
            }
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::not_divisible());
            }
            let qm = lm.quotient_of(m);
            rem.add_scaled_shifted(divisor, &-&qc, Some(&qm));
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    fn div_by_term(&self, lm: &Monomial, lc: &BigInt) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !lm.divides(m) {
                return Err(Error::not_divisible());
            }
            let (q, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::not_divisible());
            }
            terms.insert(lm.quotient_of(m), q);
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.div_exact(self).is_ok()
    }

    /// Non-negative gcd of all integer coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Multiply by -1 if the leading coefficient is negative.
    pub fn normalize_sign(self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self,
        }
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(gcd::gcd(self, other))
    }

    /// Evaluate at an integer point (one value per variable).
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.ring.nvars(), "evaluation point arity");
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m.exps.iter()) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Split into coefficients of powers of `var`: `self = sum_k out[k] * var^k`.
    pub(crate) fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out: Vec<BTreeMap<Monomial, BigInt>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[var] as usize;
            let mut exps = m.exps.clone();
            exps[var] = 0;
            out[k].insert(Monomial::from_exps(exps), c.clone());
        }
        out.into_iter()
            .map(|terms| Poly {
                ring: self.ring.clone(),
                terms,
            })
            .collect()
    }

    /// Inverse of [`Poly::coefficients_in`]. Coefficients must not involve `var`.
    pub(crate) fn from_coefficients(ring: &Ring, var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = BTreeMap::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut exps = m.exps.clone();
                exps[var] += k as u32;
                terms.insert(Monomial::from_exps(exps), c.clone());
            }
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn vars_present(&self) -> Vec<bool> {
        let mut present = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for (p, e) in present.iter_mut().zip(m.exps.iter()) {
                *p |= *e > 0;
            }
        }
        present
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::write_poly(self, f)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

// Operator forms panic on a ring mismatch; the `checked_*` methods report it.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs)
            .expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("ring mismatch in polynomial multiplication")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        ring().parse(s).unwrap()
    }

    #[test]
    fn add_cancels_and_prunes() {
        assert_eq!(&p("x + 1") + &p("-x + 1"), p("2"));
        assert_eq!(&p("x^2 + y") + &p("0"), p("x^2 + y"));
        assert_eq!((&p("x^2 + y") + &p("x*y")).to_string(), "x^2 + x*y + y");
        assert!((&p("x*y - 3") - &p("x*y - 3")).is_zero());
    }

    #[test]
    fn mul_expands() {
        assert_eq!(&p("x + 1") * &p("x - 1"), p("x^2 - 1"));
        assert_eq!(&p("x + y") * &p("x + 2*y"), p("x^2 + 3*x*y + 2*y^2"));
        assert_eq!(&p("3*x*y + 7") * &ring().one(), p("3*x*y + 7"));
        assert!((&p("x") * &ring().zero()).is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = Ring::new(&["x", "z"]).unwrap();
        let a = p("x");
        let b = other.parse("x").unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::RingMismatch));
        assert_eq!(a.gcd(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2 - 1").div_exact(&p("x + 1")).unwrap(), p("x - 1"));
        assert!(p("0").div_exact(&p("x + y")).unwrap().is_zero());
        assert_eq!(
            p("x^2 + 2*x*y + y^2").div_exact(&p("x + y")).unwrap(),
            p("x + y")
        );
        assert_eq!(p("6*x^2*y").div_exact(&p("-3*x")).unwrap(), p("-2*x*y"));
    }

    #[test]
    fn inexact_division_fails() {
        assert_eq!(
            p("x^2 + 1").div_exact(&p("x + 1")),
            Err(Error::NotDivisible { path: None })
        );
        assert!(p("3*x").div_exact(&p("2")).is_err());
        assert!(p("y").div_exact(&p("x")).is_err());
        assert_eq!(p("x").div_exact(&p("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn total_degree_and_sentinel() {
        let r = Ring::new(&["x", "y"]).unwrap();
        assert_eq!(
            r.parse("x^2*y + 3").unwrap().total_degree(),
            Degree::Finite(3)
        );
        assert_eq!(r.zero().total_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(
            (&p("x + 1") * &p("x - 1")).total_degree(),
            Degree::Finite(2)
        );
    }

    #[test]
    fn pow_and_eval() {
        let q = p("x - 2*y + 1");
        let pt = [BigInt::from(3), BigInt::from(-5)];
        assert_eq!(q.pow(5).eval(&pt), num_traits::pow(q.eval(&pt), 5));
        assert!(q.pow(0).is_one());
    }

    #[test]
    fn coefficient_split_round_trips() {
        let q = p("3*x^2*y^3 - x*y + 5*y - 7");
        for v in 0..2 {
            let cs = q.coefficients_in(v);
            assert_eq!(Poly::from_coefficients(q.ring(), v, &cs), q);
        }
        assert_eq!(q.coefficients_in(1).len(), 4);
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::new(&["x", "x"]).is_err());
        assert!(Ring::new(&["2x"]).is_err());
        assert!(Ring::new(&["x_1", "alpha"]).is_ok());
    }
}
