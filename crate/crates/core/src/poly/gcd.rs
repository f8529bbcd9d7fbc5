//! Multivariate gcd.
//!
//! The first attempt evaluates at a large integer, takes an integer gcd and
//! reads the result back as a polynomial from its balanced digits. The
//! candidate is accepted only if it divides both inputs exactly, which
//! certifies it because the evaluation point exceeds twice the smaller
//! coefficient norm.
//!
//! When that fails, a polynomial is viewed as univariate in its
//! highest-index variable with coefficients in the remaining variables. The
//! gcd is the gcd of the contents times the gcd of the primitive parts, the
//! latter obtained from a pseudo-remainder sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Poly;

/// Evaluation points whose size times the degree exceeds this many bits
/// are not tried.
const HEURISTIC_MAX_BITS: u64 = 1 << 18;
const HEURISTIC_ATTEMPTS: usize = 6;

pub(super) fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        let g = a.integer_content().gcd(&b.integer_content());
        return a.ring().constant(g);
    }

    // Cheap exits when one input already divides the other.
    let (da, db) = (a.total_degree(), b.total_degree());
    if db <= da && a.div_exact(b).is_ok() {
        return b.clone().normalize_sign();
    }
    if da <= db && b.div_exact(a).is_ok() {
        return a.clone().normalize_sign();
    }

    if let Some(g) = heuristic(a, b) {
        return g.normalize_sign();
    }
    gcd_prs(a, b)
}

/// Gcd through contents and pseudo-remainder sequences only.
pub(super) fn gcd_prs(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        let g = a.integer_content().gcd(&b.integer_content());
        return a.ring().constant(g);
    }
    let pa = a.vars_present();
    let pb = b.vars_present();
    let var = (0..pa.len())
        .rev()
        .find(|&i| pa[i] || pb[i])
        .expect("non-constant polynomial has a variable");

    if !pa[var] {
        return gcd_prs(a, &content_in(b, var));
    }
    if !pb[var] {
        return gcd_prs(&content_in(a, var), b);
    }

    let fa = a.coefficients_in(var);
    let fb = b.coefficients_in(var);
    let ca = fold_gcd(&fa);
    let cb = fold_gcd(&fb);
    let content = gcd_prs(&ca, &cb);

    let (mut f, mut g) = (divide_all(&fa, &ca), divide_all(&fb, &cb));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }

    let multivariate = f.iter().chain(&g).any(|c| !c.is_constant());
    let primitive = if multivariate {
        subresultant_prs(f, g)
    } else {
        primitive_prs(f, g)
    };
    if primitive.len() == 1 {
        return content.normalize_sign();
    }
    let primitive = divide_all(&primitive, &fold_gcd(&primitive));
    let primitive = Poly::from_coefficients(a.ring(), var, &primitive);
    (&content * &primitive).normalize_sign()
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms.values().map(|c| c.abs()).max().unwrap_or_default()
}

fn map_coefficients(p: &Poly, f: impl Fn(&BigInt) -> BigInt) -> Poly {
    let terms: BTreeMap<_, _> = p
        .terms
        .iter()
        .map(|(m, c)| (m.clone(), f(c)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Poly {
        ring: p.ring.clone(),
        terms,
    }
}

fn eval_var(p: &Poly, var: usize, xi: &BigInt) -> Poly {
    let coeffs = p.coefficients_in(var);
    let mut acc = p.ring.zero();
    for c in coeffs.iter().rev() {
        acc = &acc.scale(xi) + c;
    }
    acc
}

/// Inverse of evaluation at `xi` for polynomials whose coefficients are
/// smaller than `xi / 2` in absolute value.
fn from_balanced_digits(gamma: &Poly, var: usize, xi: &BigInt) -> Poly {
    let half = xi / 2;
    let mut digits = Vec::new();
    let mut g = gamma.clone();
    while !g.is_zero() {
        let e = map_coefficients(&g, |c| {
            let r = c.mod_floor(xi);
            if r > half {
                r - xi
            } else {
                r
            }
        });
        g = map_coefficients(&(&g - &e), |c| c / xi);
        digits.push(e);
    }
    Poly::from_coefficients(&gamma.ring, var, &digits)
}

fn heuristic(a: &Poly, b: &Poly) -> Option<Poly> {
    if a.is_constant() || b.is_constant() {
        return Some(
            a.ring
                .constant(a.integer_content().gcd(&b.integer_content())),
        );
    }
    let pa = a.vars_present();
    let pb = b.vars_present();
    let var = (0..pa.len()).rev().find(|&i| pa[i] || pb[i])?;

    let (ca, cb) = (a.integer_content(), b.integer_content());
    let content = ca.gcd(&cb);
    let a = map_coefficients(a, |c| c / &ca);
    let b = map_coefficients(b, |c| c / &cb);
    let deg = a
        .degree_in(var)
        .unwrap_or(0)
        .max(b.degree_in(var).unwrap_or(0)) as u64;
    let mut xi: BigInt = max_norm(&a).min(max_norm(&b)) * 2 + 29;
    for _ in 0..HEURISTIC_ATTEMPTS {
        if xi.bits() * deg.max(1) > HEURISTIC_MAX_BITS {
            return None;
        }
        let gamma = heuristic(&eval_var(&a, var, &xi), &eval_var(&b, var, &xi));
        if let Some(gamma) = gamma {
            let h = from_balanced_digits(&gamma, var, &xi);
            if !h.is_zero() {
                let hc = h.integer_content();
                let h = map_coefficients(&h, |c| c / &hc).normalize_sign();
                if a.div_exact(&h).is_ok() && b.div_exact(&h).is_ok() {
                    return Some(h.scale(&content));
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

/// Last nonzero remainder of the primitive pseudo-remainder sequence, for
/// coefficients in `Z`.
fn primitive_prs(mut f: Vec<Poly>, mut g: Vec<Poly>) -> Vec<Poly> {
    loop {
        let r = pseudo_remainder(&f, &g);
        if r.is_empty() {
            return g;
        }
        if r.len() == 1 {
            return r;
        }
        f = g;
        let c = fold_gcd(&r);
        g = divide_all(&r, &c);
    }
}

/// Last nonzero remainder of the subresultant sequence. Avoids a content
/// computation per step, which dominates when coefficients are polynomials.
fn subresultant_prs(mut f: Vec<Poly>, mut g: Vec<Poly>) -> Vec<Poly> {
    let ring = f[0].ring().clone();
    let mut lc_prev = ring.one();
    let mut h = ring.one();
    loop {
        let delta = (f.len() - g.len()) as u32;
        let r = pseudo_remainder(&f, &g);
        if r.is_empty() {
            return g;
        }
        if r.len() == 1 {
            return r;
        }
        let divisor = &lc_prev * &h.pow(delta);
        let next = divide_all(&r, &divisor);
        f = std::mem::replace(&mut g, next);
        lc_prev = f.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            lc_prev
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant scaling divides exactly")
        };
    }
}

fn content_in(p: &Poly, var: usize) -> Poly {
    fold_gcd(&p.coefficients_in(var))
}

fn fold_gcd(coeffs: &[Poly]) -> Poly {
    let mut it = coeffs.iter().filter(|c| !c.is_zero());
    let Some(first) = it.next() else {
        // Only reachable for the zero polynomial.
        return coeffs[0].ring().zero();
    };
    let mut g = first.clone().normalize_sign();
    for c in it {
        if g.is_one() {
            break;
        }
        g = gcd_prs(&g, c);
    }
    g
}

fn divide_all(coeffs: &[Poly], c: &Poly) -> Vec<Poly> {
    if c.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|x| x.div_exact(c).expect("divisor is a common factor"))
        .collect()
}

/// Pseudo-remainder of univariate polynomials over the coefficient ring,
/// coefficient vectors in ascending degree. An empty result is zero.
fn pseudo_remainder(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r = f.to_vec();
    trim(&mut r);
    while r.len() > dg {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - dg;
        if !lc.is_one() {
            for x in r.iter_mut() {
                *x = &*x * lc;
            }
        }
        for (j, gj) in g.iter().enumerate() {
            if !gj.is_zero() {
                r[shift + j] = &r[shift + j] - &(&lead * gj);
            }
        }
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}
