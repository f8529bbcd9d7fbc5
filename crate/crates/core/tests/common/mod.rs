#![allow(dead_code)]

use polyfrac::cli::{generate, GenSpec};
use polyfrac::fastmul::mul_naive;
use polyfrac::{Poly, PolyMatrix};

pub fn random_matrix(n: usize, m: usize, d: u32, seed: u64) -> PolyMatrix {
    generate(&GenSpec {
        n,
        m,
        d,
        coeff_bound: 9,
        seed,
    })
    .expect("generator")
}

pub fn scalar_identity(a: &PolyMatrix, c: &Poly) -> PolyMatrix {
    PolyMatrix::scalar(a.ring(), a.size(), c)
}

/// `A B == B A == c I`.
pub fn is_two_sided_inverse(a: &PolyMatrix, b: &PolyMatrix, c: &Poly) -> bool {
    let want = scalar_identity(a, c);
    mul_naive(a, b).unwrap() == want && mul_naive(b, a).unwrap() == want
}

pub fn equal_up_to_sign(p: &Poly, q: &Poly) -> bool {
    p == q || *p == -q
}
