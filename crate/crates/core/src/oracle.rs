//! Brute-force reference computations used to check the inversion routines.
//! Nothing here shares code with the recursive algorithms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

/// Largest matrix accepted by [`cofactor_adjugate`].
pub const ADJUGATE_ORACLE_LIMIT: usize = 6;

/// Determinant by Bareiss one-step fraction-free elimination. A zero pivot
/// switches to cofactor expansion rather than permuting rows.
pub fn bareiss_det(a: &PolyMatrix) -> Poly {
    let n = a.size();
    let ring = a.ring();
    let mut m: Vec<Vec<Poly>> = a.rows().map(|r| r.to_vec()).collect();
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            return cofactor_det(a);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss elimination divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone()
}

/// Determinant by Laplace expansion along rows, memoised on the set of
/// columns still available. Exponential in `n`; meant for small matrices.
pub fn cofactor_det(a: &PolyMatrix) -> Poly {
    let n = a.size();
    assert!(
        n < 64,
        "cofactor expansion limited to fewer than 64 columns"
    );
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    expand(a, 0, (1u64 << n) - 1, &mut memo)
}

fn expand(a: &PolyMatrix, row: usize, cols: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
    let n = a.size();
    if row == n {
        return a.ring().one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = a.ring().zero();
    let mut sign_pos = true;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        let e = a.get(row, j);
        if !e.is_zero() {
            let minor = expand(a, row + 1, cols & !(1 << j), memo);
            let t = e * &minor;
            acc = if sign_pos { &acc + &t } else { &acc - &t };
        }
        sign_pos = !sign_pos;
    }
    memo.insert(cols, acc.clone());
    acc
}

fn delete_row_col(a: &PolyMatrix, r: usize, c: usize) -> PolyMatrix {
    let n = a.size();
    PolyMatrix::from_fn(a.ring(), n - 1, |i, j| {
        let ii = if i < r { i } else { i + 1 };
        let jj = if j < c { j } else { j + 1 };
        a.get(ii, jj).clone()
    })
}

/// Adjugate as the transposed cofactor matrix.
pub fn cofactor_adjugate(a: &PolyMatrix) -> Result<PolyMatrix> {
    let n = a.size();
    if n > ADJUGATE_ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            size: n,
            limit: ADJUGATE_ORACLE_LIMIT,
        });
    }
    let ring = a.ring();
    if n == 1 {
        return Ok(PolyMatrix::identity(ring, 1));
    }
    Ok(PolyMatrix::from_fn(ring, n, |i, j| {
        // Adj[i][j] = (-1)^(i+j) det(A without row j, column i)
        let minor = cofactor_det(&delete_row_col(a, j, i));
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    }))
}

/// `Det(A_{1..k,1..k})`, with the empty minor equal to 1.
pub fn principal_minor_det(a: &PolyMatrix, k: usize) -> Result<Poly> {
    if k > a.size() {
        return Err(Error::InvalidArgument(format!(
            "minor size {k} exceeds matrix size {}",
            a.size()
        )));
    }
    if k == 0 {
        return Ok(a.ring().one());
    }
    Ok(bareiss_det(&a.leading_minor(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fastmul::mul_naive;
    use crate::poly::Ring;

    fn ring() -> Ring {
        Ring::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn identity_and_2x2() {
        let r = ring();
        for n in 1..6 {
            assert!(bareiss_det(&PolyMatrix::identity(&r, n)).is_one());
        }
        let a = PolyMatrix::parse(&r, &[&["x", "y"], &["1", "x"]]).unwrap();
        assert_eq!(bareiss_det(&a), r.parse("x^2 - y").unwrap());
        assert_eq!(cofactor_det(&a), r.parse("x^2 - y").unwrap());
        assert_eq!(
            cofactor_adjugate(&a).unwrap(),
            PolyMatrix::parse(&r, &[&["x", "-y"], &["-1", "x"]]).unwrap()
        );
        assert_eq!(
            cofactor_adjugate(&PolyMatrix::identity(&r, 3)).unwrap(),
            PolyMatrix::identity(&r, 3)
        );
    }

    #[test]
    fn zero_pivot_falls_back() {
        let r = ring();
        let a =
            PolyMatrix::parse(&r, &[&["0", "1", "x"], &["1", "0", "y"], &["x", "y", "1"]]).unwrap();
        let d = bareiss_det(&a);
        assert_eq!(d, cofactor_det(&a));
        assert_eq!(d, r.parse("2*x*y - 1").unwrap());
    }

    #[test]
    fn adjugate_identity_on_3x3() {
        let r = ring();
        let a = PolyMatrix::parse(
            &r,
            &[
                &["x + 1", "y", "2"],
                &["x*y", "x - y", "1"],
                &["3", "y^2", "x"],
            ],
        )
        .unwrap();
        let adj = cofactor_adjugate(&a).unwrap();
        let det = bareiss_det(&a);
        assert_eq!(
            mul_naive(&a, &adj).unwrap(),
            PolyMatrix::scalar(&r, 3, &det)
        );
        assert_eq!(
            mul_naive(&adj, &a).unwrap(),
            PolyMatrix::scalar(&r, 3, &det)
        );
    }

    #[test]
    fn principal_minors() {
        let r = ring();
        let a =
            PolyMatrix::parse(&r, &[&["x", "y", "5"], &["1", "x", "7"], &["2", "3", "4"]]).unwrap();
        assert!(principal_minor_det(&a, 0).unwrap().is_one());
        assert_eq!(
            principal_minor_det(&a, 2).unwrap(),
            r.parse("x^2 - y").unwrap()
        );
        assert_eq!(principal_minor_det(&a, 3).unwrap(), bareiss_det(&a));
        assert!(principal_minor_det(&a, 4).is_err());
    }

    #[test]
    fn adjugate_limit() {
        let r = ring();
        assert!(matches!(
            cofactor_adjugate(&PolyMatrix::identity(&r, 7)),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
