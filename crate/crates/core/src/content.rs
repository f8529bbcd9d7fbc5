//! Matrix content: structural predictions along recursion paths, and
//! gcd-based extraction with early termination.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

/// One step down the recursion tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    #[serde(rename = "A11")]
    A11,
    #[serde(rename = "DELTA")]
    Delta,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::A11 => "A11",
            Op::Delta => "DELTA",
        })
    }
}

/// Sequence of operations applied to the root matrix, outermost first.
/// `[DELTA, A11, DELTA]` is the Schur complement of the leading block of
/// the root's Schur complement.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OpPath(Vec<Op>);

impl OpPath {
    pub fn root() -> Self {
        OpPath(Vec::new())
    }

    pub fn new(ops: Vec<Op>) -> Self {
        OpPath(ops)
    }

    pub fn ops(&self) -> &[Op] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Op> {
        self.0.last().copied()
    }

    pub fn child(&self, op: Op) -> Self {
        let mut v = self.0.clone();
        v.push(op);
        OpPath(v)
    }

    pub fn delta_count(&self) -> usize {
        self.0.iter().filter(|&&o| o == Op::Delta).count()
    }

    /// Size of the node this path reaches from a root of size `n`.
    pub fn node_size(&self, n: usize) -> usize {
        n >> self.0.len()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "root size {n} is not a power of two"
            )));
        }
        if self.0.len() + 1 > n.trailing_zeros() as usize {
            return Err(Error::InvalidArgument(format!(
                "path {self} is too long for a root of size {n}"
            )));
        }
        Ok(())
    }

    /// Injective integer code, used to derive per-node seeds.
    pub fn code(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, op| {
            acc.wrapping_mul(2)
                .wrapping_add(matches!(op, Op::Delta) as u64)
        })
    }

    /// Leading `A11` steps only shrink the root, so a path is equivalent to
    /// its remainder taken on the corresponding leading block.
    fn strip_leading_a11(&self, n: usize) -> (usize, &[Op]) {
        let j = self.0.iter().take_while(|&&o| o == Op::A11).count();
        (n >> j, &self.0[j..])
    }
}

impl fmt::Display for OpPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, op) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{op}")?;
        }
        f.write_str("]")
    }
}

/// Predicted systematic content `Det(A_{1..minor_size})^power` of an
/// intermediate matrix. `minor_size == 0` means the content is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContentPrediction {
    pub minor_size: usize,
    pub power: usize,
    /// Degree of the content in units of the input degree `d`.
    pub predicted_degree: usize,
}

impl ContentPrediction {
    pub fn trivial() -> Self {
        ContentPrediction {
            minor_size: 0,
            power: 0,
            predicted_degree: 0,
        }
    }

    fn of(minor_size: usize, power: usize) -> Self {
        if minor_size == 0 || power == 0 {
            return Self::trivial();
        }
        ContentPrediction {
            minor_size,
            power,
            predicted_degree: minor_size * power,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.minor_size == 0
    }
}

fn log2_exact(n: usize) -> Result<usize> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("{n} is not a power of two")));
    }
    Ok(n.trailing_zeros() as usize)
}

/// Content of `Δ_i`, the Schur complement reached by `i + 1` consecutive
/// `DELTA` steps from a root of size `n`.
pub fn predict_delta_content(i: usize, n: usize) -> Result<ContentPrediction> {
    let l = log2_exact(n)?;
    if l < 2 || i > l - 2 {
        return Err(Error::InvalidArgument(format!(
            "Δ index {i} out of range for n = {n}"
        )));
    }
    Ok(ContentPrediction::of(
        (((1 << i) - 1) * n) >> i,
        n >> (i + 1),
    ))
}

/// Content of `Adj(Δ_i)` where `Δ_i` has already been made primitive.
pub fn predict_adj_content(i: usize, n: usize) -> Result<ContentPrediction> {
    let l = log2_exact(n)?;
    if l < 3 || i > l - 3 {
        return Err(Error::InvalidArgument(format!(
            "adjugate index {i} out of range for n = {n}"
        )));
    }
    Ok(ContentPrediction::of(
        (((1 << (i + 1)) - 1) * n) >> (i + 1),
        (n >> (i + 1)) - 2,
    ))
}

/// Content of the matrix at `path` for any mix of `A11` and `DELTA` steps.
/// Trivial when the most recent step is `A11`.
pub fn predict_mixed_content(path: &OpPath, n: usize) -> Result<ContentPrediction> {
    path.validate(n)?;
    if path.node_size(n) < 2 {
        return Err(Error::InvalidArgument(format!(
            "content is undefined for the 1x1 node at {path}"
        )));
    }
    if path.last() != Some(Op::Delta) {
        return Ok(ContentPrediction::trivial());
    }
    let (n_eff, rest) = path.strip_leading_a11(n);
    let k = rest.len() - 1;
    let i = rest[..k].iter().filter(|&&o| o == Op::Delta).count();
    Ok(ContentPrediction::of(
        (((1 << i) - 1) * n_eff) >> i,
        n_eff >> (k + 1),
    ))
}

/// Content of the adjugate of the (primitive) Schur complement at `path`.
/// `None` when no closed form is known, which is the case for paths that
/// mix `DELTA` with non-leading `A11` steps.
pub fn predict_adj_path_content(path: &OpPath, n: usize) -> Result<Option<ContentPrediction>> {
    path.validate(n)?;
    if path.last() != Some(Op::Delta) {
        return Err(Error::InvalidArgument(format!(
            "adjugate content is predicted only for Schur complements, not {path}"
        )));
    }
    if path.node_size(n) <= 2 {
        return Ok(Some(ContentPrediction::trivial()));
    }
    let (n_eff, rest) = path.strip_leading_a11(n);
    if rest.contains(&Op::A11) {
        return Ok(None);
    }
    predict_adj_content(rest.len() - 1, n_eff).map(Some)
}

/// Degree bound, in units of `d`, for the primitive part of `Δ` at `path`.
/// For pure paths this is exact on generic input.
pub fn expected_delta_post_degree(path: &OpPath, n: usize) -> usize {
    let (n_eff, rest) = path.strip_leading_a11(n);
    let i = rest
        .iter()
        .filter(|&&o| o == Op::Delta)
        .count()
        .saturating_sub(1);
    ((1 << (i + 1)) - 1) * n_eff / (1 << (i + 1)) + 1
}

/// Degree, in units of `d`, of the primitive adjugate of a pure Schur complement.
pub fn expected_adj_post_degree(path: &OpPath, n: usize) -> usize {
    let (n_eff, _) = path.strip_leading_a11(n);
    n_eff - 1
}

/// Outcome of [`extract_content`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub content: Poly,
    pub gcd_count: usize,
    /// The scan stopped before visiting every entry.
    pub terminated_early: bool,
    /// An expected degree was given and the running gcd reached it.
    pub reached_expected: bool,
}

/// Gcd of the entries of `m`, visiting nonzero entries in a seeded random
/// order with the lowest- and highest-degree entries first. With
/// `expected_degree`, stops as soon as the running gcd's degree drops to it;
/// the result is then only a candidate and must be checked by the caller.
pub fn extract_content(
    m: &PolyMatrix,
    expected_degree: Option<u32>,
    seed: u64,
) -> Result<Extraction> {
    if m.size() < 2 {
        return Err(Error::InvalidArgument(
            "content of a 1x1 matrix is undefined".into(),
        ));
    }
    let mut entries: Vec<&Poly> = m.entries().filter(|p| !p.is_zero()).collect();
    if entries.is_empty() {
        return Err(Error::ZeroMatrix);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    entries.shuffle(&mut rng);
    let deg = |p: &Poly| p.total_degree().finite().unwrap_or(0);
    let lo = (0..entries.len()).min_by_key(|&i| deg(entries[i])).unwrap();
    entries.swap(0, lo);
    if entries.len() > 1 {
        let hi = (1..entries.len()).max_by_key(|&i| deg(entries[i])).unwrap();
        entries.swap(1, hi);
    }

    let reached = |g: &Poly| expected_degree.is_some_and(|e| deg(g) <= e);
    let mut g = entries[0].clone().normalize_sign();
    let mut gcd_count = 0;
    let mut visited = 1;
    while visited < entries.len() && !reached(&g) && !is_unit(&g) {
        g = g.gcd(entries[visited])?;
        gcd_count += 1;
        visited += 1;
    }
    Ok(Extraction {
        reached_expected: reached(&g),
        terminated_early: visited < entries.len(),
        content: g,
        gcd_count,
    })
}

fn is_unit(p: &Poly) -> bool {
    p.constant_value()
        .is_some_and(|c| c == 1.into() || c == (-1).into())
}

/// Gcd-count bounds for content removal on a root of size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdBudget {
    /// One gcd per matrix with nontrivial systematic content.
    pub minimum: u64,
    /// Pairwise gcds over every entry of every intermediate matrix.
    pub worst_case: u64,
}

pub fn gcd_budget(n: usize) -> Result<GcdBudget> {
    let l = log2_exact(n)?;
    if n < 8 {
        return Err(Error::InvalidArgument(format!(
            "gcd budget needs n >= 8, got {n}"
        )));
    }
    let n = n as u64;
    Ok(GcdBudget {
        minimum: 3 * n / 4 - l as u64 - 1,
        worst_case: 4 * (2 * n * n - 9 * n + 4) / 3,
    })
}

/// Number of matrices at recursion depth `level` whose content is worth
/// removing: `(Schur complements, Schur complement adjugates)`.
pub fn census_at_level(level: usize, n: usize) -> Result<(usize, usize)> {
    let l = log2_exact(n)?;
    if level == 0 || level >= l {
        return Ok((0, 0));
    }
    let delta = (1 << (level - 1)) - 1;
    let adj = if level + 2 <= l { 1 << (level - 1) } else { 0 };
    Ok((delta, adj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use Op::{Delta as D, A11 as A};

    fn path(ops: &[Op]) -> OpPath {
        OpPath::new(ops.to_vec())
    }

    #[test]
    fn path_basics() {
        let p = path(&[D, A, D]);
        assert_eq!(p.to_string(), "[DELTA, A11, DELTA]");
        assert_eq!(OpPath::root().to_string(), "[]");
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"["DELTA","A11","DELTA"]"#
        );
        assert_eq!(p.delta_count(), 2);
        assert_eq!(p.node_size(16), 2);
        assert!(p.validate(16).is_ok());
        assert!(p.validate(8).is_err());
        assert_ne!(path(&[A]).code(), path(&[A, A]).code());
        assert_ne!(path(&[A]).code(), path(&[D]).code());
    }

    #[test]
    fn delta_predictions() {
        assert!(predict_delta_content(0, 8).unwrap().is_trivial());
        let p = predict_delta_content(1, 8).unwrap();
        assert_eq!((p.minor_size, p.power, p.predicted_degree), (4, 2, 8));
        let p = predict_delta_content(1, 16).unwrap();
        assert_eq!((p.minor_size, p.power, p.predicted_degree), (8, 4, 32));
        let p = predict_delta_content(2, 16).unwrap();
        assert_eq!((p.minor_size, p.power, p.predicted_degree), (12, 2, 24));
        assert!(predict_delta_content(3, 16).is_err());
    }

    #[test]
    fn adj_predictions() {
        let p = predict_adj_content(0, 16).unwrap();
        assert_eq!((p.minor_size, p.power, p.predicted_degree), (8, 6, 48));
        let p = predict_adj_content(0, 8).unwrap();
        assert_eq!((p.minor_size, p.power, p.predicted_degree), (4, 2, 8));
        assert!(predict_adj_content(1, 8).is_err());
        assert!(predict_adj_path_content(&path(&[D, D, D]), 16)
            .unwrap()
            .unwrap()
            .is_trivial());
        assert_eq!(
            predict_adj_path_content(&path(&[D, A, D]), 32).unwrap(),
            None
        );
        assert_eq!(
            predict_adj_path_content(&path(&[A, D]), 16).unwrap(),
            Some(predict_adj_content(0, 8).unwrap())
        );
    }

    #[test]
    fn mixed_predictions() {
        assert!(predict_mixed_content(&path(&[D, A]), 16)
            .unwrap()
            .is_trivial());
        assert_eq!(
            predict_mixed_content(&path(&[D, D]), 8).unwrap(),
            predict_delta_content(1, 8).unwrap()
        );
        let p = predict_mixed_content(&path(&[D, A, D]), 16).unwrap();
        assert_eq!((p.minor_size, p.power, p.predicted_degree), (8, 2, 16));
        for i in 0..3 {
            let pure = OpPath::new(vec![D; i + 1]);
            assert_eq!(
                predict_mixed_content(&pure, 16).unwrap(),
                predict_delta_content(i, 16).unwrap()
            );
        }
        assert!(predict_mixed_content(&path(&[A, D]), 16)
            .unwrap()
            .is_trivial());
        assert!(predict_mixed_content(&path(&[D, D, D, D]), 16).is_err());
    }

    #[test]
    fn post_degrees() {
        assert_eq!(expected_delta_post_degree(&path(&[D, D]), 8), 7);
        assert_eq!(expected_delta_post_degree(&path(&[D, D]), 16), 13);
        assert_eq!(expected_delta_post_degree(&path(&[D, D, D]), 16), 15);
        assert_eq!(expected_delta_post_degree(&path(&[D]), 16), 9);
        assert_eq!(expected_adj_post_degree(&path(&[D]), 16), 15);
    }

    #[test]
    fn budgets_and_census() {
        assert_eq!(
            gcd_budget(8).unwrap(),
            GcdBudget {
                minimum: 2,
                worst_case: 80
            }
        );
        assert_eq!(
            gcd_budget(16).unwrap(),
            GcdBudget {
                minimum: 7,
                worst_case: 496
            }
        );
        assert!(gcd_budget(4).is_err());
        assert!(gcd_budget(12).is_err());
        for n in [8usize, 16, 32, 64] {
            let total: usize = (0..=n.trailing_zeros() as usize)
                .map(|l| {
                    let (a, b) = census_at_level(l, n).unwrap();
                    a + b
                })
                .sum();
            assert_eq!(total as u64, gcd_budget(n).unwrap().minimum);
        }
    }

    #[test]
    fn extraction() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let m =
            PolyMatrix::parse(&r, &[&["x^2 + x*y", "2*x + 2*y"], &["x + y", "x^2 - y^2"]]).unwrap();
        for seed in 0..5 {
            let e = extract_content(&m, None, seed).unwrap();
            assert_eq!(e.content, r.parse("x + y").unwrap());
            assert!(!e.terminated_early);
        }
        let i2 = PolyMatrix::identity(&r, 2);
        assert!(extract_content(&i2, None, 1).unwrap().content.is_one());
        let coprime = PolyMatrix::parse(&r, &[&["x", "y"], &["x + 1", "y - 1"]]).unwrap();
        assert!(extract_content(&coprime, None, 3).unwrap().content.is_one());
        assert_eq!(
            extract_content(&PolyMatrix::zero(&r, 2), None, 0),
            Err(Error::ZeroMatrix)
        );
        assert!(extract_content(&PolyMatrix::identity(&r, 1), None, 0).is_err());
    }

    #[test]
    fn extraction_stops_at_expected_degree() {
        let r = Ring::new(&["x"]).unwrap();
        let m = PolyMatrix::from_fn(&r, 4, |i, j| {
            r.parse(&format!("(x + 1)*(x + {})*(x - {})", i + 2, j + 7))
                .unwrap()
        });
        let e = extract_content(&m, Some(1), 9).unwrap();
        assert!(e.reached_expected);
        assert!(e.terminated_early);
        assert_eq!(e.content, r.parse("x + 1").unwrap());
        let full = extract_content(&m, None, 9).unwrap();
        assert_eq!(full.content, e.content);
        assert!(full.gcd_count >= e.gcd_count);
    }
}
