//! Dense square matrices of polynomials, the `(M, c)` pair arithmetic used by
//! the first inversion algorithm, and padding to binary size.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fastmul::{self, MulConfig, MulCounter};
use crate::poly::{Degree, Poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// Build from rows. All entries must share `ring` and the rows must form a square.
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for p in row {
                if p.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            n,
            entries,
        })
    }

    pub fn from_fn(ring: &Ring, n: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        assert!(n > 0, "matrix size must be positive");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = f(i, j);
                assert!(p.ring() == ring, "entry ring mismatch");
                entries.push(p);
            }
        }
        PolyMatrix {
            ring: ring.clone(),
            n,
            entries,
        }
    }

    /// Parse from rows of polynomial strings.
    pub fn parse(ring: &Ring, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn zero(ring: &Ring, n: usize) -> Self {
        Self::from_fn(ring, n, |_, _| ring.zero())
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Self::scalar(ring, n, &ring.one())
    }

    /// `c * I_n`.
    pub fn scalar(ring: &Ring, n: usize, c: &Poly) -> Self {
        Self::from_fn(ring, n, |i, j| if i == j { c.clone() } else { ring.zero() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(p.ring() == &self.ring, "entry ring mismatch");
        self.entries[i * self.n + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.entries.iter()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly]> {
        self.entries.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn max_degree(&self) -> Degree {
        self.entries
            .iter()
            .map(Poly::total_degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.n, |i, j| self.get(j, i).clone())
    }

    /// The `k x k` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, k: usize) -> Self {
        assert!(row + k <= self.n && col + k <= self.n, "block out of range");
        Self::from_fn(&self.ring, k, |i, j| self.get(row + i, col + j).clone())
    }

    /// Upper-left `k x k` principal submatrix.
    pub fn leading_minor(&self, k: usize) -> Self {
        self.block(0, 0, k)
    }

    pub fn quadrants(&self) -> Result<(Self, Self, Self, Self)> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::OddSize(self.n));
        }
        let h = self.n / 2;
        Ok((
            self.block(0, 0, h),
            self.block(0, h, h),
            self.block(h, 0, h),
            self.block(h, h, h),
        ))
    }

    pub fn join(a11: &Self, a12: &Self, a21: &Self, a22: &Self) -> Result<Self> {
        let h = a11.n;
        for q in [a12, a21, a22] {
            if q.n != h {
                return Err(Error::SizeMismatch {
                    left: h,
                    right: q.n,
                });
            }
            if q.ring != a11.ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Self::from_fn(&a11.ring, 2 * h, |i, j| {
            let q = match (i < h, j < h) {
                (true, true) => a11,
                (true, false) => a12,
                (false, true) => a21,
                (false, false) => a22,
            };
            q.get(i % h, j % h).clone()
        }))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<Self> {
        self.check_same(other)?;
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scalar_mul(&self, c: &Poly) -> Result<Self> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if c.is_one() {
            return Ok(self.clone());
        }
        Ok(self.map(|p| p * c))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Entrywise exact division by `c`. Fails on the first entry `c` does not divide.
    pub fn div_exact(&self, c: &Poly) -> Result<Self> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if c.is_one() {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|p| p.div_exact(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        })
    }

    /// `(num / den) * self` where the quotient is only required to be exact
    /// entrywise. When neither scalar divides the other the product is
    /// formed first and then divided.
    pub fn mul_div_exact(&self, num: &Poly, den: &Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Ok(q) = num.div_exact(den) {
            return self.scalar_mul(&q);
        }
        if let Ok(q) = den.div_exact(num) {
            return self.div_exact(&q);
        }
        self.scalar_mul(num)?.div_exact(den)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Matrix product through the configured multiplication routine.
    pub fn mul(&self, other: &Self, cfg: &MulConfig) -> Result<Self> {
        fastmul::mul(self, other, cfg)
    }

    pub fn eval(&self, point: &[BigInt]) -> Vec<Vec<BigInt>> {
        self.rows()
            .map(|r| r.iter().map(|p| p.eval(point)).collect())
            .collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            vars: self.ring.vars().to_vec(),
            n: self.n,
            entries: self
                .rows()
                .map(|r| r.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(doc: &MatrixJson) -> Result<Self> {
        let ring = Ring::new(&doc.vars)?;
        if doc.n == 0 {
            return Err(Error::Json("n must be at least 1".into()));
        }
        if doc.entries.len() != doc.n || doc.entries.iter().any(|r| r.len() != doc.n) {
            return Err(Error::Json(format!(
                "entries must form a {0}x{0} grid",
                doc.n
            )));
        }
        let rows = doc
            .entries
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&ring, rows)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json(&doc)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("matrix document serializes")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized matrix: `{"vars": [...], "n": N, "entries": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub vars: Vec<String>,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

/// A pair `(M, c)` standing for the matrix of fractions `M / c`.
///
/// Pair arithmetic never reduces by a gcd; the denominator only changes where
/// the inversion algorithms prescribe an exact division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledMatrix {
    mat: PolyMatrix,
    denom: Poly,
}

impl ScaledMatrix {
    pub fn new(mat: PolyMatrix, denom: Poly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if denom.ring() != mat.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(ScaledMatrix { mat, denom })
    }

    /// `(M, 1)`.
    pub fn integral(mat: PolyMatrix) -> Self {
        let denom = mat.ring().one();
        ScaledMatrix { mat, denom }
    }

    pub fn mat(&self) -> &PolyMatrix {
        &self.mat
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn into_parts(self) -> (PolyMatrix, Poly) {
        (self.mat, self.denom)
    }

    /// Equality of the represented fractions, by cross-multiplication.
    pub fn semantic_eq(&self, other: &Self) -> bool {
        match (
            self.mat.scalar_mul(&other.denom),
            other.mat.scalar_mul(&self.denom),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

/// `(M1, c1) * (M2, c2) = (M1 M2, c1 c2)`.
pub fn pair_mul(
    p: &ScaledMatrix,
    q: &ScaledMatrix,
    cfg: &MulConfig,
    counter: Option<&MulCounter>,
) -> Result<ScaledMatrix> {
    let mat = fastmul::mul_counted(&p.mat, &q.mat, cfg, counter)?;
    let denom = p.denom.checked_mul(&q.denom)?;
    Ok(ScaledMatrix { mat, denom })
}

/// `(M1, c1) + (M2, c2) = (c2 M1 + c1 M2, c1 c2)`.
pub fn pair_add(p: &ScaledMatrix, q: &ScaledMatrix) -> Result<ScaledMatrix> {
    let mat = p
        .mat
        .scalar_mul(&q.denom)?
        .add(&q.mat.scalar_mul(&p.denom)?)?;
    let denom = p.denom.checked_mul(&q.denom)?;
    Ok(ScaledMatrix { mat, denom })
}

/// Where the identity block goes when padding to a larger size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PadMode {
    /// `diag(I, A)`: padding rows and columns come first.
    #[default]
    UpperLeft,
    /// `diag(A, I)`.
    LowerRight,
}

impl fmt::Display for PadMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PadMode::UpperLeft => "upper-left",
            PadMode::LowerRight => "lower-right",
        })
    }
}

/// Embed `a` in a `target x target` matrix with an identity block, preserving
/// the determinant.
pub fn pad(a: &PolyMatrix, target: usize, mode: PadMode) -> Result<PolyMatrix> {
    let n = a.size();
    if target < n {
        return Err(Error::InvalidPadTarget { size: n, target });
    }
    if target == n {
        return Ok(a.clone());
    }
    let p = target - n;
    let ring = a.ring();
    let off = match mode {
        PadMode::UpperLeft => p,
        PadMode::LowerRight => 0,
    };
    Ok(PolyMatrix::from_fn(ring, target, |i, j| {
        let inside = |k: usize| k >= off && k < off + n;
        if inside(i) && inside(j) {
            a.get(i - off, j - off).clone()
        } else if i == j {
            ring.one()
        } else {
            ring.zero()
        }
    }))
}

/// Smallest power of two that is at least `n`.
pub fn binary_size(n: usize) -> usize {
    n.next_power_of_two()
}

/// Recover the adjugate of the unpadded input from the adjugate of its padded
/// form. Padding with an identity block makes the adjugate block diagonal,
/// with `Adj(A)` in the same position `A` occupied.
pub fn trim_adjugate(padded: &PolyMatrix, original_n: usize, mode: PadMode) -> Result<PolyMatrix> {
    let m = padded.size();
    if original_n == 0 || original_n > m {
        return Err(Error::InvalidPadTarget {
            size: original_n,
            target: m,
        });
    }
    let off = match mode {
        PadMode::UpperLeft => m - original_n,
        PadMode::LowerRight => 0,
    };
    Ok(padded.block(off, off, original_n))
}
