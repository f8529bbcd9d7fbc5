//! Polynomial matrix multiplication: schoolbook and Strassen-Winograd.
//!
//! The Winograd schedule uses 7 block products and 15 block additions per
//! level. Sizes at or below the cutoff, and odd sizes, fall back to the
//! schoolbook product.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MulVariant {
    NaiveOnly,
    StrassenWinograd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulConfig {
    cutoff: usize,
    pub variant: MulVariant,
}

impl MulConfig {
    pub fn new(cutoff: usize, variant: MulVariant) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidArgument(
                "multiplication cutoff must be at least 1".into(),
            ));
        }
        Ok(MulConfig { cutoff, variant })
    }

    pub fn strassen(cutoff: usize) -> Result<Self> {
        Self::new(cutoff, MulVariant::StrassenWinograd)
    }

    pub fn naive() -> Self {
        MulConfig {
            cutoff: 1,
            variant: MulVariant::NaiveOnly,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
}

impl Default for MulConfig {
    fn default() -> Self {
        MulConfig {
            cutoff: 2,
            variant: MulVariant::StrassenWinograd,
        }
    }
}

/// Operation counters shared with the profiler.
#[derive(Debug, Default)]
pub struct MulCounter {
    scalar_mults: AtomicU64,
    block_products: AtomicU64,
}

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Entry-level polynomial multiplications performed.
    pub fn scalar_mults(&self) -> u64 {
        self.scalar_mults.load(Ordering::Relaxed)
    }

    /// Half-size block products issued by Strassen-Winograd levels.
    pub fn block_products(&self) -> u64 {
        self.block_products.load(Ordering::Relaxed)
    }

    fn add_scalar(&self, k: u64) {
        self.scalar_mults.fetch_add(k, Ordering::Relaxed);
    }

    fn add_blocks(&self, k: u64) {
        self.block_products.fetch_add(k, Ordering::Relaxed);
    }
}

fn check(a: &PolyMatrix, b: &PolyMatrix) -> Result<()> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

pub fn mul_naive(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    mul_naive_counted(a, b, None)
}

pub fn mul_naive_counted(
    a: &PolyMatrix,
    b: &PolyMatrix,
    counter: Option<&MulCounter>,
) -> Result<PolyMatrix> {
    check(a, b)?;
    let n = a.size();
    if let Some(c) = counter {
        c.add_scalar((n * n * n) as u64);
    }
    let ring = a.ring();
    Ok(PolyMatrix::from_fn(ring, n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..n {
            let (x, y) = (a.get(i, k), b.get(k, j));
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * y);
            }
        }
        acc
    }))
}

pub fn mul(a: &PolyMatrix, b: &PolyMatrix, cfg: &MulConfig) -> Result<PolyMatrix> {
    mul_counted(a, b, cfg, None)
}

pub fn mul_counted(
    a: &PolyMatrix,
    b: &PolyMatrix,
    cfg: &MulConfig,
    counter: Option<&MulCounter>,
) -> Result<PolyMatrix> {
    check(a, b)?;
    match cfg.variant {
        MulVariant::NaiveOnly => mul_naive_counted(a, b, counter),
        MulVariant::StrassenWinograd => winograd(a, b, cfg.cutoff, counter),
    }
}

fn winograd(
    a: &PolyMatrix,
    b: &PolyMatrix,
    cutoff: usize,
    counter: Option<&MulCounter>,
) -> Result<PolyMatrix> {
    let n = a.size();
    if n <= cutoff || !n.is_multiple_of(2) {
        return mul_naive_counted(a, b, counter);
    }
    if let Some(c) = counter {
        c.add_blocks(7);
    }
    let (a11, a12, a21, a22) = a.quadrants()?;
    let (b11, b12, b21, b22) = b.quadrants()?;

    let s1 = a21.add(&a22)?;
    let s2 = s1.sub(&a11)?;
    let s3 = a11.sub(&a21)?;
    let s4 = a12.sub(&s2)?;
    let t1 = b12.sub(&b11)?;
    let t2 = b22.sub(&t1)?;
    let t3 = b22.sub(&b12)?;
    let t4 = t2.sub(&b21)?;

    let rec = |x: &PolyMatrix, y: &PolyMatrix| winograd(x, y, cutoff, counter);
    let m1 = rec(&a11, &b11)?;
    let m2 = rec(&a12, &b21)?;
    let m3 = rec(&s4, &b22)?;
    let m4 = rec(&a22, &t4)?;
    let m5 = rec(&s1, &t1)?;
    let m6 = rec(&s2, &t2)?;
    let m7 = rec(&s3, &t3)?;

    let u2 = m1.add(&m6)?;
    let u3 = u2.add(&m7)?;
    let u4 = u2.add(&m5)?;
    let c11 = m1.add(&m2)?;
    let c12 = u4.add(&m3)?;
    let c21 = u3.sub(&m4)?;
    let c22 = u3.add(&m5)?;
    PolyMatrix::join(&c11, &c12, &c21, &c22)
}
