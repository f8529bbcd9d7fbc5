//! Fraction-free Strassen inversion.
//!
//! Both algorithms return `B = d1 * Adj(A)` and `d2 = Det(A)`. The first
//! works literally on pairs `(M, c)`; the second divides exactly wherever a
//! denominator is known to cancel and can additionally strip the content of
//! each Schur complement and of its adjugate.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::content::{
    extract_content, predict_adj_path_content, predict_mixed_content, ContentPrediction, Op, OpPath,
};
use crate::error::{Error, Result};
use crate::fastmul::{mul_counted, MulConfig, MulCounter};
use crate::matrix::{
    binary_size, pad, pair_add, pair_mul, trim_adjugate, PadMode, PolyMatrix, ScaledMatrix,
};
use crate::oracle::principal_minor_det;
use crate::poly::Poly;
use crate::profile::{DegreeProfile, NodeKind, ProfileConfig, Recorder};

/// How the content of intermediate matrices is removed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CancelPolicy {
    /// No content removal.
    None,
    /// Divide by the predicted content, computed from leading minors of the root.
    Theorem,
    /// Gcd over all entries.
    Gcd,
    /// Gcd with the predicted degree as stopping rule, verified by division.
    #[default]
    Hybrid,
}

impl fmt::Display for CancelPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CancelPolicy::None => "none",
            CancelPolicy::Theorem => "theorem",
            CancelPolicy::Gcd => "gcd",
            CancelPolicy::Hybrid => "hybrid",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "v1")]
    V1,
    #[serde(rename = "v2")]
    V2,
    #[serde(rename = "det")]
    DetOnly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvertConfig {
    pub cancel: CancelPolicy,
    pub mul: MulConfig,
    pub pad: PadMode,
    /// Seeds the entry order of content extraction.
    pub seed: u64,
    /// Store removed contents as strings in the profile.
    pub record_contents: bool,
}

impl InvertConfig {
    pub fn with_cancel(cancel: CancelPolicy) -> Self {
        InvertConfig {
            cancel,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct FFResult {
    /// `d1 * Adj(A)`.
    pub adj_scaled: PolyMatrix,
    /// `Det(A)`.
    pub det: Poly,
    pub profile: DegreeProfile,
}

/// `a11_det * A22 - A21 * a11_adj * A12`.
pub fn schur_delta(a: &PolyMatrix, a11_adj: &PolyMatrix, a11_det: &Poly) -> Result<PolyMatrix> {
    let (_, a12, a21, a22) = a.quadrants()?;
    let eps = mul_counted(a11_adj, &a12, &MulConfig::default(), None)?;
    let t = mul_counted(&a21, &eps, &MulConfig::default(), None)?;
    a22.scalar_mul(a11_det)?.sub(&t)
}

struct Ctx<'a> {
    cfg: &'a InvertConfig,
    root: PolyMatrix,
    root_d: u32,
    counter: MulCounter,
    rec: Recorder,
    minors: HashMap<usize, Poly>,
}

fn degree(m: &PolyMatrix) -> Option<u32> {
    m.max_degree().finite()
}

fn poly_degree(p: &Poly) -> Option<u32> {
    p.total_degree().finite()
}

fn mix_seed(seed: u64, path: &OpPath, kind: NodeKind) -> u64 {
    let salt = if kind == NodeKind::DeltaAdj {
        0xA5A5_A5A5
    } else {
        0
    };
    seed ^ path.code().wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a InvertConfig, root: PolyMatrix) -> Self {
        let root_d = degree(&root).unwrap_or(0);
        Ctx {
            cfg,
            root,
            root_d,
            counter: MulCounter::new(),
            rec: Recorder::new(),
            minors: HashMap::new(),
        }
    }

    fn root_n(&self) -> usize {
        self.root.size()
    }

    fn mul(&self, a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
        mul_counted(a, b, &self.cfg.mul, Some(&self.counter))
    }

    fn open(&mut self, path: &OpPath, size: usize, leaf: bool) -> usize {
        let kind = match path.last() {
            None => NodeKind::Root,
            Some(Op::Delta) => NodeKind::Delta,
            Some(Op::A11) if leaf => NodeKind::Base,
            Some(Op::A11) => NodeKind::A11Block,
        };
        self.rec.open(path.clone(), size, kind)
    }

    fn finish(self, algorithm: Algorithm, n: usize) -> DegreeProfile {
        let config = ProfileConfig {
            algorithm,
            n,
            root_n: self.root.size(),
            root_d: self.root_d,
            variable_count: self.root.ring().nvars(),
            cancel_policy: self.cfg.cancel,
            mul: self.cfg.mul,
            pad: self.cfg.pad,
            seed: self.cfg.seed,
        };
        let mul_count = self.counter.scalar_mults();
        self.rec.finish(config, mul_count)
    }

    fn minor_power(&mut self, pred: &ContentPrediction) -> Result<Poly> {
        if pred.is_trivial() {
            return Ok(self.root.ring().one());
        }
        let det = match self.minors.get(&pred.minor_size) {
            Some(p) => p.clone(),
            None => {
                let p = principal_minor_det(&self.root, pred.minor_size)?;
                self.minors.insert(pred.minor_size, p.clone());
                p
            }
        };
        Ok(det.pow(pred.power as u32))
    }

    /// Remove the content of `m` according to the policy, filling in the
    /// record at `idx`. `pred` is `None` when no closed form is known.
    fn cancel(
        &mut self,
        m: PolyMatrix,
        idx: usize,
        pred: Option<ContentPrediction>,
    ) -> Result<(PolyMatrix, Poly)> {
        let one = m.ring().one();
        let path = self.rec.node_mut(idx).path.clone();
        let kind = self.rec.node_mut(idx).kind;
        {
            let r = self.rec.node_mut(idx);
            r.pre_cancel_degree = degree(&m);
            r.prediction = pred;
            r.predicted_content_degree = pred.map(|p| p.predicted_degree as u32 * self.root_d);
        }
        let seed = mix_seed(self.cfg.seed, &path, kind);
        let nontrivial = pred.filter(|p| !p.is_trivial());
        let mut gcds = 0u64;
        let mut fallback = false;

        let content = match self.cfg.cancel {
            CancelPolicy::None => None,
            _ if m.is_zero() => None,
            CancelPolicy::Theorem => match nontrivial {
                Some(p) => Some(self.minor_power(&p)?),
                None => None,
            },
            CancelPolicy::Gcd => {
                let e = extract_content(&m, None, seed)?;
                gcds += e.gcd_count as u64;
                Some(e.content)
            }
            CancelPolicy::Hybrid => match pred {
                Some(p) if p.is_trivial() => None,
                Some(p) => {
                    let expected = p.predicted_degree as u32 * self.root_d;
                    let e = extract_content(&m, Some(expected), seed)?;
                    gcds += e.gcd_count as u64;
                    if !e.terminated_early {
                        fallback = !e.reached_expected;
                        Some(e.content)
                    } else if m.div_exact(&e.content).is_ok() {
                        Some(e.content)
                    } else {
                        fallback = true;
                        let full = extract_content(&m, None, seed)?;
                        gcds += full.gcd_count as u64;
                        Some(full.content)
                    }
                }
                None => {
                    let e = extract_content(&m, None, seed)?;
                    gcds += e.gcd_count as u64;
                    Some(e.content)
                }
            },
        };

        let (primitive, content) = match content {
            Some(c) if !c.is_one() => (m.div_exact(&c).map_err(|e| e.at_path(&path))?, c),
            _ => (m, one),
        };

        let divides = match (self.cfg.cancel, nontrivial) {
            (CancelPolicy::None, _) | (_, None) => None,
            (CancelPolicy::Theorem, Some(_)) => Some(true),
            (_, Some(p)) => Some(self.minor_power(&p)?.divides(&content)),
        };
        let record_contents = self.cfg.record_contents;
        let r = self.rec.node_mut(idx);
        r.observed_content_degree = if self.cfg.cancel == CancelPolicy::None {
            None
        } else {
            poly_degree(&content)
        };
        r.post_cancel_degree = degree(&primitive);
        r.gcd_invocations += gcds;
        r.fallback = fallback;
        r.prediction_divides = divides;
        if record_contents && self.cfg.cancel != CancelPolicy::None {
            r.content = Some(content.to_string());
        }
        Ok((primitive, content))
    }

    /// `(Adj(X), Det(X))` with content removal on every Schur complement.
    fn node(&mut self, x: &PolyMatrix, path: &OpPath, idx: usize) -> Result<(PolyMatrix, Poly)> {
        let start = Instant::now();
        let out = self.node_inner(x, path, idx);
        self.rec.node_mut(idx).wall_time = start.elapsed();
        out
    }

    fn node_inner(
        &mut self,
        x: &PolyMatrix,
        path: &OpPath,
        idx: usize,
    ) -> Result<(PolyMatrix, Poly)> {
        let n = x.size();
        if n <= 2 {
            let (adj, det) = base_case(x);
            self.rec.node_mut(idx).touch(&adj);
            return Ok((adj, det));
        }
        let h = n / 2;
        let (x11, x12, x21, x22) = x.quadrants()?;

        let p11 = path.child(Op::A11);
        let i11 = self.open(&p11, h, h <= 2);
        {
            let r = self.rec.node_mut(i11);
            r.pre_cancel_degree = degree(&x11);
            r.post_cancel_degree = r.pre_cancel_degree;
        }
        let (adj11, a) = self.node(&x11, &p11, i11)?;
        if a.is_zero() {
            return Err(Error::SingularPivot { path: p11 });
        }

        let eps = self.mul(&adj11, &x12)?;
        let delta = x22.scalar_mul(&a)?.sub(&self.mul(&x21, &eps)?)?;
        self.rec.node_mut(idx).touch(&eps);
        self.rec.node_mut(idx).touch(&delta);

        let pd = path.child(Op::Delta);
        let id = self.open(&pd, h, h <= 2);
        let pred = predict_mixed_content(&pd, self.root_n()).ok();
        let (delta_c, c) = self.cancel(delta, id, pred)?;
        let (adj_dc, det_dc) = self.node(&delta_c, &pd, id)?;
        if det_dc.is_zero() {
            return Err(Error::SingularPivot { path: pd });
        }

        let (adj_c, g) = if h >= 4 {
            let ia = self.rec.open(pd.clone(), h, NodeKind::DeltaAdj);
            let pred = predict_adj_path_content(&pd, self.root_n())?;
            self.cancel(adj_dc, ia, pred)?
        } else {
            (adj_dc, x.ring().one())
        };
        self.rec.node_mut(idx).touch(&adj_c);

        // det(Delta) = c^h det(Delta_c) = a^(h-1) det(X), and
        // Adj(Delta) = sigma * adj_c with sigma = c^(h-1) g.
        let h32 = h as u32;
        let d2 = (&c.pow(h32) * &det_dc)
            .div_exact(&a.pow(h32 - 1))
            .map_err(|e| e.at_path(path))?;
        let sigma = &c.pow(h32 - 1) * &g;
        let rho = a.pow(h32 - 2);
        let rho_a = &rho * &a;

        let b22 = adj_c
            .mul_div_exact(&sigma, &rho)
            .map_err(|e| e.at_path(path))?;
        let p = self.mul(&self.mul(&adj_c, &x21)?, &adj11)?;
        let lambda = p
            .mul_div_exact(&sigma, &rho_a)
            .map_err(|e| e.at_path(path))?;
        let q = self.mul(&eps, &adj_c)?;
        let b12 = q
            .mul_div_exact(&sigma, &rho_a)
            .map_err(|e| e.at_path(path))?
            .neg();
        let b11 = adj11
            .scalar_mul(&d2)?
            .add(&self.mul(&eps, &lambda)?)?
            .div_exact(&a)
            .map_err(|e| e.at_path(path))?;
        let b21 = lambda.neg();
        let r = self.rec.node_mut(idx);
        for m in [&p, &q, &b11, &b12, &b21, &b22] {
            r.touch(m);
        }
        Ok((PolyMatrix::join(&b11, &b12, &b21, &b22)?, d2))
    }

    /// Verbatim second algorithm, threading `d1` into the recursion.
    fn node_none(
        &mut self,
        x: &PolyMatrix,
        d1: &Poly,
        path: &OpPath,
        idx: usize,
    ) -> Result<(PolyMatrix, Poly)> {
        let start = Instant::now();
        let out = self.node_none_inner(x, d1, path, idx);
        self.rec.node_mut(idx).wall_time = start.elapsed();
        out
    }

    fn node_none_inner(
        &mut self,
        x: &PolyMatrix,
        d1: &Poly,
        path: &OpPath,
        idx: usize,
    ) -> Result<(PolyMatrix, Poly)> {
        let n = x.size();
        if n <= 2 {
            let (adj, det) = base_case(x);
            let b = adj.scalar_mul(d1)?;
            self.rec.node_mut(idx).touch(&b);
            return Ok((b, det));
        }
        let h = n / 2;
        let (x11, x12, x21, x22) = x.quadrants()?;

        let p11 = path.child(Op::A11);
        let i11 = self.open(&p11, h, h <= 2);
        {
            let r = self.rec.node_mut(i11);
            r.pre_cancel_degree = degree(&x11);
            r.post_cancel_degree = r.pre_cancel_degree;
        }
        let one = x.ring().one();
        let (adj11, a) = self.node_none(&x11, &one, &p11, i11)?;
        if a.is_zero() {
            return Err(Error::SingularPivot { path: p11 });
        }

        let eps = self.mul(&adj11, &x12)?;
        let delta = x22.scalar_mul(&a)?.sub(&self.mul(&x21, &eps)?)?;

        let pd = path.child(Op::Delta);
        let id = self.open(&pd, h, h <= 2);
        let pred = predict_mixed_content(&pd, self.root_n()).ok();
        let (delta, _) = self.cancel(delta, id, pred)?;
        let (delta_adj, delta_det) = self.node_none(&delta, &a, &pd, id)?;
        if delta_det.is_zero() {
            return Err(Error::SingularPivot { path: pd });
        }
        if h >= 4 {
            let ia = self.rec.open(pd.clone(), h, NodeKind::DeltaAdj);
            let pred = predict_adj_path_content(&pd, self.root_n())?;
            let r = self.rec.node_mut(ia);
            r.prediction = pred;
            r.pre_cancel_degree = degree(&delta_adj);
            r.post_cancel_degree = r.pre_cancel_degree;
        }

        let ah = a.pow(h as u32 - 1);
        let at = |e: Error| e.at_path(path);
        let d2 = delta_det.div_exact(&ah).map_err(at)?;
        let delta_adj = delta_adj.div_exact(&ah).map_err(at)?;
        let lambda = self
            .mul(&self.mul(&delta_adj, &x21)?, &adj11)?
            .div_exact(&a)
            .map_err(at)?;
        let b11 = adj11
            .scalar_mul(&d2)?
            .add(&self.mul(&eps, &lambda)?)?
            .div_exact(&a)
            .map_err(at)?
            .scalar_mul(d1)?;
        let b12 = self
            .mul(&eps, &delta_adj)?
            .div_exact(&a)
            .map_err(at)?
            .scalar_mul(d1)?
            .neg();
        let b21 = lambda.scalar_mul(d1)?.neg();
        let b22 = delta_adj.scalar_mul(d1)?;
        let r = self.rec.node_mut(idx);
        for m in [&eps, &delta, &delta_adj, &lambda, &b11, &b12, &b21, &b22] {
            r.touch(m);
        }
        Ok((PolyMatrix::join(&b11, &b12, &b21, &b22)?, d2))
    }

    /// First algorithm on pairs, recursing down to `1 x 1`.
    fn node_v1(
        &mut self,
        x: &PolyMatrix,
        d1: &Poly,
        path: &OpPath,
        idx: usize,
    ) -> Result<(PolyMatrix, Poly)> {
        let start = Instant::now();
        let out = self.node_v1_inner(x, d1, path, idx);
        self.rec.node_mut(idx).wall_time = start.elapsed();
        out
    }

    fn node_v1_inner(
        &mut self,
        x: &PolyMatrix,
        d1: &Poly,
        path: &OpPath,
        idx: usize,
    ) -> Result<(PolyMatrix, Poly)> {
        let ring = x.ring().clone();
        let n = x.size();
        if n == 1 {
            let b = PolyMatrix::scalar(&ring, 1, d1);
            self.rec.node_mut(idx).touch(&b);
            return Ok((b, x.get(0, 0).clone()));
        }
        let h = n / 2;
        let (x11, x12, x21, x22) = x.quadrants()?;
        let mulcfg = self.cfg.mul;
        let pm =
            |c: &Ctx, p: &ScaledMatrix, q: &ScaledMatrix| pair_mul(p, q, &mulcfg, Some(&c.counter));

        let p11 = path.child(Op::A11);
        let i11 = self.open(&p11, h, h == 1);
        {
            let r = self.rec.node_mut(i11);
            r.pre_cancel_degree = degree(&x11);
            r.post_cancel_degree = r.pre_cancel_degree;
        }
        let one = ring.one();
        let (adj11, a) = self.node_v1(&x11, &one, &p11, i11)?;
        if a.is_zero() {
            return Err(Error::SingularPivot { path: p11 });
        }
        let inv11 = ScaledMatrix::new(adj11.clone(), a.clone())?;
        let x12p = ScaledMatrix::integral(x12);
        let x21p = ScaledMatrix::integral(x21);

        let t = pm(self, &ScaledMatrix::integral(x21p.mat().neg()), &inv11)?;
        let t = pm(self, &t, &x12p)?;
        let (delta, delta_den) = pair_add(&ScaledMatrix::integral(x22), &t)?.into_parts();

        let pd = path.child(Op::Delta);
        let id = self.open(&pd, h, h == 1);
        {
            let r = self.rec.node_mut(id);
            r.pre_cancel_degree = degree(&delta);
            r.post_cancel_degree = r.pre_cancel_degree;
            r.prediction = predict_mixed_content(&pd, self.root.size()).ok();
        }
        let (delta_adj, delta_det) = self.node_v1(&delta, &delta_den, &pd, id)?;
        if delta_det.is_zero() {
            return Err(Error::SingularPivot { path: pd });
        }
        let delta_inv = ScaledMatrix::new(delta_adj, delta_det.clone())?;

        let lam = pm(self, &pm(self, &delta_inv, &x21p)?, &inv11)?;
        let inner = pair_add(
            &ScaledMatrix::integral(PolyMatrix::identity(&ring, h)),
            &pm(self, &x12p, &lam)?,
        )?;
        let b11p = pm(self, &inv11, &inner)?;
        let neg_inv11 = ScaledMatrix::new(adj11.neg(), a.clone())?;
        let b12p = pm(self, &pm(self, &neg_inv11, &x12p)?, &delta_inv)?;

        let at = |e: Error| e.at_path(path);
        let d2 = delta_det.div_exact(&a.pow(h as u32 - 1)).map_err(at)?;
        let dd = d1 * &d2;
        let scale = |p: &ScaledMatrix| p.mat().mul_div_exact(&dd, p.denom()).map_err(at);
        let b11 = scale(&b11p)?;
        let b12 = scale(&b12p)?;
        let b21 = scale(&lam)?.neg();
        let b22 = scale(&delta_inv)?;
        let r = self.rec.node_mut(idx);
        for m in [
            &delta,
            lam.mat(),
            b11p.mat(),
            b12p.mat(),
            &b11,
            &b12,
            &b21,
            &b22,
        ] {
            r.touch(m);
        }
        Ok((PolyMatrix::join(&b11, &b12, &b21, &b22)?, d2))
    }

    /// `Det(X)`; only the leading blocks need their adjugates.
    fn det_node(&mut self, x: &PolyMatrix, path: &OpPath, idx: usize) -> Result<Poly> {
        let n = x.size();
        if n <= 2 {
            return Ok(base_case(x).1);
        }
        let h = n / 2;
        let (x11, x12, x21, x22) = x.quadrants()?;
        let p11 = path.child(Op::A11);
        let i11 = self.open(&p11, h, h <= 2);
        {
            let r = self.rec.node_mut(i11);
            r.pre_cancel_degree = degree(&x11);
            r.post_cancel_degree = r.pre_cancel_degree;
        }
        let (adj11, a) = self.node(&x11, &p11, i11)?;
        if a.is_zero() {
            return Err(Error::SingularPivot { path: p11 });
        }
        let delta = x22
            .scalar_mul(&a)?
            .sub(&self.mul(&x21, &self.mul(&adj11, &x12)?)?)?;
        self.rec.node_mut(idx).touch(&delta);
        let pd = path.child(Op::Delta);
        let id = self.open(&pd, h, h <= 2);
        let pred = predict_mixed_content(&pd, self.root_n()).ok();
        let (delta_c, c) = self.cancel(delta, id, pred)?;
        let det_c = self.det_node(&delta_c, &pd, id)?;
        if det_c.is_zero() {
            return Err(Error::SingularPivot { path: pd });
        }
        let h32 = h as u32;
        (&c.pow(h32) * &det_c)
            .div_exact(&a.pow(h32 - 1))
            .map_err(|e| e.at_path(path))
    }
}

/// Adjugate and determinant of a matrix of size at most 2.
fn base_case(x: &PolyMatrix) -> (PolyMatrix, Poly) {
    let ring = x.ring();
    if x.size() == 1 {
        return (PolyMatrix::identity(ring, 1), x.get(0, 0).clone());
    }
    let (a, b, c, d) = (x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1));
    let adj = PolyMatrix::from_fn(ring, 2, |i, j| match (i, j) {
        (0, 0) => d.clone(),
        (0, 1) => -b,
        (1, 0) => -c,
        _ => a.clone(),
    });
    (adj, &(a * d) - &(b * c))
}

fn prepare(a: &PolyMatrix, d1: &Poly, mode: PadMode) -> Result<PolyMatrix> {
    if d1.is_zero() {
        return Err(Error::InvalidArgument("d1 must be nonzero".into()));
    }
    if d1.ring() != a.ring() {
        return Err(Error::RingMismatch);
    }
    pad(a, binary_size(a.size()), mode)
}

fn finish_inverse(
    ctx: Ctx<'_>,
    algorithm: Algorithm,
    n: usize,
    b: PolyMatrix,
    det: Poly,
) -> Result<FFResult> {
    if det.is_zero() {
        return Err(Error::SingularPivot {
            path: OpPath::root(),
        });
    }
    let mode = ctx.cfg.pad;
    let adj_scaled = trim_adjugate(&b, n, mode)?;
    Ok(FFResult {
        adj_scaled,
        det,
        profile: ctx.finish(algorithm, n),
    })
}

/// First fraction-free formulation, following the pair arithmetic literally.
/// No content is removed; `cfg.cancel` is ignored.
pub fn ff_invert_v1(a: &PolyMatrix, d1: &Poly, cfg: &InvertConfig) -> Result<FFResult> {
    let n = a.size();
    let root = prepare(a, d1, cfg.pad)?;
    let mut ctx = Ctx::new(cfg, root.clone());
    let path = OpPath::root();
    let idx = ctx.open(&path, root.size(), root.size() == 1);
    ctx.rec.node_mut(idx).pre_cancel_degree = degree(&root);
    let (b, det) = ctx.node_v1(&root, d1, &path, idx)?;
    finish_inverse(ctx, Algorithm::V1, n, b, det)
}

/// Second fraction-free formulation with the configured content removal.
pub fn ff_invert_v2(a: &PolyMatrix, d1: &Poly, cfg: &InvertConfig) -> Result<FFResult> {
    let n = a.size();
    let root = prepare(a, d1, cfg.pad)?;
    let mut ctx = Ctx::new(cfg, root.clone());
    let path = OpPath::root();
    let idx = ctx.open(&path, root.size(), root.size() <= 2);
    ctx.rec.node_mut(idx).pre_cancel_degree = degree(&root);
    let (b, det) = if cfg.cancel == CancelPolicy::None {
        ctx.node_none(&root, d1, &path, idx)?
    } else {
        let (adj, det) = ctx.node(&root, &path, idx)?;
        (adj.scalar_mul(d1)?, det)
    };
    finish_inverse(ctx, Algorithm::V2, n, b, det)
}

/// Determinant through the same recursion, with the default configuration.
pub fn det_only(a: &PolyMatrix) -> Result<Poly> {
    det_only_with(a, &InvertConfig::default()).map(|(d, _)| d)
}

pub fn det_only_with(a: &PolyMatrix, cfg: &InvertConfig) -> Result<(Poly, DegreeProfile)> {
    let n = a.size();
    let root = pad(a, binary_size(n), cfg.pad)?;
    let mut ctx = Ctx::new(cfg, root.clone());
    let path = OpPath::root();
    let idx = ctx.open(&path, root.size(), root.size() <= 2);
    ctx.rec.node_mut(idx).pre_cancel_degree = degree(&root);
    let start = Instant::now();
    let det = ctx.det_node(&root, &path, idx)?;
    ctx.rec.node_mut(idx).wall_time = start.elapsed();
    Ok((det, ctx.finish(Algorithm::DetOnly, n)))
}
