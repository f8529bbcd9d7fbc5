//! Per-node instrumentation of the inversion recursion and the degree-law
//! checks run over it.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::content::{
    census_at_level, expected_adj_post_degree, expected_delta_post_degree, gcd_budget,
    ContentPrediction, Op, OpPath,
};
use crate::fastmul::MulConfig;
use crate::inversion::{Algorithm, CancelPolicy};
use crate::matrix::{PadMode, PolyMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeKind {
    Root,
    A11Block,
    Delta,
    /// Adjugate of a Schur complement, recorded after its subtree returns.
    DeltaAdj,
    Base,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub path: OpPath,
    pub size: usize,
    pub kind: NodeKind,
    /// `None` stands for the degree of a zero matrix.
    pub pre_cancel_degree: Option<u32>,
    pub prediction: Option<ContentPrediction>,
    /// Absolute degree of the predicted content.
    pub predicted_content_degree: Option<u32>,
    pub observed_content_degree: Option<u32>,
    pub post_cancel_degree: Option<u32>,
    pub gcd_invocations: u64,
    /// Whether the predicted content divides the content actually removed.
    pub prediction_divides: Option<bool>,
    /// Extraction with an expected degree failed and a full scan was used.
    pub fallback: bool,
    /// Largest degree among matrices formed by this node's own arithmetic.
    pub max_arith_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub content: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl NodeRecord {
    fn new(path: OpPath, size: usize, kind: NodeKind) -> Self {
        NodeRecord {
            path,
            size,
            kind,
            pre_cancel_degree: None,
            prediction: None,
            predicted_content_degree: None,
            observed_content_degree: None,
            post_cancel_degree: None,
            gcd_invocations: 0,
            prediction_divides: None,
            fallback: false,
            max_arith_degree: None,
            content: None,
            wall_time: Duration::ZERO,
        }
    }

    /// Fold a matrix into `max_arith_degree`.
    pub fn touch(&mut self, m: &PolyMatrix) {
        if let Some(d) = m.max_degree().finite() {
            self.max_arith_degree = Some(self.max_arith_degree.map_or(d, |x| x.max(d)));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileConfig {
    pub algorithm: Algorithm,
    /// Size of the input before padding.
    pub n: usize,
    /// Size the recursion ran on.
    pub root_n: usize,
    /// Largest entry degree of the root matrix.
    pub root_d: u32,
    pub variable_count: usize,
    pub cancel_policy: CancelPolicy,
    pub mul: MulConfig,
    pub pad: PadMode,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub gcd_count: u64,
    pub mul_count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub config: ProfileConfig,
    pub nodes: Vec<NodeRecord>,
    pub totals: Totals,
}

impl DegreeProfile {
    pub fn find(&self, kind: NodeKind, path: &[Op]) -> Option<&NodeRecord> {
        self.nodes
            .iter()
            .find(|r| r.kind == kind && r.path.ops() == path)
    }

    /// Records that correspond to nodes of the recursion tree.
    pub fn tree_nodes(&self) -> impl Iterator<Item = &NodeRecord> {
        self.nodes.iter().filter(|r| r.kind != NodeKind::DeltaAdj)
    }

    pub fn report(&self) -> ProfileReport {
        ProfileReport {
            config: self.config.clone(),
            nodes: self.nodes.clone(),
            totals: self.totals,
            law_checks: check_degree_laws(self),
            gcd_report: gcd_report(self),
        }
    }
}

/// Append-only sink filled during one inversion.
#[derive(Debug, Default)]
pub struct Recorder {
    nodes: Vec<NodeRecord>,
}

impl Recorder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a record and return its index. Indices follow depth-first
    /// visiting order because records are opened before their subtrees.
    pub fn open(&mut self, path: OpPath, size: usize, kind: NodeKind) -> usize {
        self.nodes.push(NodeRecord::new(path, size, kind));
        self.nodes.len() - 1
    }

    pub fn node_mut(&mut self, idx: usize) -> &mut NodeRecord {
        &mut self.nodes[idx]
    }

    pub fn finish(self, config: ProfileConfig, mul_count: u64) -> DegreeProfile {
        let gcd_count = self.nodes.iter().map(|r| r.gcd_invocations).sum();
        DegreeProfile {
            config,
            nodes: self.nodes,
            totals: Totals {
                gcd_count,
                mul_count,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Hard,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheck {
    pub law: String,
    pub path: OpPath,
    pub observed: Option<u32>,
    pub bound: u64,
    pub relation: Relation,
    pub severity: Severity,
    pub passed: bool,
}

impl LawCheck {
    fn new(
        law: &str,
        path: &OpPath,
        observed: Option<u32>,
        bound: u64,
        relation: Relation,
        severity: Severity,
    ) -> Self {
        let passed = match (relation, observed) {
            (Relation::Eq, Some(o)) => o as u64 == bound,
            (Relation::Le, Some(o)) => o as u64 <= bound,
            (Relation::Eq, None) => false,
            (Relation::Le, None) => true,
        };
        LawCheck {
            law: law.to_string(),
            path: path.clone(),
            observed,
            bound,
            relation,
            severity,
            passed,
        }
    }
}

/// Constant in the top-level `K n d` bound.
pub const TOP_LEVEL_K: u64 = 3;

/// Degree-growth checks. Padded inputs are not of uniform degree, so only the
/// size-independent checks are run for them.
pub fn check_degree_laws(p: &DegreeProfile) -> Vec<LawCheck> {
    let cfg = &p.config;
    let n = cfg.root_n;
    let d = cfg.root_d as u64;
    let mut out = Vec::new();
    if cfg.algorithm == Algorithm::DetOnly || cfg.n != n || n < 2 {
        return out;
    }
    let log = n.trailing_zeros();

    if cfg.cancel_policy == CancelPolicy::None || cfg.algorithm == Algorithm::V1 {
        // Without cancellation the pure Schur complement chain grows by
        // deg(D_{k+1}) = (size(D_k)/2 + 1) deg(D_k), starting from the root.
        let mut deg = d;
        let mut size = n;
        let mut path = OpPath::root();
        while size >= 2 {
            deg *= (size / 2 + 1) as u64;
            path = path.child(Op::Delta);
            size /= 2;
            if let Some(r) = p.find(NodeKind::Delta, path.ops()) {
                out.push(LawCheck::new(
                    "delta-spine-growth",
                    &path,
                    r.post_cancel_degree,
                    deg,
                    Relation::Eq,
                    Severity::Hard,
                ));
            }
        }
    } else {
        for r in &p.nodes {
            match r.kind {
                NodeKind::Delta => {
                    let bound = expected_delta_post_degree(&r.path, n) as u64 * d;
                    out.push(LawCheck::new(
                        "delta-post-cancel",
                        &r.path,
                        r.post_cancel_degree,
                        bound,
                        Relation::Le,
                        Severity::Hard,
                    ));
                }
                NodeKind::DeltaAdj => {
                    let pure = r.prediction.is_some();
                    let bound = expected_adj_post_degree(&r.path, n) as u64 * d;
                    let severity = if pure {
                        Severity::Hard
                    } else {
                        Severity::Warning
                    };
                    out.push(LawCheck::new(
                        "delta-adj-post-cancel",
                        &r.path,
                        r.post_cancel_degree,
                        bound,
                        Relation::Le,
                        severity,
                    ));
                }
                _ => {}
            }
        }
    }

    let root = &p.nodes[0];
    if cfg.algorithm == Algorithm::V2 {
        out.push(LawCheck::new(
            "top-level-linear",
            &root.path,
            root.max_arith_degree,
            TOP_LEVEL_K * n as u64 * d,
            Relation::Le,
            Severity::Hard,
        ));
    }
    let exponent = match cfg.algorithm {
        Algorithm::V1 => log + 1,
        _ => log.saturating_sub(1),
    };
    let overall = p.nodes.iter().filter_map(|r| r.max_arith_degree).max();
    out.push(LawCheck::new(
        "overall-growth",
        &OpPath::root(),
        overall,
        (n as u64).saturating_pow(exponent).saturating_mul(d),
        Relation::Le,
        Severity::Warning,
    ));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusLevel {
    pub level: usize,
    pub delta_nodes: usize,
    pub delta_adj_nodes: usize,
    pub expected_delta_nodes: usize,
    pub expected_delta_adj_nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdReport {
    pub total_gcd_count: u64,
    pub minimum: Option<u64>,
    pub worst_case: Option<u64>,
    pub meets_minimum: Option<bool>,
    pub within_worst_case: Option<bool>,
    pub census: Vec<CensusLevel>,
    pub census_matches: bool,
}

/// Compare gcd usage with the budget for the root size and count the nodes
/// whose content removal is nontrivial, level by level.
pub fn gcd_report(p: &DegreeProfile) -> GcdReport {
    let n = p.config.root_n;
    let total = p.totals.gcd_count;
    let budget = gcd_budget(n).ok();
    let mut levels: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for r in &p.nodes {
        let e = levels.entry(r.path.len()).or_default();
        match r.kind {
            NodeKind::Delta if r.prediction.is_some_and(|c| !c.is_trivial()) => e.0 += 1,
            NodeKind::DeltaAdj if r.size >= 4 => e.1 += 1,
            _ => {}
        }
    }
    let depth = if n.is_power_of_two() {
        n.trailing_zeros() as usize
    } else {
        0
    };
    let census: Vec<CensusLevel> = (1..depth.max(1))
        .map(|level| {
            let (dn, an) = levels.get(&level).copied().unwrap_or_default();
            let (ed, ea) = census_at_level(level, n).unwrap_or_default();
            CensusLevel {
                level,
                delta_nodes: dn,
                delta_adj_nodes: an,
                expected_delta_nodes: ed,
                expected_delta_adj_nodes: ea,
            }
        })
        .collect();
    let census_matches = census.iter().all(|c| {
        c.delta_nodes == c.expected_delta_nodes && c.delta_adj_nodes == c.expected_delta_adj_nodes
    });
    GcdReport {
        total_gcd_count: total,
        minimum: budget.map(|b| b.minimum),
        worst_case: budget.map(|b| b.worst_case),
        meets_minimum: budget.map(|b| total >= b.minimum),
        within_worst_case: budget.map(|b| total <= b.worst_case),
        census,
        census_matches,
    }
}

/// Serialized form of a profile together with its checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub config: ProfileConfig,
    pub nodes: Vec<NodeRecord>,
    pub totals: Totals,
    pub law_checks: Vec<LawCheck>,
    pub gcd_report: GcdReport,
}

impl ProfileReport {
    pub fn hard_failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.law_checks
            .iter()
            .filter(|c| c.severity == Severity::Hard && !c.passed)
    }
}
