use serde::Serialize;
use serde_json::{Map, Value};

use super::hops::HopDiameter;
use super::potential::PotentialReport;
use super::reach::ReachReport;
use super::sensitivity::{sensitivity, Target};
use crate::constructions::ShadowStats;
use crate::error::Result;
use crate::graph::Graph;
use crate::hopset::{Hopset, HopsetKind};

#[derive(Clone, Debug, Serialize)]
pub struct SensitivitySummary {
    pub vertex_linf: u64,
    pub vertex_l1: u64,
    pub vertex_argmax: Option<usize>,
    pub edge_linf: u64,
    pub edge_l1: u64,
    /// `‖e-sens‖∞ ≤ ‖v-sens‖∞`.
    pub edge_within_vertex: bool,
}

impl SensitivitySummary {
    pub fn compute(g: &Graph, h: &Hopset) -> Result<Self> {
        let v = sensitivity(g, h, Target::Vertex)?;
        let e = sensitivity(g, h, Target::Edge)?;
        Ok(SensitivitySummary {
            vertex_linf: v.linf(),
            vertex_l1: v.l1(),
            vertex_argmax: if v.linf() > 0 { v.argmax() } else { None },
            edge_linf: e.linf(),
            edge_l1: e.l1(),
            edge_within_vertex: e.linf() <= v.linf(),
        })
    }
}

/// Everything measured about one hopset. Sections are filled in by the
/// caller as audits run.
#[derive(Clone, Debug, Serialize)]
pub struct HopsetReport {
    pub construction: String,
    pub kind: HopsetKind,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub directed: bool,
    pub hopset_edges: usize,
    pub sensitivity: Option<SensitivitySummary>,
    pub beta_exact: Option<HopDiameter>,
    pub beta_stretch: Option<HopDiameter>,
    pub reachability: Option<ReachReport>,
    pub shadows: Option<ShadowStats>,
    pub potential: Option<PotentialReport>,
    /// Construction-specific measurements.
    pub extra: Map<String, Value>,
    pub runtime_ms: f64,
    pub config: Value,
}

impl HopsetReport {
    pub fn new(g: &Graph, h: &Hopset) -> Self {
        HopsetReport {
            construction: h.construction.clone(),
            kind: h.kind,
            seed: h.seed,
            n: g.n(),
            m: g.m(),
            directed: g.is_directed(),
            hopset_edges: h.len(),
            sensitivity: None,
            beta_exact: None,
            beta_stretch: None,
            reachability: None,
            shadows: None,
            potential: None,
            extra: Map::new(),
            runtime_ms: 0.0,
            config: Value::Null,
        }
    }

    /// Whether every audit that ran passed.
    pub fn passed(&self) -> bool {
        self.sensitivity.as_ref().is_none_or(|s| s.edge_within_vertex)
            && self.beta_exact.as_ref().is_none_or(|b| b.exact())
            && self.beta_stretch.as_ref().is_none_or(|b| b.exact())
            && self.reachability.as_ref().is_none_or(|r| r.equal)
            && self.potential.as_ref().is_none_or(|p| p.passes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn csv_header() -> Vec<&'static str> {
        vec![
            "construction",
            "seed",
            "n",
            "m",
            "hopset_edges",
            "vertex_linf",
            "edge_linf",
            "beta_exact",
            "beta_stretch",
            "reach_beta",
            "reach_equal",
            "max_shadows",
            "potential_pass",
            "runtime_ms",
        ]
    }

    pub fn csv_row(&self) -> Vec<String> {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        vec![
            self.construction.clone(),
            self.seed.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.hopset_edges.to_string(),
            opt(self.sensitivity.as_ref().map(|s| s.vertex_linf)),
            opt(self.sensitivity.as_ref().map(|s| s.edge_linf)),
            opt(self.beta_exact.as_ref().map(|b| b.beta)),
            opt(self.beta_stretch.as_ref().map(|b| b.beta)),
            opt(self.reachability.as_ref().map(|r| r.beta)),
            opt(self.reachability.as_ref().map(|r| r.equal)),
            opt(self.shadows.as_ref().map(|s| s.max_shadows)),
            opt(self.potential.as_ref().map(|p| p.passes)),
            format!("{:.3}", self.runtime_ms),
        ]
    }
}
