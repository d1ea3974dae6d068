//! Hopset edges with spans, and the JSON-lines file format.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};
use crate::weight::Weight;

/// An added edge `s → t` together with the routing path it bypasses.
/// An empty `span` means the span is unknown (e.g. read from a file that
/// omitted it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopsetEdge {
    pub s: VertexId,
    pub t: VertexId,
    pub weight: Weight,
    pub span: Path,
}

impl HopsetEdge {
    /// Edge over `span`, weighted by the exact span length.
    pub fn over(g: &Graph, span: Path) -> HopsetEdge {
        let weight = g.path_weight(&span).expect("span must be a path of the graph");
        HopsetEdge { s: span[0], t: *span.last().unwrap(), weight, span }
    }

    pub fn has_span(&self) -> bool {
        !self.span.is_empty()
    }

    fn normalized(mut self, directed: bool) -> HopsetEdge {
        if !directed && self.s > self.t {
            std::mem::swap(&mut self.s, &mut self.t);
            self.span.reverse();
        }
        self
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopsetKind {
    ExactHopset,
    ShortcutSet,
    ApproxHopset,
    Emulator,
}

/// A set of hopset edges, unique per endpoint pair (unordered for undirected
/// graphs). The first inserted edge for a pair wins.
#[derive(Clone, Debug)]
pub struct Hopset {
    pub kind: HopsetKind,
    pub construction: String,
    pub seed: u64,
    directed: bool,
    edges: Vec<HopsetEdge>,
    index: HashMap<(VertexId, VertexId), usize>,
}

#[derive(Serialize, Deserialize)]
struct Line {
    s: VertexId,
    t: VertexId,
    weight: Weight,
    #[serde(default)]
    span: Path,
    #[serde(default)]
    construction: String,
    #[serde(default)]
    seed: u64,
}

impl Hopset {
    pub fn new(kind: HopsetKind, construction: &str, seed: u64, directed: bool) -> Self {
        Hopset { kind, construction: construction.to_string(), seed, directed, edges: Vec::new(), index: HashMap::new() }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Adds an edge unless its endpoint pair is already present.
    pub fn insert(&mut self, e: HopsetEdge) -> bool {
        let e = e.normalized(self.directed);
        let key = (e.s, e.t);
        if self.index.contains_key(&key) {
            return false;
        }
        self.index.insert(key, self.edges.len());
        self.edges.push(e);
        true
    }

    pub fn extend<I: IntoIterator<Item = HopsetEdge>>(&mut self, edges: I) {
        for e in edges {
            self.insert(e);
        }
    }

    pub fn contains(&self, s: VertexId, t: VertexId) -> bool {
        let key = if self.directed { (s, t) } else { (s.min(t), s.max(t)) };
        self.index.contains_key(&key)
    }

    pub fn edges(&self) -> &[HopsetEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoint pairs, sorted.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut p: Vec<_> = self.edges.iter().map(|e| (e.s, e.t)).collect();
        p.sort_unstable();
        p
    }

    /// Checks every span is a path of `g` between the edge's endpoints and,
    /// for non-shortcut kinds, that the weight equals the span weight.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (index, e) in self.edges.iter().enumerate() {
            if !e.has_span() {
                return Err(Error::MissingSpan { index });
            }
            let ends_ok = e.span[0] == e.s && *e.span.last().unwrap() == e.t;
            let in_range = e.span.iter().all(|&v| v < g.n());
            if !ends_ok || !in_range || e.span.len() < 2 {
                return Err(Error::InvalidSpan { index });
            }
            match g.path_weight(&e.span) {
                None => return Err(Error::InvalidSpan { index }),
                Some(w) if self.kind != HopsetKind::ShortcutSet && w != e.weight => {
                    return Err(Error::InvalidSpan { index })
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let line = Line {
                s: e.s,
                t: e.t,
                weight: e.weight,
                span: e.span.clone(),
                construction: self.construction.clone(),
                seed: self.seed,
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&line).expect("hopset line serializes"));
        }
        out
    }

    /// Reads the JSON-lines format. Construction name and seed are taken from
    /// the first line.
    pub fn from_jsonl(text: &str, kind: HopsetKind, directed: bool) -> Result<Hopset> {
        let mut h = Hopset::new(kind, "", 0, directed);
        for (i, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let line: Line = serde_json::from_str(raw)
                .map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            if h.is_empty() {
                h.construction = line.construction.clone();
                h.seed = line.seed;
            }
            h.insert(HopsetEdge { s: line.s, t: line.t, weight: line.weight, span: line.span });
        }
        Ok(h)
    }
}
