//! Private all-pairs range sums over public shortest paths.
//!
//! Each graph edge carries a private attribute. The mechanism adds Laplace
//! noise to every edge attribute and to the span sum of every greedy hopset
//! edge, then answers each pair by summing noisy values along a low-hop
//! representation of its routing path.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::audit::{sensitivity, Target};
use crate::constructions::greedy_hopset;
use crate::error::{Error, Result};
use crate::graph::{Graph, RoutingOracle};
use crate::hopset::Hopset;
use crate::par;
use crate::weight::{Weight, WeightParseError};

const EDGE_STREAM: u64 = 0;
const HOPSET_STREAM: u64 = 1;

/// Zero-mean Laplace variate with scale `b`, by inverting the CDF.
pub fn laplace_sample<R: Rng + ?Sized>(b: f64, rng: &mut R) -> f64 {
    assert!(b > 0.0, "Laplace scale must be positive");
    loop {
        let u: f64 = rng.gen::<f64>() - 0.5;
        if u > -0.5 {
            return -b * u.signum() * (1.0 - 2.0 * u.abs()).ln();
        }
    }
}

/// Parses `u v a` lines (one per graph edge, `#` comments allowed) into
/// attributes indexed by edge id.
pub fn parse_attributes(g: &Graph, text: &str) -> Result<Vec<Weight>> {
    let mut attrs: Vec<Option<Weight>> = vec![None; g.m()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 3 {
            return Err(Error::Parse { line, msg: "attribute line must be `u v a`".into() });
        }
        let vertex = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("bad vertex `{s}`") });
        let (u, v) = (vertex(f[0])?, vertex(f[1])?);
        let a: Weight = f[2].parse().map_err(|e| match e {
            WeightParseError::Negative => Error::NegativeWeight { line, text: f[2].into() },
            other => Error::Parse { line, msg: format!("bad attribute `{}`: {other}", f[2]) },
        })?;
        let id = g
            .edge_id(u, v)
            .ok_or_else(|| Error::Parse { line, msg: format!("({u}, {v}) is not an edge") })?;
        if attrs[id].replace(a).is_some() {
            return Err(Error::DuplicateEdge { line, u, v });
        }
    }
    attrs
        .into_iter()
        .enumerate()
        .map(|(id, a)| {
            a.ok_or_else(|| {
                let e = g.edge(id);
                Error::Parse { line: 0, msg: format!("no attribute for edge ({}, {})", e.u, e.v) }
            })
        })
        .collect()
}

pub fn attributes_to_text(g: &Graph, attrs: &[Weight]) -> String {
    g.edges().iter().zip(attrs).map(|(e, a)| format!("{} {} {}\n", e.u, e.v, a)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NoisedTable {
    pub epsilon: f64,
    pub seed: u64,
    pub edge_scale: f64,
    pub hopset_scale: f64,
    pub edges: Vec<f64>,
    pub hopset: Vec<f64>,
}

/// Privacy accounting derived from the configured scales and the measured
/// edge sensitivity of the hopset.
#[derive(Clone, Debug, Serialize)]
pub struct Accounting {
    pub epsilon: f64,
    pub measured_edge_sensitivity: u64,
    pub scale_term: f64,
    pub edge_scale: f64,
    pub hopset_scale: f64,
    /// Loss of the edge mechanism: attribute vectors at ℓ1 distance 1, scale `2/ε`.
    pub edge_epsilon: f64,
    /// Loss of the hopset mechanism: ℓ1 sensitivity `‖e-sens‖∞`, scale `2·term/ε`.
    pub hopset_epsilon: f64,
    pub total_epsilon: f64,
    pub certified: bool,
    pub hopset_edges: usize,
    pub max_hops_used: u32,
}

/// `n × n` answers, row-major; `None` where the pair is unreachable.
#[derive(Clone, Debug, Serialize)]
pub struct QueryMatrix {
    pub n: usize,
    pub values: Vec<Option<f64>>,
    pub hops: Vec<u32>,
}

impl QueryMatrix {
    pub fn get(&self, s: usize, t: usize) -> Option<f64> {
        self.values[s * self.n + t]
    }
}

pub struct AsrqOutput {
    pub matrix: QueryMatrix,
    pub table: NoisedTable,
    pub accounting: Accounting,
    pub hopset: Hopset,
}

#[derive(Clone, Debug, Default)]
pub struct AsrqOptions {
    /// Sensitivity term in the hopset noise scale. Defaults to
    /// `max(measured ‖e-sens‖∞, 1)`.
    pub scale_term: Option<f64>,
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Exact range sums along routing paths.
pub fn true_range_sums(oracle: &RoutingOracle<'_>, attrs: &[Weight]) -> QueryMatrix {
    let g = oracle.graph();
    let n = g.n();
    let rows = par::map_range(n, |s| {
        (0..n)
            .map(|t| {
                oracle.path(s, t).map(|p| {
                    let ids = g.path_edges(&p).expect("routing path uses graph edges");
                    (ids.iter().map(|&e| attrs[e]).sum::<Weight>().as_f64(), ids.len() as u32)
                })
            })
            .collect::<Vec<_>>()
    });
    let mut values = Vec::with_capacity(n * n);
    let mut hops = Vec::with_capacity(n * n);
    for row in rows {
        for x in row {
            values.push(x.map(|(v, _)| v));
            hops.push(x.map_or(0, |(_, h)| h));
        }
    }
    QueryMatrix { n, values, hops }
}

/// `max |a - b|` over entries defined in both.
pub fn additive_error(a: &QueryMatrix, b: &QueryMatrix) -> f64 {
    a.values
        .iter()
        .zip(&b.values)
        .filter_map(|(x, y)| Some((x.as_ref()? - y.as_ref()?).abs()))
        .fold(0.0, f64::max)
}

/// Answers every pair from the noisy table. A search over `G ∪ H` ordered
/// by `(weight, key, hops)` (a hopset edge's key is the key sum of its span)
/// finds the fewest-hop representation of the routing path itself.
fn answer_all(oracle: &RoutingOracle<'_>, h: &Hopset, table: &NoisedTable) -> QueryMatrix {
    let g = oracle.graph();
    let n = g.n();
    let keys = oracle.keys();
    // (head, weight, key, noisy value)
    let mut adj: Vec<Vec<(usize, u64, u128, f64)>> = vec![Vec::new(); n];
    for (id, e) in g.edges().iter().enumerate() {
        let arc = |v| (v, e.w.micros(), keys.key(id) as u128, table.edges[id]);
        adj[e.u].push(arc(e.v));
        if !g.is_directed() {
            adj[e.v].push(arc(e.u));
        }
    }
    for (i, e) in h.edges().iter().enumerate() {
        let key: u128 = g.path_edges(&e.span).expect("span is a path").iter().map(|&x| keys.key(x) as u128).sum();
        adj[e.s].push((e.t, e.weight.micros(), key, table.hopset[i]));
        if !g.is_directed() {
            adj[e.t].push((e.s, e.weight.micros(), key, table.hopset[i]));
        }
    }

    let rows = par::map_range(n, |s| {
        type Label = (u64, u128, u32);
        let mut best: Vec<Option<Label>> = vec![None; n];
        let mut sum = vec![0.0f64; n];
        best[s] = Some((0, 0, 0));
        let mut heap = BinaryHeap::from([Reverse(((0u64, 0u128, 0u32), s))]);
        while let Some(Reverse((lab, u))) = heap.pop() {
            if best[u] != Some(lab) {
                continue;
            }
            for &(v, w, k, f) in &adj[u] {
                let cand = (lab.0 + w, lab.1 + k, lab.2 + 1);
                if best[v].is_none_or(|b| cand < b) {
                    best[v] = Some(cand);
                    sum[v] = sum[u] + f;
                    heap.push(Reverse((cand, v)));
                }
            }
        }
        (0..n).map(|t| best[t].map(|b| (sum[t], b.2))).collect::<Vec<_>>()
    });
    let mut values = Vec::with_capacity(n * n);
    let mut hops = Vec::with_capacity(n * n);
    for row in rows {
        for x in row {
            values.push(x.map(|(v, _)| v));
            hops.push(x.map_or(0, |(_, h)| h));
        }
    }
    QueryMatrix { n, values, hops }
}

/// Runs the mechanism on an undirected graph. Fails with
/// [`Error::ScaleViolation`] if the measured edge sensitivity exceeds the
/// sensitivity term of the hopset noise scale.
pub fn hopset_asrq(
    oracle: &RoutingOracle<'_>,
    attrs: &[Weight],
    epsilon: f64,
    seed: u64,
    options: &AsrqOptions,
) -> Result<AsrqOutput> {
    let g = oracle.graph();
    if g.is_directed() {
        return Err(Error::Precondition("the range-query mechanism needs an undirected graph".into()));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::ParameterViolation(format!("epsilon must be positive, got {epsilon}")));
    }
    if attrs.len() != g.m() {
        return Err(Error::ParameterViolation(format!("{} attributes for {} edges", attrs.len(), g.m())));
    }
    let (h, _) = greedy_hopset(oracle)?;
    let measured = sensitivity(g, &h, Target::Edge)?.linf();
    let term = options.scale_term.unwrap_or_else(|| measured.max(1) as f64);
    if measured as f64 > term {
        return Err(Error::ScaleViolation { measured, term });
    }

    let edge_scale = 2.0 / epsilon;
    let hopset_scale = 2.0 * term / epsilon;
    let mut er = stream_rng(seed, EDGE_STREAM);
    let edges: Vec<f64> = attrs.iter().map(|a| a.as_f64() + laplace_sample(edge_scale, &mut er)).collect();
    let mut hr = stream_rng(seed, HOPSET_STREAM);
    let hopset: Vec<f64> = h
        .edges()
        .iter()
        .map(|e| {
            let ids = g.path_edges(&e.span).expect("span is a path");
            ids.iter().map(|&x| attrs[x]).sum::<Weight>().as_f64() + laplace_sample(hopset_scale, &mut hr)
        })
        .collect();
    let table = NoisedTable { epsilon, seed, edge_scale, hopset_scale, edges, hopset };

    let matrix = answer_all(oracle, &h, &table);
    let edge_epsilon = 1.0 / edge_scale;
    let hopset_epsilon = measured as f64 / hopset_scale;
    let total_epsilon = edge_epsilon + hopset_epsilon;
    let accounting = Accounting {
        epsilon,
        measured_edge_sensitivity: measured,
        scale_term: term,
        edge_scale,
        hopset_scale,
        edge_epsilon,
        hopset_epsilon,
        total_epsilon,
        certified: total_epsilon <= epsilon * (1.0 + 1e-12),
        hopset_edges: h.len(),
        max_hops_used: matrix.hops.iter().copied().max().unwrap_or(0),
    };
    Ok(AsrqOutput { matrix, table, accounting, hopset: h })
}

/// Worst-case log-likelihood ratio between the noisy tables produced from
/// `a` and `b`, from the Laplace scales: `Σ |Δ_i| / b_i` over all noised
/// values.
pub fn privacy_loss(g: &Graph, h: &Hopset, table: &NoisedTable, a: &[Weight], b: &[Weight]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x.as_f64() - y.as_f64()).collect();
    let edge: f64 = diff.iter().map(|d| d.abs()).sum::<f64>() / table.edge_scale;
    let hop: f64 = h
        .edges()
        .iter()
        .map(|e| {
            let ids = g.path_edges(&e.span).expect("span is a path");
            ids.iter().map(|&x| diff[x]).sum::<f64>().abs()
        })
        .sum::<f64>()
        / table.hopset_scale;
    edge + hop
}
