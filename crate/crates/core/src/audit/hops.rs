use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::search::{augmented_adjacency, dijkstra, dijkstra_hops, Adjacency, INF};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::hopset::Hopset;
use crate::par;
use crate::weight::{Weight, SCALE};
use crate::ceil_log2;

/// Above this many vertices, all-pairs audits fall back to sampled pairs.
pub const SAMPLE_THRESHOLD: usize = 500;
pub const SAMPLE_PAIRS: usize = 2000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum HopMode {
    /// Paths of weight exactly `dist_G(s, t)`.
    Exact,
    /// Paths of weight at most `(1 + ε) dist_G(s, t)`, with `ε` in micro-units.
    Stretch { eps_micros: u64 },
}

impl HopMode {
    pub fn stretch(eps: f64) -> HopMode {
        HopMode::Stretch { eps_micros: (eps * SCALE as f64).round() as u64 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HopDiameter {
    pub mode: HopMode,
    pub beta: usize,
    pub witness: Option<(VertexId, VertexId)>,
    pub pairs: u64,
    pub sampled: bool,
    /// Pairs where `G ∪ H` reaches a different distance than `G`
    /// (or reaches a pair `G` cannot).
    pub distance_mismatches: u64,
    pub first_mismatch: Option<(VertexId, VertexId)>,
    /// Largest hop budget used by the stretch search.
    pub budget: Option<usize>,
}

impl HopDiameter {
    pub fn exact(&self) -> bool {
        self.distance_mismatches == 0
    }
}

#[derive(Default)]
struct SourceResult {
    beta: usize,
    witness: Option<VertexId>,
    pairs: u64,
    mismatches: u64,
    first_mismatch: Option<VertexId>,
    budget: usize,
}

impl SourceResult {
    fn record(&mut self, t: VertexId, hops: usize) {
        self.pairs += 1;
        if self.witness.is_none() || hops > self.beta {
            self.beta = hops;
            self.witness = Some(t);
        }
    }

    fn mismatch(&mut self, t: VertexId) {
        self.mismatches += 1;
        self.first_mismatch.get_or_insert(t);
    }
}

fn exact_source(g_adj: &Adjacency, aug: &Adjacency, s: usize, targets: &[usize]) -> SourceResult {
    let dg = dijkstra(g_adj, s);
    let (dh, hh) = dijkstra_hops(aug, s);
    let mut r = SourceResult::default();
    for &t in targets {
        if dg[t] == INF {
            if dh[t] != INF {
                r.mismatch(t);
            }
        } else if dh[t] != dg[t] {
            r.pairs += 1;
            r.mismatch(t);
        } else {
            r.record(t, hh[t] as usize);
        }
    }
    r
}

fn stretch_source(
    g_adj: &Adjacency,
    aug: &Adjacency,
    s: usize,
    targets: &[usize],
    eps_micros: u64,
    start_budget: usize,
) -> Result<SourceResult> {
    let n = aug.len();
    let dg = dijkstra(g_adj, s);
    let mut r = SourceResult::default();
    let mut pending: Vec<usize> = targets.iter().copied().filter(|&t| dg[t] != INF).collect();
    let dh = dijkstra(aug, s);
    for &t in targets {
        if dg[t] == INF && dh[t] != INF {
            r.mismatch(t);
        }
    }
    let mut best = vec![INF; n];
    best[s] = 0;
    let mut budget = start_budget;
    let mut k = 0usize;
    while !pending.is_empty() {
        if k == budget {
            if budget >= n {
                return Err(Error::BudgetExceeded { budget, lower_bound: k + 1 });
            }
            budget = (budget * 2).min(n);
        }
        k += 1;
        let mut next = best.clone();
        for u in 0..n {
            if best[u] == INF {
                continue;
            }
            for &(v, w) in &aug[u] {
                let cand = best[u] + w;
                if cand < next[v as usize] {
                    next[v as usize] = cand;
                }
            }
        }
        best = next;
        pending.retain(|&t| {
            if best[t] != INF && Weight::from_micros(best[t]).within_stretch(Weight::from_micros(dg[t]), eps_micros) {
                if best[t] < dg[t] {
                    r.mismatch(t);
                }
                r.record(t, k);
                false
            } else {
                true
            }
        });
    }
    r.budget = budget;
    Ok(r)
}

/// Hop-diameter of `G ∪ H` over reachable ordered pairs `s ≠ t`, computed
/// from scratch. Graphs above [`SAMPLE_THRESHOLD`] vertices are audited on
/// [`SAMPLE_PAIRS`] pairs drawn with `sample_seed`.
pub fn hop_diameter(g: &Graph, h: &Hopset, mode: HopMode, sample_seed: u64) -> Result<HopDiameter> {
    let n = g.n();
    let g_adj = augmented_adjacency(g, None);
    let aug = augmented_adjacency(g, Some(h));

    let sampled = n > SAMPLE_THRESHOLD;
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
        while by_source.values().map(Vec::len).sum::<usize>() < SAMPLE_PAIRS {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            if s != t {
                by_source.entry(s).or_default().push(t);
            }
        }
        for ts in by_source.values_mut() {
            ts.sort_unstable();
            ts.dedup();
        }
    } else {
        for s in 0..n {
            by_source.insert(s, (0..n).filter(|&t| t != s).collect());
        }
    }
    let jobs: Vec<(usize, Vec<usize>)> = by_source.into_iter().collect();
    let start_budget = (2 * ceil_log2(n) as usize).max(1);

    let results: Vec<Result<SourceResult>> = par::map_slice(&jobs, |(s, ts)| match mode {
        HopMode::Exact => Ok(exact_source(&g_adj, &aug, *s, ts)),
        HopMode::Stretch { eps_micros } => stretch_source(&g_adj, &aug, *s, ts, eps_micros, start_budget),
    });

    let mut out = HopDiameter {
        mode,
        beta: 0,
        witness: None,
        pairs: 0,
        sampled,
        distance_mismatches: 0,
        first_mismatch: None,
        budget: None,
    };
    for ((s, _), r) in jobs.iter().zip(results) {
        let r = r?;
        out.pairs += r.pairs;
        out.distance_mismatches += r.mismatches;
        if out.first_mismatch.is_none() {
            out.first_mismatch = r.first_mismatch.map(|t| (*s, t));
        }
        if let Some(t) = r.witness {
            if out.witness.is_none() || r.beta > out.beta {
                out.beta = r.beta;
                out.witness = Some((*s, t));
            }
        }
        if matches!(mode, HopMode::Stretch { .. }) {
            out.budget = Some(out.budget.unwrap_or(0).max(r.budget));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopset::HopsetKind;
    use crate::primitives::path_hopset;

    fn line(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::unit(n, false, &pairs).unwrap()
    }

    #[test]
    fn bare_path() {
        let g = line(9);
        let h = Hopset::new(HopsetKind::ExactHopset, "none", 0, false);
        let d = hop_diameter(&g, &h, HopMode::Exact, 0).unwrap();
        assert_eq!(d.beta, 8);
        assert_eq!(d.witness, Some((0, 8)));
        assert!(d.exact());
        assert_eq!(d.pairs, 72);
    }

    #[test]
    fn shortcut_path() {
        let g = line(9);
        let mut h = Hopset::new(HopsetKind::ExactHopset, "path", 0, false);
        h.extend(path_hopset(&g, &(0..9).collect::<Vec<_>>()));
        let d = hop_diameter(&g, &h, HopMode::Exact, 0).unwrap();
        assert!(d.beta <= 7);
        assert!(d.exact());
        let st = hop_diameter(&g, &h, HopMode::stretch(0.5), 0).unwrap();
        assert!(st.beta <= d.beta);
    }

    #[test]
    fn complete_graph() {
        let mut pairs = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                pairs.push((u, v));
            }
        }
        let g = Graph::unit(6, false, &pairs).unwrap();
        let h = Hopset::new(HopsetKind::ExactHopset, "none", 0, false);
        assert_eq!(hop_diameter(&g, &h, HopMode::Exact, 0).unwrap().beta, 1);
    }

    #[test]
    fn stretch_trades_weight_for_hops() {
        // 0-1-2 with unit edges plus a direct 0-2 edge of weight 2.5
        let g = Graph::from_triples(
            3,
            false,
            &[(0, 1, Weight::from_int(1)), (1, 2, Weight::from_int(1)), (0, 2, Weight::from_micros(2_500_000))],
        )
        .unwrap();
        let h = Hopset::new(HopsetKind::ExactHopset, "none", 0, false);
        assert_eq!(hop_diameter(&g, &h, HopMode::Exact, 0).unwrap().beta, 2);
        assert_eq!(hop_diameter(&g, &h, HopMode::stretch(0.25), 0).unwrap().beta, 1);
        assert_eq!(hop_diameter(&g, &h, HopMode::stretch(0.2), 0).unwrap().beta, 2);
    }

    #[test]
    fn undercutting_edge_is_flagged() {
        let g = line(4);
        let mut h = Hopset::new(HopsetKind::ExactHopset, "bad", 0, false);
        h.insert(crate::hopset::HopsetEdge { s: 0, t: 3, weight: Weight::from_int(1), span: vec![0, 1, 2, 3] });
        let d = hop_diameter(&g, &h, HopMode::Exact, 0).unwrap();
        assert!(!d.exact());
    }
}
