use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Path, RoutingOracle, VertexId};
use crate::hopset::{Hopset, HopsetKind};
use crate::par;
use crate::primitives::path_hopset;

const UNCOVERED: u32 = u32::MAX;

/// Record of one greedy run. Iterations are numbered from 1.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GreedyTrace {
    /// Routing paths selected with positive potential, in processing order.
    pub order: Vec<(VertexId, VertexId)>,
    /// Potential of each selected path at selection time.
    pub potentials: Vec<usize>,
    /// Iteration in which each vertex was first covered (`u32::MAX`: never).
    pub cover_time: Vec<u32>,
    pub pieces: usize,
    /// Paths whose potential had already dropped to zero; processing them adds nothing.
    pub zero_potential_paths: usize,
    /// Re-evaluations where a path's potential exceeded its stored value.
    pub potential_increases: u64,
    /// Span insertions that touched a vertex already touched in an earlier iteration.
    pub repeat_touches: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ShadowStats {
    pub paths: usize,
    pub max_shadows: usize,
    pub max_shadows_path: Option<(VertexId, VertexId)>,
    pub total_shadows: u64,
    /// Most penumbras first created by a single caster on a single path.
    pub max_new_penumbras: usize,
}

/// Greedy exact hopset: repeatedly take the routing path with the most
/// uncovered vertices (ties to the smallest `(s, t)`) and halve each of its
/// maximal uncovered pieces.
///
/// Requires consistent routing, so the graph must be undirected or acyclic.
pub fn greedy_hopset(oracle: &RoutingOracle<'_>) -> Result<(Hopset, GreedyTrace)> {
    let g = oracle.graph();
    if g.is_directed() && !g.is_acyclic() {
        return Err(Error::InconsistentRouting(
            "greedy needs an undirected graph or a DAG; use di-shortcut for general digraphs".into(),
        ));
    }
    let n = g.n();
    let mut h = Hopset::new(HopsetKind::ExactHopset, "greedy", oracle.seed(), g.is_directed());
    let mut trace = GreedyTrace { cover_time: vec![UNCOVERED; n], ..Default::default() };
    let mut touched = vec![0u32; n];

    let pairs = oracle.routing_pairs();
    let mut heap: BinaryHeap<(usize, Reverse<(VertexId, VertexId)>)> = pairs
        .iter()
        .map(|&(s, t)| (oracle.hops(s, t).unwrap() + 1, Reverse((s, t))))
        .collect();

    let mut iteration = 0u32;
    while let Some((stored, Reverse((s, t)))) = heap.pop() {
        if stored == 0 {
            break;
        }
        let path = oracle.path(s, t).expect("routing pair is reachable");
        let phi = path.iter().filter(|&&v| trace.cover_time[v] == UNCOVERED).count();
        if phi > stored {
            trace.potential_increases += 1;
        }
        if phi < stored {
            heap.push((phi, Reverse((s, t))));
            continue;
        }

        iteration += 1;
        trace.order.push((s, t));
        trace.potentials.push(phi);
        let mut i = 0;
        while i < path.len() {
            if trace.cover_time[path[i]] != UNCOVERED {
                i += 1;
                continue;
            }
            let start = i;
            while i < path.len() && trace.cover_time[path[i]] == UNCOVERED {
                i += 1;
            }
            trace.pieces += 1;
            for e in path_hopset(g, &path[start..i]) {
                let span = e.span.clone();
                if h.insert(e) {
                    for v in span {
                        if touched[v] != 0 && touched[v] != iteration {
                            trace.repeat_touches += 1;
                        }
                        touched[v] = iteration;
                    }
                }
            }
        }
        for &v in &path {
            if trace.cover_time[v] == UNCOVERED {
                trace.cover_time[v] = iteration;
            }
        }
    }
    trace.zero_potential_paths = pairs.len() - trace.order.len();
    Ok((h, trace))
}

impl GreedyTrace {
    pub fn iterations(&self) -> usize {
        self.order.len()
    }

    /// Selected potentials never increase from one iteration to the next.
    pub fn potentials_nonincreasing(&self) -> bool {
        self.potentials.windows(2).all(|w| w[0] >= w[1])
    }

    fn processing_index(&self) -> HashMap<(VertexId, VertexId), u32> {
        self.order.iter().enumerate().map(|(i, &p)| (p, i as u32 + 1)).collect()
    }

    /// Cover times along `path` as seen when the path was processed:
    /// vertices covered at or after that point read as `u32::MAX`.
    fn times_before(&self, path: &[VertexId], index: u32) -> Vec<u32> {
        path.iter()
            .map(|&v| {
                let c = self.cover_time[v];
                if c < index {
                    c
                } else {
                    UNCOVERED
                }
            })
            .collect()
    }

    /// Shadows cast on the routing path `s → t`, as vertex segments of it.
    pub fn shadows(&self, oracle: &RoutingOracle<'_>, s: VertexId, t: VertexId) -> Vec<Path> {
        let index = self.processing_index().get(&(s, t)).copied().unwrap_or(UNCOVERED);
        let path = oracle.path(s, t).expect("routing pair is reachable");
        let ct = self.times_before(&path, index);
        let mut out = Vec::new();
        let mut i = 0;
        while i < path.len() {
            if ct[i] == UNCOVERED {
                i += 1;
                continue;
            }
            let start = i;
            while i < path.len() && ct[i] == ct[start] {
                i += 1;
            }
            out.push(path[start..i].to_vec());
        }
        out
    }

    /// Shadow and new-penumbra counts over every routing path.
    pub fn shadow_stats(&self, oracle: &RoutingOracle<'_>) -> ShadowStats {
        let index = self.processing_index();
        let pairs = oracle.routing_pairs();
        let per_path = par::map_slice(&pairs, |&(s, t)| {
            let idx = index.get(&(s, t)).copied().unwrap_or(UNCOVERED);
            let path = oracle.path(s, t).expect("routing pair is reachable");
            let ct = self.times_before(&path, idx);
            let mut shadows = 0usize;
            for k in 0..ct.len() {
                if ct[k] != UNCOVERED && (k == 0 || ct[k - 1] != ct[k]) {
                    shadows += 1;
                }
            }
            let mut new_by_caster: HashMap<u32, usize> = HashMap::new();
            for w in ct.windows(2) {
                if w[0] != w[1] {
                    let j = w[0].min(w[1]);
                    *new_by_caster.entry(j).or_default() += 1;
                }
            }
            let max_new = new_by_caster.values().copied().max().unwrap_or(0);
            (shadows, max_new)
        });
        let mut stats = ShadowStats { paths: pairs.len(), ..Default::default() };
        for (k, (shadows, max_new)) in per_path.into_iter().enumerate() {
            stats.total_shadows += shadows as u64;
            if shadows > stats.max_shadows || stats.max_shadows_path.is_none() {
                stats.max_shadows = shadows;
                stats.max_shadows_path = Some(pairs[k]);
            }
            stats.max_new_penumbras = stats.max_new_penumbras.max(max_new);
        }
        stats
    }
}
