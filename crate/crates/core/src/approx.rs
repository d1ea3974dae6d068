//! Approximate hopset from truncated shortest-path trees over a sampled
//! vertex hierarchy, plus the distance emulator used to test it.
//!
//! With levels `V = A_0 ⊇ A_1 ⊇ … ⊇ A_{k-1}` and `A_k = ∅`, a vertex `u`
//! is in the bunch of `v` when `dist(v, u) < dist(v, A_{level(u)+1})`. The
//! cluster of `u` is the set of `v` whose bunch contains `u`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{RootedTree, RoutingOracle, VertexId};
use crate::hopset::{Hopset, HopsetEdge, HopsetKind};
use crate::par;
use crate::primitives::tree_hopset;
use crate::weight::Weight;

pub const MAX_ATTEMPTS: usize = 64;
const INF: u64 = u64::MAX;

/// `v ∈ A_i` iff `level[v] ≥ i`.
#[derive(Clone, Debug, Serialize)]
pub struct Hierarchy {
    pub k: usize,
    pub level: Vec<usize>,
    /// Seed of the accepted sample.
    pub seed: u64,
    pub attempts: usize,
}

impl Hierarchy {
    /// Promotes each vertex level by level with probability `n^{-1/k}`,
    /// never beyond level `k - 1`.
    pub fn sample(n: usize, k: usize, seed: u64) -> Hierarchy {
        assert!(k >= 1, "hierarchy needs k ≥ 1");
        let p = if n == 0 { 0.0 } else { (n as f64).powf(-1.0 / k as f64) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let level = (0..n)
            .map(|_| {
                let mut l = 0;
                while l + 1 < k && rng.gen::<f64>() < p {
                    l += 1;
                }
                l
            })
            .collect();
        Hierarchy { k, level, seed, attempts: 1 }
    }

    pub fn from_levels(k: usize, level: Vec<usize>) -> Hierarchy {
        assert!(level.iter().all(|&l| l < k), "levels must be below k");
        Hierarchy { k, level, seed: 0, attempts: 1 }
    }

    pub fn members(&self, i: usize) -> Vec<VertexId> {
        (0..self.level.len()).filter(|&v| self.level[v] >= i).collect()
    }
}

/// `max(4 k n^{1/k} ln n, 1)`.
pub fn bunch_cap(n: usize, k: usize) -> f64 {
    let n_f = n as f64;
    (4.0 * k as f64 * n_f.powf(1.0 / k as f64) * n_f.ln()).max(1.0)
}

/// Pivots, bunches, clusters and balls for one hierarchy.
#[derive(Clone, Debug, Serialize)]
pub struct Indices {
    pub k: usize,
    /// `pivot_dist[v][i] = dist(v, A_i)` for `i ∈ 0..=k`; `None` is infinite.
    pub pivot_dist: Vec<Vec<Option<Weight>>>,
    /// `pivot[v][i] = p_i(v)` for `i ∈ 0..k`.
    pub pivot: Vec<Vec<Option<VertexId>>>,
    pub bunch: Vec<Vec<VertexId>>,
    pub cluster: Vec<Vec<VertexId>>,
    /// Open ball: `u ∈ A_i` with `dist(v, u) < dist(v, A_{i+1})`, `i = level(v)`.
    pub ball: Vec<Vec<VertexId>>,
    /// Open ball plus `p_{i+1}(v)` when defined.
    pub closed_ball: Vec<Vec<VertexId>>,
}

impl Indices {
    pub fn max_bunch(&self) -> usize {
        self.bunch.iter().map(Vec::len).max().unwrap_or(0)
    }
}

struct VertexIndex {
    pivot_dist: Vec<u64>,
    pivot: Vec<Option<VertexId>>,
    bunch: Vec<VertexId>,
    ball: Vec<VertexId>,
    closed_ball: Vec<VertexId>,
}

pub fn compute_indices(oracle: &RoutingOracle<'_>, h: &Hierarchy) -> Indices {
    let n = oracle.graph().n();
    let k = h.k;
    let dist = |v: usize, u: usize| oracle.dist(v, u).map_or(INF, Weight::micros);

    let per_vertex = par::map_range(n, |v| {
        let mut pivot_dist = vec![INF; k + 1];
        let mut pivot = vec![None; k];
        for i in (0..k).rev() {
            let mut best = pivot_dist[i + 1];
            for u in 0..n {
                if h.level[u] >= i {
                    best = best.min(dist(v, u));
                }
            }
            pivot_dist[i] = best;
            if best == INF {
                continue;
            }
            pivot[i] = if i + 1 < k && best == pivot_dist[i + 1] {
                pivot[i + 1]
            } else {
                (0..n).find(|&u| h.level[u] >= i && dist(v, u) == best)
            };
        }
        let bunch: Vec<_> = (0..n)
            .filter(|&u| {
                let d = dist(v, u);
                d != INF && d < pivot_dist[h.level[u] + 1]
            })
            .collect();
        let lv = h.level[v];
        let ball: Vec<_> = (0..n)
            .filter(|&u| {
                let d = dist(v, u);
                h.level[u] >= lv && d != INF && d < pivot_dist[lv + 1]
            })
            .collect();
        let mut closed_ball = ball.clone();
        if lv + 1 < k {
            if let Some(p) = pivot[lv + 1] {
                if let Err(pos) = closed_ball.binary_search(&p) {
                    closed_ball.insert(pos, p);
                }
            }
        }
        VertexIndex { pivot_dist, pivot, bunch, ball, closed_ball }
    });

    let mut cluster = vec![Vec::new(); n];
    for (v, x) in per_vertex.iter().enumerate() {
        for &u in &x.bunch {
            cluster[u].push(v);
        }
    }
    let mut out = Indices {
        k,
        pivot_dist: Vec::with_capacity(n),
        pivot: Vec::with_capacity(n),
        bunch: Vec::with_capacity(n),
        cluster,
        ball: Vec::with_capacity(n),
        closed_ball: Vec::with_capacity(n),
    };
    for x in per_vertex {
        out.pivot_dist.push(x.pivot_dist.iter().map(|&d| (d != INF).then(|| Weight::from_micros(d))).collect());
        out.pivot.push(x.pivot);
        out.bunch.push(x.bunch);
        out.ball.push(x.ball);
        out.closed_ball.push(x.closed_ball);
    }
    out
}

/// Samples hierarchies until the largest bunch is within [`bunch_cap`],
/// trying at most [`MAX_ATTEMPTS`] derived seeds.
pub fn sample_hierarchy(oracle: &RoutingOracle<'_>, k: usize, seed: u64) -> Result<(Hierarchy, Indices)> {
    let n = oracle.graph().n();
    let cap = bunch_cap(n, k);
    for attempt in 0..MAX_ATTEMPTS {
        let mut h = Hierarchy::sample(n, k, seed.wrapping_add(attempt as u64));
        h.attempts = attempt + 1;
        let idx = compute_indices(oracle, &h);
        if idx.max_bunch() as f64 <= cap {
            return Ok((h, idx));
        }
    }
    Err(Error::RetryExhausted { attempts: MAX_ATTEMPTS })
}

/// Routing tree of `u` restricted to `Cluster(u) ∪ {u}`. Fails if some
/// cluster vertex's tree parent lies outside.
pub fn truncated_tree(oracle: &RoutingOracle<'_>, idx: &Indices, u: VertexId) -> Result<RootedTree> {
    let full = oracle.out_tree(u);
    let n = full.parent.len();
    let mut keep = vec![false; n];
    keep[u] = true;
    for &v in &idx.cluster[u] {
        keep[v] = true;
    }
    let mut parent = vec![None; n];
    for v in 0..n {
        if v == u || !keep[v] {
            continue;
        }
        match full.parent[v] {
            Some(p) if keep[p] => parent[v] = Some(p),
            _ => return Err(Error::TruncationInvalid { root: u, vertex: v }),
        }
    }
    Ok(RootedTree { root: u, parent, orientation: full.orientation })
}

/// Heavy-light shortcuts on every truncated tree.
pub fn apx_undirected_hopset(oracle: &RoutingOracle<'_>, h: &Hierarchy, idx: &Indices) -> Result<Hopset> {
    let g = oracle.graph();
    if g.is_directed() {
        return Err(Error::Precondition("the approximate hopset needs an undirected graph".into()));
    }
    let mut out = Hopset::new(HopsetKind::ApproxHopset, "apx", h.seed, false);
    for u in 0..g.n() {
        let tree = truncated_tree(oracle, idx, u)?;
        out.extend(tree_hopset(g, &tree));
    }
    Ok(out)
}

/// Edges `(v, u)` for `u` in the closed ball of `v`, weighted by distance,
/// spanning their routing paths.
pub fn tz_emulator(oracle: &RoutingOracle<'_>, h: &Hierarchy, idx: &Indices) -> Hopset {
    let g = oracle.graph();
    let mut out = Hopset::new(HopsetKind::Emulator, "tz-emulator", h.seed, g.is_directed());
    for v in 0..g.n() {
        for &u in &idx.closed_ball[v] {
            if u != v {
                let span = oracle.path(v, u).expect("ball members are reachable");
                out.insert(HopsetEdge::over(g, span));
            }
        }
    }
    out
}
