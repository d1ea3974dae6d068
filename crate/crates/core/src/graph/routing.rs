//! Unique shortest paths by keyed tiebreaking.
//!
//! Every edge gets a pseudorandom 64-bit key derived from a seed. Paths are
//! compared by `(weight, sum of keys)` lexicographically, with the key sum
//! kept as an exact `u128`. Barring a key collision (detected, then
//! reseeded) this order is strict, so every reachable pair has exactly one
//! minimum path and the minimum paths are closed under taking subpaths.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Path, VertexId};
use crate::error::{Error, Result};
use crate::par;
use crate::weight::Weight;

const NONE: u32 = u32::MAX;
const MAX_RESEEDS: usize = 8;
const RESEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Follow edges forward: a search from `r` finds paths `r → v`.
    Out,
    /// Follow edges backward: a search from `r` finds paths `v → r`.
    In,
}

/// Per-edge tiebreak keys. Keys are odd, so every edge contributes a strictly
/// positive amount even when its weight is zero.
#[derive(Clone, Debug)]
pub struct EdgeKeys {
    keys: Vec<u64>,
    seed: u64,
}

impl EdgeKeys {
    pub fn derive(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keys = (0..m).map(|_| rng.next_u64() | 1).collect();
        EdgeKeys { keys, seed }
    }

    pub fn key(&self, edge: usize) -> u64 {
        self.keys[edge]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Lexicographic path cost: weight first, then the exact key sum.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey {
    pub weight: Weight,
    pub key: u128,
}

impl PathKey {
    pub fn extend(self, w: Weight, key: u64) -> PathKey {
        PathKey { weight: self.weight + w, key: self.key + key as u128 }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TreeOrientation {
    AwayFromRoot,
    TowardRoot,
}

/// A rooted tree over a subset of the graph's vertices.
///
/// `parent[v]` is `v`'s neighbour one step closer to the root. With
/// [`TreeOrientation::AwayFromRoot`] the graph edge runs `parent → v`; with
/// [`TreeOrientation::TowardRoot`] it runs `v → parent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub orientation: TreeOrientation,
}

impl RootedTree {
    pub fn contains(&self, v: VertexId) -> bool {
        v == self.root || self.parent[v].is_some()
    }

    pub fn members(&self) -> Vec<VertexId> {
        (0..self.parent.len()).filter(|&v| self.contains(v)).collect()
    }

    pub fn len(&self) -> usize {
        (0..self.parent.len()).filter(|&v| self.contains(v)).count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Children lists, each sorted by vertex id.
    pub fn children(&self) -> Vec<Vec<VertexId>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(v);
            }
        }
        ch
    }

    /// Vertices from `v` up to the root, inclusive.
    pub fn path_to_root(&self, v: VertexId) -> Path {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Tree edges as graph arcs `(from, to)`.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| {
                p.map(|p| match self.orientation {
                    TreeOrientation::AwayFromRoot => (p, v),
                    TreeOrientation::TowardRoot => (v, p),
                })
            })
            .collect()
    }
}

struct SearchResult {
    pred: Vec<u32>,
    label: Vec<PathKey>,
    reached: Vec<bool>,
    hops: Vec<u32>,
    collision: bool,
}

fn keyed_search(
    g: &Graph,
    keys: &EdgeKeys,
    root: VertexId,
    dir: Direction,
    allowed: &dyn Fn(VertexId) -> bool,
) -> SearchResult {
    let n = g.n();
    let mut pred = vec![NONE; n];
    let mut label = vec![PathKey::default(); n];
    let mut reached = vec![false; n];
    let mut settled = vec![false; n];
    let mut hops = vec![0u32; n];
    // label value at which a second, distinct predecessor tied
    let mut tie: Vec<Option<PathKey>> = vec![None; n];
    let mut heap = BinaryHeap::new();

    reached[root] = true;
    heap.push(Reverse((PathKey::default(), root)));
    while let Some(Reverse((lab, u))) = heap.pop() {
        if settled[u] || lab != label[u] {
            continue;
        }
        settled[u] = true;
        for &(v, e) in g.neighbors(u, dir) {
            if settled[v] || !allowed(v) {
                continue;
            }
            let cand = lab.extend(g.edge(e).w, keys.key(e));
            if !reached[v] || cand < label[v] {
                reached[v] = true;
                label[v] = cand;
                pred[v] = u as u32;
                hops[v] = hops[u] + 1;
                tie[v] = None;
                heap.push(Reverse((cand, v)));
            } else if cand == label[v] && pred[v] != u as u32 {
                tie[v] = Some(cand);
            }
        }
    }
    let collision = (0..n).any(|v| reached[v] && tie[v] == Some(label[v]));
    SearchResult { pred, label, reached, hops, collision }
}

/// Shortest-path arborescence rooted at `root` under keyed tiebreaking,
/// restricted to vertices for which `allowed` holds. `Direction::Out` gives the
/// tree of paths leaving the root, `Direction::In` the tree of paths entering
/// it. Returns `None` on a key collision.
pub fn shortest_path_tree(
    g: &Graph,
    keys: &EdgeKeys,
    root: VertexId,
    dir: Direction,
    allowed: &dyn Fn(VertexId) -> bool,
) -> Option<RootedTree> {
    let r = keyed_search(g, keys, root, dir, allowed);
    if r.collision {
        return None;
    }
    let parent = r
        .pred
        .iter()
        .map(|&p| if p == NONE { None } else { Some(p as usize) })
        .collect();
    let orientation = match dir {
        Direction::Out => TreeOrientation::AwayFromRoot,
        Direction::In => TreeOrientation::TowardRoot,
    };
    Some(RootedTree { root, parent, orientation })
}

struct SourceTree {
    pred: Vec<u32>,
    weight: Vec<u64>,
    key: Vec<u128>,
    hops: Vec<u32>,
}

/// All-sources keyed routing: exactly one shortest path per reachable
/// ordered pair. Immutable after construction and shareable across threads.
pub struct RoutingOracle<'g> {
    graph: &'g Graph,
    keys: EdgeKeys,
    requested_seed: u64,
    reseeds: usize,
    trees: Vec<SourceTree>,
}

impl<'g> RoutingOracle<'g> {
    /// Runs one keyed search per source (in parallel when enabled). A key
    /// collision rejects the keys and retries with a derived seed.
    pub fn build(graph: &'g Graph, seed: u64) -> Result<Self> {
        for attempt in 0..MAX_RESEEDS {
            let keys = EdgeKeys::derive(graph.m(), seed.wrapping_add(RESEED_STRIDE.wrapping_mul(attempt as u64)));
            if let Some(trees) = Self::search_all(graph, &keys) {
                return Ok(RoutingOracle { graph, keys, requested_seed: seed, reseeds: attempt, trees });
            }
        }
        Err(Error::KeyCollision { attempts: MAX_RESEEDS })
    }

    /// Builds with caller-supplied keys; fails instead of reseeding.
    pub fn with_keys(graph: &'g Graph, keys: EdgeKeys) -> Result<Self> {
        assert_eq!(keys.len(), graph.m(), "one key per edge");
        let seed = keys.seed();
        match Self::search_all(graph, &keys) {
            Some(trees) => Ok(RoutingOracle { graph, keys, requested_seed: seed, reseeds: 0, trees }),
            None => Err(Error::KeyCollision { attempts: 1 }),
        }
    }

    fn search_all(graph: &Graph, keys: &EdgeKeys) -> Option<Vec<SourceTree>> {
        let results = par::map_range(graph.n(), |s| {
            let r = keyed_search(graph, keys, s, Direction::Out, &|_| true);
            if r.collision {
                return None;
            }
            let weight = (0..graph.n())
                .map(|v| if r.reached[v] { r.label[v].weight.micros() } else { u64::MAX })
                .collect();
            let key = r.label.iter().map(|l| l.key).collect();
            Some(SourceTree { pred: r.pred, weight, key, hops: r.hops })
        });
        results.into_iter().collect()
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn keys(&self) -> &EdgeKeys {
        &self.keys
    }

    /// Seed passed to [`RoutingOracle::build`].
    pub fn seed(&self) -> u64 {
        self.requested_seed
    }

    /// Seed the keys were actually derived from (differs after a reseed).
    pub fn effective_seed(&self) -> u64 {
        self.keys.seed()
    }

    pub fn reseeds(&self) -> usize {
        self.reseeds
    }

    pub fn reachable(&self, s: VertexId, t: VertexId) -> bool {
        self.trees[s].weight[t] != u64::MAX
    }

    pub fn dist(&self, s: VertexId, t: VertexId) -> Option<Weight> {
        let w = self.trees[s].weight[t];
        (w != u64::MAX).then(|| Weight::from_micros(w))
    }

    pub fn path_key(&self, s: VertexId, t: VertexId) -> Option<PathKey> {
        self.dist(s, t).map(|weight| PathKey { weight, key: self.trees[s].key[t] })
    }

    /// Edge count of the routing path.
    pub fn hops(&self, s: VertexId, t: VertexId) -> Option<usize> {
        self.reachable(s, t).then(|| self.trees[s].hops[t] as usize)
    }

    /// Predecessor of `v` on the routing path from `s`.
    pub fn pred(&self, s: VertexId, v: VertexId) -> Option<VertexId> {
        let p = self.trees[s].pred[v];
        (p != NONE).then_some(p as usize)
    }

    pub fn path(&self, s: VertexId, t: VertexId) -> Option<Path> {
        if !self.reachable(s, t) {
            return None;
        }
        let tree = &self.trees[s];
        let mut out = Vec::with_capacity(tree.hops[t] as usize + 1);
        let mut cur = t;
        out.push(cur);
        while cur != s {
            cur = tree.pred[cur] as usize;
            out.push(cur);
        }
        out.reverse();
        Some(out)
    }

    /// The routing path from `s` to `t`.
    pub fn routing_path(&self, s: VertexId, t: VertexId) -> Result<Path> {
        self.path(s, t).ok_or(Error::Unreachable { s, t })
    }

    /// Union of routing paths leaving `s`.
    pub fn out_tree(&self, s: VertexId) -> RootedTree {
        let parent = self.trees[s]
            .pred
            .iter()
            .map(|&p| if p == NONE { None } else { Some(p as usize) })
            .collect();
        RootedTree { root: s, parent, orientation: TreeOrientation::AwayFromRoot }
    }

    /// Union of routing paths entering `t`, computed with the same keys so the
    /// paths agree with [`RoutingOracle::path`].
    pub fn in_tree(&self, t: VertexId) -> RootedTree {
        shortest_path_tree(self.graph, &self.keys, t, Direction::In, &|_| true)
            .expect("keys were collision-free for every source")
    }

    /// The routing-path universe: unordered pairs `s < t` for undirected
    /// graphs, ordered pairs `s ≠ t` otherwise; reachable pairs only.
    pub fn routing_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.graph.n();
        let mut out = Vec::new();
        for s in 0..n {
            let start = if self.graph.is_directed() { 0 } else { s + 1 };
            for t in start..n {
                if t != s && self.reachable(s, t) {
                    out.push((s, t));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::unit(n, false, &pairs).unwrap()
    }

    #[test]
    fn path_graph_routing() {
        let g = path_graph(3);
        let o = RoutingOracle::build(&g, 1).unwrap();
        assert_eq!(o.routing_path(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(o.dist(0, 2), Some(Weight::from_int(2)));
        assert_eq!(o.hops(2, 0), Some(2));
    }

    #[test]
    fn four_cycle_picks_keyed_minimum() {
        // u=0, a=1, v=2, b=3 ; u-a-v and u-b-v both weight 2
        let g = Graph::unit(4, false, &[(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        for seed in 0..20 {
            let o = RoutingOracle::build(&g, seed).unwrap();
            let p = o.routing_path(0, 2).unwrap();
            assert_eq!(p.len(), 3);
            let key_of = |mid: usize| {
                let k = o.keys();
                k.key(g.edge_id(0, mid).unwrap()) as u128 + k.key(g.edge_id(mid, 2).unwrap()) as u128
            };
            let expect_mid = if key_of(1) < key_of(3) { 1 } else { 3 };
            assert_eq!(p[1], expect_mid, "seed {seed}");
            // repeated queries and rebuilds agree
            assert_eq!(o.routing_path(0, 2).unwrap(), p);
            let o2 = RoutingOracle::build(&g, seed).unwrap();
            assert_eq!(o2.routing_path(0, 2).unwrap(), p);
            // undirected: reverse query is the reversed path
            let mut rev = o.routing_path(2, 0).unwrap();
            rev.reverse();
            assert_eq!(rev, p);
        }
    }

    #[test]
    fn zero_weight_split_pair() {
        let g = Graph::parse("2 1 directed\n0 1 0\n").unwrap();
        let o = RoutingOracle::build(&g, 3).unwrap();
        assert_eq!(o.routing_path(0, 1).unwrap(), vec![0, 1]);
        assert_eq!(o.dist(0, 1), Some(Weight::ZERO));
        assert!(matches!(o.routing_path(1, 0), Err(Error::Unreachable { s: 1, t: 0 })));
    }

    #[test]
    fn forced_collision_is_detected() {
        // identical keys on a symmetric 4-cycle make both u-v paths tie
        let g = Graph::unit(4, false, &[(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        let keys = EdgeKeys { keys: vec![1, 1, 1, 1], seed: 0 };
        assert!(matches!(RoutingOracle::with_keys(&g, keys), Err(Error::KeyCollision { .. })));
    }

    #[test]
    fn in_tree_matches_routing_paths() {
        let g = Graph::unit(5, true, &[(0, 1), (1, 2), (0, 3), (3, 2), (2, 4), (4, 0)]).unwrap();
        let o = RoutingOracle::build(&g, 9).unwrap();
        let t = o.in_tree(2);
        for v in 0..5 {
            if v == 2 {
                continue;
            }
            assert_eq!(t.path_to_root(v), o.routing_path(v, 2).unwrap());
        }
    }

    #[test]
    fn routing_pairs_universe() {
        let g = path_graph(4);
        let o = RoutingOracle::build(&g, 0).unwrap();
        assert_eq!(o.routing_pairs().len(), 6);
        let d = Graph::unit(3, true, &[(0, 1), (1, 2)]).unwrap();
        let o = RoutingOracle::build(&d, 0).unwrap();
        assert_eq!(o.routing_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }
}
