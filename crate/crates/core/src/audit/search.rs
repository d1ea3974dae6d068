use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::graph::Graph;
use crate::hopset::Hopset;

/// Out-adjacency of `G ∪ H` as `(head, weight in micro-units)`.
pub type Adjacency = Vec<Vec<(u32, u64)>>;

pub const INF: u64 = u64::MAX;

pub fn augmented_adjacency(g: &Graph, h: Option<&Hopset>) -> Adjacency {
    let mut adj: Adjacency = (0..g.n())
        .map(|u| g.out_neighbors(u).iter().map(|&(v, e)| (v as u32, g.edge(e).w.micros())).collect())
        .collect();
    if let Some(h) = h {
        for e in h.edges() {
            adj[e.s].push((e.t as u32, e.weight.micros()));
            if !g.is_directed() {
                adj[e.t].push((e.s as u32, e.weight.micros()));
            }
        }
    }
    adj
}

/// Single-source distances; `INF` marks unreachable vertices.
pub fn dijkstra(adj: &Adjacency, s: usize) -> Vec<u64> {
    let mut dist = vec![INF; adj.len()];
    dist[s] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, s as u32))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u as usize] {
            continue;
        }
        for &(v, w) in &adj[u as usize] {
            let nd = d + w;
            if nd < dist[v as usize] {
                dist[v as usize] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// Lexicographic `(weight, hops)` search: the weight of a shortest path and
/// the fewest edges among shortest paths.
pub fn dijkstra_hops(adj: &Adjacency, s: usize) -> (Vec<u64>, Vec<u32>) {
    let mut dist = vec![INF; adj.len()];
    let mut hops = vec![u32::MAX; adj.len()];
    dist[s] = 0;
    hops[s] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0u32, s as u32))]);
    while let Some(Reverse((d, k, u))) = heap.pop() {
        let u = u as usize;
        if (d, k) > (dist[u], hops[u]) {
            continue;
        }
        for &(v, w) in &adj[u] {
            let v = v as usize;
            let cand = (d + w, k + 1);
            if cand < (dist[v], hops[v]) {
                dist[v] = cand.0;
                hops[v] = cand.1;
                heap.push(Reverse((cand.0, cand.1, v as u32)));
            }
        }
    }
    (dist, hops)
}

/// Unweighted hop distances; `u32::MAX` marks unreachable vertices.
pub fn bfs_hops(adj: &Adjacency, s: usize) -> Vec<u32> {
    let mut hops = vec![u32::MAX; adj.len()];
    hops[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if hops[v as usize] == u32::MAX {
                hops[v as usize] = hops[u] + 1;
                queue.push_back(v as usize);
            }
        }
    }
    hops
}
