//! Deterministic graph generators for tests, benches and the CLI.

use std::collections::{BTreeSet, BinaryHeap, HashSet};
use std::cmp::Reverse;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, RootedTree, TreeOrientation};
use crate::weight::Weight;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_edges(n: usize, directed: bool) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    if directed {
        2 * pairs
    } else {
        pairs
    }
}

/// Random spanning tree (each `v > 0` hangs off a uniform earlier vertex)
/// plus uniform extra edges up to `m` in total, integer weights in
/// `1..=max_weight`. Directed graphs orient every edge uniformly at random.
pub fn random_graph(n: usize, m: usize, directed: bool, max_weight: u64, seed: u64) -> Result<Graph> {
    if n == 0 || m + 1 < n || m > max_edges(n, directed) || max_weight == 0 {
        return Err(Error::ParameterViolation(format!(
            "need n ≥ 1, n - 1 ≤ m ≤ {}, max_weight ≥ 1",
            max_edges(n, directed)
        )));
    }
    let mut r = rng(seed);
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut push = |u: usize, v: usize, r: &mut ChaCha8Rng, edges: &mut Vec<Edge>| -> bool {
        let (u, v) = if directed && r.gen::<bool>() { (v, u) } else { (u, v) };
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if u == v || !seen.insert(key) {
            return false;
        }
        edges.push(Edge { u, v, w: Weight::from_int(r.gen_range(1..=max_weight)) });
        true
    };
    for v in 1..n {
        let p = r.gen_range(0..v);
        push(p, v, &mut r, &mut edges);
    }
    while edges.len() < m {
        let u = r.gen_range(0..n);
        let v = r.gen_range(0..n);
        push(u, v, &mut r, &mut edges);
    }
    Graph::new(n, directed, edges)
}

/// Random DAG: edges always point from the lower to the higher id. A
/// spanning arborescence from vertex 0 keeps it weakly connected.
pub fn random_dag(n: usize, m: usize, max_weight: u64, seed: u64) -> Result<Graph> {
    if n == 0 || m + 1 < n || m > max_edges(n, false) || max_weight == 0 {
        return Err(Error::ParameterViolation(format!("need n ≥ 1 and n - 1 ≤ m ≤ {}", max_edges(n, false))));
    }
    let mut r = rng(seed);
    let mut seen = BTreeSet::new();
    for v in 1..n {
        seen.insert((r.gen_range(0..v), v));
    }
    while seen.len() < m {
        let a = r.gen_range(0..n);
        let b = r.gen_range(0..n);
        if a != b {
            seen.insert((a.min(b), a.max(b)));
        }
    }
    let edges = seen
        .into_iter()
        .map(|(u, v)| Edge { u, v, w: Weight::from_int(r.gen_range(1..=max_weight)) })
        .collect();
    Graph::new(n, true, edges)
}

/// Unit-weight path `0 - 1 - … - (n-1)`.
pub fn path_graph(n: usize, directed: bool) -> Graph {
    let pairs: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::unit(n, directed, &pairs).expect("path edges are valid")
}

/// Uniform random labelled tree (Prüfer decoding), rooted at 0, with unit
/// weights. Returns the undirected graph and the rooted tree.
pub fn random_tree(n: usize, seed: u64) -> (Graph, RootedTree) {
    assert!(n >= 1);
    let mut pairs = Vec::with_capacity(n.saturating_sub(1));
    if n == 2 {
        pairs.push((0, 1));
    } else if n > 2 {
        let mut r = rng(seed);
        let code: Vec<usize> = (0..n - 2).map(|_| r.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &c in &code {
            degree[c] += 1;
        }
        let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
        for &c in &code {
            let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
            pairs.push((leaf, c));
            degree[c] -= 1;
            if degree[c] == 1 {
                leaves.push(Reverse(c));
            }
        }
        let Reverse(a) = leaves.pop().unwrap();
        let Reverse(b) = leaves.pop().unwrap();
        pairs.push((a, b));
    }
    let g = Graph::unit(n, false, &pairs).expect("tree edges are valid");
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &(v, _) in g.out_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                stack.push(v);
            }
        }
    }
    (g, RootedTree { root: 0, parent, orientation: TreeOrientation::AwayFromRoot })
}

/// Uniform random edge attributes in `0..=max_value` whole units.
pub fn random_attributes(m: usize, max_value: u64, seed: u64) -> Vec<Weight> {
    let mut r = rng(seed);
    (0..m).map(|_| Weight::from_int(r.gen_range(0..=max_value))).collect()
}

/// A random permutation of `0..n`.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng(seed));
    p
}
