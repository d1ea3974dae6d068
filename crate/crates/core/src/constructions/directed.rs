use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{
    scc_condense, shortest_path_tree, Direction, EdgeKeys, Graph, Path, RootedTree, RoutingOracle, SccDecomposition,
    VertexId,
};
use crate::hopset::{Hopset, HopsetEdge, HopsetKind};
use crate::primitives::tree_hopset;

use super::greedy::greedy_hopset;

const MAX_RESEEDS: u64 = 8;

/// Min-hop path from `a` to `b` using only vertices of component `c`
/// (BFS, neighbours in increasing id order).
fn connector(g: &Graph, scc: &SccDecomposition, c: usize, a: VertexId, b: VertexId) -> Path {
    if a == b {
        return vec![a];
    }
    let mut prev = vec![usize::MAX; g.n()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.out_neighbors(u) {
            if scc.comp[v] == c && prev[v] == usize::MAX {
                prev[v] = u;
                if v == b {
                    let mut path = vec![b];
                    let mut cur = b;
                    while cur != a {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(v);
            }
        }
    }
    unreachable!("vertices of one strongly connected component reach each other")
}

fn arborescences(g: &Graph, scc: &SccDecomposition, keys: &EdgeKeys) -> Option<Vec<RootedTree>> {
    let mut trees = Vec::new();
    for c in 0..scc.count() {
        if scc.members[c].len() < 2 {
            continue;
        }
        let r = scc.representative(c);
        let inside = |v: VertexId| scc.comp[v] == c;
        trees.push(shortest_path_tree(g, keys, r, Direction::Out, &inside)?);
        trees.push(shortest_path_tree(g, keys, r, Direction::In, &inside)?);
    }
    Some(trees)
}

/// Shortcut set for a general digraph: heavy-light shortcuts on the in- and
/// out-arborescence of each strongly connected component's representative,
/// plus the greedy hopset of the condensation lifted back through port edges.
pub fn greedy_di_shortcut(g: &Graph, seed: u64) -> Result<Hopset> {
    if !g.is_directed() {
        return Err(Error::Precondition("di-shortcut expects a directed graph".into()));
    }
    let scc = scc_condense(g);
    let mut h = Hopset::new(HopsetKind::ShortcutSet, "di-shortcut", seed, true);

    let trees = (0..MAX_RESEEDS)
        .find_map(|k| arborescences(g, &scc, &EdgeKeys::derive(g.m(), seed.wrapping_add(k))))
        .ok_or(Error::KeyCollision { attempts: MAX_RESEEDS as usize })?;
    for tree in &trees {
        h.extend(tree_hopset(g, tree));
    }

    let d = &scc.condensation;
    let d_oracle = RoutingOracle::build(d, seed)?;
    let (dh, _) = greedy_hopset(&d_oracle)?;
    for e in dh.edges() {
        let mut span: Path = Vec::new();
        for (k, w) in e.span.windows(2).enumerate() {
            let (out_port, in_port) = scc.port(w[0], w[1]).expect("condensation edge has a port");
            if k == 0 {
                span.push(out_port);
            } else {
                let from = *span.last().unwrap();
                span.extend_from_slice(&connector(g, &scc, w[0], from, out_port)[1..]);
            }
            span.push(in_port);
        }
        h.insert(HopsetEdge::over(g, span));
    }
    Ok(h)
}
