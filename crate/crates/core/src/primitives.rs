//! Path halving and heavy-light tree shortcutting.

use crate::graph::{Graph, Path, RootedTree, TreeOrientation, VertexId};
use crate::hopset::HopsetEdge;
use crate::weight::Weight;

/// Index pairs `(lo, hi)` produced by recursive halving of a path with
/// `len` edges: the whole range, then both halves split at `lo + ⌊ℓ/2⌋`,
/// stopping at ranges shorter than two edges.
pub fn halving_pairs(len: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, len)];
    while let Some((lo, hi)) = stack.pop() {
        let l = hi - lo;
        if l < 2 {
            continue;
        }
        out.push((lo, hi));
        let mid = lo + l / 2;
        stack.push((mid, hi));
        stack.push((lo, mid));
    }
    out
}

/// Shortcuts a path of `g` by recursive halving. Each edge's span is the
/// subpath it skips and its weight the exact subpath weight.
pub fn path_hopset(g: &Graph, path: &[VertexId]) -> Vec<HopsetEdge> {
    if path.len() < 3 {
        return Vec::new();
    }
    let mut prefix = Vec::with_capacity(path.len());
    prefix.push(0u64);
    for w in path.windows(2) {
        let step = g.weight(w[0], w[1]).expect("path_hopset input must be a path of the graph");
        prefix.push(prefix.last().unwrap() + step.micros());
    }
    halving_pairs(path.len() - 1)
        .into_iter()
        .map(|(lo, hi)| HopsetEdge {
            s: path[lo],
            t: path[hi],
            weight: Weight::from_micros(prefix[hi] - prefix[lo]),
            span: path[lo..=hi].to_vec(),
        })
        .collect()
}

/// Heavy paths listed top (root side) to bottom, plus light edges as
/// `(parent, child)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyLightDecomposition {
    pub heavy_paths: Vec<Path>,
    pub light_edges: Vec<(VertexId, VertexId)>,
}

impl HeavyLightDecomposition {
    /// Most light edges on any root-to-vertex path.
    pub fn max_light_depth(&self, tree: &RootedTree) -> usize {
        let light: std::collections::HashSet<_> = self.light_edges.iter().map(|&(_, c)| c).collect();
        tree.members()
            .into_iter()
            .map(|v| tree.path_to_root(v).iter().filter(|x| light.contains(x)).count())
            .max()
            .unwrap_or(0)
    }
}

/// Heavy child = child with the largest subtree, ties to the smallest id.
pub fn heavy_light(tree: &RootedTree) -> HeavyLightDecomposition {
    let children = tree.children();
    let mut order = vec![tree.root];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(&children[order[i]]);
        i += 1;
    }
    let mut size = vec![1usize; tree.parent.len()];
    for &v in order.iter().rev() {
        if let Some(p) = tree.parent[v] {
            size[p] += size[v];
        }
    }
    let heavy = |v: VertexId| -> Option<VertexId> {
        children[v].iter().copied().min_by_key(|&c| (std::cmp::Reverse(size[c]), c))
    };

    let mut heavy_paths = Vec::new();
    let mut light_edges = Vec::new();
    let mut heads = vec![tree.root];
    while let Some(head) = heads.pop() {
        let mut path = vec![head];
        let mut cur = head;
        while let Some(h) = heavy(cur) {
            for &c in children[cur].iter().rev() {
                if c != h {
                    light_edges.push((cur, c));
                    heads.push(c);
                }
            }
            path.push(h);
            cur = h;
        }
        heavy_paths.push(path);
    }
    light_edges.sort_unstable();
    HeavyLightDecomposition { heavy_paths, light_edges }
}

/// `path_hopset` over every heavy path of `tree`, oriented like the graph
/// edges of the tree.
pub fn tree_hopset(g: &Graph, tree: &RootedTree) -> Vec<HopsetEdge> {
    let hld = heavy_light(tree);
    let mut out = Vec::new();
    for mut p in hld.heavy_paths {
        if tree.orientation == TreeOrientation::TowardRoot {
            p.reverse();
        }
        out.extend(path_hopset(g, &p));
    }
    out
}
