use serde::Serialize;

use super::search::{augmented_adjacency, bfs_hops};
use crate::graph::{Graph, VertexId};
use crate::hopset::Hopset;
use crate::par;

#[derive(Clone, Debug, Serialize)]
pub struct ReachReport {
    pub equal: bool,
    /// A pair reachable in `G ∪ H` but not in `G`.
    pub extra_pair: Option<(VertexId, VertexId)>,
    /// Max over pairs reachable in `G ∪ H` of the unweighted hop distance.
    pub beta: usize,
    pub witness: Option<(VertexId, VertexId)>,
    pub pairs: u64,
}

/// Transitive closure comparison plus the unweighted hop-diameter of `G ∪ H`.
pub fn reach_hop_diameter(g: &Graph, h: &Hopset) -> ReachReport {
    let g_adj = augmented_adjacency(g, None);
    let aug = augmented_adjacency(g, Some(h));
    let per_source = par::map_range(g.n(), |s| {
        let base = bfs_hops(&g_adj, s);
        let with = bfs_hops(&aug, s);
        let mut extra = None;
        let mut best: Option<(u32, usize)> = None;
        let mut pairs = 0u64;
        for t in 0..g.n() {
            if (base[t] == u32::MAX) != (with[t] == u32::MAX) && extra.is_none() {
                extra = Some(t);
            }
            if t != s && with[t] != u32::MAX {
                pairs += 1;
                if best.is_none_or(|(b, _)| with[t] > b) {
                    best = Some((with[t], t));
                }
            }
        }
        (extra, best, pairs)
    });
    let mut r = ReachReport { equal: true, extra_pair: None, beta: 0, witness: None, pairs: 0 };
    for (s, (extra, best, pairs)) in per_source.into_iter().enumerate() {
        r.pairs += pairs;
        if let Some(t) = extra {
            r.equal = false;
            r.extra_pair.get_or_insert((s, t));
        }
        if let Some((b, t)) = best {
            if r.witness.is_none() || b as usize > r.beta {
                r.beta = b as usize;
                r.witness = Some((s, t));
            }
        }
    }
    r
}

pub fn reachability_equal(g: &Graph, h: &Hopset) -> bool {
    reach_hop_diameter(g, h).equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopset::{HopsetEdge, HopsetKind};
    use crate::Weight;

    #[test]
    fn empty_hopset_preserves_reachability() {
        let g = Graph::unit(4, true, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = Hopset::new(HopsetKind::ShortcutSet, "none", 0, true);
        let r = reach_hop_diameter(&g, &h);
        assert!(r.equal);
        assert_eq!(r.beta, 3);
        assert_eq!(r.witness, Some((0, 3)));
    }

    #[test]
    fn fabricated_edge_breaks_closure() {
        let g = Graph::unit(3, true, &[(0, 1), (1, 2)]).unwrap();
        let mut h = Hopset::new(HopsetKind::ShortcutSet, "bad", 0, true);
        h.insert(HopsetEdge { s: 2, t: 0, weight: Weight::from_int(1), span: vec![] });
        let r = reach_hop_diameter(&g, &h);
        assert!(!r.equal);
        assert_eq!(r.extra_pair, Some((1, 0)));
        assert!(!reachability_equal(&g, &h));
    }
}
