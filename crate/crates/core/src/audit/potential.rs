use serde::Serialize;

use super::search::{augmented_adjacency, dijkstra_hops};
use super::sensitivity::{sensitivity, Target};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::hopset::Hopset;
use crate::par;

/// Lower-bound audit on a split layered instance.
#[derive(Clone, Debug, Serialize)]
pub struct PotentialReport {
    pub paths: usize,
    pub ell: usize,
    /// Most hops needed between the endpoints of any lifted path.
    pub max_hops: usize,
    /// `1_T · e-sens` over the zero-weight middle edges.
    pub masked_edge_sensitivity: u64,
    /// `⌈|Π| ℓ / 2⌉`.
    pub threshold: u64,
    /// `2 · (1_T · e-sens) ≥ |Π| ℓ`, compared in integers.
    pub passes: bool,
    pub edge_linf: u64,
    pub vertex_linf: u64,
    pub nodes_per_layer: usize,
    /// `|Π| / (2 · nodes per layer)`.
    pub edge_linf_bound: f64,
    pub edge_linf_meets_bound: bool,
}

/// Checks that `H` brings every lifted path within `ell` hops, then compares
/// the middle-edge sensitivity mass against `|Π| ℓ / 2`.
pub fn potential_audit(g_prime: &Graph, t_mask: &[bool], lifted: &[Path], h: &Hopset, ell: usize) -> Result<PotentialReport> {
    let aug = augmented_adjacency(g_prime, Some(h));
    let hops = par::map_slice(lifted, |p| {
        let (_, hh) = dijkstra_hops(&aug, p[0]);
        hh[*p.last().unwrap()] as usize
    });
    let mut max_hops = 0;
    for (path, &k) in hops.iter().enumerate() {
        if k > ell {
            return Err(Error::HopBoundUnmet { path, hops: k, limit: ell });
        }
        max_hops = max_hops.max(k);
    }

    let e = sensitivity(g_prime, h, Target::Edge)?;
    let v = sensitivity(g_prime, h, Target::Vertex)?;
    let masked = e.masked_sum(t_mask);
    let target = (lifted.len() * ell) as u64;
    let t_count = t_mask.iter().filter(|&&b| b).count();
    let nodes_per_layer = t_count.checked_div(ell).unwrap_or(0);
    let edge_linf_bound = if nodes_per_layer == 0 { 0.0 } else { lifted.len() as f64 / (2.0 * nodes_per_layer as f64) };
    Ok(PotentialReport {
        paths: lifted.len(),
        ell,
        max_hops,
        masked_edge_sensitivity: masked,
        threshold: target.div_ceil(2),
        passes: 2 * masked >= target,
        edge_linf: e.linf(),
        vertex_linf: v.linf(),
        nodes_per_layer,
        edge_linf_bound,
        edge_linf_meets_bound: e.linf() as f64 >= edge_linf_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::split_transform;
    use crate::hopset::{HopsetEdge, HopsetKind};

    #[test]
    fn complete_hopset_on_a_single_lifted_path() {
        let g = Graph::unit(4, true, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = split_transform(&g);
        let lifted = vec![s.lift_path(&[0, 1, 2, 3])];
        let mut h = Hopset::new(HopsetKind::ExactHopset, "all", 0, true);
        let p = &lifted[0];
        for i in 0..p.len() {
            for j in i + 2..p.len() {
                h.insert(HopsetEdge::over(&s.graph, p[i..=j].to_vec()));
            }
        }
        let r = potential_audit(&s.graph, &s.t_mask, &lifted, &h, 4).unwrap();
        assert_eq!(r.max_hops, 1);
        assert_eq!(r.threshold, 2);
        assert!(r.passes);
        assert!(r.edge_linf <= r.vertex_linf);
    }

    #[test]
    fn hop_bound_must_hold() {
        let g = Graph::unit(3, true, &[(0, 1), (1, 2)]).unwrap();
        let s = split_transform(&g);
        let lifted = vec![s.lift_path(&[0, 1, 2])];
        let h = Hopset::new(HopsetKind::ExactHopset, "none", 0, true);
        let err = potential_audit(&s.graph, &s.t_mask, &lifted, &h, 3).unwrap_err();
        assert!(matches!(err, Error::HopBoundUnmet { path: 0, hops: 5, limit: 3 }));
    }
}
