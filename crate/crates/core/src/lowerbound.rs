//! Layered graphs with perfect paths: edge-disjoint unique shortest paths
//! that visit every layer once.
//!
//! Vertex `(i, j)` (layer `i`, position `j`) has id `i * per_layer + j`. For
//! each slope `s < x` and each offset whose path stays inside the layer,
//! the path `(i, j0 + i·s)` is added with edge weight `s² + 1`. At a fixed
//! total displacement the squared cost is strictly convex, so the
//! constant-slope path is the unique shortest one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{split_transform, Edge, Graph, Path, SplitGraph, VertexId};
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub struct LayeredInstance {
    pub layers: usize,
    pub per_layer: usize,
    pub x: usize,
    pub paths: Vec<Path>,
    pub graph: Graph,
}

impl LayeredInstance {
    pub fn layer_of(&self, v: VertexId) -> usize {
        v / self.per_layer
    }
}

pub fn gen_perfect_paths(per_layer: usize, layers: usize, x: usize) -> Result<LayeredInstance> {
    if layers < 2 || per_layer == 0 || x == 0 {
        return Err(Error::ParameterViolation("need layers ≥ 2, per_layer ≥ 1 and x ≥ 1".into()));
    }
    if x * layers > per_layer {
        return Err(Error::ParameterViolation(format!(
            "x = {x} exceeds per_layer / layers = {per_layer}/{layers}"
        )));
    }
    let id = |i: usize, j: usize| i * per_layer + j;
    let mut paths = Vec::new();
    let mut edges = Vec::new();
    for s in 0..x {
        let w = Weight::from_int((s * s + 1) as u64);
        for j0 in 0..per_layer {
            if j0 + (layers - 1) * s >= per_layer {
                break;
            }
            let path: Path = (0..layers).map(|i| id(i, j0 + i * s)).collect();
            for p in path.windows(2) {
                edges.push(Edge { u: p[0], v: p[1], w });
            }
            paths.push(path);
        }
    }
    edges.sort_by_key(|e| (e.u, e.v));
    let graph = Graph::new(layers * per_layer, true, edges)?;
    Ok(LayeredInstance { layers, per_layer, x, paths, graph })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PerfectReport {
    pub paths: usize,
    pub layering_violations: Vec<String>,
    pub partition_violations: Vec<String>,
    pub uniqueness_violations: Vec<String>,
}

impl PerfectReport {
    pub fn passes(&self) -> bool {
        self.layering_violations.is_empty() && self.partition_violations.is_empty() && self.uniqueness_violations.is_empty()
    }
}

/// Shortest distances and shortest-path counts (capped at 2) from `s` in a
/// graph whose edges all go from lower to higher ids.
fn count_shortest(g: &Graph, s: VertexId) -> (Vec<u64>, Vec<u8>) {
    let mut dist = vec![u64::MAX; g.n()];
    let mut count = vec![0u8; g.n()];
    dist[s] = 0;
    count[s] = 1;
    for u in s..g.n() {
        if dist[u] == u64::MAX {
            continue;
        }
        for &(v, e) in g.out_neighbors(u) {
            let nd = dist[u] + g.edge(e).w.micros();
            if nd < dist[v] {
                dist[v] = nd;
                count[v] = count[u];
            } else if nd == dist[v] {
                count[v] = (count[v] + count[u]).min(2);
            }
        }
    }
    (dist, count)
}

/// Checks layering, that the paths partition the edges, and that each path
/// is the only shortest path between its endpoints.
pub fn verify_perfect(inst: &LayeredInstance) -> PerfectReport {
    let g = &inst.graph;
    let mut r = PerfectReport { paths: inst.paths.len(), ..Default::default() };

    for e in g.edges() {
        if inst.layer_of(e.v) != inst.layer_of(e.u) + 1 {
            r.layering_violations.push(format!("edge ({}, {}) skips or reverses a layer", e.u, e.v));
        }
    }
    let mut uses = vec![0usize; g.m()];
    for (k, p) in inst.paths.iter().enumerate() {
        let layered = p.len() == inst.layers && p.iter().enumerate().all(|(i, &v)| inst.layer_of(v) == i);
        if !layered {
            r.layering_violations.push(format!("path {k} does not visit each layer once in order"));
        }
        match g.path_edges(p) {
            Some(ids) => ids.into_iter().for_each(|e| uses[e] += 1),
            None => r.partition_violations.push(format!("path {k} uses a missing edge")),
        }
    }
    for (e, &u) in uses.iter().enumerate() {
        if u != 1 {
            let edge = g.edge(e);
            r.partition_violations.push(format!("edge ({}, {}) lies on {u} paths", edge.u, edge.v));
        }
    }

    let acyclic_by_id = g.edges().iter().all(|e| e.u < e.v);
    for (k, p) in inst.paths.iter().enumerate() {
        let (s, t) = (p[0], *p.last().unwrap());
        let Some(w) = g.path_weight(p) else { continue };
        if !acyclic_by_id {
            r.uniqueness_violations.push("edges must point from lower to higher ids".into());
            break;
        }
        let (dist, count) = count_shortest(g, s);
        if dist[t] != w.micros() {
            r.uniqueness_violations.push(format!("path {k} is not a shortest path"));
        } else if count[t] != 1 {
            r.uniqueness_violations.push(format!("path {k} ties with another shortest path"));
        }
    }
    r
}

#[derive(Clone, Debug)]
pub struct LiftedInstance {
    pub split: SplitGraph,
    pub paths: Vec<Path>,
}

pub fn lift_instance(inst: &LayeredInstance) -> LiftedInstance {
    let split = split_transform(&inst.graph);
    let paths = inst.paths.iter().map(|p| split.lift_path(p)).collect();
    LiftedInstance { split, paths }
}

/// Instance sizes for a target vertex budget `N` and hop-diameter `β`:
/// `per_layer = N/(2β)`, `layers = 2β`, `x = N/(4β²)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TradeoffParams {
    pub total: usize,
    pub beta: usize,
    pub per_layer: usize,
    pub layers: usize,
    pub x: usize,
}

pub fn tradeoff_params(total: usize, beta: usize) -> Result<TradeoffParams> {
    if beta == 0 || !total.is_multiple_of(4 * beta * beta) {
        return Err(Error::ParameterViolation(format!("N = {total} must be a positive multiple of 4β² for β = {beta}")));
    }
    Ok(TradeoffParams { total, beta, per_layer: total / (2 * beta), layers: 2 * beta, x: total / (4 * beta * beta) })
}

/// Sidecar file for a layered instance: the perfect paths, their lifts and
/// the middle edges of the split graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub layers: usize,
    pub per_layer: usize,
    pub x: usize,
    pub paths: Vec<Path>,
    pub lifted_paths: Vec<Path>,
    /// Middle edges `(v_in, v_out)` of the split graph.
    pub t_edges: Vec<(VertexId, VertexId)>,
}

impl Sidecar {
    pub fn new(inst: &LayeredInstance, lifted: &LiftedInstance) -> Sidecar {
        let g = &lifted.split.graph;
        let t_edges = g
            .edges()
            .iter()
            .zip(&lifted.split.t_mask)
            .filter(|(_, &t)| t)
            .map(|(e, _)| (e.u, e.v))
            .collect();
        Sidecar {
            layers: inst.layers,
            per_layer: inst.per_layer,
            x: inst.x,
            paths: inst.paths.clone(),
            lifted_paths: lifted.paths.clone(),
            t_edges,
        }
    }

    /// Edge mask over `g` marking the sidecar's middle edges.
    pub fn t_mask(&self, g: &Graph) -> Result<Vec<bool>> {
        let mut mask = vec![false; g.m()];
        for &(u, v) in &self.t_edges {
            let id = g
                .edge_id(u, v)
                .ok_or_else(|| Error::Precondition(format!("sidecar edge ({u}, {v}) is not in the graph")))?;
            mask[id] = true;
        }
        Ok(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_layers_every_edge_is_a_path() {
        let inst = gen_perfect_paths(6, 2, 3).unwrap();
        assert_eq!(inst.paths.len(), inst.graph.m());
        assert!(verify_perfect(&inst).passes());
    }

    #[test]
    fn straight_paths() {
        let inst = gen_perfect_paths(4, 3, 1).unwrap();
        assert_eq!(inst.paths.len(), 4);
        assert!(verify_perfect(&inst).passes());
    }

    #[test]
    fn standard_instance() {
        let inst = gen_perfect_paths(20, 8, 2).unwrap();
        assert_eq!(inst.paths.len(), 20 + 13);
        assert!(verify_perfect(&inst).passes());
    }

    #[test]
    fn parameter_violation() {
        assert!(matches!(gen_perfect_paths(10, 4, 3), Err(Error::ParameterViolation(_))));
    }

    #[test]
    fn duplicated_path_breaks_partition() {
        let mut inst = gen_perfect_paths(4, 3, 1).unwrap();
        inst.paths.push(inst.paths[0].clone());
        let r = verify_perfect(&inst);
        assert!(!r.partition_violations.is_empty());
        assert!(r.layering_violations.is_empty());
    }

    #[test]
    fn tie_breaks_uniqueness() {
        // diamond 0→{1,2}→3 split over three layers of width 2
        let graph = Graph::unit(6, true, &[(0, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        let inst = LayeredInstance { layers: 3, per_layer: 2, x: 1, paths: vec![vec![0, 2, 4], vec![0, 3, 4]], graph };
        let r = verify_perfect(&inst);
        assert_eq!(r.uniqueness_violations.len(), 2);
    }

    #[test]
    fn lift_doubles_layers() {
        let inst = gen_perfect_paths(20, 8, 2).unwrap();
        let lifted = lift_instance(&inst);
        assert_eq!(lifted.paths.len(), inst.paths.len());
        for p in &lifted.paths {
            assert_eq!(p.len(), 2 * inst.layers);
            let ids = lifted.split.graph.path_edges(p).unwrap();
            for (i, e) in ids.iter().enumerate() {
                assert_eq!(lifted.split.t_mask[*e], i % 2 == 0);
            }
        }
        let side = Sidecar::new(&inst, &lifted);
        assert_eq!(side.t_mask(&lifted.split.graph).unwrap(), lifted.split.t_mask);
    }

    #[test]
    fn tradeoff_arithmetic() {
        let p = tradeoff_params(1600, 4).unwrap();
        assert_eq!(p, TradeoffParams { total: 1600, beta: 4, per_layer: 200, layers: 8, x: 25 });
        assert_eq!(p.x * p.layers, p.per_layer);
        assert!(tradeoff_params(1000, 4).is_err());
    }
}
