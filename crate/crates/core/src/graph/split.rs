use super::{Edge, Graph, Path, VertexId};
use crate::weight::Weight;

/// Vertex-split graph: each `v` becomes `v_in = 2v` and `v_out = 2v + 1`
/// joined by a zero-weight edge, and each original arc `(u, v)` becomes
/// `(u_out, v_in)`. The result is always directed; an undirected input edge
/// yields both arcs.
#[derive(Clone, Debug)]
pub struct SplitGraph {
    pub graph: Graph,
    pub original_n: usize,
    /// `t_mask[e]` holds for the zero-weight middle edges `(v_in, v_out)`.
    pub t_mask: Vec<bool>,
    /// Original edge id behind each non-middle edge.
    pub origin: Vec<Option<usize>>,
}

pub fn v_in(v: VertexId) -> VertexId {
    2 * v
}

pub fn v_out(v: VertexId) -> VertexId {
    2 * v + 1
}

impl SplitGraph {
    pub fn v_in(&self, v: VertexId) -> VertexId {
        v_in(v)
    }

    pub fn v_out(&self, v: VertexId) -> VertexId {
        v_out(v)
    }

    pub fn original(&self, split_vertex: VertexId) -> VertexId {
        split_vertex / 2
    }

    /// Id of the middle edge of original vertex `v`.
    pub fn middle_edge(&self, v: VertexId) -> usize {
        self.graph.edge_id(v_in(v), v_out(v)).expect("every vertex has a middle edge")
    }

    /// Maps `v1, …, vk` to `v1_in, v1_out, …, vk_in, vk_out`.
    pub fn lift_path(&self, path: &[VertexId]) -> Path {
        path.iter().flat_map(|&v| [v_in(v), v_out(v)]).collect()
    }
}

pub fn split_transform(g: &Graph) -> SplitGraph {
    let mut tagged: Vec<(Edge, Option<usize>)> = Vec::with_capacity(g.n() + 2 * g.m());
    for v in 0..g.n() {
        tagged.push((Edge { u: v_in(v), v: v_out(v), w: Weight::ZERO }, None));
    }
    for (id, e) in g.edges().iter().enumerate() {
        tagged.push((Edge { u: v_out(e.u), v: v_in(e.v), w: e.w }, Some(id)));
        if !g.is_directed() {
            tagged.push((Edge { u: v_out(e.v), v: v_in(e.u), w: e.w }, Some(id)));
        }
    }
    tagged.sort_by_key(|(e, _)| (e.u, e.v));
    let t_mask = tagged.iter().map(|(_, o)| o.is_none()).collect();
    let origin = tagged.iter().map(|(_, o)| *o).collect();
    let edges = tagged.into_iter().map(|(e, _)| e).collect();
    let graph = Graph::new(2 * g.n(), true, edges).expect("split edges are distinct and loop-free");
    SplitGraph { graph, original_n: g.n(), t_mask, origin }
}
