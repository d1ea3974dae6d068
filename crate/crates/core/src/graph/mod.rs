//! Weighted graphs, keyed routing, SCC condensation and the vertex-split
//! transform.

mod consistency;
mod routing;
mod scc;
mod split;

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::weight::{Weight, WeightParseError};

pub use consistency::{check_consistency, ConsistencyReport};
pub use routing::{
    shortest_path_tree, Direction, EdgeKeys, PathKey, RootedTree, RoutingOracle, TreeOrientation,
};
pub use scc::{scc_condense, SccDecomposition};
pub use split::{split_transform, SplitGraph};

pub type VertexId = usize;
pub type Path = Vec<VertexId>;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
}

/// An immutable weighted graph with vertices `0..n`.
///
/// Undirected edges are stored once and appear in both endpoint adjacency
/// lists under the same edge id. Adjacency lists are sorted by neighbour.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<(VertexId, usize)>>,
    in_adj: Vec<Vec<(VertexId, usize)>>,
}

impl Graph {
    /// Builds a validated graph. Errors carry the 1-based edge position as
    /// their line number.
    pub fn new(n: usize, directed: bool, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            let line = i + 1;
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { line, vertex: x, n });
                }
            }
            if e.u == e.v {
                return Err(Error::SelfLoop { line, vertex: e.u });
            }
            let key = if directed { (e.u, e.v) } else { (e.u.min(e.v), e.u.max(e.v)) };
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge { line, u: e.u, v: e.v });
            }
        }
        Ok(Self::assemble(n, directed, edges))
    }

    fn assemble(n: usize, directed: bool, edges: Vec<Edge>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            out_adj[e.u].push((e.v, id));
            in_adj[e.v].push((e.u, id));
            if !directed {
                out_adj[e.v].push((e.u, id));
                in_adj[e.u].push((e.v, id));
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Graph { n, directed, edges, out_adj, in_adj }
    }

    /// Convenience constructor for tests and generators.
    pub fn from_triples(n: usize, directed: bool, triples: &[(VertexId, VertexId, Weight)]) -> Result<Self> {
        Self::new(n, directed, triples.iter().map(|&(u, v, w)| Edge { u, v, w }).collect())
    }

    /// Unit-weight graph from an edge list.
    pub fn unit(n: usize, directed: bool, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::new(
            n,
            directed,
            pairs.iter().map(|&(u, v)| Edge { u, v, w: Weight::from_int(1) }).collect(),
        )
    }

    /// Parses the edge-list text format: a header `n m directed|undirected`
    /// followed by `m` lines `u v w`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse { line: hline, msg: "header must be `n m directed|undirected`".into() });
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| Error::Parse { line: hline, msg: format!("bad vertex count `{}`", fields[0]) })?;
        let m: usize = fields[1]
            .parse()
            .map_err(|_| Error::Parse { line: hline, msg: format!("bad edge count `{}`", fields[1]) })?;
        let directed = match fields[2] {
            "directed" => true,
            "undirected" => false,
            other => {
                return Err(Error::Parse { line: hline, msg: format!("unknown graph kind `{other}`") })
            }
        };

        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::with_capacity(m);
        for (line, l) in lines {
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 3 {
                return Err(Error::Parse { line, msg: "edge line must be `u v w`".into() });
            }
            let parse_vertex = |s: &str| -> Result<VertexId> {
                let v: usize = s.parse().map_err(|_| Error::Parse { line, msg: format!("bad vertex `{s}`") })?;
                if v >= n {
                    return Err(Error::VertexOutOfRange { line, vertex: v, n });
                }
                Ok(v)
            };
            let u = parse_vertex(f[0])?;
            let v = parse_vertex(f[1])?;
            let w: Weight = f[2].parse().map_err(|e| match e {
                WeightParseError::Negative => Error::NegativeWeight { line, text: f[2].to_string() },
                other => Error::Parse { line, msg: format!("bad weight `{}`: {other}", f[2]) },
            })?;
            if u == v {
                return Err(Error::SelfLoop { line, vertex: u });
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge { line, u, v });
            }
            edges.push(Edge { u, v, w });
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Ok(Self::assemble(n, directed, edges))
    }

    /// Serializes back to the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::with_capacity(16 * self.edges.len() + 32);
        let kind = if self.directed { "directed" } else { "undirected" };
        let _ = writeln!(s, "{} {} {}", self.n, self.edges.len(), kind);
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {}", e.u, e.v, e.w);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// `(neighbour, edge id)` pairs leaving `v`.
    pub fn out_neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.out_adj[v]
    }

    /// `(neighbour, edge id)` pairs entering `v`.
    pub fn in_neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.in_adj[v]
    }

    pub fn neighbors(&self, v: VertexId, dir: Direction) -> &[(VertexId, usize)] {
        match dir {
            Direction::Out => &self.out_adj[v],
            Direction::In => &self.in_adj[v],
        }
    }

    /// Id of the edge traversable from `u` to `v`.
    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let adj = self.out_adj.get(u)?;
        adj.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| adj[i].1)
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        self.edge_id(u, v).map(|id| self.edges[id].w)
    }

    /// Total weight of a vertex sequence, or `None` if some step is not an edge.
    pub fn path_weight(&self, path: &[VertexId]) -> Option<Weight> {
        path.windows(2).try_fold(Weight::ZERO, |acc, p| self.weight(p[0], p[1]).map(|w| acc + w))
    }

    /// Edge ids along a vertex sequence.
    pub fn path_edges(&self, path: &[VertexId]) -> Option<Vec<usize>> {
        path.windows(2).map(|p| self.edge_id(p[0], p[1])).collect()
    }

    /// Whether a directed graph has no cycle. Undirected graphs report `false`
    /// unless they have no edges.
    pub fn is_acyclic(&self) -> bool {
        if !self.directed {
            return self.edges.is_empty();
        }
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_adj[v].len()).collect();
        let mut stack: Vec<VertexId> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &(v, _) in &self.out_adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        seen == self.n
    }

    /// Connected components of the underlying undirected graph, labelled in
    /// order of their smallest vertex.
    pub fn weak_components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(v, _) in self.out_adj[u].iter().chain(self.in_adj[u].iter()) {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}
