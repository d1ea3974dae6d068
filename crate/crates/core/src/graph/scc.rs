use std::collections::BTreeMap;

use super::{Edge, Graph, VertexId};
use crate::weight::Weight;

/// Strongly connected components plus the condensation DAG.
///
/// Components are numbered in increasing order of their smallest vertex,
/// which is also the component's representative. The condensation keeps one
/// unit-weight edge per ordered pair of adjacent components; its port edge in
/// the original graph is the lexicographically smallest `(u, v)` between them.
#[derive(Clone, Debug)]
pub struct SccDecomposition {
    pub comp: Vec<usize>,
    pub members: Vec<Vec<VertexId>>,
    pub condensation: Graph,
    /// `ports[e] = (out-port, in-port)` for condensation edge `e`.
    pub ports: Vec<(VertexId, VertexId)>,
}

impl SccDecomposition {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self, c: usize) -> VertexId {
        self.members[c][0]
    }

    /// Port edge realizing condensation arc `ci → cj`.
    pub fn port(&self, ci: usize, cj: usize) -> Option<(VertexId, VertexId)> {
        self.condensation.edge_id(ci, cj).map(|e| self.ports[e])
    }
}

fn tarjan(g: &Graph) -> Vec<usize> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, position in its adjacency list)
    let mut call: Vec<(VertexId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let u = top.0;
            let adj = g.out_neighbors(u);
            if top.1 < adj.len() {
                let v = adj[top.1].0;
                top.1 += 1;
                if index[v] == UNSEEN {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == u {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

pub fn scc_condense(g: &Graph) -> SccDecomposition {
    let raw = tarjan(g);
    // renumber by smallest member
    let mut relabel = vec![usize::MAX; g.n()];
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    let mut comp = vec![0; g.n()];
    for v in 0..g.n() {
        let r = raw[v];
        if relabel[r] == usize::MAX {
            relabel[r] = members.len();
            members.push(Vec::new());
        }
        comp[v] = relabel[r];
        members[comp[v]].push(v);
    }

    let mut reps: BTreeMap<(usize, usize), (VertexId, VertexId)> = BTreeMap::new();
    for u in 0..g.n() {
        for &(v, _) in g.out_neighbors(u) {
            let (cu, cv) = (comp[u], comp[v]);
            if cu != cv {
                reps.entry((cu, cv)).or_insert((u, v));
            }
        }
    }
    let edges = reps
        .keys()
        .map(|&(a, b)| Edge { u: a, v: b, w: Weight::from_int(1) })
        .collect();
    let condensation = Graph::new(members.len(), true, edges).expect("condensation edges are distinct");
    let ports = condensation
        .edges()
        .iter()
        .map(|e| reps[&(e.u, e.v)])
        .collect();
    SccDecomposition { comp, members, condensation, ports }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dag_has_singleton_components() {
        let g = Graph::unit(4, true, &[(0, 1), (1, 2), (0, 2), (3, 2)]).unwrap();
        let d = scc_condense(&g);
        assert_eq!(d.count(), 4);
        assert_eq!(d.condensation.m(), 4);
        assert!(d.condensation.is_acyclic());
        for e in g.edges() {
            assert_eq!(d.port(d.comp[e.u], d.comp[e.v]), Some((e.u, e.v)));
        }
    }

    #[test]
    fn cycle_collapses() {
        let n = 10;
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::unit(n, true, &pairs).unwrap();
        let d = scc_condense(&g);
        assert_eq!(d.count(), 1);
        assert_eq!(d.condensation.m(), 0);
        assert_eq!(d.representative(0), 0);
    }

    #[test]
    fn joined_triangles_keep_smallest_port() {
        // A = {0,1,2}, B = {3,4,5}; arcs 2→4 and 1→5 between them
        let g = Graph::unit(
            6,
            true,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 4), (1, 5)],
        )
        .unwrap();
        let d = scc_condense(&g);
        assert_eq!(d.count(), 2);
        assert_eq!(d.members, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(d.condensation.m(), 1);
        assert_eq!(d.ports, vec![(1, 5)]);
    }

    #[test]
    fn long_path_does_not_overflow_stack() {
        let n = 200_000;
        let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::unit(n, true, &pairs).unwrap();
        assert_eq!(scc_condense(&g).count(), n);
    }
}
