use crate::error::{Error, Result};
use crate::graph::RoutingOracle;
use crate::hopset::{Hopset, HopsetKind};
use crate::primitives::tree_hopset;

/// Heavy-light shortcuts on the routing tree of each connected component,
/// rooted at the component's smallest vertex.
pub fn undirected_shortcut_set(oracle: &RoutingOracle<'_>) -> Result<Hopset> {
    let g = oracle.graph();
    if g.is_directed() {
        return Err(Error::Precondition("undirected-shortcut expects an undirected graph".into()));
    }
    let comp = g.weak_components();
    let mut h = Hopset::new(HopsetKind::ShortcutSet, "undirected-shortcut", oracle.seed(), false);
    let mut seen = vec![false; g.n()];
    for v in 0..g.n() {
        if !seen[comp[v]] {
            seen[comp[v]] = true;
            h.extend(tree_hopset(g, &oracle.out_tree(v)));
        }
    }
    Ok(h)
}
