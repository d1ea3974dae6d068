//! Low-sensitivity hopsets and shortcut sets.
//!
//! The crate builds hopsets whose edges each bypass a designated routing path
//! (the edge's *span*), and audits them against brute-force oracles: how many
//! spans cover any single vertex or edge (sensitivity), how many hops a
//! shortest or near-shortest path needs once the hopset is added
//! (hop-diameter), and whether reachability is preserved.
//!
//! Layout:
//!
//! * [`graph`]: weighted graphs, keyed unique-shortest-path routing, SCCs and
//!   the vertex-split transform.
//! * [`primitives`]: path and heavy-light tree shortcutting.
//! * [`constructions`]: greedy exact hopsets, directed shortcut sets, the
//!   undirected tree shortcut set and the sampled folklore hopset.
//! * [`approx`]: the cluster-tree approximate hopset and the emulator used to
//!   check it.
//! * [`audit`]: sensitivity, hop-diameter, reachability and potential audits.
//! * [`lowerbound`]: layered perfect-path instances.
//! * [`dp`]: the private all-pairs range query mechanism.

pub mod approx;
pub mod audit;
pub mod constructions;
pub mod dp;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hopset;
pub mod lowerbound;
pub mod par;
pub mod primitives;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{Graph, RoutingOracle};
pub use hopset::{Hopset, HopsetEdge, HopsetKind};
pub use weight::Weight;

/// `⌈log₂ n⌉`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Per-vertex span bound of one path or tree shortcutting call: `2(⌈log₂ n⌉+1)`.
pub fn span_bound(n: usize) -> u64 {
    2 * (ceil_log2(n) as u64 + 1)
}
