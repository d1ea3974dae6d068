//! Audits computed only from the graph and the hopset edges with their spans.

mod hops;
mod potential;
mod reach;
mod report;
mod search;
mod sensitivity;

pub use hops::{hop_diameter, HopDiameter, HopMode, SAMPLE_PAIRS, SAMPLE_THRESHOLD};
pub use potential::{potential_audit, PotentialReport};
pub use reach::{reach_hop_diameter, reachability_equal, ReachReport};
pub use report::{HopsetReport, SensitivitySummary};
pub use search::{augmented_adjacency, bfs_hops, dijkstra, dijkstra_hops, Adjacency};
pub use sensitivity::{sensitivity, SensitivityVector, Target};
