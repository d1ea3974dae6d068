//! Exact hopset and shortcut set constructions.

mod directed;
mod folklore;
mod greedy;
mod undirected;

pub use directed::greedy_di_shortcut;
pub use folklore::{folklore_from_sample, folklore_hopset};
pub use greedy::{greedy_hopset, GreedyTrace, ShadowStats};
pub use undirected::undirected_shortcut_set;
