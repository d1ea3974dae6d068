use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hopset::Hopset;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Vertex,
    Edge,
}

/// Number of hopset spans through each vertex or edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SensitivityVector {
    pub target: Target,
    pub counts: Vec<u64>,
}

impl SensitivityVector {
    pub fn linf(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn l1(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `1_T · counts` for the index set marked in `mask`.
    pub fn masked_sum(&self, mask: &[bool]) -> u64 {
        assert_eq!(mask.len(), self.counts.len(), "mask length must match the vector");
        self.counts.iter().zip(mask).filter(|(_, &m)| m).map(|(c, _)| c).sum()
    }

    /// Smallest index attaining the maximum.
    pub fn argmax(&self) -> Option<usize> {
        let m = self.linf();
        self.counts.iter().position(|&c| c == m)
    }
}

/// Counts spans by scanning them. Vertices are indexed `0..n`, edges by
/// graph edge id.
pub fn sensitivity(g: &Graph, h: &Hopset, target: Target) -> Result<SensitivityVector> {
    let len = match target {
        Target::Vertex => g.n(),
        Target::Edge => g.m(),
    };
    let mut counts = vec![0u64; len];
    for (index, e) in h.edges().iter().enumerate() {
        if !e.has_span() {
            return Err(Error::MissingSpan { index });
        }
        let ids = g.path_edges(&e.span).ok_or(Error::InvalidSpan { index })?;
        match target {
            Target::Vertex => {
                for &v in &e.span {
                    counts[v] += 1;
                }
            }
            Target::Edge => {
                for id in ids {
                    counts[id] += 1;
                }
            }
        }
    }
    Ok(SensitivityVector { target, counts })
}
