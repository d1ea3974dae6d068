use serde::Serialize;

use super::{Path, RoutingOracle, VertexId};
use crate::par;

/// Outcome of the exhaustive pairwise intersection check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ConsistencyReport {
    pub paths: usize,
    pub pairs_checked: u64,
    pub violations: u64,
    /// First offending pair, by position in the routing-pair order.
    pub first_violation: Option<(Path, Path)>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violations == 0
    }
}

/// Whether the common vertices of `p` and `q` form one contiguous run in
/// both paths, traversed in the same order (or reversed, if allowed).
fn intersects_cleanly(pos_in_p: &[u32], q: &[VertexId], allow_reverse: bool) -> bool {
    let mut first_q: Option<usize> = None;
    let mut last_q = 0usize;
    let mut prev_p: Option<u32> = None;
    let mut step: Option<i64> = None;
    for (i, &v) in q.iter().enumerate() {
        let p = pos_in_p[v];
        if p == u32::MAX {
            continue;
        }
        match first_q {
            None => first_q = Some(i),
            Some(_) if i != last_q + 1 => return false,
            Some(_) => {}
        }
        last_q = i;
        if let Some(pp) = prev_p {
            let d = p as i64 - pp as i64;
            if d != 1 && !(allow_reverse && d == -1) {
                return false;
            }
            match step {
                None => step = Some(d),
                Some(s) if s != d => return false,
                _ => {}
            }
        }
        prev_p = Some(p);
    }
    true
}

/// Checks every pair of routing paths for a clean intersection. Meaningful
/// for undirected graphs and DAGs; on general digraphs it simply reports
/// what it finds.
pub fn check_consistency(oracle: &RoutingOracle<'_>) -> ConsistencyReport {
    let g = oracle.graph();
    let n = g.n();
    let allow_reverse = !g.is_directed();
    let pairs = oracle.routing_pairs();
    let paths: Vec<Path> = par::map_slice(&pairs, |&(s, t)| oracle.path(s, t).expect("pair is reachable"));

    let per_path = par::map_range(paths.len(), |i| {
        let mut pos = vec![u32::MAX; n];
        for (k, &v) in paths[i].iter().enumerate() {
            pos[v] = k as u32;
        }
        let mut bad = 0u64;
        let mut first = None;
        for (j, q) in paths.iter().enumerate().skip(i + 1) {
            if !intersects_cleanly(&pos, q, allow_reverse) {
                bad += 1;
                first.get_or_insert(j);
            }
        }
        (bad, first)
    });

    let mut report = ConsistencyReport { paths: paths.len(), ..Default::default() };
    let k = paths.len() as u64;
    report.pairs_checked = k * k.saturating_sub(1) / 2;
    for (i, (bad, first)) in per_path.into_iter().enumerate() {
        report.violations += bad;
        if report.first_violation.is_none() {
            if let Some(j) = first {
                report.first_violation = Some((paths[i].clone(), paths[j].clone()));
            }
        }
    }
    report
}
