use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::RoutingOracle;
use crate::hopset::{Hopset, HopsetKind};
use crate::primitives::tree_hopset;

/// Samples each vertex with probability `n^{-1/2}` and shortcuts the in- and
/// out-arborescence of every sampled vertex.
pub fn folklore_hopset(oracle: &RoutingOracle<'_>, seed: u64) -> Hopset {
    let g = oracle.graph();
    let n = g.n();
    let p = if n == 0 { 0.0 } else { 1.0 / (n as f64).sqrt() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<usize> = (0..n).filter(|_| rng.gen::<f64>() < p).collect();
    folklore_from_sample(oracle, seed, &sample)
}

/// The folklore construction for an explicit sample.
pub fn folklore_from_sample(oracle: &RoutingOracle<'_>, seed: u64, sample: &[usize]) -> Hopset {
    let g = oracle.graph();
    let mut h = Hopset::new(HopsetKind::ExactHopset, "folklore", seed, g.is_directed());
    for &s in sample {
        h.extend(tree_hopset(g, &oracle.out_tree(s)));
        if g.is_directed() {
            h.extend(tree_hopset(g, &oracle.in_tree(s)));
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn empty_sample_gives_empty_hopset() {
        let g = Graph::unit(4, true, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = RoutingOracle::build(&g, 0).unwrap();
        assert!(folklore_from_sample(&o, 0, &[]).is_empty());
    }

    #[test]
    fn sampled_vertex_shortcuts_both_directions() {
        let n = 9;
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::unit(n, true, &pairs).unwrap();
        let o = RoutingOracle::build(&g, 0).unwrap();
        let h = folklore_from_sample(&o, 0, &[0]);
        assert!(h.contains(0, 8));
        assert!(h.contains(1, 0));
        h.validate(&g).unwrap();
    }
}
