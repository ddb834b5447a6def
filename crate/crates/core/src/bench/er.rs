use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{DynamicGraph, EdgeRecord, FrameSet, NodeRecord};

use super::BenchError;

/// Number of unordered pairs of distinct nodes.
pub fn max_edges(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// The `k`-th unordered pair `(i, j)`, `i < j`, in column order
/// (0,1), (0,2), (1,2), (0,3), ...
pub fn pair_from_index(k: u64) -> (usize, usize) {
    let mut j = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).floor() as u64;
    while j * (j - 1) / 2 > k {
        j -= 1;
    }
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    let i = k - j * (j - 1) / 2;
    (i as usize, j as usize)
}

/// G(n, m): `m` distinct undirected edges drawn uniformly from all pairs.
/// Node ids are `n0..n{n-1}`; edges are sorted by pair index. One frame.
pub fn generate_er(n: usize, m: usize, seed: u64) -> Result<DynamicGraph, BenchError> {
    let pairs = max_edges(n);
    if m as u64 > pairs {
        return Err(BenchError::EdgeCount { n, m, max: pairs });
    }
    let pairs = usize::try_from(pairs).map_err(|_| BenchError::EdgeCount { n, m, max: pairs })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, pairs, m).into_vec();
    picked.sort_unstable();

    let nodes = (0..n).map(|i| NodeRecord::new(format!("n{i}"), FrameSet::all(1))).collect();
    let edges = picked
        .into_iter()
        .map(|k| {
            let (s, t) = pair_from_index(k as u64);
            EdgeRecord::new(s, t, false, FrameSet::all(1))
        })
        .collect();
    Ok(DynamicGraph::new(1, false, nodes, edges)?)
}
