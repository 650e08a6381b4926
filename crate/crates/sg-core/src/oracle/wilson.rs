//! Uniform spanning-tree sampling by loop-erased random walk, with seeded,
//! chunked trials whose merge is independent of the worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gasket::{build_graph, Coord};
use crate::Result;

const CHUNK: u64 = 4096;

/// Sampling summary: exact integer tallies; frequencies and standard errors
/// are derived views.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleStats {
    pub n: u32,
    pub trials: u64,
    pub seed: u64,
    /// Name of the generator, recorded for reproducibility.
    pub rng: &'static str,
    pub vertices: Vec<Coord>,
    /// Per vertex: number of sampled trees with degree 1..=4 there.
    pub vertex_counts: Vec<[u64; 4]>,
    /// Per degree: sum over trials of the per-tree count of degree-j vertices.
    pub degree_sums: [u64; 4],
    /// Same, squared per trial (for variance estimates).
    pub degree_sq_sums: [u128; 4],
}

impl SampleStats {
    /// Empirical probability that vertex `v` has degree `j`.
    pub fn frequency(&self, v: usize, j: usize) -> f64 {
        self.vertex_counts[v][j - 1] as f64 / self.trials as f64
    }

    /// Binomial standard error of [`frequency`](Self::frequency).
    pub fn frequency_stderr(&self, v: usize, j: usize) -> f64 {
        let p = self.frequency(v, j);
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Empirical average probability over all vertices.
    pub fn average(&self, j: usize) -> f64 {
        self.degree_sums[j - 1] as f64 / (self.trials as f64 * self.vertices.len() as f64)
    }

    /// Standard error of [`average`](Self::average) from the per-trial
    /// sample variance.
    pub fn average_stderr(&self, j: usize) -> f64 {
        let t = self.trials as f64;
        let sum = self.degree_sums[j - 1] as f64;
        let sq = self.degree_sq_sums[j - 1] as f64;
        let var = (sq - sum * sum / t) / (t - 1.0);
        (var / t).sqrt() / self.vertices.len() as f64
    }

    fn merge(&mut self, other: &SampleStats) {
        self.trials += other.trials;
        for (a, b) in self.vertex_counts.iter_mut().zip(&other.vertex_counts) {
            for j in 0..4 {
                a[j] += b[j];
            }
        }
        for j in 0..4 {
            self.degree_sums[j] += other.degree_sums[j];
            self.degree_sq_sums[j] += other.degree_sq_sums[j];
        }
    }
}

/// Sample `trials` uniform spanning trees of `SG(n)`.
///
/// Trials are split into fixed-size chunks; chunk `c` runs on its own
/// generator seeded from `(seed, c)`, and chunk tallies merge in index
/// order. Reruns with the same `(seed, trials)` are bit-identical whatever
/// the thread count.
pub fn wilson_sample(n: u32, trials: u64, seed: u64) -> Result<SampleStats> {
    assert!(trials >= 1);
    let graph = build_graph(n)?;
    let nv = graph.vertex_count();
    let adjacency: Vec<Vec<u32>> = (0..nv)
        .map(|v| graph.neighbors(v).iter().map(|&u| u as u32).collect())
        .collect();
    let chunks: Vec<(u64, u64)> = (0..trials.div_ceil(CHUNK))
        .map(|c| (c, CHUNK.min(trials - c * CHUNK)))
        .collect();
    let parts: Vec<SampleStats> = chunks
        .into_par_iter()
        .map(|(c, len)| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (c + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut stats = empty_stats(n, seed, graph.vertices());
            let mut next = vec![u32::MAX; nv];
            let mut in_tree = vec![false; nv];
            let mut degree = vec![0u8; nv];
            for _ in 0..len {
                sample_tree(&adjacency, &mut rng, &mut next, &mut in_tree, &mut degree);
                let mut per_tree = [0u64; 4];
                for (v, &d) in degree.iter().enumerate() {
                    debug_assert!((1..=4).contains(&d));
                    stats.vertex_counts[v][d as usize - 1] += 1;
                    per_tree[d as usize - 1] += 1;
                }
                for (j, &count) in per_tree.iter().enumerate() {
                    stats.degree_sums[j] += count;
                    stats.degree_sq_sums[j] += (count as u128) * (count as u128);
                }
                stats.trials += 1;
            }
            stats
        })
        .collect();
    let mut total = empty_stats(n, seed, graph.vertices());
    for p in &parts {
        total.merge(p);
    }
    debug_assert_eq!(total.trials, trials);
    Ok(total)
}

fn empty_stats(n: u32, seed: u64, vertices: &[Coord]) -> SampleStats {
    SampleStats {
        n,
        trials: 0,
        seed,
        rng: "chacha8",
        vertices: vertices.to_vec(),
        vertex_counts: vec![[0; 4]; vertices.len()],
        degree_sums: [0; 4],
        degree_sq_sums: [0; 4],
    }
}

/// One Wilson pass: loop-erased random walks from every vertex toward the
/// growing tree rooted at vertex 0.
fn sample_tree(
    adjacency: &[Vec<u32>],
    rng: &mut ChaCha8Rng,
    next: &mut [u32],
    in_tree: &mut [bool],
    degree: &mut [u8],
) {
    let nv = adjacency.len();
    in_tree.iter_mut().for_each(|b| *b = false);
    degree.iter_mut().for_each(|d| *d = 0);
    in_tree[0] = true;
    for start in 1..nv {
        let mut u = start;
        while !in_tree[u] {
            let nbrs = &adjacency[u];
            let step = nbrs[rng.gen_range(0..nbrs.len())] as usize;
            next[u] = step as u32;
            u = step;
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            let v = next[u] as usize;
            degree[u] += 1;
            degree[v] += 1;
            u = v;
        }
    }
}
