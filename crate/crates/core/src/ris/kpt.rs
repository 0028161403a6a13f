//! KPT lower-bound estimation by geometric rounds of RR sampling.

use super::rrsets::{RRScratch, RootDistribution, RootSampler};
use crate::exec::{chunk_ranges, Execution};
use crate::graph::Graph;
use crate::rng::RngStream;

/// What `|RR(v)|` measures in `κ_v = 1 − (1 − |RR(v)|/m)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KptSizeMode {
    /// Member count of the RR set.
    Members,
    /// Number of edges pointing into RR-set members (its width).
    Width,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KptConfig {
    pub ell: f64,
    pub size_mode: KptSizeMode,
    pub roots: RootDistribution,
}

impl Default for KptConfig {
    fn default() -> Self {
        KptConfig {
            ell: 1.0,
            size_mode: KptSizeMode::Members,
            roots: RootDistribution::Importance,
        }
    }
}

const KPT_CHUNK: usize = 256;

/// `κ_v = 1 − (1 − size/m)^k`, with `size/m` capped at 1.
pub fn kpt_contribution(size: usize, m: usize, k: usize) -> f64 {
    let frac = (size as f64 / m as f64).min(1.0);
    1.0 - (1.0 - frac).powi(k as i32)
}

/// Samples required in round `i`: `⌈(6ℓ ln n + 6 ln log₂ n) · 2^i⌉`.
pub(crate) fn round_samples(n: usize, ell: f64, i: u32) -> usize {
    let nf = n as f64;
    let per = 6.0 * ell * nf.ln() + 6.0 * nf.log2().ln();
    (per * 2f64.powi(i as i32)).ceil().max(1.0) as usize
}

pub fn estimate_kpt(g: &Graph, k: usize, rng: RngStream, config: &KptConfig) -> f64 {
    estimate_kpt_with(g, k, rng, config, Execution::default())
}

/// Rounds `i = 1 ..= ⌊log₂ n⌋ − 1`. Round `i` averages `κ_v` over `c_i`
/// RR sets; the first round whose mean exceeds `2^-i` returns
/// `n · sum / (2 c_i)`. Falls back to 1.
pub fn estimate_kpt_with(
    g: &Graph,
    k: usize,
    rng: RngStream,
    config: &KptConfig,
    exec: Execution,
) -> f64 {
    let n = g.node_count();
    let m = g.edge_count().max(1);
    if n <= 2 {
        return 1.0;
    }
    let rounds = (n as f64).log2().floor() as u32;
    let sampler = RootSampler::new(g, config.roots);
    for i in 1..rounds {
        let c_i = round_samples(n, config.ell, i);
        let chunks = chunk_ranges(c_i, KPT_CHUNK);
        let family = rng.derive(u64::from(i)).master_seed;
        let partial = exec.map_init(
            chunks.len(),
            || RRScratch::new(n),
            |scratch, c| {
                let mut r = RngStream::new(family, c as u64).rng();
                let mut members = Vec::new();
                chunks[c]
                    .clone()
                    .map(|_| {
                        let root = sampler.sample(&mut r);
                        scratch.reverse_bfs(g, root, &mut r, &mut members);
                        let size = match config.size_mode {
                            KptSizeMode::Members => members.len(),
                            KptSizeMode::Width => members.iter().map(|&v| g.in_degree(v)).sum(),
                        };
                        kpt_contribution(size, m, k)
                    })
                    .collect::<Vec<f64>>()
            },
        );
        let sum: f64 = partial.iter().flatten().sum();
        if sum / c_i as f64 > 0.5f64.powi(i as i32) {
            return n as f64 * sum / (2.0 * c_i as f64);
        }
    }
    1.0
}
