//! Reverse-influence sampling: KPT estimation, sample sizing, RR-set
//! generation and budgeted greedy coverage.

mod greedy;
mod kpt;
mod rrsets;
mod theta;

pub use greedy::{greedy_seed_selection, select_k_max, SeedSelection};
pub use kpt::{estimate_kpt, estimate_kpt_with, kpt_contribution, KptConfig, KptSizeMode};
pub use rrsets::{
    generate_rr_sets, generate_rr_sets_with, sample_rr_set, RRCollection, RRSample,
    RootDistribution, RootSampler,
};
pub use theta::{compute_theta, ln_binomial};

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::exec::Execution;
use crate::graph::Graph;
use crate::rng::RngStream;

#[derive(Debug, Error, PartialEq)]
pub enum RisError {
    #[error("seed count k = {k} exceeds node count n = {n}")]
    KExceedsN { k: usize, n: usize },
    #[error("epsilon must lie in (0, 1), got {0}")]
    BadEpsilon(f64),
    #[error("budget must be positive, got {0}")]
    BadBudget(f64),
}

/// Parameters of the full reverse-sampling pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisConfig {
    pub epsilon: f64,
    pub ell: f64,
    pub roots: RootDistribution,
    pub kpt: KptConfig,
}

impl Default for RisConfig {
    fn default() -> Self {
        RisConfig {
            epsilon: 0.3,
            ell: 1.0,
            roots: RootDistribution::Importance,
            kpt: KptConfig::default(),
        }
    }
}

/// Output of [`run_ris`], with per-phase wall time.
#[derive(Debug, Clone)]
pub struct RisRun {
    pub selection: SeedSelection,
    pub k: usize,
    pub kpt: f64,
    pub theta: u64,
    pub time_kpt: Duration,
    pub time_rr: Duration,
    pub time_greedy: Duration,
}

/// `k → κ → θ → RR sets → greedy` for one budget.
pub fn run_ris(
    g: &Graph,
    budget: f64,
    config: &RisConfig,
    rng: RngStream,
    exec: Execution,
) -> Result<RisRun, RisError> {
    if !(budget > 0.0) {
        return Err(RisError::BadBudget(budget));
    }
    let k = select_k_max(g, budget).min(g.node_count());
    let t0 = Instant::now();
    let kpt = estimate_kpt_with(g, k, rng.derive(0), &config.kpt, exec);
    let time_kpt = t0.elapsed();
    let theta = compute_theta(kpt, g.node_count(), k, config.epsilon, config.ell)?;
    let t1 = Instant::now();
    let rr = generate_rr_sets_with(g, theta, rng.derive(1), config.roots, exec).with_kpt(kpt);
    let time_rr = t1.elapsed();
    let t2 = Instant::now();
    let selection = greedy_seed_selection(&rr, g, budget);
    let time_greedy = t2.elapsed();
    Ok(RisRun {
        selection,
        k,
        kpt,
        theta,
        time_kpt,
        time_rr,
        time_greedy,
    })
}
