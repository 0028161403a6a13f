//! Independent Cascade simulation and exact live-edge enumeration.

mod oracle;

pub use oracle::{
    exact_activation_probabilities, exact_profit_oracle, OracleError, ORACLE_MAX_EDGES,
};

use rand::Rng;

use crate::exec::{chunk_ranges, Execution};
use crate::graph::{Graph, NodeId};
use crate::rng::RngStream;

/// Trials per RNG stream when simulating in bulk.
const TRIAL_CHUNK: usize = 256;

/// One cascade: the seed set and every node it activated (`I(S)`), seeds
/// first, then in activation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationOutcome {
    pub seed_set: Vec<NodeId>,
    pub activated: Vec<NodeId>,
}

/// Scratch state for repeated cascades on one graph.
pub struct Cascade {
    mark: Vec<u32>,
    epoch: u32,
}

impl Cascade {
    pub fn new(node_count: usize) -> Self {
        Cascade {
            mark: vec![0; node_count],
            epoch: 0,
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Runs one IC cascade. Each newly active node flips one coin per
    /// out-edge, in adjacency order, against targets still inactive.
    pub fn run<R: Rng>(&mut self, g: &Graph, seeds: &[NodeId], rng: &mut R) -> Vec<NodeId> {
        let epoch = self.next_epoch();
        let mut active = Vec::with_capacity(seeds.len() * 4);
        for &s in seeds {
            if self.mark[s as usize] != epoch {
                self.mark[s as usize] = epoch;
                active.push(s);
            }
        }
        let targets = g.out_targets_raw();
        let probs = g.out_prob_raw();
        let mut head = 0;
        while head < active.len() {
            let u = active[head];
            head += 1;
            for e in g.out_range(u) {
                let v = targets[e];
                if self.mark[v as usize] == epoch {
                    continue;
                }
                if rng.random::<f64>() < probs[e] {
                    self.mark[v as usize] = epoch;
                    active.push(v);
                }
            }
        }
        active
    }
}

/// Simulates one cascade from `seeds` using the keystream `rng`.
pub fn simulate_ic(g: &Graph, seeds: &[NodeId], rng: RngStream) -> ActivationOutcome {
    let activated = Cascade::new(g.node_count()).run(g, seeds, &mut rng.rng());
    ActivationOutcome {
        seed_set: dedup_seeds(seeds),
        activated,
    }
}

fn dedup_seeds(seeds: &[NodeId]) -> Vec<NodeId> {
    let mut s = seeds.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Mean spread over `trials` cascades plus every outcome, in trial order.
#[derive(Debug, Clone)]
pub struct SpreadEstimate {
    pub sigma: f64,
    pub outcomes: Vec<ActivationOutcome>,
}

/// Runs `trials` independent cascades. Trial blocks draw from indexed
/// substreams of `rng`, so the result is identical in every execution mode.
pub fn estimate_sigma(
    g: &Graph,
    seeds: &[NodeId],
    trials: usize,
    rng: RngStream,
) -> SpreadEstimate {
    estimate_sigma_with(g, seeds, trials, rng, Execution::default())
}

pub fn estimate_sigma_with(
    g: &Graph,
    seeds: &[NodeId],
    trials: usize,
    rng: RngStream,
    exec: Execution,
) -> SpreadEstimate {
    assert!(trials >= 1, "need at least one trial");
    let seed_set = dedup_seeds(seeds);
    let chunks = chunk_ranges(trials, TRIAL_CHUNK);
    let family = rng.derive(0).master_seed;
    let blocks = exec.map_init(
        chunks.len(),
        || Cascade::new(g.node_count()),
        |cascade, c| {
            let mut r = RngStream::new(family, c as u64).rng();
            chunks[c]
                .clone()
                .map(|_| cascade.run(g, &seed_set, &mut r))
                .collect::<Vec<_>>()
        },
    );
    let outcomes: Vec<ActivationOutcome> = blocks
        .into_iter()
        .flatten()
        .map(|activated| ActivationOutcome {
            seed_set: seed_set.clone(),
            activated,
        })
        .collect();
    let sigma = outcomes
        .iter()
        .map(|o| o.activated.len() as f64)
        .sum::<f64>()
        / trials as f64;
    SpreadEstimate { sigma, outcomes }
}

/// `Π = (1/T) Σ_i Σ_{v ∈ A_i} b(v)`.
pub fn average_node_benefit(g: &Graph, outcomes: &[ActivationOutcome]) -> f64 {
    if outcomes.is_empty() {
        return 0.0;
    }
    let total: f64 = outcomes
        .iter()
        .map(|o| o.activated.iter().map(|&v| g.benefit(v)).sum::<f64>())
        .sum();
    total / outcomes.len() as f64
}
