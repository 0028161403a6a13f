#![allow(dead_code)]

use std::collections::BTreeSet;

use motif_profit::{BenefitMode, Graph, Motif, MotifSet, NodeId};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple digraph with `n` nodes and at most `m` edges, probabilities
/// drawn from `p` (a closure so callers can force p = 1).
pub fn random_digraph(
    r: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    mut p: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> Graph {
    let mut pairs: Vec<(NodeId, NodeId)> = (0..n as NodeId)
        .flat_map(|u| {
            (0..n as NodeId)
                .filter(move |&v| v != u)
                .map(move |v| (u, v))
        })
        .collect();
    pairs.shuffle(r);
    pairs.truncate(m.max(1));
    let edges: Vec<(NodeId, NodeId, f64)> = pairs.into_iter().map(|(u, v)| (u, v, p(r))).collect();
    Graph::from_weighted_edges(n, &edges).unwrap()
}

/// Random costs in [0.5, 5) and benefits in [0, 10).
pub fn random_cost_benefit(r: &mut ChaCha8Rng, g: &mut Graph) {
    let n = g.node_count();
    let cost = (0..n).map(|_| r.random_range(0.5..5.0)).collect();
    let benefit = (0..n).map(|_| r.random_range(0.0..10.0)).collect();
    g.set_cost_benefit(cost, benefit).unwrap();
}

/// A connected vertex set grown from a random edge, or None on an edgeless graph.
fn random_connected_set(r: &mut ChaCha8Rng, g: &Graph, size: usize) -> Option<Vec<NodeId>> {
    let edges: Vec<(NodeId, NodeId)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let &(u, v) = edges.choose(r)?;
    let mut set: BTreeSet<NodeId> = [u, v].into_iter().collect();
    while set.len() < size {
        let frontier: Vec<NodeId> = set
            .iter()
            .flat_map(|&x| g.undirected_neighbors(x))
            .filter(|y| !set.contains(y))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        match frontier.choose(r) {
            Some(&y) => {
                set.insert(y);
            }
            None => break,
        }
    }
    Some(set.into_iter().collect())
}

/// `count` random connected motifs of 2..=max_size nodes with random thresholds.
pub fn random_motifs(
    r: &mut ChaCha8Rng,
    g: &Graph,
    count: usize,
    max_size: usize,
    mode: BenefitMode,
    tau: Option<usize>,
) -> MotifSet {
    let mut motifs = Vec::new();
    for id in 0..count {
        let size = r.random_range(2..=max_size.max(2));
        let Some(vertices) = random_connected_set(r, g, size) else {
            break;
        };
        let threshold = tau.unwrap_or_else(|| r.random_range(1..=vertices.len()));
        let benefit = r.random_range(1.0..10.0);
        motifs.push(Motif::new(id, vertices, threshold.min(size).max(1), benefit, g).unwrap());
    }
    MotifSet::new(motifs, mode, g.node_count())
}

/// Random subset of `1..=max` distinct nodes.
pub fn random_seeds(r: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<NodeId> {
    let mut nodes: Vec<NodeId> = (0..n as NodeId).collect();
    nodes.shuffle(r);
    let k = r.random_range(1..=max.min(n));
    nodes.truncate(k);
    nodes
}

/// Congress-sized stand-in: Chung-Lu digraph with heavy-tailed expected
/// degrees, 475 nodes and roughly 13,300 edges.
pub fn congress_like(seed: u64) -> Vec<(NodeId, NodeId)> {
    let n = 475usize;
    let target = 13_289.0;
    let w: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-0.5)).collect();
    let total: f64 = w.iter().sum();
    let pair_sum = total * total - w.iter().map(|x| x * x).sum::<f64>();
    let scale = target / pair_sum;
    let mut r = rng(seed);
    let mut perm: Vec<NodeId> = (0..n as NodeId).collect();
    perm.shuffle(&mut r);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.random::<f64>() < (scale * w[u] * w[v]).min(1.0) {
                edges.push((perm[u], perm[v]));
            }
        }
    }
    edges
}

pub mod grid {
    use std::path::Path;

    use motif_profit::harness::{
        run_experiment, write_csv_to, Algorithm, ExperimentConfig, ExperimentRecord, MotifSpec,
        ProbabilityKind,
    };
    use motif_profit::Execution;

    pub const BUDGETS: [f64; 5] = [10.0, 20.0, 30.0, 40.0, 50.0];
    pub const THRESHOLDS: [usize; 2] = [2, 3];
    pub const MOTIF_SIZES: [usize; 3] = [2, 3, 4];
    pub const SIMS: usize = 10_000;

    pub struct GridRun {
        pub prob: ProbabilityKind,
        pub motif_size: usize,
        pub records: Vec<ExperimentRecord>,
        pub failures: usize,
    }

    pub fn config(
        path: &Path,
        prob: ProbabilityKind,
        motif_size: usize,
        seed: u64,
    ) -> ExperimentConfig {
        ExperimentConfig {
            graph_path: Some(path.to_path_buf()),
            probability: prob,
            budgets: BUDGETS.to_vec(),
            thresholds: THRESHOLDS.to_vec(),
            motifs: MotifSpec::Sample {
                size: motif_size,
                count: 100,
            },
            algorithms: Algorithm::ALL.to_vec(),
            sims: SIMS,
            master_seed: seed,
            ..ExperimentConfig::default()
        }
    }

    /// Both probability models × every motif size.
    pub fn run_all(path: &Path, seed: u64) -> Result<Vec<GridRun>, String> {
        let mut runs = Vec::new();
        for prob in [
            ProbabilityKind::Trivalency,
            ProbabilityKind::WeightedCascade,
        ] {
            for size in MOTIF_SIZES {
                let report = run_experiment(&config(path, prob, size, seed), Execution::default())
                    .map_err(|e| e.to_string())?;
                runs.push(GridRun {
                    prob,
                    motif_size: size,
                    records: report.records,
                    failures: report.failures.len(),
                });
            }
        }
        Ok(runs)
    }

    fn profit(records: &[ExperimentRecord], budget: f64, algo: &str, tau: usize) -> Option<f64> {
        records
            .iter()
            .find(|r| r.budget == budget && r.algorithm == algo && r.threshold == tau)
            .map(|r| r.motif_profit)
    }

    pub struct Directional {
        pub cells: usize,
        pub beats_simple: usize,
        pub beats_all: usize,
    }

    /// RIS against the baselines, per (model, size, budget, threshold) cell.
    pub fn directional(runs: &[GridRun]) -> Directional {
        let mut d = Directional {
            cells: 0,
            beats_simple: 0,
            beats_all: 0,
        };
        for run in runs {
            for b in BUDGETS {
                for tau in THRESHOLDS {
                    let Some(ris) = profit(&run.records, b, "RIS", tau) else {
                        continue;
                    };
                    let other =
                        |a: &str| profit(&run.records, b, a, tau).unwrap_or(f64::NEG_INFINITY);
                    d.cells += 1;
                    if ris >= other("Random") && ris >= other("HighDegree") {
                        d.beats_simple += 1;
                        if ris >= other("CELF") && ris >= other("SimpleGreedy") {
                            d.beats_all += 1;
                        }
                    }
                }
            }
        }
        d
    }

    /// Cells where the τ = 3 profit exceeds the τ = 2 profit, out of all checked.
    pub fn threshold_violations(runs: &[GridRun]) -> (usize, usize, Vec<String>) {
        let mut checked = 0;
        let mut bad = Vec::new();
        for run in runs {
            for b in BUDGETS {
                for a in Algorithm::ALL {
                    let (Some(p2), Some(p3)) = (
                        profit(&run.records, b, a.name(), 2),
                        profit(&run.records, b, a.name(), 3),
                    ) else {
                        continue;
                    };
                    checked += 1;
                    // summation order may differ between the two unions
                    if p3 > p2 + 1e-9 * p2.abs().max(1.0) {
                        bad.push(format!(
                            "{} size {} budget {b} {a}: τ3 {p3} > τ2 {p2}",
                            run.prob.name(),
                            run.motif_size
                        ));
                    }
                }
            }
        }
        (checked, bad.len(), bad)
    }

    /// CSV text with the four timing columns removed.
    pub fn csv_without_timing(runs: &[GridRun]) -> String {
        let mut out = String::new();
        for run in runs {
            let mut buf = Vec::new();
            write_csv_to(&run.records, &mut buf).unwrap();
            for line in String::from_utf8(buf).unwrap().lines() {
                let cols: Vec<&str> = line.split(',').collect();
                out.push_str(&cols[..cols.len() - 4].join(","));
                out.push('\n');
            }
        }
        out
    }
}
