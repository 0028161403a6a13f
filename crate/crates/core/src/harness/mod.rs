//! Experiment grid: budgets × algorithms × thresholds, one record per cell.

mod config;
mod output;

pub use config::{
    Algorithm, BaselineObjective, ConfigError, ExperimentConfig, MotifSpec, ProbabilityKind,
};
pub use output::{format_sig, write_csv, write_csv_to, CSV_HEADER};

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::baselines::{
    celf_seeds, high_degree_seeds, random_seeds, simple_greedy_seeds, ProfitObjective,
    SelectionTarget,
};
use crate::diffusion::{average_node_benefit, estimate_sigma_with};
use crate::exec::Execution;
use crate::graph::{load_edge_list, Graph, GraphError};
use crate::motif::{load_motifs, motif_profit_with, sample_motifs, MotifError, MotifSet};
use crate::ris::{
    compute_theta, estimate_kpt_with, generate_rr_sets_with, greedy_seed_selection, run_ris,
    select_k_max, KptConfig, RRCollection, RisConfig, RisError, SeedSelection,
};
use crate::rng::RngStream;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Motif(#[from] MotifError),
    #[error(transparent)]
    Ris(#[from] RisError),
    #[error("no graph given")]
    NoGraph,
    #[error("no records to write")]
    NoRecords,
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// One row of the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub budget: f64,
    pub algorithm: String,
    pub threshold: usize,
    pub motif_size: Option<usize>,
    /// Original node labels, sorted.
    pub seeds: Vec<String>,
    pub seed_cost: f64,
    pub pi: f64,
    pub motif_profit: f64,
    pub theta: Option<u64>,
    pub kpt: Option<f64>,
    pub master_seed: u64,
    pub time_kpt_ms: f64,
    pub time_rr_ms: f64,
    pub time_greedy_ms: f64,
    pub time_sim_ms: f64,
}

/// A grid cell that failed; the rest of the grid still ran.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub budget: f64,
    pub algorithm: Algorithm,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentReport {
    pub records: Vec<ExperimentRecord>,
    pub failures: Vec<CellFailure>,
}

// Stream tags under the master seed.
const TAG_MOTIFS: u64 = 1;
const TAG_CELLS: u64 = 2;
const TAG_SHARED_RR: u64 = 3;
// Phases within a cell.
const PHASE_SELECT: u64 = 0;
const PHASE_SIM: u64 = 1;

/// Loads the graph, applies the probability and cost models.
pub fn prepare_graph(config: &ExperimentConfig) -> Result<Graph, HarnessError> {
    let path = config.graph_path.as_ref().ok_or(HarnessError::NoGraph)?;
    let g = load_edge_list(path, config.directed)?
        .apply_probability_model(config.probability.model(config.master_seed))
        .apply_cost_benefit(config.cost_benefit)?;
    log::info!(
        "graph {}: n = {}, m = {}",
        path.display(),
        g.node_count(),
        g.edge_count()
    );
    Ok(g)
}

/// Samples or loads the motif set described by the config.
pub fn prepare_motifs(g: &Graph, config: &ExperimentConfig) -> Result<MotifSet, HarnessError> {
    match &config.motifs {
        crate::harness::MotifSpec::Sample { size, count } => {
            let rng = RngStream::new(config.master_seed, 0).derive(TAG_MOTIFS);
            let sampled = sample_motifs(g, *size, *count, rng, config.benefit_mode)?;
            Ok(sampled.motifs)
        }
        crate::harness::MotifSpec::File(path) => Ok(load_motifs(path, g, config.benefit_mode)?),
    }
}

/// Runs the whole grid from files named in `config`.
pub fn run_experiment(
    config: &ExperimentConfig,
    exec: Execution,
) -> Result<ExperimentReport, HarnessError> {
    config.validate()?;
    let g = prepare_graph(config)?;
    let motifs = prepare_motifs(&g, config)?;
    run_grid(&g, &motifs, config, exec)
}

struct Cell {
    selection: SeedSelection,
    theta: Option<u64>,
    kpt: Option<f64>,
    time_kpt: Duration,
    time_rr: Duration,
    time_greedy: Duration,
}

impl Cell {
    fn untimed(selection: SeedSelection, time_greedy: Duration) -> Cell {
        Cell {
            selection,
            theta: None,
            kpt: None,
            time_kpt: Duration::ZERO,
            time_rr: Duration::ZERO,
            time_greedy,
        }
    }
}

/// Shared RR collection for every budget, sized by the largest θ.
struct SharedRr {
    rr: RRCollection,
    per_budget: Vec<(f64, u64)>,
    time_kpt: Duration,
    time_rr: Duration,
}

fn ris_config(config: &ExperimentConfig) -> RisConfig {
    RisConfig {
        epsilon: config.epsilon,
        ell: config.ell,
        roots: config.roots,
        kpt: KptConfig {
            ell: config.ell,
            size_mode: config.kpt_size,
            roots: config.roots,
        },
    }
}

fn shared_rr(g: &Graph, config: &ExperimentConfig, exec: Execution) -> Result<SharedRr, RisError> {
    let rc = ris_config(config);
    let base = RngStream::new(config.master_seed, 0).derive(TAG_SHARED_RR);
    let t0 = Instant::now();
    let mut per_budget = Vec::with_capacity(config.budgets.len());
    for (bi, &budget) in config.budgets.iter().enumerate() {
        let k = select_k_max(g, budget).min(g.node_count());
        let kpt = estimate_kpt_with(g, k, base.derive_path(&[0, bi as u64]), &rc.kpt, exec);
        let theta = compute_theta(kpt, g.node_count(), k, rc.epsilon, rc.ell)?;
        per_budget.push((kpt, theta));
    }
    let time_kpt = t0.elapsed();
    let max_theta = per_budget.iter().map(|&(_, t)| t).max().unwrap_or(1);
    let t1 = Instant::now();
    let rr = generate_rr_sets_with(g, max_theta, base.derive(1), rc.roots, exec);
    let time_rr = t1.elapsed();
    log::warn!("reusing one RR collection of θ = {max_theta} for every budget");
    Ok(SharedRr {
        rr,
        per_budget,
        time_kpt,
        time_rr,
    })
}

#[allow(clippy::too_many_arguments)]
fn select(
    g: &Graph,
    motifs: &MotifSet,
    config: &ExperimentConfig,
    algorithm: Algorithm,
    bi: usize,
    shared: Option<&SharedRr>,
    rng: RngStream,
    exec: Execution,
) -> Result<Cell, HarnessError> {
    let budget = config.budgets[bi];
    let t = Instant::now();
    let cell = match algorithm {
        Algorithm::Ris => match shared {
            Some(s) => {
                let (kpt, theta) = s.per_budget[bi];
                let selection = greedy_seed_selection(&s.rr, g, budget);
                Cell {
                    selection,
                    theta: Some(theta),
                    kpt: Some(kpt),
                    time_kpt: s.time_kpt,
                    time_rr: s.time_rr,
                    time_greedy: t.elapsed(),
                }
            }
            None => {
                let run = run_ris(g, budget, &ris_config(config), rng, exec)?;
                Cell {
                    selection: run.selection,
                    theta: Some(run.theta),
                    kpt: Some(run.kpt),
                    time_kpt: run.time_kpt,
                    time_rr: run.time_rr,
                    time_greedy: run.time_greedy,
                }
            }
        },
        Algorithm::Random => {
            let s = random_seeds(g, budget, rng);
            Cell::untimed(s, t.elapsed())
        }
        Algorithm::HighDegree => {
            let s = high_degree_seeds(g, budget, config.degree);
            Cell::untimed(s, t.elapsed())
        }
        Algorithm::Celf | Algorithm::SimpleGreedy => {
            let target = match config.baseline_objective {
                BaselineObjective::Motif => SelectionTarget::Motif {
                    tau: config.thresholds.iter().copied().min(),
                },
                BaselineObjective::NodeBenefit => SelectionTarget::NodeBenefit,
            };
            let obj = ProfitObjective::monte_carlo(g, motifs, target, config.greedy_sims, rng)
                .with_execution(exec);
            let s = if algorithm == Algorithm::Celf {
                celf_seeds(&obj, budget)
            } else {
                simple_greedy_seeds(&obj, budget)
            };
            Cell::untimed(s, t.elapsed())
        }
    };
    Ok(cell)
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs the grid on an already prepared graph and motif set.
///
/// Seeds for each (budget, algorithm) cell are selected once and simulated
/// once; every threshold is scored on the same outcomes. A failing cell is
/// logged and recorded in [`ExperimentReport::failures`].
pub fn run_grid(
    g: &Graph,
    motifs: &MotifSet,
    config: &ExperimentConfig,
    exec: Execution,
) -> Result<ExperimentReport, HarnessError> {
    config.validate()?;
    for &tau in &config.thresholds {
        if motifs.clamps(tau) {
            log::warn!("threshold {tau} exceeds some motif sizes; clamped per motif");
        }
    }
    let mut report = ExperimentReport::default();
    let shared = if config.reuse_rr && config.algorithms.contains(&Algorithm::Ris) {
        match shared_rr(g, config, exec) {
            Ok(s) => Some(s),
            Err(e) => {
                log::error!("shared RR generation failed: {e}");
                for &budget in &config.budgets {
                    report.failures.push(CellFailure {
                        budget,
                        algorithm: Algorithm::Ris,
                        message: e.to_string(),
                    });
                }
                None
            }
        }
    } else {
        None
    };
    let cells = RngStream::new(config.master_seed, 0).derive(TAG_CELLS);

    for (bi, &budget) in config.budgets.iter().enumerate() {
        for &algorithm in &config.algorithms {
            if algorithm == Algorithm::Ris && config.reuse_rr && shared.is_none() {
                continue;
            }
            let path = [bi as u64, algorithm.tag()];
            let cell = match select(
                g,
                motifs,
                config,
                algorithm,
                bi,
                shared.as_ref(),
                cells.derive_path(&[path[0], path[1], PHASE_SELECT]),
                exec,
            ) {
                Ok(c) => c,
                Err(e) => {
                    log::error!("cell budget={budget} algorithm={algorithm} failed: {e}");
                    report.failures.push(CellFailure {
                        budget,
                        algorithm,
                        message: e.to_string(),
                    });
                    continue;
                }
            };
            let seeds = &cell.selection.seeds;
            log::info!(
                "budget={budget} {algorithm}: {} seeds, cost {}",
                seeds.len(),
                cell.selection.total_cost
            );
            let t = Instant::now();
            let sim = estimate_sigma_with(
                g,
                seeds,
                config.sims,
                cells.derive_path(&[path[0], path[1], PHASE_SIM]),
                exec,
            );
            let pi = average_node_benefit(g, &sim.outcomes);
            let time_sim = t.elapsed();
            let mut labels: Vec<&str> = seeds.iter().map(|&v| g.label(v)).collect();
            sort_labels(&mut labels);
            for &tau in &config.thresholds {
                let profit = motif_profit_with(
                    &sim.outcomes,
                    motifs,
                    g,
                    Some(tau),
                    cell.selection.total_cost,
                    exec,
                );
                report.records.push(ExperimentRecord {
                    budget,
                    algorithm: record_name(algorithm, shared.is_some()),
                    threshold: tau,
                    motif_size: config.motif_size(),
                    seeds: labels.iter().map(|s| s.to_string()).collect(),
                    seed_cost: cell.selection.total_cost,
                    pi,
                    motif_profit: profit,
                    theta: cell.theta,
                    kpt: cell.kpt,
                    master_seed: config.master_seed,
                    time_kpt_ms: ms(cell.time_kpt),
                    time_rr_ms: ms(cell.time_rr),
                    time_greedy_ms: ms(cell.time_greedy),
                    time_sim_ms: ms(time_sim),
                });
            }
        }
    }
    Ok(report)
}

/// RIS rows from a shared RR collection are marked so they are not
/// mistaken for per-budget runs.
fn record_name(algorithm: Algorithm, shared_rr: bool) -> String {
    if algorithm == Algorithm::Ris && shared_rr {
        format!("{}-shared", algorithm.name())
    } else {
        algorithm.name().to_owned()
    }
}

/// Numeric labels sort numerically, the rest lexicographically after them.
fn sort_labels(labels: &mut [&str]) {
    labels.sort_by(|a, b| match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    });
}
