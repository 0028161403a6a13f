//! Budgeted maximum coverage over RR sets, normalized by node cost.

use log::warn;

use super::rrsets::RRCollection;
use crate::graph::{Graph, NodeId};

/// Seeds in selection order with their spend.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSelection {
    pub seeds: Vec<NodeId>,
    pub total_cost: f64,
    pub remaining_budget: f64,
}

impl SeedSelection {
    pub fn empty(budget: f64) -> Self {
        SeedSelection {
            seeds: Vec::new(),
            total_cost: 0.0,
            remaining_budget: budget,
        }
    }

    /// Appends `v` if it fits; cost is accumulated in selection order.
    pub(crate) fn try_push(&mut self, v: NodeId, cost: f64, budget: f64) -> bool {
        if self.total_cost + cost <= budget {
            self.seeds.push(v);
            self.total_cost += cost;
            self.remaining_budget = budget - self.total_cost;
            true
        } else {
            false
        }
    }
}

/// `k = ⌊B / min_v C(v)⌋`, clamped to at least 1.
pub fn select_k_max(g: &Graph, budget: f64) -> usize {
    let k = (budget / g.min_cost()).floor();
    if k < 1.0 {
        warn!("budget {budget} below the cheapest node; using k = 1 for sample sizing");
        1
    } else {
        k as usize
    }
}

/// Repeatedly picks the affordable node with the highest
/// `uncovered coverage / C(v)` (ties to the lower id), then marks every RR
/// set containing it. Nodes with zero remaining coverage are never picked.
pub fn greedy_seed_selection(rr: &RRCollection, g: &Graph, budget: f64) -> SeedSelection {
    let n = g.node_count();
    let mut selection = SeedSelection::empty(budget);
    if !(budget > 0.0) {
        return selection;
    }
    let mut coverage: Vec<u64> = (0..n as NodeId)
        .map(|v| rr.samples_containing(v).len() as u64)
        .collect();
    let mut covered = vec![false; rr.theta()];
    let mut chosen = vec![false; n];

    while selection.total_cost < budget {
        let mut best: Option<(NodeId, f64)> = None;
        for v in 0..n {
            if chosen[v] || coverage[v] == 0 {
                continue;
            }
            let c = g.cost(v as NodeId);
            if selection.total_cost + c > budget {
                continue;
            }
            let score = coverage[v] as f64 / c;
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((v as NodeId, score));
            }
        }
        let Some((v, _)) = best else { break };
        selection.try_push(v, g.cost(v), budget);
        chosen[v as usize] = true;
        for &i in rr.samples_containing(v) {
            let i = i as usize;
            if !covered[i] {
                covered[i] = true;
                for &u in rr.sample(i) {
                    coverage[u as usize] -= 1;
                }
            }
        }
        debug_assert_eq!(coverage[v as usize], 0);
    }
    selection
}
