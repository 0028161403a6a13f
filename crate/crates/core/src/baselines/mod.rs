//! Reference seed-selection strategies under the same budget rule as the
//! reverse-sampling greedy: a node is added only if the running total cost
//! stays within the budget.

mod objective;

pub use objective::{ProfitObjective, Round, SelectionTarget};

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;

use crate::graph::{Graph, NodeId};
use crate::ris::SeedSelection;
use crate::rng::RngStream;

/// Which degree ranks nodes for [`high_degree_seeds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeKind {
    #[default]
    Out,
    Total,
}

/// Random permutation, each node kept if it still fits.
pub fn random_seeds(g: &Graph, budget: f64, rng: RngStream) -> SeedSelection {
    let mut order: Vec<NodeId> = g.nodes().collect();
    order.shuffle(&mut rng.rng());
    let mut sel = SeedSelection::empty(budget);
    for v in order {
        sel.try_push(v, g.cost(v), budget);
    }
    sel
}

/// Nodes by descending degree (ties to the lower id), skipping any that no
/// longer fit.
pub fn high_degree_seeds(g: &Graph, budget: f64, kind: DegreeKind) -> SeedSelection {
    let degree = |v: NodeId| match kind {
        DegreeKind::Out => g.out_degree(v),
        DegreeKind::Total => g.out_degree(v) + g.in_degree(v),
    };
    let mut order: Vec<NodeId> = g.nodes().collect();
    order.sort_by(|&a, &b| degree(b).cmp(&degree(a)).then(a.cmp(&b)));
    let mut sel = SeedSelection::empty(budget);
    for v in order {
        sel.try_push(v, g.cost(v), budget);
    }
    sel
}

/// Lazy-greedy heap entry; `round` is the seed-set size the gain was
/// computed against.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    ratio: f64,
    delta: f64,
    node: NodeId,
    round: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // max-heap: higher ratio first, then lower node id
    fn cmp(&self, other: &Self) -> Ordering {
        self.ratio
            .total_cmp(&other.ratio)
            .then_with(|| other.node.cmp(&self.node))
    }
}

fn profit_delta(obj: &ProfitObjective, gain: f64, v: NodeId) -> (f64, f64) {
    let c = obj.graph().cost(v);
    let delta = gain - c;
    (delta, delta / c)
}

/// CELF: lazy greedy on `Δ(v|S) / C(v)` where `Δ` is the profit gain
/// (benefit gain minus the node's cost). A popped entry whose gain is stale
/// is re-evaluated against the current seed set and pushed back; a fresh
/// top entry is selected if its gain is positive, otherwise selection stops.
pub fn celf_seeds(obj: &ProfitObjective, budget: f64) -> SeedSelection {
    let g = obj.graph();
    let mut sel = SeedSelection::empty(budget);
    if !(budget > 0.0) {
        return sel;
    }
    let mut round = obj.prepare(&[], 0);
    let initial: Vec<NodeId> = g.nodes().filter(|&v| g.cost(v) <= budget).collect();
    let gains = obj.gains(&round, &initial);
    let mut heap: BinaryHeap<Candidate> = initial
        .iter()
        .zip(gains)
        .map(|(&node, gain)| {
            let (delta, ratio) = profit_delta(obj, gain, node);
            Candidate {
                ratio,
                delta,
                node,
                round: 0,
            }
        })
        .collect();

    while let Some(top) = heap.pop() {
        if sel.total_cost + g.cost(top.node) > budget {
            continue;
        }
        let current = sel.seeds.len();
        if top.round == current {
            if top.delta <= 0.0 {
                break;
            }
            sel.try_push(top.node, g.cost(top.node), budget);
            round = obj.prepare(&sel.seeds, sel.seeds.len());
        } else {
            let gain = obj.gain(&round, top.node);
            let (delta, ratio) = profit_delta(obj, gain, top.node);
            heap.push(Candidate {
                ratio,
                delta,
                node: top.node,
                round: current,
            });
        }
    }
    sel
}

/// Plain greedy: every round re-evaluates `Δ(v|S) / C(v)` for all affordable
/// candidates on that round's worlds, takes the best (ties to the lower id),
/// and stops when nothing fits or the best gain is not positive.
pub fn simple_greedy_seeds(obj: &ProfitObjective, budget: f64) -> SeedSelection {
    let g = obj.graph();
    let mut sel = SeedSelection::empty(budget);
    if !(budget > 0.0) {
        return sel;
    }
    let mut chosen = vec![false; g.node_count()];
    loop {
        let candidates: Vec<NodeId> = g
            .nodes()
            .filter(|&v| !chosen[v as usize] && sel.total_cost + g.cost(v) <= budget)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let round = obj.prepare(&sel.seeds, sel.seeds.len());
        let gains = obj.gains(&round, &candidates);
        let best = candidates
            .iter()
            .zip(gains)
            .map(|(&node, gain)| {
                let (delta, ratio) = profit_delta(obj, gain, node);
                Candidate {
                    ratio,
                    delta,
                    node,
                    round: 0,
                }
            })
            .max()
            .expect("candidates non-empty");
        if best.delta <= 0.0 {
            break;
        }
        sel.try_push(best.node, g.cost(best.node), budget);
        chosen[best.node as usize] = true;
    }
    sel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::{BenefitMode, Motif, MotifSet};

    fn star(leaves: u32) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i, 0.5)).collect();
        let mut g = Graph::from_weighted_edges(leaves as usize + 1, &edges).unwrap();
        let n = g.node_count();
        g.set_cost_benefit(vec![1.0; n], vec![1.0; n]).unwrap();
        g
    }

    #[test]
    fn random_respects_budget_and_seed() {
        let g = star(5);
        assert!(random_seeds(&g, 0.5, RngStream::new(0, 0)).seeds.is_empty());
        let all = random_seeds(&g, 100.0, RngStream::new(0, 0));
        let mut s = all.seeds.clone();
        s.sort_unstable();
        assert_eq!(s, (0..6).collect::<Vec<_>>());
        assert_eq!(
            random_seeds(&g, 3.0, RngStream::new(7, 1)),
            random_seeds(&g, 3.0, RngStream::new(7, 1))
        );
        assert_eq!(random_seeds(&g, 3.0, RngStream::new(7, 1)).seeds.len(), 3);
    }

    #[test]
    fn high_degree_order() {
        let g = star(5);
        assert_eq!(high_degree_seeds(&g, 1.0, DegreeKind::Out).seeds, vec![0]);
        assert!(high_degree_seeds(&g, 0.5, DegreeKind::Out).seeds.is_empty());
        let g = Graph::from_edges(3, &[(1, 0), (2, 0)]).unwrap();
        let mut g = g;
        g.set_cost_benefit(vec![1.0; 3], vec![0.0; 3]).unwrap();
        assert_eq!(
            high_degree_seeds(&g, 2.0, DegreeKind::Out).seeds,
            vec![1, 2]
        );
        assert_eq!(high_degree_seeds(&g, 1.0, DegreeKind::Total).seeds, vec![0]);
    }

    #[test]
    fn high_degree_skips_unaffordable() {
        let mut g = star(3);
        g.set_cost_benefit(vec![10.0, 1.0, 1.0, 1.0], vec![0.0; 4])
            .unwrap();
        assert_eq!(
            high_degree_seeds(&g, 2.0, DegreeKind::Out).seeds,
            vec![1, 2]
        );
    }

    fn chain_instance() -> (Graph, MotifSet) {
        let mut g = Graph::from_weighted_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        g.set_cost_benefit(vec![1.0; 3], vec![0.0; 3]).unwrap();
        let m = Motif::new(0, vec![1, 2], 2, 100.0, &g).unwrap();
        let set = MotifSet::new(vec![m], BenefitMode::MotifLevel, 3);
        (g, set)
    }

    #[test]
    fn chain_greedy_prefers_lower_id_on_tie() {
        let (g, set) = chain_instance();
        let obj = ProfitObjective::exact(&g, &set, SelectionTarget::Motif { tau: None });
        assert_eq!(simple_greedy_seeds(&obj, 1.0).seeds, vec![0]);
        assert_eq!(celf_seeds(&obj, 1.0).seeds, vec![0]);
        // after the motif is active, every further gain is −1: stop
        assert_eq!(simple_greedy_seeds(&obj, 3.0).seeds, vec![0]);
        assert_eq!(celf_seeds(&obj, 3.0).seeds, vec![0]);
    }

    #[test]
    fn zero_benefit_selects_nothing() {
        let (g, _) = chain_instance();
        let m = Motif::new(0, vec![1, 2], 1, 0.0, &g).unwrap();
        let set = MotifSet::new(vec![m], BenefitMode::MotifLevel, 3);
        let obj = ProfitObjective::exact(&g, &set, SelectionTarget::Motif { tau: None });
        assert!(simple_greedy_seeds(&obj, 5.0).seeds.is_empty());
        assert!(celf_seeds(&obj, 5.0).seeds.is_empty());
    }

    #[test]
    fn single_node_candidate() {
        let mut g = Graph::from_weighted_edges(2, &[(0, 1, 1.0)]).unwrap();
        g.set_cost_benefit(vec![1.0, 50.0], vec![0.0; 2]).unwrap();
        let m = Motif::new(0, vec![0, 1], 2, 9.0, &g).unwrap();
        let set = MotifSet::new(vec![m], BenefitMode::MotifLevel, 2);
        let obj = ProfitObjective::exact(&g, &set, SelectionTarget::Motif { tau: None });
        assert_eq!(celf_seeds(&obj, 2.0).seeds, vec![0]);
        assert_eq!(celf_seeds(&obj, 2.0).total_cost, 1.0);
    }

    #[test]
    fn monte_carlo_greedy_within_budget() {
        let g = star(6);
        let motifs: Vec<_> = (1..6)
            .map(|i| Motif::new(i as usize - 1, vec![0, i], 2, 3.0, &g).unwrap())
            .collect();
        let set = MotifSet::new(motifs, BenefitMode::NodeUnion, 7);
        let obj = ProfitObjective::monte_carlo(
            &g,
            &set,
            SelectionTarget::Motif { tau: Some(2) },
            50,
            RngStream::new(1, 1),
        );
        for budget in [0.5, 1.0, 2.5, 4.0] {
            for sel in [celf_seeds(&obj, budget), simple_greedy_seeds(&obj, budget)] {
                assert!(sel.total_cost <= budget);
            }
        }
        assert_eq!(simple_greedy_seeds(&obj, 2.5).seeds.first(), Some(&0));
    }
}
