//! Exact evaluation by enumerating all `2^m` live-edge subgraphs.
//!
//! Kept deliberately naive and independent from the sampling code paths: it
//! is the reference the estimators are checked against.

use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::motif::{BenefitMode, MotifSet};

pub const ORACLE_MAX_EDGES: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("exact enumeration refused: graph has {edges} edges, limit is {limit}")]
    TooManyEdges { edges: usize, limit: usize },
}

fn check_guard(g: &Graph) -> Result<(), OracleError> {
    if g.edge_count() > ORACLE_MAX_EDGES {
        return Err(OracleError::TooManyEdges {
            edges: g.edge_count(),
            limit: ORACLE_MAX_EDGES,
        });
    }
    Ok(())
}

struct LiveGraphs {
    edges: Vec<(NodeId, NodeId, f64)>,
    n: usize,
}

impl LiveGraphs {
    fn new(g: &Graph) -> Self {
        LiveGraphs {
            edges: g.edges().collect(),
            n: g.node_count(),
        }
    }

    /// Calls `f(weight, live_mask)` for every subset of edges.
    fn for_each(&self, mut f: impl FnMut(f64, u32)) {
        let m = self.edges.len();
        for mask in 0..(1u64 << m) {
            let mask = mask as u32;
            let mut w = 1.0;
            for (e, &(_, _, p)) in self.edges.iter().enumerate() {
                w *= if mask >> e & 1 == 1 { p } else { 1.0 - p };
            }
            if w > 0.0 {
                f(w, mask);
            }
        }
    }

    fn reach(&self, mask: u32, sources: &[NodeId]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = Vec::new();
        for &s in sources {
            if !seen[s as usize] {
                seen[s as usize] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for (e, &(a, b, _)) in self.edges.iter().enumerate() {
                if a == u && mask >> e & 1 == 1 && !seen[b as usize] {
                    seen[b as usize] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }
}

/// Exact motif-oriented profit `Σ_g Pr(g) B_g(S) − Σ_{u∈S} C(u)`.
///
/// `tau` overrides the per-motif thresholds (clamped to motif size).
pub fn exact_profit_oracle(
    g: &Graph,
    seeds: &[NodeId],
    motifs: &MotifSet,
    tau: Option<usize>,
) -> Result<f64, OracleError> {
    check_guard(g)?;
    let mut distinct = seeds.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let live = LiveGraphs::new(g);
    let mut expected = 0.0;
    live.for_each(|w, mask| {
        let reached = live.reach(mask, &distinct);
        let mut in_union = vec![false; g.node_count()];
        let mut b = 0.0;
        for m in motifs.motifs() {
            let overlap = m.vertices.iter().filter(|&&v| reached[v as usize]).count();
            if overlap >= m.effective_threshold(tau) {
                match motifs.mode() {
                    BenefitMode::MotifLevel => b += m.benefit,
                    BenefitMode::NodeUnion => {
                        for &v in &m.vertices {
                            in_union[v as usize] = true;
                        }
                    }
                }
            }
        }
        if motifs.mode() == BenefitMode::NodeUnion {
            b = (0..g.node_count())
                .filter(|&v| in_union[v])
                .map(|v| g.benefit(v as NodeId))
                .sum();
        }
        expected += w * b;
    });
    Ok(expected - distinct.iter().map(|&v| g.cost(v)).sum::<f64>())
}

/// `P[u][v]` = probability that a cascade seeded at `u` alone activates `v`.
pub fn exact_activation_probabilities(g: &Graph) -> Result<Vec<Vec<f64>>, OracleError> {
    check_guard(g)?;
    let n = g.node_count();
    let live = LiveGraphs::new(g);
    let mut p = vec![vec![0.0; n]; n];
    live.for_each(|w, mask| {
        for u in 0..n {
            let reached = live.reach(mask, &[u as NodeId]);
            for v in 0..n {
                if reached[v] {
                    p[u][v] += w;
                }
            }
        }
    });
    Ok(p)
}
