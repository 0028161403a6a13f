//! Directed influence graph in compressed sparse row form.

mod io;
mod model;

pub use io::{load_edge_list, parse_edge_list};
pub use model::{CostBenefitModel, ProbabilityModel};

use std::collections::HashMap;
use std::path::PathBuf;

use thiserror::Error;

pub type NodeId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("failed to read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no edges")]
    Empty,
    #[error("edge probability {0} outside (0, 1]")]
    InvalidProbability(f64),
    #[error("invalid cost model: {0}")]
    InvalidCostModel(String),
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
}

/// A simple directed graph with per-edge influence probabilities and
/// per-node cost and benefit.
///
/// Edge ids are positions in the out-adjacency arrays (sorted by source, then
/// target). The in-adjacency mirrors the same edge set and carries the edge id
/// of every entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    out_prob: Vec<f64>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    in_edge: Vec<usize>,
    in_prob: Vec<f64>,
    cost: Vec<f64>,
    benefit: Vec<f64>,
}

impl Graph {
    /// Builds a graph over `labels.len()` nodes. Self-loops and duplicate
    /// edges are dropped; probabilities start at zero.
    pub(crate) fn build(labels: Vec<String>, mut edges: Vec<(NodeId, NodeId)>) -> Graph {
        let n = labels.len();
        edges.retain(|&(u, v)| u != v);
        edges.sort_unstable();
        edges.dedup();

        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            out_offsets[u as usize + 1] += 1;
            in_offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let out_targets: Vec<NodeId> = edges.iter().map(|&(_, v)| v).collect();

        let m = edges.len();
        let mut in_sources = vec![0; m];
        let mut in_edge = vec![0; m];
        let mut cursor = in_offsets.clone();
        for (e, &(u, v)) in edges.iter().enumerate() {
            let slot = cursor[v as usize];
            in_sources[slot] = u;
            in_edge[slot] = e;
            cursor[v as usize] += 1;
        }

        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as NodeId))
            .collect();

        Graph {
            labels,
            label_index,
            out_offsets,
            out_targets,
            out_prob: vec![0.0; m],
            in_offsets,
            in_sources,
            in_edge,
            in_prob: vec![0.0; m],
            cost: vec![0.0; n],
            benefit: vec![0.0; n],
        }
    }

    /// Graph on nodes `0..n` (labelled by their index) from `(source, target)` pairs.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u as usize >= n || v as usize >= n)
        {
            return Err(GraphError::NodeOutOfRange {
                node: u.max(v) as usize,
                n,
            });
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Graph::build(labels, edges.to_vec()))
    }

    /// Graph on nodes `0..n` with explicit edge probabilities.
    ///
    /// Duplicate edges keep the probability of their first occurrence.
    pub fn from_weighted_edges(
        n: usize,
        edges: &[(NodeId, NodeId, f64)],
    ) -> Result<Graph, GraphError> {
        let pairs: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let mut g = Graph::from_edges(n, &pairs)?;
        let mut probs = vec![None; g.edge_count()];
        for &(u, v, p) in edges {
            if !(p > 0.0 && p <= 1.0) {
                return Err(GraphError::InvalidProbability(p));
            }
            if let Some(e) = g.edge_id(u, v) {
                probs[e].get_or_insert(p);
            }
        }
        let probs: Vec<f64> = probs.into_iter().map(|p| p.unwrap_or(0.0)).collect();
        g.set_probabilities(&probs)?;
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        0..self.node_count() as NodeId
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    /// Out-neighbors of `v` as `(target, probability)`.
    pub fn out_edges(&self, v: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let r = self.out_range(v);
        self.out_targets[r.clone()]
            .iter()
            .copied()
            .zip(self.out_prob[r].iter().copied())
    }

    /// In-neighbors of `v` as `(source, probability)`.
    pub fn in_edges(&self, v: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let r = self.in_range(v);
        self.in_sources[r.clone()]
            .iter()
            .copied()
            .zip(self.in_prob[r].iter().copied())
    }

    /// Edge-id range of `v`'s out-edges; edge ids index [`Graph::edge_target`] etc.
    pub fn out_range(&self, v: NodeId) -> std::ops::Range<usize> {
        self.out_offsets[v as usize]..self.out_offsets[v as usize + 1]
    }

    pub(crate) fn in_range(&self, v: NodeId) -> std::ops::Range<usize> {
        self.in_offsets[v as usize]..self.in_offsets[v as usize + 1]
    }

    pub fn edge_target(&self, e: usize) -> NodeId {
        self.out_targets[e]
    }

    pub fn edge_probability(&self, e: usize) -> f64 {
        self.out_prob[e]
    }

    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<usize> {
        let r = self.out_range(u);
        self.out_targets[r.clone()]
            .binary_search(&v)
            .ok()
            .map(|i| r.start + i)
    }

    /// All edges as `(source, target, probability)` in edge-id order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.nodes()
            .flat_map(move |u| self.out_edges(u).map(move |(v, p)| (u, v, p)))
    }

    /// Neighbors in the underlying undirected graph (may repeat reciprocal pairs).
    pub fn undirected_neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.out_targets[self.out_range(v)]
            .iter()
            .chain(self.in_sources[self.in_range(v)].iter())
            .copied()
    }

    pub(crate) fn in_sources_raw(&self) -> &[NodeId] {
        &self.in_sources
    }

    pub(crate) fn in_prob_raw(&self) -> &[f64] {
        &self.in_prob
    }

    pub(crate) fn out_targets_raw(&self) -> &[NodeId] {
        &self.out_targets
    }

    pub(crate) fn out_prob_raw(&self) -> &[f64] {
        &self.out_prob
    }

    pub fn cost(&self, v: NodeId) -> f64 {
        self.cost[v as usize]
    }

    pub fn benefit(&self, v: NodeId) -> f64 {
        self.benefit[v as usize]
    }

    pub fn costs(&self) -> &[f64] {
        &self.cost
    }

    pub fn benefits(&self) -> &[f64] {
        &self.benefit
    }

    pub fn min_cost(&self) -> f64 {
        self.cost.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn seed_cost(&self, seeds: &[NodeId]) -> f64 {
        // summed in the given order, skipping repeats
        let mut seen = std::collections::HashSet::with_capacity(seeds.len());
        seeds
            .iter()
            .filter(|&&v| seen.insert(v))
            .map(|&v| self.cost(v))
            .sum()
    }

    /// Whether every edge carries a probability in `(0, 1]`.
    pub fn has_probabilities(&self) -> bool {
        self.out_prob.iter().all(|&p| p > 0.0 && p <= 1.0)
    }

    /// Sets edge probabilities, indexed by edge id.
    pub fn set_probabilities(&mut self, probs: &[f64]) -> Result<(), GraphError> {
        assert_eq!(probs.len(), self.edge_count(), "one probability per edge");
        if let Some(&p) = probs.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
            return Err(GraphError::InvalidProbability(p));
        }
        self.out_prob.copy_from_slice(probs);
        for (slot, &e) in self.in_edge.iter().enumerate() {
            self.in_prob[slot] = probs[e];
        }
        Ok(())
    }

    /// Sets per-node costs (strictly positive) and benefits (non-negative).
    pub fn set_cost_benefit(
        &mut self,
        cost: Vec<f64>,
        benefit: Vec<f64>,
    ) -> Result<(), GraphError> {
        assert_eq!(cost.len(), self.node_count());
        assert_eq!(benefit.len(), self.node_count());
        if let Some(c) = cost.iter().find(|&&c| !(c > 0.0 && c.is_finite())) {
            return Err(GraphError::InvalidCostModel(format!(
                "node cost {c} must be positive"
            )));
        }
        if let Some(b) = benefit.iter().find(|&&b| !(b >= 0.0 && b.is_finite())) {
            return Err(GraphError::InvalidCostModel(format!(
                "node benefit {b} must be non-negative"
            )));
        }
        self.cost = cost;
        self.benefit = benefit;
        Ok(())
    }

    /// Nodes reachable from `seeds` following every edge (probabilities ignored).
    pub fn reachable_from(&self, seeds: &[NodeId]) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut stack: Vec<NodeId> = Vec::new();
        for &s in seeds {
            if !seen[s as usize] {
                seen[s as usize] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for (v, _) in self.out_edges(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
