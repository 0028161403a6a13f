//! Motifs, threshold activation and motif-oriented profit.

mod io;
mod sample;

pub use io::{load_motifs, parse_motifs, write_motifs};
pub use sample::{sample_motifs, SampledMotifs};

use thiserror::Error;

use crate::diffusion::ActivationOutcome;
use crate::exec::Execution;
use crate::graph::{Graph, NodeId};

#[derive(Debug, Error)]
pub enum MotifError {
    #[error("failed to read motif file {path}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: unknown node label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("{0}")]
    Invalid(String),
}

/// How activated motifs turn into benefit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenefitMode {
    /// Each active motif earns its own `motif_benefit`.
    MotifLevel,
    /// Node benefits summed over the union of active motifs' vertices.
    NodeUnion,
}

/// A concrete small vertex set with an activation threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Motif {
    pub id: usize,
    /// Sorted, distinct.
    pub vertices: Vec<NodeId>,
    pub threshold: usize,
    pub benefit: f64,
}

impl Motif {
    /// Validates size, threshold range, benefit sign and connectivity in the
    /// underlying undirected graph.
    pub fn new(
        id: usize,
        mut vertices: Vec<NodeId>,
        threshold: usize,
        benefit: f64,
        g: &Graph,
    ) -> Result<Motif, MotifError> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() < 2 {
            return Err(MotifError::Invalid(format!(
                "motif needs at least 2 distinct vertices, got {}",
                vertices.len()
            )));
        }
        if threshold < 1 || threshold > vertices.len() {
            return Err(MotifError::Invalid(format!(
                "threshold {threshold} outside [1, {}]",
                vertices.len()
            )));
        }
        if !(benefit >= 0.0 && benefit.is_finite()) {
            return Err(MotifError::Invalid(format!(
                "benefit {benefit} must be non-negative"
            )));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v as usize >= g.node_count()) {
            return Err(MotifError::Invalid(format!("vertex {v} not in graph")));
        }
        if !is_connected(&vertices, g) {
            return Err(MotifError::Invalid(
                "motif vertices are not connected".into(),
            ));
        }
        Ok(Motif {
            id,
            vertices,
            threshold,
            benefit,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The threshold used for evaluation: `tau` clamped to `[1, |m|]` when
    /// given, otherwise the motif's own.
    pub fn effective_threshold(&self, tau: Option<usize>) -> usize {
        tau.map_or(self.threshold, |t| t.clamp(1, self.len()))
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

fn is_connected(vertices: &[NodeId], g: &Graph) -> bool {
    let mut seen = vec![false; vertices.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for w in g.undirected_neighbors(vertices[i]) {
            if let Ok(j) = vertices.binary_search(&w) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// `|activated ∩ V(m)| >= τ_m`.
pub fn motif_indicator(motif: &Motif, activated: &[NodeId]) -> bool {
    let overlap = motif
        .vertices
        .iter()
        .filter(|v| activated.contains(v))
        .count();
    overlap >= motif.threshold
}

/// Motifs plus a node → motif inverted index.
#[derive(Debug, Clone)]
pub struct MotifSet {
    motifs: Vec<Motif>,
    mode: BenefitMode,
    node_offsets: Vec<usize>,
    node_motifs: Vec<u32>,
}

impl MotifSet {
    pub fn new(motifs: Vec<Motif>, mode: BenefitMode, node_count: usize) -> MotifSet {
        let mut node_offsets = vec![0usize; node_count + 1];
        for m in &motifs {
            for &v in &m.vertices {
                node_offsets[v as usize + 1] += 1;
            }
        }
        for i in 0..node_count {
            node_offsets[i + 1] += node_offsets[i];
        }
        let mut cursor = node_offsets.clone();
        let mut node_motifs = vec![0u32; node_offsets[node_count]];
        for (j, m) in motifs.iter().enumerate() {
            for &v in &m.vertices {
                node_motifs[cursor[v as usize]] = j as u32;
                cursor[v as usize] += 1;
            }
        }
        MotifSet {
            motifs,
            mode,
            node_offsets,
            node_motifs,
        }
    }

    pub fn motifs(&self) -> &[Motif] {
        &self.motifs
    }

    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn mode(&self) -> BenefitMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: BenefitMode) -> MotifSet {
        self.mode = mode;
        self
    }

    /// Indices of the motifs containing `v`.
    pub fn motifs_of(&self, v: NodeId) -> &[u32] {
        &self.node_motifs[self.node_offsets[v as usize]..self.node_offsets[v as usize + 1]]
    }

    pub fn max_motif_size(&self) -> usize {
        self.motifs.iter().map(Motif::len).max().unwrap_or(0)
    }

    /// Whether `tau` exceeds the size of any motif (and will be clamped).
    pub fn clamps(&self, tau: usize) -> bool {
        self.motifs.iter().any(|m| tau > m.len())
    }

    /// Benefit of a single motif's activation under this set's mode, without
    /// union de-duplication. For `NodeUnion` it is the vertex benefit sum.
    pub fn standalone_benefit(&self, j: usize, g: &Graph) -> f64 {
        let m = &self.motifs[j];
        match self.mode {
            BenefitMode::MotifLevel => m.benefit,
            BenefitMode::NodeUnion => m.vertices.iter().map(|&v| g.benefit(v)).sum(),
        }
    }
}

/// Reusable scratch for evaluating the motif benefit of activated sets.
pub struct MotifScorer<'a> {
    motifs: &'a MotifSet,
    node_benefit: &'a [f64],
    tau: Option<usize>,
    thresholds: Vec<usize>,
    overlap: Vec<usize>,
    touched: Vec<u32>,
    union_mark: Vec<u32>,
    epoch: u32,
}

impl<'a> MotifScorer<'a> {
    pub fn new(motifs: &'a MotifSet, g: &'a Graph, tau: Option<usize>) -> Self {
        MotifScorer {
            motifs,
            node_benefit: g.benefits(),
            tau,
            thresholds: motifs
                .motifs
                .iter()
                .map(|m| m.effective_threshold(tau))
                .collect(),
            overlap: vec![0; motifs.len()],
            touched: Vec::new(),
            union_mark: vec![0; g.node_count()],
            epoch: 0,
        }
    }

    pub fn tau(&self) -> Option<usize> {
        self.tau
    }

    /// `B = Σ b(m)` (motif level) or `Σ_{v ∈ ∪ active} b(v)` (node union)
    /// for one activated node set. `activated` must not repeat nodes.
    pub fn benefit(&mut self, activated: &[NodeId]) -> f64 {
        self.touched.clear();
        for &v in activated {
            for &j in self.motifs.motifs_of(v) {
                if self.overlap[j as usize] == 0 {
                    self.touched.push(j);
                }
                self.overlap[j as usize] += 1;
            }
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.union_mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        let mut total = 0.0;
        for &j in &self.touched {
            let j = j as usize;
            if self.overlap[j] >= self.thresholds[j] {
                let m = &self.motifs.motifs[j];
                match self.motifs.mode {
                    BenefitMode::MotifLevel => total += m.benefit,
                    BenefitMode::NodeUnion => {
                        for &v in &m.vertices {
                            if self.union_mark[v as usize] != self.epoch {
                                self.union_mark[v as usize] = self.epoch;
                                total += self.node_benefit[v as usize];
                            }
                        }
                    }
                }
            }
            self.overlap[j] = 0;
        }
        total
    }
}

/// Average motif-oriented profit over simulated outcomes:
/// `(1/T) Σ_i (B_i − seed_cost)`.
///
/// `tau` overrides every motif's threshold (clamped to its size); `None`
/// uses per-motif thresholds. Panics on an empty outcome list.
pub fn motif_profit(
    outcomes: &[ActivationOutcome],
    motifs: &MotifSet,
    g: &Graph,
    tau: Option<usize>,
    seed_cost: f64,
) -> f64 {
    motif_profit_with(outcomes, motifs, g, tau, seed_cost, Execution::default())
}

pub fn motif_profit_with(
    outcomes: &[ActivationOutcome],
    motifs: &MotifSet,
    g: &Graph,
    tau: Option<usize>,
    seed_cost: f64,
    exec: Execution,
) -> f64 {
    assert!(
        !outcomes.is_empty(),
        "motif_profit needs at least one outcome"
    );
    let per_outcome = exec.map_init(
        outcomes.len(),
        || MotifScorer::new(motifs, g, tau),
        |scorer, i| scorer.benefit(&outcomes[i].activated) - seed_cost,
    );
    per_outcome.iter().sum::<f64>() / outcomes.len() as f64
}
