use std::collections::{BTreeSet, HashSet};

use log::warn;
use rand::Rng;

use super::{BenefitMode, Motif, MotifError, MotifSet};
use crate::graph::{Graph, NodeId};
use crate::rng::RngStream;

/// Result of [`sample_motifs`]. `complete` is false when the graph could not
/// yield the requested number of distinct motifs within the retry budget.
#[derive(Debug, Clone)]
pub struct SampledMotifs {
    pub motifs: MotifSet,
    pub requested: usize,
    pub complete: bool,
}

const ATTEMPTS_PER_MOTIF: usize = 50;

/// Samples `count` distinct connected vertex sets of `size` nodes.
///
/// Each attempt seeds from a uniformly random edge and grows by adding a
/// uniformly random undirected neighbor of the current set. Thresholds
/// default to a strict majority, `⌊size/2⌋ + 1`; motif benefit defaults to
/// the sum of member node benefits.
pub fn sample_motifs(
    g: &Graph,
    size: usize,
    count: usize,
    rng: RngStream,
    mode: BenefitMode,
) -> Result<SampledMotifs, MotifError> {
    if size < 2 {
        return Err(MotifError::Invalid(format!(
            "motif size must be >= 2, got {size}"
        )));
    }
    if count == 0 {
        return Err(MotifError::Invalid("motif count must be >= 1".into()));
    }
    let edges: Vec<(NodeId, NodeId)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut rng = rng.rng();
    let mut seen: HashSet<Vec<NodeId>> = HashSet::new();
    let mut motifs = Vec::new();
    let budget = count * ATTEMPTS_PER_MOTIF + 100;

    for _ in 0..budget {
        if motifs.len() == count || edges.is_empty() {
            break;
        }
        let (u, v) = edges[rng.random_range(0..edges.len())];
        let mut members: BTreeSet<NodeId> = [u, v].into_iter().collect();
        while members.len() < size {
            let frontier: BTreeSet<NodeId> = members
                .iter()
                .flat_map(|&x| g.undirected_neighbors(x))
                .filter(|w| !members.contains(w))
                .collect();
            if frontier.is_empty() {
                break;
            }
            let pick = rng.random_range(0..frontier.len());
            members.insert(*frontier.iter().nth(pick).unwrap());
        }
        if members.len() < size {
            continue;
        }
        let vertices: Vec<NodeId> = members.into_iter().collect();
        if !seen.insert(vertices.clone()) {
            continue;
        }
        let benefit = vertices.iter().map(|&x| g.benefit(x)).sum();
        motifs.push(Motif::new(
            motifs.len(),
            vertices,
            size / 2 + 1,
            benefit,
            g,
        )?);
    }

    let complete = motifs.len() == count;
    if !complete {
        warn!(
            "sampled only {} of {} requested size-{} motifs",
            motifs.len(),
            count,
            size
        );
    }
    Ok(SampledMotifs {
        motifs: MotifSet::new(motifs, mode, g.node_count()),
        requested: count,
        complete,
    })
}
