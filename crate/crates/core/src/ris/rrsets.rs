//! Reverse reachable set sampling and the sample/node inverted index.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::exec::{chunk_ranges, Execution};
use crate::graph::{Graph, NodeId};
use crate::rng::RngStream;

/// RR samples per RNG stream.
const RR_CHUNK: usize = 512;

/// How RR-set roots are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootDistribution {
    /// `p_v ∝ b(v) / C(v)`; uniform if every weight is zero.
    Importance,
    Uniform,
}

/// Draws RR-set roots from a [`RootDistribution`].
pub struct RootSampler {
    n: usize,
    weighted: Option<WeightedIndex<f64>>,
}

impl RootSampler {
    pub fn new(g: &Graph, dist: RootDistribution) -> Self {
        let weighted = match dist {
            RootDistribution::Uniform => None,
            RootDistribution::Importance => {
                let w: Vec<f64> = g
                    .nodes()
                    .map(|v| {
                        let c = g.cost(v);
                        if c > 0.0 {
                            g.benefit(v) / c
                        } else {
                            0.0
                        }
                    })
                    .collect();
                let first = w.first().copied().unwrap_or(0.0);
                if w.iter().all(|&x| x == first) {
                    // equal weights (including all-zero): exactly uniform
                    None
                } else {
                    WeightedIndex::new(&w).ok()
                }
            }
        };
        RootSampler {
            n: g.node_count(),
            weighted,
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.weighted.is_none()
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> NodeId {
        match &self.weighted {
            Some(w) => w.sample(rng) as NodeId,
            None => rng.random_range(0..self.n) as NodeId,
        }
    }
}

/// Visit marks for reverse BFS, reused across samples.
pub(crate) struct RRScratch {
    mark: Vec<u32>,
    epoch: u32,
}

impl RRScratch {
    pub(crate) fn new(n: usize) -> Self {
        RRScratch {
            mark: vec![0; n],
            epoch: 0,
        }
    }

    /// Fills `members` with the RR set of `root`, root first. Each in-edge of
    /// a reached node gets at most one coin, drawn when first examined.
    pub(crate) fn reverse_bfs<R: Rng>(
        &mut self,
        g: &Graph,
        root: NodeId,
        rng: &mut R,
        members: &mut Vec<NodeId>,
    ) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        let sources = g.in_sources_raw();
        let probs = g.in_prob_raw();
        members.clear();
        members.push(root);
        self.mark[root as usize] = epoch;
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for slot in g.in_range(v) {
                let u = sources[slot];
                if self.mark[u as usize] != epoch && rng.random::<f64>() < probs[slot] {
                    self.mark[u as usize] = epoch;
                    members.push(u);
                }
            }
        }
    }
}

/// One reverse reachable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRSample {
    pub root: NodeId,
    /// Root first, then in discovery order.
    pub members: Vec<NodeId>,
}

/// Samples the RR set of a fixed `root`.
pub fn sample_rr_set<R: Rng>(g: &Graph, root: NodeId, rng: &mut R) -> RRSample {
    let mut members = Vec::new();
    RRScratch::new(g.node_count()).reverse_bfs(g, root, rng, &mut members);
    RRSample { root, members }
}

/// θ RR sets stored flat, plus the node → sample inverted index.
#[derive(Debug, Clone, PartialEq)]
pub struct RRCollection {
    offsets: Vec<usize>,
    members: Vec<NodeId>,
    index_offsets: Vec<usize>,
    index: Vec<u32>,
    kpt: f64,
}

impl RRCollection {
    /// Builds a collection from explicit member lists (root first).
    pub fn from_samples(node_count: usize, samples: &[Vec<NodeId>]) -> RRCollection {
        let mut offsets = Vec::with_capacity(samples.len() + 1);
        offsets.push(0);
        let mut members = Vec::new();
        for s in samples {
            members.extend_from_slice(s);
            offsets.push(members.len());
        }
        RRCollection::from_flat(node_count, offsets, members)
    }

    fn from_flat(node_count: usize, offsets: Vec<usize>, members: Vec<NodeId>) -> RRCollection {
        let mut index_offsets = vec![0usize; node_count + 1];
        for &v in &members {
            index_offsets[v as usize + 1] += 1;
        }
        for i in 0..node_count {
            index_offsets[i + 1] += index_offsets[i];
        }
        let mut cursor = index_offsets.clone();
        let mut index = vec![0u32; members.len()];
        for i in 0..offsets.len() - 1 {
            for &v in &members[offsets[i]..offsets[i + 1]] {
                index[cursor[v as usize]] = i as u32;
                cursor[v as usize] += 1;
            }
        }
        RRCollection {
            offsets,
            members,
            index_offsets,
            index,
            kpt: 1.0,
        }
    }

    pub fn with_kpt(mut self, kpt: f64) -> Self {
        self.kpt = kpt;
        self
    }

    pub fn kpt(&self) -> f64 {
        self.kpt
    }

    /// Number of samples, θ.
    pub fn theta(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.index_offsets.len() - 1
    }

    pub fn sample(&self, i: usize) -> &[NodeId] {
        &self.members[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn root(&self, i: usize) -> NodeId {
        self.members[self.offsets[i]]
    }

    /// Indices of the samples whose members include `v`, ascending.
    pub fn samples_containing(&self, v: NodeId) -> &[u32] {
        &self.index[self.index_offsets[v as usize]..self.index_offsets[v as usize + 1]]
    }

    pub fn total_members(&self) -> usize {
        self.members.len()
    }
}

pub fn generate_rr_sets(
    g: &Graph,
    theta: u64,
    rng: RngStream,
    roots: RootDistribution,
) -> RRCollection {
    generate_rr_sets_with(g, theta, rng, roots, Execution::default())
}

/// Draws `theta` roots and RR sets. Blocks of samples use indexed substreams
/// and are concatenated in block order.
pub fn generate_rr_sets_with(
    g: &Graph,
    theta: u64,
    rng: RngStream,
    roots: RootDistribution,
    exec: Execution,
) -> RRCollection {
    assert!(theta >= 1, "theta must be at least 1");
    let n = g.node_count();
    let sampler = RootSampler::new(g, roots);
    let chunks = chunk_ranges(theta as usize, RR_CHUNK);
    let family = rng.derive(0).master_seed;
    let blocks = exec.map_init(
        chunks.len(),
        || RRScratch::new(n),
        |scratch, c| {
            let mut r = RngStream::new(family, c as u64).rng();
            let mut lens = Vec::with_capacity(chunks[c].len());
            let mut flat = Vec::new();
            let mut members = Vec::new();
            for _ in chunks[c].clone() {
                let root = sampler.sample(&mut r);
                scratch.reverse_bfs(g, root, &mut r, &mut members);
                lens.push(members.len());
                flat.extend_from_slice(&members);
            }
            (lens, flat)
        },
    );
    let total: usize = blocks.iter().map(|(_, f)| f.len()).sum();
    let mut offsets = Vec::with_capacity(theta as usize + 1);
    offsets.push(0);
    let mut members = Vec::with_capacity(total);
    for (lens, flat) in blocks {
        for len in lens {
            offsets.push(offsets.last().unwrap() + len);
        }
        members.extend(flat);
    }
    RRCollection::from_flat(n, offsets, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn isolated_root() {
        let g = Graph::from_weighted_edges(3, &[(0, 1, 1.0)]).unwrap();
        let s = sample_rr_set(&g, 2, &mut RngStream::new(0, 0).rng());
        assert_eq!(s.members, vec![2]);
    }

    #[test]
    fn certain_chain_reverse() {
        let g = Graph::from_weighted_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let s = sample_rr_set(&g, 2, &mut RngStream::new(0, 0).rng());
        assert_eq!(s.members, vec![2, 1, 0]);
    }

    #[test]
    fn half_coin_membership() {
        let g = Graph::from_weighted_edges(2, &[(0, 1, 0.5)]).unwrap();
        let mut rng = RngStream::new(17, 0).rng();
        let hits = (0..100_000)
            .filter(|_| sample_rr_set(&g, 1, &mut rng).members.contains(&0))
            .count();
        let frac = hits as f64 / 1e5;
        assert!((frac - 0.5).abs() < 0.01, "{frac}");
    }

    #[test]
    fn equal_ratios_make_importance_uniform() {
        let mut g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        g.set_cost_benefit(vec![1.0, 2.0, 3.0, 4.0], vec![2.0, 4.0, 6.0, 8.0])
            .unwrap();
        assert!(RootSampler::new(&g, RootDistribution::Importance).is_uniform());
        g.set_cost_benefit(vec![1.0; 4], vec![0.0, 0.0, 0.0, 1.0])
            .unwrap();
        let s = RootSampler::new(&g, RootDistribution::Importance);
        assert!(!s.is_uniform());
        let mut rng = RngStream::new(0, 0).rng();
        assert!((0..200).all(|_| s.sample(&mut rng) == 3));
    }

    #[test]
    fn modes_produce_identical_collections() {
        let edges: Vec<_> = (0..300u32)
            .map(|i| (i % 50, (i * 13 + 1) % 50, 0.3))
            .collect();
        let mut g = Graph::from_weighted_edges(50, &edges).unwrap();
        g.set_cost_benefit(vec![1.0; 50], vec![1.0; 50]).unwrap();
        let a = generate_rr_sets_with(
            &g,
            2000,
            RngStream::new(3, 3),
            RootDistribution::Uniform,
            Execution::Sequential,
        );
        let b = generate_rr_sets_with(
            &g,
            2000,
            RngStream::new(3, 3),
            RootDistribution::Uniform,
            Execution::Parallel,
        );
        assert_eq!(a, b);
        assert_eq!(a.theta(), 2000);
    }

    #[test]
    fn explicit_samples_index() {
        let rr = RRCollection::from_samples(3, &[vec![0], vec![1, 0], vec![1]]);
        assert_eq!(rr.samples_containing(0), &[0, 1]);
        assert_eq!(rr.samples_containing(1), &[1, 2]);
        assert!(rr.samples_containing(2).is_empty());
        assert_eq!(rr.root(1), 1);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..20).prop_flat_map(|n| {
            proptest::collection::vec((0..n as u32, 0..n as u32, 0.05f64..1.0), 1..60).prop_map(
                move |e| {
                    let mut g = Graph::from_weighted_edges(n, &e).unwrap();
                    g.set_cost_benefit(vec![1.0; n], vec![1.0; n]).unwrap();
                    g
                },
            )
        })
    }

    proptest! {
        #[test]
        fn collection_invariants(g in arb_graph(), theta in 1u64..300, seed in any::<u64>()) {
            let rr = generate_rr_sets(&g, theta, RngStream::new(seed, 0), RootDistribution::Importance);
            prop_assert_eq!(rr.theta() as u64, theta);
            for i in 0..rr.theta() {
                let s = rr.sample(i);
                prop_assert_eq!(s[0], rr.root(i));
                // each non-root member has a live path to the root through earlier members
                for (pos, &u) in s.iter().enumerate().skip(1) {
                    prop_assert!(s[..pos].iter().any(|&w| g.edge_id(u, w).is_some()));
                }
                let mut sorted = s.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), s.len());
            }
            for v in g.nodes() {
                let listed = rr.samples_containing(v);
                let expect: Vec<u32> = (0..rr.theta())
                    .filter(|&i| rr.sample(i).contains(&v))
                    .map(|i| i as u32)
                    .collect();
                prop_assert_eq!(listed, &expect[..]);
            }
        }
    }
}
