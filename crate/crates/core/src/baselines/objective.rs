//! Marginal profit evaluation over an ensemble of live-edge worlds.
//!
//! A world is one realization of every edge coin. Sampled ensembles draw a
//! fresh set of worlds per greedy round, shared by every candidate in that
//! round (common random numbers). Enumerated ensembles cover all `2^m`
//! worlds with their exact probabilities, which turns the estimator into
//! the exact objective on small graphs.

use rand::Rng;

use crate::diffusion::ORACLE_MAX_EDGES;
use crate::exec::Execution;
use crate::graph::{Graph, NodeId};
use crate::motif::{BenefitMode, MotifSet};
use crate::rng::RngStream;

/// What a greedy baseline maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionTarget {
    /// Motif-oriented benefit with thresholds overridden by `tau` (clamped),
    /// or per-motif thresholds when `None`.
    Motif { tau: Option<usize> },
    /// Plain node benefit of every activated node.
    NodeBenefit,
}

#[derive(Debug, Clone)]
enum Worlds {
    Sampled { count: usize, rng: RngStream },
    Enumerated { weights: Vec<f64> },
}

/// Expected benefit gains `E[B(S ∪ {v}) − B(S)]` for a seed set `S`.
#[derive(Debug, Clone)]
pub struct ProfitObjective<'a> {
    g: &'a Graph,
    motifs: &'a MotifSet,
    target: SelectionTarget,
    worlds: Worlds,
    thresholds: Vec<usize>,
    exec: Execution,
}

/// Per-round state: the worlds in use and what `S` already reaches in each.
pub struct Round {
    world_count: usize,
    /// Sampled worlds only: live-edge bits, `words` u64s per world.
    live: Vec<u64>,
    words: usize,
    weights: Vec<f64>,
    reached: Vec<bool>,
    overlap: Vec<u32>,
    in_union: Vec<bool>,
    base_benefit: f64,
}

impl Round {
    /// Expected benefit of the round's seed set.
    pub fn expected_benefit(&self) -> f64 {
        self.base_benefit
    }
}

/// reached, motif overlap, union membership and benefit for one world.
type WorldState = (Vec<bool>, Vec<u32>, Vec<bool>, f64);

/// Scratch for one candidate evaluation.
struct GainScratch {
    mark: Vec<u32>,
    union_mark: Vec<u32>,
    motif_mark: Vec<u32>,
    delta: Vec<u32>,
    touched: Vec<u32>,
    queue: Vec<NodeId>,
    epoch: u32,
}

impl GainScratch {
    fn new(n: usize, motifs: usize) -> Self {
        GainScratch {
            mark: vec![0; n],
            union_mark: vec![0; n],
            motif_mark: vec![0; motifs],
            delta: vec![0; motifs],
            touched: Vec::new(),
            queue: Vec::new(),
            epoch: 0,
        }
    }

    fn bump(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.union_mark.iter_mut().for_each(|m| *m = 0);
            self.motif_mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.epoch
    }
}

impl<'a> ProfitObjective<'a> {
    /// Monte Carlo objective over `worlds` sampled worlds per round.
    pub fn monte_carlo(
        g: &'a Graph,
        motifs: &'a MotifSet,
        target: SelectionTarget,
        worlds: usize,
        rng: RngStream,
    ) -> Self {
        assert!(worlds >= 1, "need at least one world");
        Self::build(g, motifs, target, Worlds::Sampled { count: worlds, rng })
    }

    /// Exact objective by enumerating every live-edge world.
    ///
    /// Panics when the graph exceeds the enumeration guard.
    pub fn exact(g: &'a Graph, motifs: &'a MotifSet, target: SelectionTarget) -> Self {
        let m = g.edge_count();
        assert!(
            m <= ORACLE_MAX_EDGES,
            "exact objective limited to {ORACLE_MAX_EDGES} edges"
        );
        let probs: Vec<f64> = g.edges().map(|(_, _, p)| p).collect();
        let weights = (0..1usize << m)
            .map(|mask| {
                probs
                    .iter()
                    .enumerate()
                    .map(|(e, &p)| if mask >> e & 1 == 1 { p } else { 1.0 - p })
                    .product()
            })
            .collect();
        Self::build(g, motifs, target, Worlds::Enumerated { weights })
    }

    fn build(g: &'a Graph, motifs: &'a MotifSet, target: SelectionTarget, worlds: Worlds) -> Self {
        let tau = match target {
            SelectionTarget::Motif { tau } => tau,
            SelectionTarget::NodeBenefit => None,
        };
        ProfitObjective {
            g,
            motifs,
            target,
            worlds,
            thresholds: motifs
                .motifs()
                .iter()
                .map(|m| m.effective_threshold(tau))
                .collect(),
            exec: Execution::default(),
        }
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    fn is_live(&self, round: &Round, w: usize, e: usize) -> bool {
        match self.worlds {
            Worlds::Sampled { .. } => round.live[w * round.words + e / 64] >> (e % 64) & 1 == 1,
            Worlds::Enumerated { .. } => w >> e & 1 == 1,
        }
    }

    /// Builds the state for seed set `seeds` in greedy round `round`.
    pub fn prepare(&self, seeds: &[NodeId], round: usize) -> Round {
        let g = self.g;
        let n = g.node_count();
        let m = g.edge_count();
        let (world_count, live, words, weights) = match &self.worlds {
            Worlds::Sampled { count, rng } => {
                let words = m.div_ceil(64).max(1);
                let family = rng.derive(round as u64).master_seed;
                let per_world = self.exec.map(*count, |w| {
                    let mut r = RngStream::new(family, w as u64).rng();
                    let mut bits = vec![0u64; words];
                    for e in 0..m {
                        if r.random::<f64>() < g.edge_probability(e) {
                            bits[e / 64] |= 1 << (e % 64);
                        }
                    }
                    bits
                });
                let live = per_world.concat();
                (*count, live, words, vec![1.0 / *count as f64; *count])
            }
            Worlds::Enumerated { weights } => (weights.len(), Vec::new(), 0, weights.clone()),
        };
        let mut state = Round {
            world_count,
            live,
            words,
            weights,
            reached: vec![false; world_count * n],
            overlap: vec![0; world_count * self.motifs.len()],
            in_union: vec![false; world_count * n],
            base_benefit: 0.0,
        };

        let per_world: Vec<WorldState> = self.exec.map(world_count, |w| {
            let mut reached = vec![false; n];
            let mut stack = Vec::new();
            for &s in seeds {
                if !reached[s as usize] {
                    reached[s as usize] = true;
                    stack.push(s);
                }
            }
            while let Some(u) = stack.pop() {
                for e in g.out_range(u) {
                    let v = g.edge_target(e) as usize;
                    if !reached[v] && self.is_live(&state, w, e) {
                        reached[v] = true;
                        stack.push(v as NodeId);
                    }
                }
            }
            let mut overlap = vec![0u32; self.motifs.len()];
            for (v, _) in reached.iter().enumerate().filter(|(_, &r)| r) {
                for &j in self.motifs.motifs_of(v as NodeId) {
                    overlap[j as usize] += 1;
                }
            }
            let mut in_union = vec![false; n];
            let mut benefit = 0.0;
            match self.target {
                SelectionTarget::NodeBenefit => {
                    benefit = (0..n)
                        .filter(|&v| reached[v])
                        .map(|v| g.benefits()[v])
                        .sum();
                }
                SelectionTarget::Motif { .. } => {
                    for (j, motif) in self.motifs.motifs().iter().enumerate() {
                        if overlap[j] as usize >= self.thresholds[j] {
                            match self.motifs.mode() {
                                BenefitMode::MotifLevel => benefit += motif.benefit,
                                BenefitMode::NodeUnion => {
                                    for &y in &motif.vertices {
                                        if !in_union[y as usize] {
                                            in_union[y as usize] = true;
                                            benefit += g.benefit(y);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            (reached, overlap, in_union, benefit)
        });

        let k = self.motifs.len();
        let mut base = 0.0;
        for (w, (reached, overlap, in_union, benefit)) in per_world.into_iter().enumerate() {
            state.reached[w * n..(w + 1) * n].copy_from_slice(&reached);
            state.overlap[w * k..(w + 1) * k].copy_from_slice(&overlap);
            state.in_union[w * n..(w + 1) * n].copy_from_slice(&in_union);
            base += state.weights[w] * benefit;
        }
        state.base_benefit = base;
        state
    }

    fn gain_in(&self, round: &Round, scratch: &mut GainScratch, v: NodeId) -> f64 {
        let g = self.g;
        let n = g.node_count();
        let k = self.motifs.len();
        let mut total = 0.0;
        for w in 0..round.world_count {
            let reached = &round.reached[w * n..(w + 1) * n];
            if reached[v as usize] {
                continue;
            }
            let epoch = scratch.bump();
            scratch.queue.clear();
            scratch.queue.push(v);
            scratch.mark[v as usize] = epoch;
            let mut head = 0;
            while head < scratch.queue.len() {
                let u = scratch.queue[head];
                head += 1;
                for e in g.out_range(u) {
                    let x = g.edge_target(e) as usize;
                    if !reached[x] && scratch.mark[x] != epoch && self.is_live(round, w, e) {
                        scratch.mark[x] = epoch;
                        scratch.queue.push(x as NodeId);
                    }
                }
            }
            let gained = match self.target {
                SelectionTarget::NodeBenefit => {
                    scratch.queue.iter().map(|&x| g.benefit(x)).sum::<f64>()
                }
                SelectionTarget::Motif { .. } => {
                    scratch.touched.clear();
                    for &x in &scratch.queue {
                        for &j in self.motifs.motifs_of(x) {
                            if scratch.motif_mark[j as usize] != epoch {
                                scratch.motif_mark[j as usize] = epoch;
                                scratch.delta[j as usize] = 0;
                                scratch.touched.push(j);
                            }
                            scratch.delta[j as usize] += 1;
                        }
                    }
                    let overlap = &round.overlap[w * k..(w + 1) * k];
                    let in_union = &round.in_union[w * n..(w + 1) * n];
                    let mut b = 0.0;
                    for &j in &scratch.touched {
                        let j = j as usize;
                        let thr = self.thresholds[j];
                        let before = overlap[j] as usize;
                        if before < thr && before + scratch.delta[j] as usize >= thr {
                            let motif = &self.motifs.motifs()[j];
                            match self.motifs.mode() {
                                BenefitMode::MotifLevel => b += motif.benefit,
                                BenefitMode::NodeUnion => {
                                    for &y in &motif.vertices {
                                        let y = y as usize;
                                        if !in_union[y] && scratch.union_mark[y] != epoch {
                                            scratch.union_mark[y] = epoch;
                                            b += g.benefits()[y];
                                        }
                                    }
                                }
                            }
                        }
                    }
                    b
                }
            };
            total += round.weights[w] * gained;
        }
        total
    }

    /// Expected benefit gain of adding each candidate, in candidate order.
    pub fn gains(&self, round: &Round, candidates: &[NodeId]) -> Vec<f64> {
        let n = self.g.node_count();
        let k = self.motifs.len();
        self.exec.map_init(
            candidates.len(),
            || GainScratch::new(n, k),
            |scratch, i| self.gain_in(round, scratch, candidates[i]),
        )
    }

    pub fn gain(&self, round: &Round, v: NodeId) -> f64 {
        let mut scratch = GainScratch::new(self.g.node_count(), self.motifs.len());
        self.gain_in(round, &mut scratch, v)
    }

    /// Expected profit (benefit minus seed cost) of `seeds`, on round-0 worlds.
    pub fn profit(&self, seeds: &[NodeId]) -> f64 {
        self.prepare(seeds, 0).expected_benefit() - self.g.seed_cost(seeds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffusion::exact_profit_oracle;
    use crate::motif::Motif;

    fn small() -> (Graph, MotifSet) {
        let mut g =
            Graph::from_weighted_edges(4, &[(0, 1, 0.5), (1, 2, 0.7), (0, 3, 0.2), (3, 2, 0.9)])
                .unwrap();
        g.set_cost_benefit(vec![1.0, 1.5, 2.0, 1.0], vec![1.0, 2.0, 3.0, 4.0])
            .unwrap();
        let motifs = vec![
            Motif::new(0, vec![1, 2], 2, 10.0, &g).unwrap(),
            Motif::new(1, vec![2, 3], 1, 3.0, &g).unwrap(),
            Motif::new(2, vec![0, 1, 2], 2, 5.0, &g).unwrap(),
        ];
        let set = MotifSet::new(motifs, BenefitMode::MotifLevel, 4);
        (g, set)
    }

    #[test]
    fn exact_gains_match_oracle_differences() {
        let (g, set) = small();
        for mode in [BenefitMode::MotifLevel, BenefitMode::NodeUnion] {
            let set = set.clone().with_mode(mode);
            for tau in [None, Some(1), Some(2), Some(3)] {
                let obj = ProfitObjective::exact(&g, &set, SelectionTarget::Motif { tau });
                for base in [vec![], vec![0], vec![3], vec![1, 3]] {
                    let round = obj.prepare(&base, 0);
                    let b0 =
                        exact_profit_oracle(&g, &base, &set, tau).unwrap() + g.seed_cost(&base);
                    assert!((round.expected_benefit() - b0).abs() < 1e-9);
                    for v in g.nodes() {
                        let mut with = base.clone();
                        with.push(v);
                        let b1 =
                            exact_profit_oracle(&g, &with, &set, tau).unwrap() + g.seed_cost(&with);
                        let gain = obj.gain(&round, v);
                        assert!(
                            (gain - (b1 - b0)).abs() < 1e-9,
                            "{mode:?} {tau:?} {base:?}+{v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn node_benefit_target_gain() {
        let g = Graph::from_weighted_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let mut g = g;
        g.set_cost_benefit(vec![1.0; 3], vec![1.0, 2.0, 4.0])
            .unwrap();
        let set = MotifSet::new(vec![], BenefitMode::NodeUnion, 3);
        let obj = ProfitObjective::exact(&g, &set, SelectionTarget::NodeBenefit);
        let r = obj.prepare(&[1], 0);
        assert_eq!(r.expected_benefit(), 6.0);
        assert_eq!(obj.gain(&r, 0), 1.0);
        assert_eq!(obj.gain(&r, 2), 0.0);
    }

    #[test]
    fn sampled_rounds_are_reproducible_and_mode_independent() {
        let (g, set) = small();
        let seq = ProfitObjective::monte_carlo(
            &g,
            &set,
            SelectionTarget::Motif { tau: None },
            64,
            RngStream::new(1, 2),
        )
        .with_execution(Execution::Sequential);
        let par = seq.clone().with_execution(Execution::Parallel);
        let cands: Vec<NodeId> = g.nodes().collect();
        let a = seq.gains(&seq.prepare(&[0], 3), &cands);
        let b = par.gains(&par.prepare(&[0], 3), &cands);
        assert_eq!(a, b);
        let c = seq.gains(&seq.prepare(&[0], 4), &cands);
        assert_ne!(a, c, "fresh worlds each round");
    }

    #[test]
    fn sampled_converges_to_exact() {
        let (g, set) = small();
        let exact = ProfitObjective::exact(&g, &set, SelectionTarget::Motif { tau: None });
        let mc = ProfitObjective::monte_carlo(
            &g,
            &set,
            SelectionTarget::Motif { tau: None },
            40_000,
            RngStream::new(9, 0),
        );
        let (re, rm) = (exact.prepare(&[0], 0), mc.prepare(&[0], 0));
        assert!((re.expected_benefit() - rm.expected_benefit()).abs() < 0.25);
        for v in g.nodes() {
            assert!((exact.gain(&re, v) - mc.gain(&rm, v)).abs() < 0.25);
        }
    }
}
