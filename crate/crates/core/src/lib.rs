//! Budget-constrained seed selection for motif-oriented profit under the
//! Independent Cascade model.
//!
//! The pipeline is reverse-influence sampling: estimate a spread lower bound
//! (KPT), size and draw a collection of reverse reachable sets, pick seeds by
//! cost-normalized coverage, then score the seeds with Monte Carlo cascades
//! against a set of motifs. Four reference strategies ([`baselines`]) and an
//! exact live-edge enumerator for tiny graphs ([`diffusion::exact_profit_oracle`])
//! sit alongside it.
//!
//! Inner loops (cascade trials, RR samples, candidate gain evaluation) run on
//! rayon when the `parallel` feature is on. Every random draw comes from an
//! indexed [`RngStream`], so results do not depend on thread count.

pub mod baselines;
pub mod diffusion;
pub mod exec;
pub mod graph;
pub mod harness;
pub mod motif;
pub mod ris;
pub mod rng;

pub use exec::Execution;
pub use graph::{CostBenefitModel, Graph, GraphError, NodeId, ProbabilityModel};
pub use motif::{BenefitMode, Motif, MotifSet};
pub use rng::RngStream;
