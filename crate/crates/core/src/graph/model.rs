//! Edge-probability and node cost/benefit assignment.

use rand::Rng;

use super::{Graph, GraphError};
use crate::rng::RngStream;

pub const TRIVALENCY_LEVELS: [f64; 3] = [0.1, 0.01, 0.001];

/// How edge influence probabilities are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbabilityModel {
    /// Each edge independently and uniformly from {0.1, 0.01, 0.001}.
    Trivalency { seed: u64 },
    /// `p(u, v) = 1 / deg_in(v)`.
    WeightedCascade,
}

/// `C(v) = base_cost + cost_slope * deg_out(v)`, `b(v) = benefit_scale * C(v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBenefitModel {
    pub base_cost: f64,
    pub cost_slope: f64,
    pub benefit_scale: f64,
}

impl Default for CostBenefitModel {
    fn default() -> Self {
        CostBenefitModel {
            base_cost: 1.0,
            cost_slope: 1.0,
            benefit_scale: 1.0,
        }
    }
}

impl CostBenefitModel {
    pub fn validate(&self) -> Result<(), GraphError> {
        if !(self.base_cost > 0.0 && self.base_cost.is_finite()) {
            return Err(GraphError::InvalidCostModel(format!(
                "base_cost must be positive, got {}",
                self.base_cost
            )));
        }
        if !(self.cost_slope >= 0.0 && self.cost_slope.is_finite()) {
            return Err(GraphError::InvalidCostModel(format!(
                "cost_slope must be non-negative, got {}",
                self.cost_slope
            )));
        }
        if !(self.benefit_scale >= 0.0 && self.benefit_scale.is_finite()) {
            return Err(GraphError::InvalidCostModel(format!(
                "benefit_scale must be non-negative, got {}",
                self.benefit_scale
            )));
        }
        Ok(())
    }

    pub fn cost_for_degree(&self, out_degree: usize) -> f64 {
        self.base_cost + self.cost_slope * out_degree as f64
    }
}

impl Graph {
    /// Assigns every edge a probability. Trivalency draws in edge-id order
    /// from the model's seed, so it is reproducible.
    pub fn apply_probability_model(mut self, model: ProbabilityModel) -> Graph {
        let probs: Vec<f64> = match model {
            ProbabilityModel::Trivalency { seed } => {
                let mut rng = RngStream::new(seed, 0).rng();
                (0..self.edge_count())
                    .map(|_| TRIVALENCY_LEVELS[rng.random_range(0..TRIVALENCY_LEVELS.len())])
                    .collect()
            }
            ProbabilityModel::WeightedCascade => (0..self.edge_count())
                .map(|e| 1.0 / self.in_degree(self.edge_target(e)) as f64)
                .collect(),
        };
        self.set_probabilities(&probs)
            .expect("model probabilities lie in (0, 1]");
        self
    }

    pub fn apply_cost_benefit(mut self, model: CostBenefitModel) -> Result<Graph, GraphError> {
        model.validate()?;
        let cost: Vec<f64> = self
            .nodes()
            .map(|v| model.cost_for_degree(self.out_degree(v)))
            .collect();
        let benefit = cost.iter().map(|c| model.benefit_scale * c).collect();
        self.set_cost_benefit(cost, benefit)?;
        Ok(self)
    }
}
