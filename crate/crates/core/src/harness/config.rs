//! Experiment configuration and its flat `key=value` file form.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::baselines::DegreeKind;
use crate::graph::{CostBenefitModel, ProbabilityModel};
use crate::motif::BenefitMode;
use crate::ris::{KptSizeMode, RootDistribution};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("bad value {value:?} for {key}: {msg}")]
    BadValue {
        key: String,
        value: String,
        msg: String,
    },
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("missing required setting {0}")]
    Missing(&'static str),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ris,
    Random,
    HighDegree,
    Celf,
    SimpleGreedy,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Ris,
        Algorithm::Random,
        Algorithm::HighDegree,
        Algorithm::Celf,
        Algorithm::SimpleGreedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ris => "RIS",
            Algorithm::Random => "Random",
            Algorithm::HighDegree => "HighDegree",
            Algorithm::Celf => "CELF",
            Algorithm::SimpleGreedy => "SimpleGreedy",
        }
    }

    /// Stable tag for RNG stream derivation.
    pub(crate) fn tag(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s
            .trim()
            .to_ascii_lowercase()
            .replace(['_', '-'], "")
            .as_str()
        {
            "ris" => Ok(Algorithm::Ris),
            "random" => Ok(Algorithm::Random),
            "highdegree" | "degree" => Ok(Algorithm::HighDegree),
            "celf" => Ok(Algorithm::Celf),
            "simplegreedy" | "greedy" => Ok(Algorithm::SimpleGreedy),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MotifSpec {
    Sample { size: usize, count: usize },
    File(PathBuf),
}

/// What the CELF and simple-greedy baselines optimize during selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineObjective {
    /// Motif profit at the smallest threshold in the grid.
    Motif,
    /// Node-benefit profit of all activated nodes.
    NodeBenefit,
}

/// Probability setting before a seed is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbabilityKind {
    Trivalency,
    WeightedCascade,
}

impl ProbabilityKind {
    pub fn model(self, master_seed: u64) -> ProbabilityModel {
        match self {
            ProbabilityKind::Trivalency => ProbabilityModel::Trivalency { seed: master_seed },
            ProbabilityKind::WeightedCascade => ProbabilityModel::WeightedCascade,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProbabilityKind::Trivalency => "trivalency",
            ProbabilityKind::WeightedCascade => "wc",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph_path: Option<PathBuf>,
    pub directed: bool,
    pub probability: ProbabilityKind,
    pub cost_benefit: CostBenefitModel,
    pub budgets: Vec<f64>,
    pub thresholds: Vec<usize>,
    pub motifs: MotifSpec,
    pub algorithms: Vec<Algorithm>,
    pub sims: usize,
    pub epsilon: f64,
    pub ell: f64,
    pub master_seed: u64,
    pub benefit_mode: BenefitMode,
    /// Worlds per greedy round for CELF and simple greedy.
    pub greedy_sims: usize,
    pub baseline_objective: BaselineObjective,
    pub degree: DegreeKind,
    pub roots: RootDistribution,
    pub kpt_size: KptSizeMode,
    /// Generate one RR collection at the largest θ and reuse it for every budget.
    pub reuse_rr: bool,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            graph_path: None,
            directed: true,
            probability: ProbabilityKind::Trivalency,
            cost_benefit: CostBenefitModel::default(),
            budgets: vec![10.0, 20.0, 30.0, 40.0, 50.0],
            thresholds: vec![2, 3],
            motifs: MotifSpec::Sample {
                size: 3,
                count: 100,
            },
            algorithms: Algorithm::ALL.to_vec(),
            sims: 10_000,
            epsilon: 0.3,
            ell: 1.0,
            master_seed: 0,
            benefit_mode: BenefitMode::NodeUnion,
            greedy_sims: 100,
            baseline_objective: BaselineObjective::Motif,
            degree: DegreeKind::Out,
            roots: RootDistribution::Importance,
            kpt_size: KptSizeMode::Members,
            reuse_rr: false,
            out: None,
        }
    }
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| scalar(key, s))
        .collect()
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e: T::Err| ConfigError::BadValue {
            key: key.to_owned(),
            value: value.to_owned(),
            msg: e.to_string(),
        })
}

fn choice<T>(key: &str, value: &str, options: &[(&str, T)]) -> Result<T, ConfigError>
where
    T: Copy,
{
    let v = value.trim().to_ascii_lowercase();
    options
        .iter()
        .find(|(name, _)| *name == v)
        .map(|&(_, t)| t)
        .ok_or_else(|| ConfigError::BadValue {
            key: key.to_owned(),
            value: value.to_owned(),
            msg: format!(
                "expected one of {}",
                options
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join("|")
            ),
        })
}

impl ExperimentConfig {
    /// Applies one setting. Keys are the long CLI flag names without dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.trim();
        match key {
            "graph" => self.graph_path = Some(PathBuf::from(value.trim())),
            "undirected" => self.directed = !scalar::<bool>(key, value)?,
            "prob" => {
                self.probability = choice(
                    key,
                    value,
                    &[
                        ("trivalency", ProbabilityKind::Trivalency),
                        ("wc", ProbabilityKind::WeightedCascade),
                        ("weighted-cascade", ProbabilityKind::WeightedCascade),
                    ],
                )?
            }
            "base-cost" => self.cost_benefit.base_cost = scalar(key, value)?,
            "cost-slope" => self.cost_benefit.cost_slope = scalar(key, value)?,
            "benefit-scale" => self.cost_benefit.benefit_scale = scalar(key, value)?,
            "budgets" => self.budgets = list(key, value)?,
            "thresholds" => self.thresholds = list(key, value)?,
            "motif-size" => {
                let size = scalar(key, value)?;
                self.motifs = match self.motifs {
                    MotifSpec::Sample { count, .. } => MotifSpec::Sample { size, count },
                    MotifSpec::File(_) => MotifSpec::Sample { size, count: 100 },
                };
            }
            "motif-count" => {
                let count = scalar(key, value)?;
                self.motifs = match self.motifs {
                    MotifSpec::Sample { size, .. } => MotifSpec::Sample { size, count },
                    MotifSpec::File(_) => MotifSpec::Sample { size: 3, count },
                };
            }
            "motifs-file" => self.motifs = MotifSpec::File(PathBuf::from(value.trim())),
            "algos" => self.algorithms = list(key, value)?,
            "sims" => self.sims = scalar(key, value)?,
            "epsilon" => self.epsilon = scalar(key, value)?,
            "ell" => self.ell = scalar(key, value)?,
            "seed" => self.master_seed = scalar(key, value)?,
            "benefit-mode" => {
                self.benefit_mode = choice(
                    key,
                    value,
                    &[
                        ("motif", BenefitMode::MotifLevel),
                        ("node-union", BenefitMode::NodeUnion),
                    ],
                )?
            }
            "greedy-sims" => self.greedy_sims = scalar(key, value)?,
            "baseline-objective" => {
                self.baseline_objective = choice(
                    key,
                    value,
                    &[
                        ("motif", BaselineObjective::Motif),
                        ("node-benefit", BaselineObjective::NodeBenefit),
                    ],
                )?
            }
            "degree" => {
                self.degree = choice(
                    key,
                    value,
                    &[("out", DegreeKind::Out), ("total", DegreeKind::Total)],
                )?
            }
            "roots" => {
                self.roots = choice(
                    key,
                    value,
                    &[
                        ("importance", RootDistribution::Importance),
                        ("uniform", RootDistribution::Uniform),
                    ],
                )?
            }
            "kpt-size" => {
                self.kpt_size = choice(
                    key,
                    value,
                    &[
                        ("members", KptSizeMode::Members),
                        ("width", KptSizeMode::Width),
                    ],
                )?
            }
            "reuse-rr" => self.reuse_rr = scalar(key, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            other => return Err(ConfigError::UnknownKey(other.to_owned())),
        }
        Ok(())
    }

    /// Applies every `key=value` line of a config file on top of `self`.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_file_text(text: &str) -> Result<Self, ConfigError> {
        let mut c = ExperimentConfig::default();
        c.apply_file_text(text)?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        if self.budgets.is_empty() {
            return invalid("at least one budget required".into());
        }
        if let Some(b) = self.budgets.iter().find(|&&b| !(b > 0.0 && b.is_finite())) {
            return invalid(format!("budget {b} must be positive"));
        }
        if self.thresholds.is_empty() || self.thresholds.contains(&0) {
            return invalid("thresholds must be non-empty and >= 1".into());
        }
        if self.algorithms.is_empty() {
            return invalid("at least one algorithm required".into());
        }
        if self.sims == 0 || self.greedy_sims == 0 {
            return invalid("simulation counts must be >= 1".into());
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return invalid(format!("epsilon {} outside (0, 1)", self.epsilon));
        }
        if let MotifSpec::Sample { size, count } = self.motifs {
            if size < 2 || count == 0 {
                return invalid("motif size must be >= 2 and count >= 1".into());
            }
        }
        self.cost_benefit
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn motif_size(&self) -> Option<usize> {
        match self.motifs {
            MotifSpec::Sample { size, .. } => Some(size),
            MotifSpec::File(_) => None,
        }
    }
}
