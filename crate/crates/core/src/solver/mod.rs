//! Learning-automata solvers for minimum vertex cover.
//!
//! [`solve`] drives an iteration loop: build a candidate cover, reinforce
//! the automata that built it, keep the best valid cover seen, and stop once
//! the automata owning the best cover have settled (low mean normalized
//! entropy) or the iteration cap is hit.

mod binary;
mod network;

pub use binary::solve_binary;
pub use network::{Candidate, DlaNetwork, PathStep};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::automaton::ReinforcementScheme;
use crate::graph::{CoverSet, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaAlgorithm {
    /// Edge-action automata on every vertex, candidates built by a walk.
    DlaWalk,
    /// Two-action (in / out of the cover) automaton on every vertex.
    BinaryAction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: ReinforcementScheme,
    pub max_iterations: usize,
    pub entropy_threshold: f64,
    /// Walk size cutoff; `None` means the vertex count.
    pub cover_threshold: Option<usize>,
    pub seed: u64,
    pub algorithm: LaAlgorithm,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scheme: ReinforcementScheme::default(),
            max_iterations: 1000,
            entropy_threshold: 0.05,
            cover_threshold: None,
            seed: 0,
            algorithm: LaAlgorithm::DlaWalk,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("max_iterations must be at least 1")]
    NoIterations,
    #[error("entropy threshold {0} must lie in [0, 1]")]
    EntropyThreshold(f64),
    #[error("cover threshold {threshold} must lie in [1, {n}]")]
    CoverThreshold { threshold: usize, n: usize },
}

impl RunConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self, g: &Graph) -> Result<(), ConfigError> {
        if self.max_iterations == 0 {
            return Err(ConfigError::NoIterations);
        }
        if !(0.0..=1.0).contains(&self.entropy_threshold) {
            return Err(ConfigError::EntropyThreshold(self.entropy_threshold));
        }
        if let Some(threshold) = self.cover_threshold {
            let n = g.vertex_count();
            if threshold == 0 || threshold > n {
                return Err(ConfigError::CoverThreshold { threshold, n });
            }
        }
        Ok(())
    }

    pub fn effective_cover_threshold(&self, g: &Graph) -> usize {
        self.cover_threshold.unwrap_or(g.vertex_count())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    EntropyConverged,
    IterationCap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// 1-based.
    pub iteration: usize,
    pub candidate_size: usize,
    pub candidate_valid: bool,
    pub rewarded: bool,
    /// Best cover size after this iteration.
    pub best_size: usize,
    /// Mean normalized entropy over the automata of the best cover's members.
    pub mean_entropy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_cover: CoverSet,
    /// Size of `best_cover`.
    pub cn: usize,
    /// Iteration at which a cover of size `cn` was first built; 0 when the
    /// initial all-vertices cover was never matched or beaten.
    pub lp: usize,
    pub records: Vec<IterationRecord>,
    pub stop_reason: StopReason,
}

impl RunResult {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }
}

/// Decides whether a run ends after `iteration`. Entropy convergence is
/// checked before the iteration cap, so a run that settles on its last
/// allowed iteration reports `EntropyConverged`.
pub fn should_stop(
    best_mean_entropy: Option<f64>,
    iteration: usize,
    config: &RunConfig,
) -> Option<StopReason> {
    match best_mean_entropy {
        Some(h) if h < config.entropy_threshold => Some(StopReason::EntropyConverged),
        _ if iteration >= config.max_iterations => Some(StopReason::IterationCap),
        _ => None,
    }
}

/// Tracks the best valid cover and its first-attainment iteration.
#[derive(Debug)]
pub(crate) struct BestTracker {
    pub cover: CoverSet,
    pub lp: usize,
}

impl BestTracker {
    pub fn new(g: &Graph) -> Self {
        Self {
            cover: g.non_isolated().into_iter().collect(),
            lp: 0,
        }
    }

    pub fn size(&self) -> usize {
        self.cover.len()
    }

    pub fn offer(&mut self, candidate: &CoverSet, valid: bool, iteration: usize) {
        if !valid {
            return;
        }
        let size = candidate.len();
        if size < self.size() || (size == self.size() && self.lp == 0) {
            self.cover = candidate.clone();
            self.lp = iteration;
        }
    }

    pub fn finish(self, records: Vec<IterationRecord>, stop_reason: StopReason) -> RunResult {
        RunResult {
            cn: self.cover.len(),
            best_cover: self.cover,
            lp: self.lp,
            records,
            stop_reason,
        }
    }
}

pub(crate) fn edgeless_result() -> RunResult {
    RunResult {
        best_cover: CoverSet::new(),
        cn: 0,
        lp: 0,
        records: Vec::new(),
        stop_reason: StopReason::EntropyConverged,
    }
}

/// Runs the algorithm selected by `config.algorithm`.
pub fn solve(g: &Graph, config: &RunConfig) -> Result<RunResult, ConfigError> {
    match config.algorithm {
        LaAlgorithm::DlaWalk => solve_dla(g, config),
        LaAlgorithm::BinaryAction => solve_binary(g, config),
    }
}

/// The walk-based automata network solver.
pub fn solve_dla(g: &Graph, config: &RunConfig) -> Result<RunResult, ConfigError> {
    config.validate(g)?;
    if g.edge_count() == 0 {
        return Ok(edgeless_result());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut net = DlaNetwork::build(g, config.scheme);
    let threshold = config.effective_cover_threshold(g);
    let mut best = BestTracker::new(g);
    let mut records = Vec::new();

    for iteration in 1.. {
        let cand = net.construct_candidate(&mut rng, threshold);
        let rewarded = net.update(&cand.path, cand.cover.len(), cand.valid, best.size());
        best.offer(&cand.cover, cand.valid, iteration);
        let mean_entropy = net.mean_entropy(&best.cover);
        records.push(IterationRecord {
            iteration,
            candidate_size: cand.cover.len(),
            candidate_valid: cand.valid,
            rewarded,
            best_size: best.size(),
            mean_entropy,
        });
        if let Some(reason) = should_stop(Some(mean_entropy), iteration, config) {
            log::debug!(
                "stopped after {iteration} iterations ({reason:?}), best cover size {}",
                best.size()
            );
            return Ok(best.finish(records, reason));
        }
    }
    unreachable!("the iteration cap always stops the loop")
}
