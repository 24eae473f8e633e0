//! Two-action variant: each vertex's automaton decides whether its vertex
//! is in the candidate cover.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    edgeless_result, should_stop, BestTracker, ConfigError, IterationRecord, RunConfig, RunResult,
};
use crate::automaton::Automaton;
use crate::graph::{is_vertex_cover, CoverSet, Graph};

const IN: usize = 0;

/// Every non-isolated vertex samples in/out independently each iteration.
/// A valid candidate no larger than the best so far rewards every sampled
/// action; anything else penalizes them.
pub fn solve_binary(g: &Graph, config: &RunConfig) -> Result<RunResult, ConfigError> {
    config.validate(g)?;
    if g.edge_count() == 0 {
        return Ok(edgeless_result());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let vertices = g.non_isolated();
    let mut automata: Vec<Option<Automaton>> = (0..g.vertex_count()).map(|_| None).collect();
    for &v in &vertices {
        automata[v] = Some(Automaton::new_uniform(vec![0, 1], config.scheme).expect("two actions"));
    }
    let threshold = config.effective_cover_threshold(g);
    let mut best = BestTracker::new(g);
    let mut records = Vec::new();
    let mut choices = vec![IN; vertices.len()];

    for iteration in 1.. {
        for (slot, &v) in choices.iter_mut().zip(&vertices) {
            let aut = automata[v]
                .as_ref()
                .expect("non-isolated vertices carry automata");
            *slot = aut
                .select_action(&mut rng, None)
                .expect("unmasked vectors have mass");
        }
        let candidate: CoverSet = vertices
            .iter()
            .zip(&choices)
            .filter_map(|(&v, &c)| (c == IN).then_some(v))
            .collect();
        let valid = candidate.len() <= threshold && is_vertex_cover(g, &candidate);
        let rewarded = valid && candidate.len() <= best.size();
        for (&v, &c) in vertices.iter().zip(&choices) {
            let aut = automata[v]
                .as_mut()
                .expect("non-isolated vertices carry automata");
            let outcome = if rewarded {
                aut.reward(c)
            } else {
                aut.penalize(c)
            };
            outcome.expect("sampled actions are in range");
        }
        best.offer(&candidate, valid, iteration);

        let (sum, count) = best
            .cover
            .iter()
            .filter_map(|v| automata[v].as_ref())
            .fold((0.0, 0usize), |(s, c), aut| {
                (s + aut.normalized_entropy(), c + 1)
            });
        let mean_entropy = if count == 0 { 0.0 } else { sum / count as f64 };

        records.push(IterationRecord {
            iteration,
            candidate_size: candidate.len(),
            candidate_valid: valid,
            rewarded,
            best_size: best.size(),
            mean_entropy,
        });
        if let Some(reason) = should_stop(Some(mean_entropy), iteration, config) {
            return Ok(best.finish(records, reason));
        }
    }
    unreachable!("the iteration cap always stops the loop")
}
