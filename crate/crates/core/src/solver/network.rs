//! The automata network and the per-iteration candidate walk.
//!
//! Every non-isolated vertex owns an automaton whose actions are its incident
//! edges. Choosing an action activates the automaton at the far end of that
//! edge. A walk grows a candidate cover:
//!
//! 1. A start vertex, drawn uniformly from the non-isolated vertices, joins
//!    the candidate. Its neighbors enter the neighborhood set.
//! 2. Every activated automaton selects an action among edges leading to
//!    vertices that are neither in the candidate nor already relayed in this
//!    walk. The choice is appended to the path.
//! 3. The walk ends once no edge is left uncovered (valid) or the candidate
//!    reaches the size cutoff (invalid).
//! 4. The activated far-end vertex relays if it is in the neighborhood set
//!    (it is already adjacent to the candidate) and joins the candidate
//!    otherwise. A relay does not join; it only passes activation on.
//! 5. When no action is admissible the walk jumps to an endpoint of an
//!    uncovered edge, drawn uniformly, which joins the candidate. No path
//!    entry is recorded for a jump.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{Automaton, ReinforcementScheme};
use crate::graph::{CoverSet, Graph, VertexId};

/// One automaton decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStep {
    pub vertex: VertexId,
    /// Index of the chosen action in the vertex's automaton.
    pub action: usize,
    /// Actions that were admissible when the choice was made, ascending.
    pub admissible: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DlaNetwork<'g> {
    graph: &'g Graph,
    automata: Vec<Option<Automaton>>,
    active: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub cover: CoverSet,
    pub path: Vec<PathStep>,
    pub valid: bool,
}

impl<'g> DlaNetwork<'g> {
    /// One uniform automaton per vertex of degree at least one, labelled with
    /// that vertex's incident edge ids in adjacency order.
    pub fn build(graph: &'g Graph, scheme: ReinforcementScheme) -> Self {
        let automata = (0..graph.vertex_count())
            .map(|v| {
                let labels = graph.neighbors(v).iter().map(|&(_, e)| e).collect();
                Automaton::new_uniform(labels, scheme).ok()
            })
            .collect();
        Self {
            graph,
            automata,
            active: graph.non_isolated(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn automaton(&self, v: VertexId) -> Option<&Automaton> {
        self.automata.get(v).and_then(Option::as_ref)
    }

    pub fn automaton_count(&self) -> usize {
        self.active.len()
    }

    /// Vertices carrying an automaton, ascending.
    pub fn non_isolated(&self) -> &[VertexId] {
        &self.active
    }

    /// Mean normalized entropy over the automata of `cover`'s members.
    /// Single-action automata have nothing to learn and are skipped, as are
    /// members without an automaton. If no member qualifies the mean is taken
    /// over every multi-action automaton in the network, and is 0 when there
    /// is none.
    pub fn mean_entropy(&self, cover: &CoverSet) -> f64 {
        let learning = |aut: &&Automaton| aut.actions() > 1;
        mean(
            cover
                .iter()
                .filter_map(|v| self.automaton(v))
                .filter(learning),
        )
        .or_else(|| mean(self.automata.iter().flatten().filter(learning)))
        .unwrap_or(0.0)
    }

    /// Runs one walk from a uniformly drawn start vertex.
    pub fn construct_candidate<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        cover_threshold: usize,
    ) -> Candidate {
        match self.active.choose(rng) {
            Some(&start) => self.construct_candidate_from(rng, cover_threshold, start),
            None => Candidate {
                cover: CoverSet::new(),
                path: Vec::new(),
                valid: true,
            },
        }
    }

    /// Runs one walk from `start`.
    pub fn construct_candidate_from<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        cover_threshold: usize,
        start: VertexId,
    ) -> Candidate {
        let g = self.graph;
        let n = g.vertex_count();
        let mut in_cover = vec![false; n];
        let mut neighborhood = vec![false; n];
        let mut relayed = vec![false; n];
        let mut cover_size = 0;
        let mut uncovered = g.edge_count();
        let mut path = Vec::new();

        if uncovered == 0 {
            return Candidate {
                cover: CoverSet::new(),
                path,
                valid: true,
            };
        }

        let mut current = start;
        let mut joins = true;
        loop {
            if joins {
                in_cover[current] = true;
                cover_size += 1;
                for &(w, _) in g.neighbors(current) {
                    neighborhood[w] = true;
                    if !in_cover[w] {
                        uncovered -= 1;
                    }
                }
            } else {
                relayed[current] = true;
            }

            let choice = self.automata[current].as_ref().and_then(|aut| {
                let admissible: Vec<usize> = (0..aut.actions())
                    .filter(|&i| {
                        let w = g.opposite(aut.label(i), current);
                        !in_cover[w] && !relayed[w]
                    })
                    .collect();
                let action = aut.select_action(rng, Some(&admissible)).ok()?;
                Some((action, admissible))
            });
            let choice = choice.map(|(action, admissible)| {
                path.push(PathStep {
                    vertex: current,
                    action,
                    admissible,
                });
                action
            });

            if uncovered == 0 || cover_size >= cover_threshold {
                return Candidate {
                    cover: CoverSet::from_mask(&in_cover),
                    path,
                    valid: uncovered == 0,
                };
            }

            match choice {
                Some(action) => {
                    let aut = self.automata[current]
                        .as_ref()
                        .expect("a choice implies an automaton");
                    current = g.opposite(aut.label(action), current);
                    joins = !neighborhood[current];
                }
                None => {
                    let endpoints: Vec<VertexId> = g
                        .edges()
                        .iter()
                        .filter(|&&(u, v)| !in_cover[u] && !in_cover[v])
                        .flat_map(|&(u, v)| [u, v])
                        .collect();
                    current = *endpoints.choose(rng).expect("uncovered edges remain");
                    joins = true;
                }
            }
        }
    }

    /// Rewards every path step if the candidate is valid and no larger than
    /// the best cover so far (ties included); penalizes every step otherwise.
    /// Each update is restricted to the actions that were admissible at that
    /// step, so a forced move leaves its automaton unchanged.
    /// Returns whether the path was rewarded.
    pub fn update(
        &mut self,
        path: &[PathStep],
        candidate_size: usize,
        candidate_valid: bool,
        best_size: usize,
    ) -> bool {
        let rewarded = candidate_valid && candidate_size <= best_size;
        for step in path {
            let aut = self.automata[step.vertex]
                .as_mut()
                .expect("path steps reference vertices with automata");
            let outcome = if rewarded {
                aut.reward_within(step.action, &step.admissible)
            } else {
                aut.penalize_within(step.action, &step.admissible)
            };
            outcome.expect("path steps reference existing actions");
        }
        rewarded
    }
}

fn mean<'a>(automata: impl Iterator<Item = &'a Automaton>) -> Option<f64> {
    let (sum, count) = automata.fold((0.0, 0usize), |(s, c), aut| {
        (s + aut.normalized_entropy(), c + 1)
    });
    (count > 0).then(|| sum / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    fn step(vertex: VertexId, action: usize, admissible: &[usize]) -> PathStep {
        PathStep {
            vertex,
            action,
            admissible: admissible.to_vec(),
        }
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn network_shapes() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let net = DlaNetwork::build(&tri, ReinforcementScheme::default());
        assert_eq!(net.automaton_count(), 3);
        assert!((0..3).all(|v| net.automaton(v).unwrap().actions() == 2));

        let star = Graph::new(5, (1..5).map(|v| (0, v))).unwrap();
        let net = DlaNetwork::build(&star, ReinforcementScheme::default());
        assert_eq!(net.automaton(0).unwrap().actions(), 4);
        assert_eq!(net.automaton(0).unwrap().labels(), &[0, 1, 2, 3]);
        assert!((1..5).all(|v| net.automaton(v).unwrap().actions() == 1));

        let lonely = Graph::new(3, [(0, 1)]).unwrap();
        let net = DlaNetwork::build(&lonely, ReinforcementScheme::default());
        assert!(net.automaton(2).is_none());
        assert_eq!(net.non_isolated(), &[0, 1]);
    }

    #[test]
    fn single_edge_walk_stops_at_start() {
        let g = path(2);
        let net = DlaNetwork::build(&g, ReinforcementScheme::default());
        let cand = net.construct_candidate_from(&mut rng(), 2, 0);
        assert_eq!(cand.cover.to_vec(), vec![0]);
        assert_eq!(cand.path, vec![step(0, 0, &[0])]);
        assert!(cand.valid);
    }

    #[test]
    fn walk_on_three_vertex_path_relays_through_middle() {
        // 0 joins; its only edge leads to 1, which is adjacent to 0 and so
        // relays; 1 can only move on to 2, which joins and covers {1,2}.
        let g = path(3);
        let net = DlaNetwork::build(&g, ReinforcementScheme::default());
        let cand = net.construct_candidate_from(&mut rng(), 3, 0);
        assert_eq!(cand.cover.to_vec(), vec![0, 2]);
        assert_eq!(cand.path, vec![step(0, 0, &[0]), step(1, 1, &[1])]);
        assert!(cand.valid);
    }

    #[test]
    fn walk_from_middle_of_path() {
        let g = path(3);
        let net = DlaNetwork::build(&g, ReinforcementScheme::default());
        let cand = net.construct_candidate_from(&mut rng(), 3, 1);
        assert_eq!(cand.cover.to_vec(), vec![1]);
        assert_eq!(cand.path.len(), 1);
        assert_eq!(cand.path[0].vertex, 1);
        assert_eq!(cand.path[0].admissible, vec![0, 1]);
        assert!(cand.valid);
    }

    #[test]
    fn threshold_cutoff_marks_invalid() {
        let g = path(5);
        let net = DlaNetwork::build(&g, ReinforcementScheme::default());
        let mut r = rng();
        for _ in 0..50 {
            let cand = net.construct_candidate(&mut r, 1);
            assert_eq!(cand.cover.len(), 1);
            assert!(!cand.valid);
        }
    }

    #[test]
    fn edgeless_walk_is_empty_and_valid() {
        let g = Graph::empty(3);
        let net = DlaNetwork::build(&g, ReinforcementScheme::default());
        let cand = net.construct_candidate(&mut rng(), 3);
        assert!(cand.cover.is_empty());
        assert!(cand.path.is_empty());
        assert!(cand.valid);
    }

    #[test]
    fn triangle_walk_jumps_when_stuck() {
        // 0 joins, relays through 1 and 2 until no admissible move remains,
        // then jumps to an endpoint of the only uncovered edge {1,2}.
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let net = DlaNetwork::build(&g, ReinforcementScheme::default());
        let mut r = rng();
        for _ in 0..50 {
            let cand = net.construct_candidate_from(&mut r, 3, 0);
            assert!(cand.valid);
            assert_eq!(cand.cover.len(), 2);
            assert!(cand.cover.contains(0));
        }
    }

    #[test]
    fn update_rewards_ties_and_penalizes_failures() {
        let g = path(3);
        let scheme = ReinforcementScheme::reward_penalty(0.5).unwrap();
        let mut net = DlaNetwork::build(&g, scheme);
        let steps = vec![step(1, 0, &[0, 1])];
        assert!(net.update(&steps, 3, true, 5));
        assert_eq!(net.automaton(1).unwrap().probabilities(), &[0.75, 0.25]);
        assert!(net.update(&steps, 2, true, 2));
        assert_eq!(net.automaton(1).unwrap().probabilities(), &[0.875, 0.125]);
        assert!(!net.update(&steps, 1, false, 2));
        assert_eq!(net.automaton(1).unwrap().probabilities(), &[0.4375, 0.5625]);
        assert!(!net.update(&steps, 3, true, 2));
    }

    #[test]
    fn forced_moves_leave_automata_unchanged() {
        let g = path(3);
        let mut net = DlaNetwork::build(&g, ReinforcementScheme::default());
        assert!(net.update(&[step(1, 1, &[1])], 2, true, 2));
        assert_eq!(net.automaton(1).unwrap().probabilities(), &[0.5, 0.5]);
    }

    #[test]
    fn entropy_skips_single_action_automata() {
        let star = Graph::new(4, (1..4).map(|v| (0, v))).unwrap();
        let mut net = DlaNetwork::build(&star, ReinforcementScheme::default());
        let leaves: CoverSet = (1..4).collect();
        // only the center can learn, and it is still uniform
        assert_eq!(net.mean_entropy(&leaves), 1.0);
        for _ in 0..100 {
            net.update(&[step(0, 2, &[0, 1, 2])], 1, true, 1);
        }
        let center: CoverSet = [0].into_iter().collect();
        assert!(net.mean_entropy(&center) < 1e-9);
        let matching = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let net = DlaNetwork::build(&matching, ReinforcementScheme::default());
        assert_eq!(net.mean_entropy(&[0, 2].into_iter().collect()), 0.0);
    }

    #[test]
    fn inaction_ignores_failures() {
        let g = path(3);
        let mut net = DlaNetwork::build(&g, ReinforcementScheme::default());
        assert!(!net.update(&[step(1, 0, &[0, 1])], 3, false, 2));
        assert_eq!(net.automaton(1).unwrap().probabilities(), &[0.5, 0.5]);
    }
}
