//! Classical comparators: max-degree greedy, the random maximal-matching
//! 2-approximation, and an exact branch-and-bound solver for small graphs.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::{CoverSet, EdgeId, Graph};

/// Default cap on non-isolated vertices for [`exact_min_cover`].
pub const DEFAULT_EXACT_LIMIT: usize = 25;

/// The bitset search handles at most this many non-isolated vertices,
/// whatever limit the caller asks for.
pub const EXACT_HARD_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("exact search refused: {vertices} non-isolated vertices exceed the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

/// Repeatedly takes a vertex of maximum residual degree (lowest id on ties)
/// and deletes its edges until none remain.
pub fn greedy_max_degree(g: &Graph) -> CoverSet {
    let mut degree = g.degrees();
    let mut removed = vec![false; g.vertex_count()];
    let mut remaining = g.edge_count();
    let mut cover = CoverSet::new();
    while remaining > 0 {
        let (v, _) = degree
            .iter()
            .enumerate()
            .filter(|&(v, _)| !removed[v])
            .fold(
                (usize::MAX, 0),
                |best, (v, &d)| if d > best.1 { (v, d) } else { best },
            );
        removed[v] = true;
        cover.insert(v);
        for &(w, _) in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                remaining -= 1;
            }
        }
        degree[v] = 0;
    }
    cover
}

/// A maximal matching built by repeatedly drawing a uniformly random edge
/// among those with both endpoints still unmatched.
pub fn random_maximal_matching<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Vec<EdgeId> {
    // Scanning a uniform permutation and keeping the first still-free edge
    // draws each pick uniformly from the remaining free edges.
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let mut matched = vec![false; g.vertex_count()];
    let mut picked = Vec::new();
    for e in order {
        let (u, v) = g.edge(e);
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            picked.push(e);
        }
    }
    picked
}

/// Both endpoints of every edge of a random maximal matching; at most twice
/// the optimum.
pub fn two_approx_random_matching<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> CoverSet {
    random_maximal_matching(g, rng)
        .into_iter()
        .flat_map(|e| {
            let (u, v) = g.edge(e);
            [u, v]
        })
        .collect()
}

/// Minimum vertex cover by branch and bound. Branches on a maximum-degree
/// vertex `v` (take `v`, or take all of its neighbors) and prunes with a
/// greedy maximal matching as lower bound.
pub fn exact_min_cover(g: &Graph, size_limit: usize) -> Result<CoverSet, ExactError> {
    let vertices = g.non_isolated();
    let limit = size_limit.min(EXACT_HARD_LIMIT);
    if vertices.len() > limit {
        return Err(ExactError::TooLarge {
            vertices: vertices.len(),
            limit,
        });
    }
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let adj: Vec<u128> = vertices
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .fold(0u128, |mask, &(w, _)| mask | bit(index[w]))
        })
        .collect();

    let greedy = greedy_max_degree(g);
    let mut search = Search {
        adj: &adj,
        best_size: greedy.len(),
        best: greedy.iter().fold(0u128, |mask, v| mask | bit(index[v])),
    };
    let all = adj
        .iter()
        .enumerate()
        .fold(0u128, |mask, (i, _)| mask | bit(i));
    search.run(all, 0);

    Ok((0..vertices.len())
        .filter(|&i| search.best & bit(i) != 0)
        .map(|i| vertices[i])
        .collect())
}

fn bit(i: usize) -> u128 {
    1u128 << i
}

struct Search<'a> {
    adj: &'a [u128],
    best_size: usize,
    best: u128,
}

impl Search<'_> {
    fn run(&mut self, alive: u128, chosen: u128) {
        let taken = chosen.count_ones() as usize;
        let Some((v, _)) = self.max_degree(alive) else {
            if taken < self.best_size {
                self.best_size = taken;
                self.best = chosen;
            }
            return;
        };
        if taken + self.matching_bound(alive) >= self.best_size {
            return;
        }
        let without_v = alive & !bit(v);
        self.run(without_v, chosen | bit(v));
        let neighbors = self.adj[v] & alive;
        self.run(without_v & !neighbors, chosen | neighbors);
    }

    /// Highest residual degree vertex, `None` once no edge is left.
    fn max_degree(&self, alive: u128) -> Option<(usize, u32)> {
        let mut best: Option<(usize, u32)> = None;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & alive).count_ones();
            if d > 0 && best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        best
    }

    fn matching_bound(&self, alive: u128) -> usize {
        let mut free = alive;
        let mut size = 0;
        let mut rest = alive;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if free & bit(u) == 0 {
                continue;
            }
            let partners = self.adj[u] & free;
            if partners != 0 {
                let w = partners.trailing_zeros() as usize;
                free &= !(bit(u) | bit(w));
                rest &= !bit(w);
                size += 1;
            }
        }
        size
    }
}
