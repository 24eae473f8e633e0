//! Immutable undirected simple graphs and vertex-cover predicates.
//!
//! Vertex ids are dense and 0-based. Every edge gets an id in first-seen
//! order; adjacency lists carry `(neighbor, edge id)` pairs so that an
//! automaton's actions can be labelled by the edges incident to its vertex.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(VertexId),
    #[error("edge ({u}, {v}) has an endpoint outside [0, {n})")]
    EndpointOutOfRange { u: VertexId, v: VertexId, n: usize },
    #[error("cover member {member} is not a vertex of a graph with {n} vertices")]
    CoverMemberOutOfRange { member: VertexId, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    duplicates_dropped: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Pairs repeated in either orientation
    /// collapse to a single edge; the number of collapsed pairs is kept in
    /// [`Graph::duplicates_dropped`].
    pub fn new<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        let mut duplicates_dropped = 0;
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if seen.contains_key(&key) {
                duplicates_dropped += 1;
                continue;
            }
            let id = edges.len();
            seen.insert(key, id);
            edges.push(key);
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Ok(Self {
            n,
            edges,
            adjacency,
            duplicates_dropped,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            duplicates_dropped: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` endpoint pairs, indexed by edge id.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_isolated(&self, v: VertexId) -> bool {
        self.adjacency[v].is_empty()
    }

    /// Vertices with at least one incident edge, ascending.
    pub fn non_isolated(&self) -> Vec<VertexId> {
        (0..self.n).filter(|&v| !self.is_isolated(v)).collect()
    }

    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.adjacency[u].iter().any(|&(w, _)| w == v)
    }
}

/// A set of vertex ids, judged against a graph by [`is_vertex_cover`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CoverSet {
    members: BTreeSet<VertexId>,
}

impl CoverSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all_vertices(g: &Graph) -> Self {
        (0..g.vertex_count()).collect()
    }

    /// Builds a cover from a membership mask indexed by vertex id.
    pub fn from_mask(mask: &[bool]) -> Self {
        mask.iter()
            .enumerate()
            .filter_map(|(v, &inside)| inside.then_some(v))
            .collect()
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.members.insert(v)
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        self.members.remove(&v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    /// Checks that every member is a vertex of `g`.
    pub fn check(&self, g: &Graph) -> Result<(), GraphError> {
        match self.members.iter().next_back() {
            Some(&member) if member >= g.vertex_count() => Err(GraphError::CoverMemberOutOfRange {
                member,
                n: g.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter().filter(|&v| v < n) {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<VertexId> for CoverSet {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

impl std::fmt::Display for CoverSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// True iff every edge of `g` has at least one endpoint in `c`.
pub fn is_vertex_cover(g: &Graph, c: &CoverSet) -> bool {
    let mask = c.mask(g.vertex_count());
    g.edges().iter().all(|&(u, v)| mask[u] || mask[v])
}

/// Ids of the edges with neither endpoint in `c`, ascending.
pub fn uncovered_edges(g: &Graph, c: &CoverSet) -> Vec<EdgeId> {
    let mask = c.mask(g.vertex_count());
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(_, &(u, v))| !mask[u] && !mask[v])
        .map(|(e, _)| e)
        .collect()
}
