//! Minimum vertex cover with a network of learning automata.
//!
//! Each vertex owns a variable-structure learning automaton whose actions
//! are its incident edges. Per iteration the network walks the graph to
//! assemble a candidate cover, reinforces the choices that produced a cover
//! no larger than the best so far, and stops once the automata owning the
//! best cover have settled. Greedy, matching-based and exact solvers are
//! included for comparison, together with a DIMACS reader and a multi-seed
//! benchmark harness.

pub mod automaton;
pub mod baselines;
pub mod bench;
pub mod dimacs;
pub mod graph;
pub mod solver;

pub use automaton::{Automaton, ReinforcementScheme, SchemeKind};
pub use graph::{is_vertex_cover, uncovered_edges, CoverSet, Graph};
pub use solver::{solve, LaAlgorithm, RunConfig, RunResult, StopReason};
