//! Execution order of the multi-agent greedy algorithm on communication graphs.
//!
//! Agents sit on the vertices of a communication graph and run the greedy
//! algorithm in the order given by an [`Ordering`]; each agent's decision must
//! reach the next agent over shortest paths, one hop per time step. This crate
//! evaluates that communication time, searches for the best and worst
//! orderings, simulates the depth-first token traversal that orders agents
//! while running the greedy step, and checks the greedy's value on coverage
//! objectives.

pub mod comm_time;
pub mod dfs;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod ordering;
pub mod submodular;

pub use comm_time::{
    best_ordering_exact, best_ordering_spanning_walk, comm_time, dn_best_ordering,
    min_spanning_walk, tree_tmin_closed_form, worst_directed_cycle_ordering, worst_line_ordering,
    worst_ordering_exact, Method, OrderingReport, TimeBreakdown,
};
pub use dfs::{run_algorithm1, run_ordering_only, verify_prop1_bound, RunTrace, Termination};
pub use error::{Error, Result};
pub use graph::{Graph, Path, Vertex, Walk};
pub use ordering::{random_ordering, Ordering};
pub use submodular::{
    brute_force_opt, check_submodular_monotone, evaluate_w, greedy_execute, CoverageObjective,
    ElementSet, JointAction, SetFunction, SubmodularProblem,
};
