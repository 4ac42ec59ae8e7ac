//! Stability, criticality and unfrozenness of the graph numbers α, β, χ and ω:
//! exact solvers, per-element analysis, gadgets, reductions and a law harness.

pub mod dimacs;
pub mod graph;

pub use dimacs::{parse_dimacs, write_dimacs, write_dimacs_with_comments, DimacsError};
pub use graph::{ElementKind, ElementRef, Graph, GraphBuilder, GraphError, Origin, ProvenanceTag};
pub mod solvers;

pub use solvers::{Budget, GraphNumber, SolveError, SolveResult, Witness};
pub mod stability;

pub use stability::{analyze, analyze_with, AnalysisError, AnalysisOptions, ElementStatus, StabilityReport, Status};
pub mod verify;
pub mod cnf;

pub use cnf::{CnfError, CnfFormula};
pub mod gadgets;
pub use gadgets::{ConstructionResult, GadgetError};
pub mod reductions;

pub use reductions::{ReductionError, Unfreezer};
