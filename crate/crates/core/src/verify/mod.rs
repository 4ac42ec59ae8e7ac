//! Law registry, brute-force oracles and instance generators.

mod checks;
pub mod generate;
pub mod laws;
pub mod oracle;

use thiserror::Error;

pub use generate::{canonical_form, enumerate_graphs, enumerate_graphs_up_to, isomorphic, nonisomorphic_graphs, random_graph};
pub use laws::{law, recheck, registry, run_all, run_law, GeneratorConfig, Instance, Law, LawReport, OracleKind, Overrides, Violation};
pub use oracle::{brute_force_formula, brute_force_number, optimal_colorings, FormulaTruth};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("instance with {n} vertices exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("unknown law '{0}'")]
    UnknownLaw(String),
}
