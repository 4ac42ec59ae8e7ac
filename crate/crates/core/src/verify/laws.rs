//! The law registry: one executable check per paper claim, each bound to a generated
//! instance family.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::HarnessError;
use crate::cnf::CnfFormula;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    /// Exhaustive enumeration (subsets, colorings, assignments).
    BruteForce,
    /// The exact solvers, cross-checked against brute force where sizes allow.
    MainSolver,
}

/// Instance family parameters. How `max_n` and `samples` are read depends on the law's
/// family; see [`Law::family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_n: usize,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub max_n: Option<usize>,
    pub samples: Option<usize>,
}

impl Overrides {
    fn apply(&self, c: GeneratorConfig) -> GeneratorConfig {
        GeneratorConfig {
            seed: self.seed.unwrap_or(c.seed),
            max_n: self.max_n.unwrap_or(c.max_n),
            samples: self.samples.unwrap_or(c.samples),
        }
    }
}

/// One generated instance; enough to re-run the check on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Graph { graph: Graph },
    Edges { graph: Graph, edges: Vec<(usize, usize)> },
    Pair { g: Graph, h: Graph },
    Tuple { graphs: Vec<Graph> },
    Formula { formula: CnfFormula },
    FormulaPair { first: CnfFormula, second: CnfFormula },
    FormulaLists { phis: Vec<CnfFormula>, psis: Vec<CnfFormula> },
}

pub(crate) type Generate = fn(&GeneratorConfig) -> Result<Vec<Instance>, HarnessError>;
pub(crate) type Check = fn(&Instance) -> Result<(), String>;

pub struct Law {
    pub id: &'static str,
    /// Citation and quote of the claim.
    pub paper_ref: &'static str,
    pub family: &'static str,
    pub oracle: OracleKind,
    pub defaults: GeneratorConfig,
    generate: Generate,
    check: Check,
}

impl Law {
    pub fn generate(&self, config: &GeneratorConfig) -> Result<Vec<Instance>, HarnessError> {
        (self.generate)(config)
    }

    pub fn check(&self, instance: &Instance) -> Result<(), String> {
        (self.check)(instance)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Position in generation order.
    pub index: usize,
    pub instance: Instance,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub id: String,
    pub config: GeneratorConfig,
    pub instances: usize,
    /// In generation order; the first one is the earliest counterexample.
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const fn cfg(max_n: usize, samples: usize) -> GeneratorConfig {
    GeneratorConfig {
        seed: 2024,
        max_n,
        samples,
    }
}

const ALL_N: &str = "all labeled graphs with n <= max_n";
const ALL_N_PLUS: &str = "all labeled graphs with n <= max_n, then `samples` random graphs with n <= max_n + 2";
const RANDOM_S: &str = "`samples` random (G, S), n <= max_n, S a nonempty edge subset";
const RANDOM_E: &str = "`samples` random (G, e), n <= max_n, e one edge";
const CLASS_PAIRS: &str = "all pairs of isomorphism classes with n <= max_n";
const POOL: &str = "all 2- and 3-multisets from {K1, K2, P3, C4, C5, K3+K3}";
const CNF3: &str = "8-block, then `samples` random exact-3CNF on 3 variables with 1..=4 clauses";
const CNF3_MIXED: &str = "`samples` random exact-3CNF, 3..=max_n variables, some containing an 8-block";
const CNF_ANY: &str = "`samples` random CNF, <= max_n variables, 1..=6 clauses of widths 1..=5 (rarely 0), <= 20 variables after conversion";
const CNF_PAIRS: &str = "`samples` random pairs of exact-3CNF, 3..=max_n variables each";
const CNF_LISTS: &str = "k in {1, 2}, lists over {satisfiable clause, 8-block} with satisfiable ones first";

macro_rules! law {
    ($id:expr, $paper:expr, $family:expr, $oracle:ident, $defaults:expr, $gen:expr, $check:expr) => {
        Law {
            id: $id,
            paper_ref: $paper,
            family: $family,
            oracle: OracleKind::$oracle,
            defaults: $defaults,
            generate: $gen,
            check: $check,
        }
    };
}

static LAWS: &[Law] = &[
    law!("obs1", "Obs. 1: \"The deletion of an edge or of a vertex either decreases the chromatic number by exactly one or leaves it unchanged.\"",
        ALL_N, MainSolver, cfg(5, 0), exhaustive, obs1),
    law!("obs2", "Obs. 2: \"Let e={u,v} be a critical edge. Then u and v are critical as well.\"",
        ALL_N, MainSolver, cfg(5, 0), exhaustive, obs2),
    law!("obs3", "Obs. 3: \"Let v be a stable vertex. Then all edges incident to v are stable.\"",
        ALL_N, MainSolver, cfg(5, 0), exhaustive, obs3),
    law!("obs4", "Obs. 4: \"A vertex v is critical if and only if there is an optimal coloring of G that assigns v a color with which no other vertex is colored.\"",
        ALL_N, BruteForce, cfg(5, 0), exhaustive, obs4),
    law!("prop1.1", "Prop. 1(1): \"β-Stability = α-Stability = {complement of G | G in ω-Unfrozenness}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop1_1),
    law!("prop1.2", "Prop. 1(2): \"β-Unfrozenness = α-Unfrozenness = {complement of G | G in ω-Stability}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop1_2),
    law!("prop1.3", "Prop. 1(3): \"β-TwoWayStability = α-TwoWayStability = {complement of G | G in ω-TwoWayStability}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop1_3),
    law!("prop1.4", "Prop. 1(4): \"β-VertexStability = {I_n | n in N}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop1_4),
    law!("prop1.5", "Prop. 1(5): \"α-VertexStability = {complement of G | G in ω-VertexStability}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop1_5),
    law!("prop1.6", "Prop. 1(6): \"β-VertexUnfrozenness = β-VertexTwoWayStability = {K_0}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop1_6),
    law!("prop1.7", "Prop. 1(7): \"α-VertexUnfrozenness = α-VertexTwoWayStability = ω-VertexUnfrozenness = ω-VertexTwoWayStability = ∅\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop1_7),
    law!("prop2.1", "Prop. 2(1): \"β-VertexStability = α-VertexCriticality = {complement of G | G in ω-VertexCriticality}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop2_1),
    law!("prop2.2", "Prop. 2(2): \"β-VertexCriticality = α-VertexStability = {complement of G | G in ω-VertexStability}\"",
        ALL_N_PLUS, MainSolver, cfg(4, 500), exhaustive_and_random, prop2_2),
    law!("plan.queries", "Θ2p membership: \"the queries (G,k), (G−e,k), and (G−v,k)\" decide stability and vertex-stability in one round",
        ALL_N, MainSolver, cfg(4, 0), exhaustive, plan_queries),
    law!("lem3", "Lemma 3 (App. D): \"its self-join G+G provides the required reduction\" from VertexStability to Stability",
        ALL_N, MainSolver, cfg(4, 0), exhaustive, lem3),
    law!("thm3.vertex-stability", "Thm. 3: \"The join is an AND_ω function for VertexStability and Unfrozenness.\" (vertex-stability part)",
        POOL, MainSolver, cfg(0, 0), pool_tuples, thm3_vertex_stability),
    law!("thm3.unfrozenness", "Thm. 3: \"The join is an AND_ω function for VertexStability and Unfrozenness.\" (unfrozenness part)",
        POOL, MainSolver, cfg(0, 0), pool_tuples, thm3_unfrozenness),
    law!("cor2", "Cor. 2: the join \"with all join edges stabilized using the construction from Lemma 7 is an AND_ω function for Stability\"",
        POOL, MainSolver, cfg(0, 0), pool_tuples, cor2),
    law!("lem4", "Lemma 4: a reduction from Sat to 3Sat \"such that Φ is stable if and only if Ψ is stable\"",
        CNF_ANY, BruteForce, cfg(4, 200), random_any_cnf, lem4),
    law!("thm4.unsat-padding", "Thm. 4 (coNP part): Φ plus all eight clauses over fresh x, y, z \"reduces 3UnSat to Stable3CNF\"",
        CNF3_MIXED, BruteForce, cfg(4, 200), random_exact3, thm4_unsat_padding),
    law!("thm4.sat-to-stable", "Thm. 4 (NP part): the \"reduction from 3Sat to Stable4CNF\" with copies and y, y', y''",
        CNF3_MIXED, BruteForce, cfg(4, 200), random_exact3, thm4_sat_to_stable),
    law!("thm4.or2", "App. G: the clause product Ψ = ⋀(C_i ∨ C'_j) is an OR_2 function for Stable3CNF",
        CNF_PAIRS, BruteForce, cfg(4, 200), random_exact3_pairs, thm4_or2),
    law!("lem5", "Lemma 5: \"Φ is not stable if and only if χ(G_Φ) > χ(G_Φ − t_i1) for at least one i\"",
        CNF3, MainSolver, cfg(3, 50), cai_meyer_corpus, lem5),
    law!("cai-meyer", "App. H/I, Fig. 1: \"Φ is satisfiable if and only if G_Φ is 3-colorable\" and \"Φ−C_i is satisfiable if and only if G_Φ−t_i1 is 3-colorable\"",
        CNF3, MainSolver, cfg(3, 50), cai_meyer_corpus, cai_meyer_coloring),
    law!("lem6", "Lemma 6: after replicating v, \"χ(G) = χ(Ĝ) = χ(Ĝ − v) = χ(Ĝ − v')\"",
        ALL_N, BruteForce, cfg(5, 0), exhaustive, lem6),
    law!("thm5", "Thm. 5: \"map it to r(G_Φ) … replication of all vertices other than t_11, …, t_m1\"; Φ stable iff r(G_Φ) vertex-stable",
        CNF3, MainSolver, cfg(3, 50), cai_meyer_corpus, thm5),
    law!("thm6", "Thm. 6 proof: \"G∪G is stable and vertex-stable with χ(G)=χ(G∪G)\"",
        ALL_N, MainSolver, cfg(4, 0), exhaustive, thm6),
    law!("lem7.p1", "Lemma 7(1): \"χ(Ĝ)=χ(G)+2\"",
        RANDOM_S, MainSolver, cfg(5, 100), random_edge_sets, lem7_p1),
    law!("lem7.p2", "Lemma 7(2): \"All edges in E(Ĝ) ∖ (E(G) ∖ S) are stable.\"",
        RANDOM_S, MainSolver, cfg(5, 100), random_edge_sets, lem7_p2),
    law!("lem7.p3", "Lemma 7(3): \"Each one of the remaining edges in E(G) ∖ S is stable in Ĝ exactly if it is stable in G.\"",
        RANDOM_S, MainSolver, cfg(5, 100), random_edge_sets, lem7_p3),
    law!("thm7", "Thm. 7: \"Only the empty graphs are β-vertex-stable.\"",
        ALL_N, BruteForce, cfg(5, 0), exhaustive, thm7),
    law!("lem9.shift", "Lemma 9: \"β(G') = β(G)+2\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem9_shift),
    law!("lem9.gadget-edges", "Lemma 9: \"all edges of the gadget are stable in G'\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem9_gadget_edges),
    law!("lem9.other-edges", "Lemma 9: \"the remaining edges are stable in G' if and only if they are stable in G\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem9_other_edges),
    law!("thm9.end2end", "Thm. 9 proof: the stabilized join S \"is β-stable exactly if β(G)>β(H)\"",
        CLASS_PAIRS, MainSolver, cfg(3, 0), class_pairs, thm9_end2end),
    law!("thm10", "Thm. 10: \"There is no vertex-unfrozen graph and only one β-vertex-unfrozen graph, namely the null graph\"",
        ALL_N, MainSolver, cfg(4, 0), exhaustive, thm10),
    law!("closed-forms", "Thms. 7 and 10: \"Only the empty graphs are β-vertex-stable\" and \"only one β-vertex-unfrozen graph, namely the null graph\"; closed forms against all attachments",
        ALL_N, MainSolver, cfg(4, 0), exhaustive, closed_forms),
    law!("thm11.end2end", "Thm. 11 proof (App. O): J = G' + H' is β-unfrozen iff β(G) ≤ β(H)",
        CLASS_PAIRS, MainSolver, cfg(3, 0), class_pairs, thm11_end2end),
    law!("thm12.end2end", "Thm. 12 (App. P): with an unfreezer f, g, \"U = G'' ∪ H''\" is unfrozen iff χ(G) ≤ χ(H) (test-only exact unfreezer)",
        CLASS_PAIRS, MainSolver, cfg(4, 0), class_pairs, thm12_end2end),
    law!("thm13.end2end", "Thm. 13 (App. Q): \"G=h(Φ1)+⋯+h(Φk) and H=h(Ψ1)+⋯+h(Ψk)\" compare the numbers of satisfiable formulas",
        CNF_LISTS, MainSolver, cfg(0, 0), colorability_lists, thm13_end2end),
    law!("thm14.end2end", "Thm. 14 (App. R): \"the map f(G)= G∪G is a reduction from Unfrozenness\" to TwoWayStability",
        ALL_N, MainSolver, cfg(4, 0), exhaustive, thm14_end2end),
    law!("lem13.p1", "Lemma 13(1): \"β(G')=β(G)+6\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem13_p1),
    law!("lem13.p2", "Lemma 13(2): \"every edge e' ∈ E(G)∖{e} is β-stable in G exactly if it is in G'\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem13_p2),
    law!("lem13.p3", "Lemma 13(3): \"all remaining edges of G' are β-stable\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem13_p3),
    law!("lem13.p4", "Lemma 13(4): \"every nonedge e' of G is β-unfrozen in G exactly if it is in G'\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem13_p4),
    law!("lem13.p5", "Lemma 13(5): \"all remaining nonedges of G' are β-unfrozen\"",
        RANDOM_E, BruteForce, cfg(5, 100), random_single_edges, lem13_p5),
    law!("thm15.end2end", "Thm. 15 (App. T): \"Ĝ is β-two-way-stable if and only if G is β-unfrozen\"",
        ALL_N, MainSolver, cfg(4, 0), exhaustive, thm15_end2end),
];

pub fn registry() -> &'static [Law] {
    LAWS
}

pub fn law(id: &str) -> Result<&'static Law, HarnessError> {
    LAWS.iter().find(|l| l.id == id).ok_or_else(|| HarnessError::UnknownLaw(id.to_string()))
}

/// Runs one law over its family. Deterministic given the seed, apart from `elapsed_ms`.
pub fn run_law(id: &str, overrides: &Overrides) -> Result<LawReport, HarnessError> {
    let law = law(id)?;
    let config = overrides.apply(law.defaults);
    let start = Instant::now();
    let instances = law.generate(&config)?;
    let outcomes: Vec<Result<(), String>> = instances.par_iter().map(|i| law.check(i)).collect();
    let violations = instances
        .iter()
        .zip(outcomes)
        .enumerate()
        .filter_map(|(index, (instance, r))| {
            r.err().map(|message| Violation {
                index,
                instance: instance.clone(),
                message,
            })
        })
        .collect();
    Ok(LawReport {
        id: law.id.to_string(),
        config,
        instances: instances.len(),
        violations,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every registered law, in registry order.
pub fn run_all(overrides: &Overrides) -> Result<Vec<LawReport>, HarnessError> {
    LAWS.par_iter().map(|l| run_law(l.id, overrides)).collect()
}

/// Re-runs a single check, e.g. on a counterexample taken from a report.
pub fn recheck(id: &str, instance: &Instance) -> Result<Result<(), String>, HarnessError> {
    Ok(law(id)?.check(instance))
}
