//! `reduce`: run a reduction on its inputs, write the output, and optionally re-derive
//! the reduction's biconditional with exact solvers.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

use stabgraph::cnf::formula_stability_with;
use stabgraph::gadgets::{join_and, stabilized_join_and, AndFlavor};
use stabgraph::reductions::{self as red, Unfreezer};
use stabgraph::solvers::graph_number_with;
use stabgraph::stability::Classes;
use stabgraph::{analyze_with, write_dimacs_with_comments, AnalysisOptions, Budget, CnfFormula, ConstructionResult, Graph, GraphNumber};

use crate::{print_json, read_cnf, read_graph, usage, write_construction};

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum Pipeline {
    /// CNF -> graph: stable formula iff χ-vertex-stable graph.
    Stable3cnfToVertexStability,
    /// G -> G + G: χ-vertex-stable iff the join is χ-stable.
    VertexStabilityToStability,
    /// G -> G ∪ G: χ-stable and χ-vertex-stable with the same χ.
    UnionDouble,
    /// G -> G ∪ G (K1 -> K0): χ-unfrozen iff χ-two-way-stable.
    UnfrozenToTwoWay,
    /// (G, H) -> S: β-stable iff β(G) > β(H).
    CompareVcToBetaStability,
    /// (G, H) -> J: β-unfrozen iff β(G) <= β(H).
    CompareVcToBetaUnfrozenness,
    /// G -> Ĝ: β-unfrozen iff β-two-way-stable.
    BetaUnfrozenToTwoWay,
    /// CNF -> G_Φ, 3-colorable iff satisfiable.
    CaiMeyer,
    /// CNF -> graph, 3-colorable iff satisfiable.
    Gjs3col,
    /// Φ1..Φk Ψ1..Ψk -> (G, H): χ(G) <= χ(H) iff #sat Φ <= #sat Ψ.
    CompareColorability,
    /// (G, H) -> U with the exact (test-only) unfreezer: χ-unfrozen iff χ(G) <= χ(H).
    ConditionalUnfrozenness,
    /// G1..Gk -> join: χ-vertex-stable iff all inputs are.
    JoinVertexStability,
    /// G1..Gk -> join: χ-unfrozen iff all inputs are.
    JoinUnfrozenness,
    /// G1..Gk -> join with stabilized join edges: χ-stable iff all inputs are.
    StabilizedJoin,
}

impl Pipeline {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// The re-derived biconditional: `premise` about the inputs, `conclusion` about the output.
struct Verification {
    claim: String,
    premise: bool,
    conclusion: bool,
}

struct Oracle {
    budget: Budget,
}

impl Oracle {
    fn value(&self, g: &Graph, xi: GraphNumber) -> Result<usize> {
        Ok(graph_number_with(g, xi, self.budget)?.value)
    }

    fn verdicts(&self, g: &Graph, xi: GraphNumber, classes: Classes) -> Result<stabgraph::stability::Verdicts> {
        let opts = AnalysisOptions {
            classes,
            k: None,
            early_exit: true,
            budget: self.budget,
        };
        Ok(analyze_with(g, xi, &opts)?.verdicts)
    }

    fn stable(&self, g: &Graph, xi: GraphNumber) -> Result<bool> {
        Ok(self.verdicts(g, xi, Classes::EDGES)?.stable == Some(true))
    }

    fn vertex_stable(&self, g: &Graph, xi: GraphNumber) -> Result<bool> {
        Ok(self.verdicts(g, xi, Classes::VERTICES)?.vertex_stable == Some(true))
    }

    fn unfrozen(&self, g: &Graph, xi: GraphNumber) -> Result<bool> {
        Ok(self.verdicts(g, xi, Classes::NONEDGES)?.unfrozen == Some(true))
    }

    fn two_way(&self, g: &Graph, xi: GraphNumber) -> Result<bool> {
        let classes = Classes {
            edges: true,
            vertices: false,
            nonedges: true,
        };
        Ok(self.verdicts(g, xi, classes)?.two_way_stable == Some(true))
    }

    fn formula_stable(&self, f: &CnfFormula) -> Result<bool> {
        Ok(formula_stability_with(f, self.budget)?.stable)
    }

    fn satisfiable(&self, f: &CnfFormula) -> Result<bool> {
        Ok(stabgraph::cnf::solve(f, self.budget)?.is_some())
    }
}

enum Inputs {
    Graphs(Vec<Graph>),
    Formulas(Vec<CnfFormula>),
}

fn expect_count(p: Pipeline, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(usage(format!("{} takes {want} input(s), got {got}", p.name())));
    }
    Ok(())
}

fn load(p: Pipeline, paths: &[PathBuf]) -> Result<Inputs> {
    use Pipeline::*;
    match p {
        Stable3cnfToVertexStability | CaiMeyer | Gjs3col => {
            expect_count(p, paths.len(), 1)?;
            Ok(Inputs::Formulas(vec![read_cnf(&paths[0])?]))
        }
        CompareColorability => {
            if paths.is_empty() || !paths.len().is_multiple_of(2) {
                return Err(usage("compare-colorability takes Φ1..Φk followed by Ψ1..Ψk (an even, nonzero count)"));
            }
            Ok(Inputs::Formulas(paths.iter().map(|p| read_cnf(p)).collect::<Result<_>>()?))
        }
        VertexStabilityToStability | UnionDouble | UnfrozenToTwoWay | BetaUnfrozenToTwoWay => {
            expect_count(p, paths.len(), 1)?;
            Ok(Inputs::Graphs(vec![read_graph(&paths[0])?]))
        }
        CompareVcToBetaStability | CompareVcToBetaUnfrozenness | ConditionalUnfrozenness => {
            expect_count(p, paths.len(), 2)?;
            Ok(Inputs::Graphs(paths.iter().map(|p| read_graph(p)).collect::<Result<_>>()?))
        }
        JoinVertexStability | JoinUnfrozenness | StabilizedJoin => {
            if paths.is_empty() {
                return Err(usage(format!("{} needs at least one graph", p.name())));
            }
            Ok(Inputs::Graphs(paths.iter().map(|p| read_graph(p)).collect::<Result<_>>()?))
        }
    }
}

enum Output {
    One(ConstructionResult),
    Two(Graph, Graph),
}

fn build(p: Pipeline, inputs: &Inputs) -> Result<Output> {
    use Pipeline::*;
    let bad = |e: &dyn std::fmt::Display| usage(e.to_string());
    Ok(match (p, inputs) {
        (Stable3cnfToVertexStability, Inputs::Formulas(f)) => Output::One(red::stable3cnf_to_vertex_stability(&f[0]).map_err(|e| bad(&e))?),
        (CaiMeyer, Inputs::Formulas(f)) => {
            let cm = red::cai_meyer_graph(&f[0]).map_err(|e| bad(&e))?;
            Output::One(plain(cm.graph, "Cai-Meyer graph G_Φ"))
        }
        (Gjs3col, Inputs::Formulas(f)) => Output::One(red::gjs_3col(&f[0]).map_err(|e| bad(&e))?),
        (CompareColorability, Inputs::Formulas(f)) => {
            let (phis, psis) = f.split_at(f.len() / 2);
            let (g, h) = red::compare_colorability_instance(phis, psis).map_err(|e| bad(&e))?;
            Output::Two(g, h)
        }
        (VertexStabilityToStability, Inputs::Graphs(g)) => Output::One(red::vstab_to_stab(&g[0])),
        (UnionDouble, Inputs::Graphs(g)) => Output::One(red::union_double(&g[0])),
        (UnfrozenToTwoWay, Inputs::Graphs(g)) => Output::One(red::unfrozen_to_two_way(&g[0])),
        (BetaUnfrozenToTwoWay, Inputs::Graphs(g)) => Output::One(red::beta_unfrozen_to_beta_twoway(&g[0])),
        (CompareVcToBetaStability, Inputs::Graphs(g)) => Output::One(red::compare_vc_to_beta_stability(&g[0], &g[1])),
        (CompareVcToBetaUnfrozenness, Inputs::Graphs(g)) => Output::One(red::compare_vc_to_beta_unfrozenness(&g[0], &g[1])),
        (ConditionalUnfrozenness, Inputs::Graphs(g)) => {
            Output::One(red::conditional_unfrozenness_reduction(&g[0], &g[1], &Unfreezer::exact_clique()).map_err(|e| bad(&e))?)
        }
        (JoinVertexStability, Inputs::Graphs(g)) => Output::One(join_and(g, AndFlavor::VertexStability).map_err(|e| bad(&e))?),
        (JoinUnfrozenness, Inputs::Graphs(g)) => Output::One(join_and(g, AndFlavor::Unfrozenness).map_err(|e| bad(&e))?),
        (StabilizedJoin, Inputs::Graphs(g)) => Output::One(stabilized_join_and(g).map_err(|e| bad(&e))?),
        _ => unreachable!("inputs are loaded per pipeline"),
    })
}

/// Wraps a bare graph; every element is tagged as original to this construction.
fn plain(g: Graph, notes: &str) -> ConstructionResult {
    use stabgraph::{ElementRef, ProvenanceTag};
    let mut prov = std::collections::BTreeMap::new();
    for v in 0..g.n() {
        prov.insert(ElementRef::Vertex(v), ProvenanceTag::new(stabgraph::Origin::Gadget));
    }
    for (u, v) in g.edges() {
        prov.insert(ElementRef::edge(u, v), ProvenanceTag::new(stabgraph::Origin::Gadget));
    }
    ConstructionResult {
        graph: g,
        element_provenance: prov,
        value_shift: None,
        notes: notes.to_string(),
    }
}

fn verify(p: Pipeline, inputs: &Inputs, out: &Output, o: &Oracle) -> Result<Verification> {
    use GraphNumber::{Beta, Chi};
    use Pipeline::*;
    let v = |claim: &str, premise: bool, conclusion: bool| Verification {
        claim: claim.to_string(),
        premise,
        conclusion,
    };
    Ok(match (p, inputs, out) {
        (Stable3cnfToVertexStability, Inputs::Formulas(f), Output::One(r)) => {
            v("Φ stable <=> output χ-vertex-stable", o.formula_stable(&f[0])?, o.vertex_stable(&r.graph, Chi)?)
        }
        (CaiMeyer | Gjs3col, Inputs::Formulas(f), Output::One(r)) => {
            v("Φ satisfiable <=> χ(output) = 3", o.satisfiable(&f[0])?, o.value(&r.graph, Chi)? == 3)
        }
        (CompareColorability, Inputs::Formulas(f), Output::Two(g, h)) => {
            let (phis, psis) = f.split_at(f.len() / 2);
            let count = |fs: &[CnfFormula]| -> Result<usize> {
                let mut n = 0;
                for x in fs {
                    n += o.satisfiable(x)? as usize;
                }
                Ok(n)
            };
            v(
                "#sat Φ <= #sat Ψ <=> χ(G) <= χ(H)",
                count(phis)? <= count(psis)?,
                o.value(g, Chi)? <= o.value(h, Chi)?,
            )
        }
        (VertexStabilityToStability, Inputs::Graphs(g), Output::One(r)) => {
            v("G χ-vertex-stable <=> G + G χ-stable", o.vertex_stable(&g[0], Chi)?, o.stable(&r.graph, Chi)?)
        }
        (UnionDouble, Inputs::Graphs(g), Output::One(r)) => {
            let same = o.value(&g[0], Chi)? == o.value(&r.graph, Chi)?;
            let ok = same && o.stable(&r.graph, Chi)? && o.vertex_stable(&r.graph, Chi)?;
            v("always: G ∪ G χ-stable, χ-vertex-stable, same χ", true, ok)
        }
        (UnfrozenToTwoWay, Inputs::Graphs(g), Output::One(r)) => {
            v("G χ-unfrozen <=> output χ-two-way-stable", o.unfrozen(&g[0], Chi)?, o.two_way(&r.graph, Chi)?)
        }
        (BetaUnfrozenToTwoWay, Inputs::Graphs(g), Output::One(r)) => {
            v("G β-unfrozen <=> output β-two-way-stable", o.unfrozen(&g[0], Beta)?, o.two_way(&r.graph, Beta)?)
        }
        (CompareVcToBetaStability, Inputs::Graphs(g), Output::One(r)) => {
            v("β(G) > β(H) <=> S β-stable", o.value(&g[0], Beta)? > o.value(&g[1], Beta)?, o.stable(&r.graph, Beta)?)
        }
        (CompareVcToBetaUnfrozenness, Inputs::Graphs(g), Output::One(r)) => {
            v("β(G) <= β(H) <=> J β-unfrozen", o.value(&g[0], Beta)? <= o.value(&g[1], Beta)?, o.unfrozen(&r.graph, Beta)?)
        }
        (ConditionalUnfrozenness, Inputs::Graphs(g), Output::One(r)) => {
            v("χ(G) <= χ(H) <=> U χ-unfrozen", o.value(&g[0], Chi)? <= o.value(&g[1], Chi)?, o.unfrozen(&r.graph, Chi)?)
        }
        (JoinVertexStability, Inputs::Graphs(g), Output::One(r)) => {
            let all = g.iter().map(|x| o.vertex_stable(x, Chi)).collect::<Result<Vec<_>>>()?;
            v("all inputs χ-vertex-stable <=> join χ-vertex-stable", all.iter().all(|&b| b), o.vertex_stable(&r.graph, Chi)?)
        }
        (JoinUnfrozenness, Inputs::Graphs(g), Output::One(r)) => {
            let all = g.iter().map(|x| o.unfrozen(x, Chi)).collect::<Result<Vec<_>>>()?;
            v("all inputs χ-unfrozen <=> join χ-unfrozen", all.iter().all(|&b| b), o.unfrozen(&r.graph, Chi)?)
        }
        (StabilizedJoin, Inputs::Graphs(g), Output::One(r)) => {
            let all = g.iter().map(|x| o.stable(x, Chi)).collect::<Result<Vec<_>>>()?;
            v("all inputs χ-stable <=> stabilized join χ-stable", all.iter().all(|&b| b), o.stable(&r.graph, Chi)?)
        }
        _ => unreachable!("outputs are built per pipeline"),
    })
}

fn describe(path: &Path, side: Option<&Path>, g: &Graph) -> Value {
    json!({
        "path": path.display().to_string(),
        "sidecar": side.map(|p| p.display().to_string()),
        "vertices": g.n(),
        "edges": g.m(),
    })
}

pub(crate) fn reduce_cmd(
    p: Pipeline,
    paths: &[PathBuf],
    out: &Path,
    out_h: Option<&Path>,
    verify_flag: bool,
    json: bool,
    budget: Budget,
) -> Result<u8> {
    let name = p.name();
    let inputs = load(p, paths)?;
    if matches!(p, Pipeline::CompareColorability) && out_h.is_none() {
        return Err(usage("compare-colorability writes two graphs; pass --out-h for H"));
    }
    let output = build(p, &inputs)?;
    let header = format!("reduce {name}");
    let outputs = match &output {
        Output::One(r) => {
            let side = write_construction(out, r, &header)?;
            vec![describe(out, Some(&side), &r.graph)]
        }
        Output::Two(g, h) => {
            let out_h = out_h.expect("checked above");
            for (path, graph, which) in [(out, g, "G"), (out_h, h, "H")] {
                let text = write_dimacs_with_comments(graph, &[header.clone(), format!("side {which}")]);
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            vec![describe(out, None, g), describe(out_h, None, h)]
        }
    };
    let check = if verify_flag {
        Some(verify(p, &inputs, &output, &Oracle { budget })?)
    } else {
        None
    };
    let holds = check.as_ref().map(|c| c.premise == c.conclusion);
    if json {
        print_json(&json!({
            "pipeline": name,
            "inputs": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "outputs": outputs,
            "verification": check.as_ref().map(|c| json!({
                "claim": c.claim,
                "premise": c.premise,
                "conclusion": c.conclusion,
                "holds": c.premise == c.conclusion,
            })),
        }));
    } else {
        for o in &outputs {
            println!("wrote {} ({} vertices, {} edges)", o["path"].as_str().unwrap_or(""), o["vertices"], o["edges"]);
        }
        if let Some(c) = &check {
            println!("claim: {}", c.claim);
            println!("premise: {}, conclusion: {}: {}", c.premise, c.conclusion, if c.premise == c.conclusion { "holds" } else { "VIOLATED" });
        }
    }
    Ok(if holds == Some(false) { 1 } else { 0 })
}
