//! Per-number element oracles. Each engine computes ξ(G) once and then answers
//! element queries through exact identities, reusing optimal witnesses as
//! certificates before falling back to a fresh exact solve.

use super::{AnalysisError, ElementStatus, Status};
use crate::graph::{ElementRef, Graph};
use crate::solvers::{self, Budget, GraphNumber, SolveError, Witness};

pub(crate) trait Engine {
    fn value(&self) -> usize;
    fn vertex(&mut self, v: usize) -> Result<ElementStatus, AnalysisError>;
    fn edge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError>;
    fn nonedge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError>;
}

pub(crate) fn engine<'g>(g: &'g Graph, xi: GraphNumber, budget: Budget) -> Result<Box<dyn Engine + 'g>, AnalysisError> {
    Ok(match xi {
        GraphNumber::Chi => Box::new(ChiEngine::new(g, budget)?),
        GraphNumber::Alpha => Box::new(IndependenceEngine::new(g, false, budget)?),
        GraphNumber::Beta => Box::new(IndependenceEngine::new(g, true, budget)?),
        GraphNumber::Omega => Box::new(CliqueEngine::new(g, budget)?),
    })
}

fn solve_err(query: impl Into<String>) -> impl FnOnce(SolveError) -> AnalysisError {
    let query = query.into();
    move |source| AnalysisError::Solver { query, source }
}

fn deletion(element: ElementRef, delta: i64) -> ElementStatus {
    let status = if delta == 0 { Status::Stable } else { Status::Critical };
    ElementStatus { element, status, delta }
}

fn addition(element: ElementRef, delta: i64) -> ElementStatus {
    let status = if delta == 0 { Status::Unfrozen } else { Status::Frozen };
    ElementStatus { element, status, delta }
}

/// Maps ids of `g - v` back to ids of `g`.
fn lift(v: usize, ids: impl IntoIterator<Item = usize>) -> impl Iterator<Item = usize> {
    ids.into_iter().map(move |x| if x >= v { x + 1 } else { x })
}

struct Coloring {
    color: Vec<usize>,
    class_size: Vec<usize>,
}

impl Coloring {
    fn new(color: Vec<usize>) -> Self {
        let k = color.iter().max().map_or(0, |m| m + 1);
        let mut class_size = vec![0; k];
        for &c in &color {
            class_size[c] += 1;
        }
        Coloring { color, class_size }
    }

    fn unique(&self, v: usize) -> bool {
        self.class_size[self.color[v]] == 1
    }
}

/// χ engine.
///
/// Certificates: let R be G with vertices of degree < χ−1 and dominated vertices
/// iteratively removed, so χ(R) = χ(G). Elements outside R are stable. A vertex v of R
/// with a nonadjacent w ≠ v in G such that N_R(v) ⊆ N_G(w) is stable together with its
/// incident edges (map v to w). A vertex alone in its color class of an optimal
/// coloring is critical; an edge uv is critical when u is alone in its class and no
/// other neighbor of u uses v's color. A nonedge is unfrozen when some optimal
/// coloring separates its ends.
struct ChiEngine<'g> {
    g: &'g Graph,
    k: usize,
    pool: Vec<Coloring>,
    certified_stable: Vec<bool>,
    vertex_critical: Vec<Option<bool>>,
    budget: Budget,
}

impl<'g> ChiEngine<'g> {
    fn new(g: &'g Graph, budget: Budget) -> Result<Self, AnalysisError> {
        let res = solvers::graph_number_with(g, GraphNumber::Chi, budget).map_err(solve_err("chi(G)"))?;
        let Some(Witness::Coloring(col)) = res.witness else {
            unreachable!("chromatic solver returns a coloring")
        };
        let k = res.value;
        let certified_stable = Self::stable_certificates(g, k);
        Ok(ChiEngine {
            g,
            k,
            pool: vec![Coloring::new(col)],
            certified_stable,
            vertex_critical: vec![None; g.n()],
            budget,
        })
    }

    fn stable_certificates(g: &Graph, k: usize) -> Vec<bool> {
        let n = g.n();
        let mut alive = vec![true; n];
        let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let threshold = k.saturating_sub(1);
        let kill = |v: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>| {
            alive[v] = false;
            for &w in g.neighbors(v) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        };
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] && deg[v] < threshold {
                    kill(v, &mut alive, &mut deg);
                    changed = true;
                }
            }
            for u in 0..n {
                if alive[u] && Self::shadow(g, u, &alive, true) {
                    kill(u, &mut alive, &mut deg);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..n)
            .map(|v| !alive[v] || Self::shadow(g, v, &alive, false))
            .collect()
    }

    /// Is there a vertex w ≠ u, nonadjacent to u, with N(u) ∩ alive ⊆ N(w)?
    /// With `alive_only`, w must itself be alive.
    fn shadow(g: &Graph, u: usize, alive: &[bool], alive_only: bool) -> bool {
        let live_nb: Vec<usize> = g.neighbors(u).iter().copied().filter(|&y| alive[y]).collect();
        let ok = |w: usize| w != u && (!alive_only || alive[w]) && !g.has_edge(u, w);
        match live_nb.iter().copied().min_by_key(|&x| g.degree(x)) {
            None => (0..g.n()).any(ok),
            Some(x) => g
                .neighbors(x)
                .iter()
                .copied()
                .any(|w| ok(w) && live_nb.iter().all(|&y| g.has_edge(w, y))),
        }
    }

    fn critical_vertex(&mut self, v: usize) -> Result<bool, AnalysisError> {
        if let Some(c) = self.vertex_critical[v] {
            return Ok(c);
        }
        let critical = if self.certified_stable[v] {
            false
        } else if self.pool.iter().any(|c| c.unique(v)) {
            true
        } else {
            let h = self.g.delete_vertex(v)?;
            let found = solvers::k_coloring(&h, self.k - 1, self.budget)
                .map_err(solve_err(format!("chi(G - {v}) <= {}", self.k - 1)))?;
            match found {
                Some(col) => {
                    let mut full: Vec<usize> = Vec::with_capacity(self.g.n());
                    full.extend_from_slice(&col[..v]);
                    full.push(self.k - 1);
                    full.extend_from_slice(&col[v..]);
                    self.pool.push(Coloring::new(full));
                    true
                }
                None => false,
            }
        };
        self.vertex_critical[v] = Some(critical);
        Ok(critical)
    }

    fn edge_certificate(&self, c: &Coloring, a: usize, b: usize) -> bool {
        c.unique(a)
            && self
                .g
                .neighbors(a)
                .iter()
                .all(|&w| w == b || c.color[w] != c.color[b])
    }
}

impl Engine for ChiEngine<'_> {
    fn value(&self) -> usize {
        self.k
    }

    fn vertex(&mut self, v: usize) -> Result<ElementStatus, AnalysisError> {
        let critical = self.critical_vertex(v)?;
        Ok(deletion(ElementRef::Vertex(v), if critical { -1 } else { 0 }))
    }

    fn edge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError> {
        let e = ElementRef::edge(u, v);
        let known_stable = |x: usize| self.certified_stable[x] || self.vertex_critical[x] == Some(false);
        let critical = if known_stable(u) || known_stable(v) {
            false
        } else if self
            .pool
            .iter()
            .any(|c| self.edge_certificate(c, u, v) || self.edge_certificate(c, v, u))
        {
            true
        } else {
            let h = self.g.delete_edge(u, v)?;
            let found = solvers::k_coloring(&h, self.k - 1, self.budget)
                .map_err(solve_err(format!("chi(G - {e}) <= {}", self.k - 1)))?;
            match found {
                Some(mut col) => {
                    col[u] = self.k - 1;
                    self.pool.push(Coloring::new(col));
                    true
                }
                None => false,
            }
        };
        Ok(deletion(e, if critical { -1 } else { 0 }))
    }

    fn nonedge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError> {
        let e = ElementRef::nonedge(u, v);
        let frozen = if self.pool.iter().any(|c| c.color[u] != c.color[v]) {
            false
        } else {
            let h = self.g.add_edge(u, v)?;
            let found = solvers::k_coloring(&h, self.k, self.budget)
                .map_err(solve_err(format!("chi(G + {e}) <= {}", self.k)))?;
            match found {
                Some(col) => {
                    self.pool.push(Coloring::new(col));
                    false
                }
                None => true,
            }
        };
        Ok(addition(e, if frozen { 1 } else { 0 }))
    }
}

/// α and β engine. A vertex is α-critical iff it lies in every maximum independent
/// set; α(G − uv) = α + 1 iff G − N[u] − N[v] has an independent set of size α − 1;
/// α(G + uv) = max(α(G − u), α(G − v)). β follows from β = n − α.
struct IndependenceEngine<'g> {
    g: &'g Graph,
    alpha: usize,
    beta: bool,
    pool: Vec<Vec<bool>>,
    alpha_critical: Vec<Option<bool>>,
    budget: Budget,
}

impl<'g> IndependenceEngine<'g> {
    fn new(g: &'g Graph, beta: bool, budget: Budget) -> Result<Self, AnalysisError> {
        let res = solvers::graph_number_with(g, GraphNumber::Alpha, budget).map_err(solve_err("alpha(G)"))?;
        let Some(Witness::VertexSet(set)) = res.witness else {
            unreachable!("independent set solver returns a set")
        };
        let mut e = IndependenceEngine {
            g,
            alpha: res.value,
            beta,
            pool: Vec::new(),
            alpha_critical: vec![None; g.n()],
            budget,
        };
        e.remember(set);
        Ok(e)
    }

    fn remember(&mut self, set: impl IntoIterator<Item = usize>) {
        let mut member = vec![false; self.g.n()];
        for v in set {
            member[v] = true;
        }
        self.pool.push(member);
    }

    fn critical_vertex(&mut self, v: usize) -> Result<bool, AnalysisError> {
        if let Some(c) = self.alpha_critical[v] {
            return Ok(c);
        }
        let critical = if self.pool.iter().any(|m| !m[v]) {
            false
        } else {
            let h = self.g.delete_vertex(v)?;
            let found = solvers::independent_set_of_size(&h, self.alpha, self.budget)
                .map_err(solve_err(format!("alpha(G - {v}) >= {}", self.alpha)))?;
            match found {
                Some(s) => {
                    self.remember(lift(v, s));
                    false
                }
                None => true,
            }
        };
        self.alpha_critical[v] = Some(critical);
        Ok(critical)
    }

    fn sign(&self) -> i64 {
        if self.beta {
            -1
        } else {
            1
        }
    }
}

impl Engine for IndependenceEngine<'_> {
    fn value(&self) -> usize {
        if self.beta {
            self.g.n() - self.alpha
        } else {
            self.alpha
        }
    }

    fn vertex(&mut self, v: usize) -> Result<ElementStatus, AnalysisError> {
        let critical = self.critical_vertex(v)?;
        // α(G−v) − α is −1 or 0; β(G−v) − β = α − α(G−v) − 1.
        let alpha_delta = if critical { -1 } else { 0 };
        let delta = if self.beta { -alpha_delta - 1 } else { alpha_delta };
        Ok(deletion(ElementRef::Vertex(v), delta))
    }

    fn edge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError> {
        let e = ElementRef::edge(u, v);
        let rises = if self.alpha_critical[u] == Some(true) || self.alpha_critical[v] == Some(true) {
            false
        } else {
            let keep: Vec<usize> = (0..self.g.n())
                .filter(|&x| x != u && x != v && !self.g.has_edge(x, u) && !self.g.has_edge(x, v))
                .collect();
            let h = self.g.induced(&keep);
            let target = self.alpha - 1;
            let found = solvers::independent_set_of_size(&h, target, self.budget)
                .map_err(solve_err(format!("alpha(G - N[{u}] - N[{v}]) >= {target}")))?;
            match found {
                Some(s) => {
                    let set: Vec<usize> = s.iter().map(|&i| keep[i]).chain([u]).collect();
                    self.remember(set);
                    true
                }
                None => false,
            }
        };
        Ok(deletion(e, if rises { self.sign() } else { 0 }))
    }

    fn nonedge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError> {
        let frozen = self.critical_vertex(u)? && self.critical_vertex(v)?;
        Ok(addition(ElementRef::nonedge(u, v), if frozen { -self.sign() } else { 0 }))
    }
}

/// ω engine. A vertex is critical iff it lies in every maximum clique;
/// ω(G − uv) = max(ω(G − u), ω(G − v)); ω(G + uv) = max(ω, ω(G[N(u) ∩ N(v)]) + 2).
struct CliqueEngine<'g> {
    g: &'g Graph,
    omega: usize,
    pool: Vec<Vec<bool>>,
    critical: Vec<Option<bool>>,
    budget: Budget,
}

impl<'g> CliqueEngine<'g> {
    fn new(g: &'g Graph, budget: Budget) -> Result<Self, AnalysisError> {
        let res = solvers::graph_number_with(g, GraphNumber::Omega, budget).map_err(solve_err("omega(G)"))?;
        let Some(Witness::VertexSet(set)) = res.witness else {
            unreachable!("clique solver returns a set")
        };
        let mut member = vec![false; g.n()];
        for v in set {
            member[v] = true;
        }
        Ok(CliqueEngine {
            g,
            omega: res.value,
            pool: vec![member],
            critical: vec![None; g.n()],
            budget,
        })
    }

    fn critical_vertex(&mut self, v: usize) -> Result<bool, AnalysisError> {
        if let Some(c) = self.critical[v] {
            return Ok(c);
        }
        let critical = if self.pool.iter().any(|m| !m[v]) {
            false
        } else {
            let h = self.g.delete_vertex(v)?;
            let found = solvers::clique_of_size(&h, self.omega, self.budget)
                .map_err(solve_err(format!("omega(G - {v}) >= {}", self.omega)))?;
            match found {
                Some(s) => {
                    let mut member = vec![false; self.g.n()];
                    for x in lift(v, s) {
                        member[x] = true;
                    }
                    self.pool.push(member);
                    false
                }
                None => true,
            }
        };
        self.critical[v] = Some(critical);
        Ok(critical)
    }
}

impl Engine for CliqueEngine<'_> {
    fn value(&self) -> usize {
        self.omega
    }

    fn vertex(&mut self, v: usize) -> Result<ElementStatus, AnalysisError> {
        let critical = self.critical_vertex(v)?;
        Ok(deletion(ElementRef::Vertex(v), if critical { -1 } else { 0 }))
    }

    fn edge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError> {
        let critical = self.critical_vertex(u)? && self.critical_vertex(v)?;
        Ok(deletion(ElementRef::edge(u, v), if critical { -1 } else { 0 }))
    }

    fn nonedge(&mut self, u: usize, v: usize) -> Result<ElementStatus, AnalysisError> {
        let common: Vec<usize> = self
            .g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.g.has_edge(v, w))
            .collect();
        let h = self.g.induced(&common);
        let target = self.omega.saturating_sub(1);
        let found = solvers::clique_of_size(&h, target, self.budget)
            .map_err(solve_err(format!("omega(G[N({u}) & N({v})]) >= {target}")))?;
        Ok(addition(ElementRef::nonedge(u, v), if found.is_some() { 1 } else { 0 }))
    }
}
