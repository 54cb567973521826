//! Generators of the system-ideal families, Alexander duals, minimal prime
//! decompositions, and the greedy facet-finding walk for cut ideals.

use serde::Serialize;

use crate::divisor::PartialOrientation;
use crate::error::Error;
use crate::graph::{Dir, EdgeId, Graph, OrientedEdge, VertexId};
use crate::orient;
use crate::Result;

/// The ideal families the toolkit constructs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    Smt,
    SmtOriented,
    Cut,
    CutOriented,
    CutSt,
    CutStOriented,
    Path,
    PathOriented,
    Mgq,
}

impl IdealKind {
    pub const ALL: [IdealKind; 9] = [
        IdealKind::Smt,
        IdealKind::SmtOriented,
        IdealKind::Cut,
        IdealKind::CutOriented,
        IdealKind::CutSt,
        IdealKind::CutStOriented,
        IdealKind::Path,
        IdealKind::PathOriented,
        IdealKind::Mgq,
    ];

    pub fn needs_targets(self) -> bool {
        matches!(
            self,
            IdealKind::CutSt | IdealKind::CutStOriented | IdealKind::Path | IdealKind::PathOriented
        )
    }

    pub fn parse(name: &str) -> Result<IdealKind> {
        Ok(match name {
            "smt" => IdealKind::Smt,
            "smt_oriented" | "smt-oriented" => IdealKind::SmtOriented,
            "cut" => IdealKind::Cut,
            "cut_oriented" | "cut-oriented" => IdealKind::CutOriented,
            "cut_st" | "cut-st" => IdealKind::CutSt,
            "cut_st_oriented" | "cut-st-oriented" => IdealKind::CutStOriented,
            "path" => IdealKind::Path,
            "path_oriented" | "path-oriented" => IdealKind::PathOriented,
            "mgq" => IdealKind::Mgq,
            other => return Err(Error::invalid(format!("unknown ideal family `{other}`"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            IdealKind::Smt => "smt",
            IdealKind::SmtOriented => "smt_oriented",
            IdealKind::Cut => "cut",
            IdealKind::CutOriented => "cut_oriented",
            IdealKind::CutSt => "cut_st",
            IdealKind::CutStOriented => "cut_st_oriented",
            IdealKind::Path => "path",
            IdealKind::PathOriented => "path_oriented",
            IdealKind::Mgq => "mgq",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarKind {
    /// One variable `x<id>` per edge.
    Edge,
    /// One variable per legal oriented edge: `y<id>` forward, `y<id>r` reverse.
    OrientedEdge,
    /// One variable `v<id>` per vertex.
    Vertex,
}

/// A declared, totally ordered variable list that monomials index into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSet {
    pub kind: VarKind,
    names: Vec<String>,
    /// For `OrientedEdge`: the oriented edge at each variable index.
    oriented: Vec<OrientedEdge>,
    /// For `Edge`: the edge id at each variable index.
    edge_ids: Vec<EdgeId>,
}

impl VariableSet {
    pub fn edges(g: &Graph) -> Self {
        let edge_ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
        VariableSet {
            kind: VarKind::Edge,
            names: edge_ids.iter().map(|id| format!("x{id}")).collect(),
            oriented: Vec::new(),
            edge_ids,
        }
    }

    pub fn oriented(g: &Graph) -> Self {
        let oriented = g.oriented_edges();
        let names = oriented
            .iter()
            .map(|oe| match oe.dir {
                Dir::Fwd => format!("y{}", oe.edge),
                Dir::Rev => format!("y{}r", oe.edge),
            })
            .collect();
        VariableSet { kind: VarKind::OrientedEdge, names, oriented, edge_ids: Vec::new() }
    }

    pub fn vertices(g: &Graph) -> Self {
        VariableSet {
            kind: VarKind::Vertex,
            names: (0..g.vertex_count()).map(|v| format!("v{v}")).collect(),
            oriented: Vec::new(),
            edge_ids: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn oriented_at(&self, i: usize) -> OrientedEdge {
        self.oriented[i]
    }

    pub fn index_of_oriented(&self, oe: OrientedEdge) -> Option<usize> {
        self.oriented.iter().position(|&o| o == oe)
    }

    pub fn index_of_edge(&self, id: EdgeId) -> Option<usize> {
        self.edge_ids.iter().position(|&e| e == id)
    }

    pub fn edge_id_at(&self, i: usize) -> EdgeId {
        self.edge_ids[i]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector over a [`VariableSet`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_support(nvars: usize, support: &[usize]) -> Self {
        let mut exps = vec![0; nvars];
        for &i in support {
            exps[i] += 1;
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn display(&self, vars: &VariableSet) -> String {
        if self.degree() == 0 {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        parts.join("*")
    }
}

/// A monomial ideal held by its unique minimal generating set, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub vars: VariableSet,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes (drops generators divisible by another) and sorts.
    pub fn new(vars: VariableSet, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let minimal: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        MonomialIdeal { vars, gens: minimal }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// Membership by divisibility against the minimal generators.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }
}

fn tree_monomial(g: &Graph, vars: &VariableSet, p: &PartialOrientation) -> Monomial {
    match vars.kind {
        VarKind::Edge => {
            let support: Vec<usize> = p
                .edges()
                .iter()
                .map(|oe| vars.index_of_edge(oe.edge).unwrap())
                .collect();
            Monomial::from_support(vars.len(), &support)
        }
        VarKind::OrientedEdge => {
            let support: Vec<usize> = p
                .edges()
                .iter()
                .map(|&oe| vars.index_of_oriented(oe).unwrap())
                .collect();
            Monomial::from_support(vars.len(), &support)
        }
        VarKind::Vertex => {
            let heads: Vec<usize> = p.edges().iter().map(|&oe| g.head(oe)).collect();
            Monomial::from_support(vars.len(), &heads)
        }
    }
}

fn first_target(g: &Graph) -> Result<VertexId> {
    g.targets()
        .first()
        .copied()
        .ok_or_else(|| Error::invalid("this ideal family needs a target vertex (t line)"))
}

/// Minimal generators of a system ideal.
pub fn build_ideal(kind: IdealKind, g: &Graph) -> Result<MonomialIdeal> {
    let ideal = match kind {
        IdealKind::Smt | IdealKind::SmtOriented => {
            let vars = if kind == IdealKind::Smt {
                VariableSet::edges(g)
            } else {
                VariableSet::oriented(g)
            };
            let gens = orient::enumerate_k_spanning_trees(g, 0)?
                .iter()
                .map(|t| tree_monomial(g, &vars, &t.orientation))
                .collect();
            MonomialIdeal::new(vars, gens)
        }
        IdealKind::Cut | IdealKind::CutOriented | IdealKind::CutSt | IdealKind::CutStOriented => {
            let sink = match kind {
                IdealKind::CutSt | IdealKind::CutStOriented => Some(first_target(g)?),
                _ => None,
            };
            let oriented_vars =
                matches!(kind, IdealKind::CutOriented | IdealKind::CutStOriented);
            let vars = if oriented_vars {
                VariableSet::oriented(g)
            } else {
                VariableSet::edges(g)
            };
            let gens = g
                .connected_cuts(sink)?
                .iter()
                .map(|cut| {
                    let support: Vec<usize> = cut
                        .oriented_edges
                        .iter()
                        .map(|&oe| {
                            if oriented_vars {
                                vars.index_of_oriented(oe).unwrap()
                            } else {
                                vars.index_of_edge(oe.edge).unwrap()
                            }
                        })
                        .collect();
                    Monomial::from_support(vars.len(), &support)
                })
                .collect();
            MonomialIdeal::new(vars, gens)
        }
        IdealKind::Path | IdealKind::PathOriented => {
            if g.targets().is_empty() {
                return Err(Error::invalid("path ideals need at least one target (t line)"));
            }
            let vars = if kind == IdealKind::Path {
                VariableSet::edges(g)
            } else {
                VariableSet::oriented(g)
            };
            let gens = orient::enumerate_k_paths(g, g.targets(), 0)?
                .iter()
                .map(|p| tree_monomial(g, &vars, &p.orientation))
                .collect();
            MonomialIdeal::new(vars, gens)
        }
        IdealKind::Mgq => {
            // oriented cut generators with y_e relabeled to the head vertex
            // variable; exponents accumulate and the result is minimalized
            let vars = VariableSet::vertices(g);
            let gens = g
                .connected_cuts(None)?
                .iter()
                .map(|cut| {
                    let heads: Vec<usize> =
                        cut.oriented_edges.iter().map(|&oe| g.head(oe)).collect();
                    Monomial::from_support(vars.len(), &heads)
                })
                .collect();
            MonomialIdeal::new(vars, gens)
        }
    };
    Ok(ideal)
}

/// Minimal transversals (hitting sets) of a family of supports, each given
/// as a sorted index set. Berge-style incremental dualization.
pub fn minimal_transversals(nvars: usize, supports: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
    for s in supports {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for t in &partial {
            if t.iter().any(|v| s.contains(v)) {
                next.push(t.clone());
            } else {
                for &v in s {
                    let mut t2 = t.clone();
                    t2.push(v);
                    t2.sort_unstable();
                    next.push(t2);
                }
            }
        }
        next.sort();
        next.dedup();
        // keep inclusion-minimal sets only
        let minimal: Vec<Vec<usize>> = next
            .iter()
            .filter(|t| {
                !next
                    .iter()
                    .any(|u| u.len() < t.len() && u.iter().all(|v| t.contains(v)))
            })
            .cloned()
            .collect();
        partial = minimal;
    }
    let _ = nvars;
    partial.sort();
    partial
}

/// Alexander dual of a squarefree ideal: generators are the minimal vertex
/// covers of the generator supports.
pub fn alexander_dual(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if !ideal.is_squarefree() {
        return Err(Error::invalid("Alexander dual requires a squarefree ideal"));
    }
    let supports: Vec<Vec<usize>> = ideal.gens.iter().map(|g| g.support()).collect();
    let nvars = ideal.vars.len();
    let gens = minimal_transversals(nvars, &supports)
        .into_iter()
        .map(|t| Monomial::from_support(nvars, &t))
        .collect();
    Ok(MonomialIdeal::new(ideal.vars.clone(), gens))
}

/// Minimal prime decomposition, as variable-index subsets:
/// oriented spanning trees for the oriented cut ideal, connected cuts for
/// the spanning tree ideal.
pub fn minimal_primes(kind: IdealKind, g: &Graph) -> Result<Vec<Vec<usize>>> {
    match kind {
        IdealKind::CutOriented => {
            let vars = VariableSet::oriented(g);
            let mut primes: Vec<Vec<usize>> = orient::enumerate_k_spanning_trees(g, 0)?
                .iter()
                .map(|t| {
                    let mut p: Vec<usize> = t
                        .orientation
                        .edges()
                        .iter()
                        .map(|&oe| vars.index_of_oriented(oe).unwrap())
                        .collect();
                    p.sort_unstable();
                    p
                })
                .collect();
            primes.sort();
            Ok(primes)
        }
        IdealKind::Smt => {
            let vars = VariableSet::edges(g);
            let mut primes: Vec<Vec<usize>> = g
                .connected_cuts(None)?
                .iter()
                .map(|cut| {
                    let mut p: Vec<usize> = cut
                        .oriented_edges
                        .iter()
                        .map(|oe| vars.index_of_edge(oe.edge).unwrap())
                        .collect();
                    p.sort_unstable();
                    p.dedup();
                    p
                })
                .collect();
            primes.sort();
            Ok(primes)
        }
        other => Err(Error::invalid(format!(
            "no prime decomposition rule for family `{}`",
            other.name()
        ))),
    }
}

/// Greedy arborescence growth avoiding the support of `m`, for a monomial
/// not in the oriented cut ideal. At each step the smallest eligible
/// (edge id, sense) leaving the grown set is taken.
pub fn find_tree_facet(g: &Graph, m: &Monomial) -> Result<PartialOrientation> {
    let vars = VariableSet::oriented(g);
    if m.exponents().len() != vars.len() {
        return Err(Error::invalid("monomial is not over the oriented edge variables"));
    }
    let cut_ideal = build_ideal(IdealKind::CutOriented, g)?;
    if cut_ideal.contains(m) {
        return Err(Error::invalid(
            "monomial lies in the oriented cut ideal; no facet contains it",
        ));
    }
    let forbidden: Vec<OrientedEdge> =
        m.support().iter().map(|&i| vars.oriented_at(i)).collect();
    let mut in_a = vec![false; g.vertex_count()];
    in_a[g.q()] = true;
    let mut tree = Vec::new();
    for _ in 1..g.vertex_count() {
        let step = g
            .oriented_edges()
            .into_iter()
            .find(|&oe| in_a[g.tail(oe)] && !in_a[g.head(oe)] && !forbidden.contains(&oe));
        let Some(oe) = step else {
            return Err(Error::Internal(
                "facet growth stalled on a monomial outside the cut ideal".into(),
            ));
        };
        in_a[g.head(oe)] = true;
        tree.push(oe);
    }
    PartialOrientation::new(g, tree)
}

/// Serializes a monomial as its sorted variable:exponent pairs.
pub fn monomial_json(m: &Monomial, vars: &VariableSet) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            map.insert(vars.name(i).to_string(), serde_json::json!(e));
        }
    }
    serde_json::Value::Object(map)
}

/// Serializes an ideal as its variable list and generator array.
pub fn ideal_json(ideal: &MonomialIdeal) -> serde_json::Value {
    serde_json::json!({
        "variables": ideal.vars.names(),
        "generators": ideal
            .generators()
            .iter()
            .map(|m| monomial_json(m, &ideal.vars))
            .collect::<Vec<_>>(),
    })
}
