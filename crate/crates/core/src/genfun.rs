//! Generating functions of system ideals: the star-mesh vertex-elimination
//! algorithm for path ideals, and the effective-conductance contraction
//! recursion for spanning-tree generating functions.
//!
//! Path weights live in the "simple walk" algebra: monomials are sets of
//! oriented edges, and a concatenation product that would traverse some
//! underlying edge twice (in either sense) is dropped, since the walk it
//! represents is not simple and its reduced edge set is counted elsewhere.
//! Fraction bookkeeping (divisions by vertex throughput, multiplied back at
//! the end) uses plain polynomial arithmetic.

use num_traits::One;

use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::ideal::VariableSet;
use crate::orient;
use crate::{QPoly, Rat, Result};

/// Quotient of two polynomials; `den` is built from throughput factors and
/// must divide the final numerator exactly.
#[derive(Clone, Debug)]
pub struct RationalExpression {
    pub num: QPoly,
    pub den: QPoly,
}

impl RationalExpression {
    fn zero(nvars: usize) -> Self {
        RationalExpression { num: QPoly::zero(nvars), den: QPoly::one(nvars) }
    }

    fn from_poly(num: QPoly) -> Self {
        let nvars = num.nvars;
        RationalExpression { num, den: QPoly::one(nvars) }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        RationalExpression {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    fn mul_plain(&self, other: &Self) -> Self {
        RationalExpression {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    /// Clears to a polynomial; the remainder must vanish.
    fn into_polynomial(self) -> Result<QPoly> {
        self.num
            .divide_exact(&self.den)
            .ok_or_else(|| Error::Internal("throughput factors did not clear".into()))
    }
}

/// Concatenation product in the simple-walk algebra: terms sharing an
/// underlying edge (in either sense) are dropped.
fn walk_mul(vars: &VariableSet, a: &QPoly, b: &QPoly) -> QPoly {
    let edge_mask = |exps: &[u16]| -> u64 {
        let mut m = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << vars.oriented_at(i).edge;
            }
        }
        m
    };
    let mut out = QPoly::zero(a.nvars);
    for (ea, ca) in a.terms() {
        let ma = edge_mask(ea);
        for (eb, cb) in b.terms() {
            if ma & edge_mask(eb) != 0 {
                continue;
            }
            let exps: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.add_term(exps, ca.clone() * cb.clone());
        }
    }
    out
}

fn walk_mul_rational(
    vars: &VariableSet,
    a: &RationalExpression,
    b: &RationalExpression,
) -> RationalExpression {
    RationalExpression {
        num: walk_mul(vars, &a.num, &b.num),
        den: a.den.mul(&b.den),
    }
}

/// Star-mesh generating function of the oriented path ideal: eliminates the
/// non-terminal vertices one at a time, rewriting edge weights so that the
/// sum of minimal q-to-targets monomials is preserved, then clears the
/// throughput factors of eliminated targets.
pub fn path_genfun_starmesh(g: &Graph, targets: &[VertexId]) -> Result<QPoly> {
    if targets.is_empty() {
        return Err(Error::invalid("at least one target is required"));
    }
    for &t in targets {
        if t >= g.vertex_count() || t == g.q() {
            return Err(Error::invalid(format!("bad target {t}")));
        }
    }
    let vars = VariableSet::oriented(g);
    let nvars = vars.len();
    let last = *targets.iter().max().unwrap();
    let n = g.vertex_count();

    // weight matrix over ordered vertex pairs, parallels merged by addition
    let mut w: Vec<Vec<RationalExpression>> =
        vec![vec![RationalExpression::zero(nvars); n]; n];
    for oe in g.oriented_edges() {
        let (t, h) = (g.tail(oe), g.head(oe));
        let var = vars.index_of_oriented(oe).unwrap();
        let term = QPoly::var(nvars, var);
        w[t][h] = w[t][h].add(&RationalExpression::from_poly(term));
    }

    let mut alive: Vec<bool> = vec![true; n];
    let mut throughput_product = RationalExpression::from_poly(QPoly::one(nvars));
    let order: Vec<VertexId> = (0..n).filter(|&v| v != g.q() && v != last).collect();
    for &v in &order {
        let is_target = targets.contains(&v);
        let mu = if is_target {
            let mut m = RationalExpression::zero(nvars);
            for u in 0..n {
                if alive[u] && u != v {
                    m = m.add(&w[u][v]);
                }
            }
            if m.is_zero() {
                return Err(Error::invalid(format!(
                    "target {v} has no incoming weight; it is unreachable"
                )));
            }
            m
        } else {
            RationalExpression::from_poly(QPoly::one(nvars))
        };

        let neighbors: Vec<VertexId> = (0..n).filter(|&u| alive[u] && u != v).collect();
        let mut updates: Vec<(VertexId, VertexId, RationalExpression)> = Vec::new();
        for &a in &neighbors {
            if w[a][v].is_zero() {
                continue;
            }
            for &b in &neighbors {
                if a == b || w[v][b].is_zero() {
                    continue;
                }
                let through = walk_mul_rational(&vars, &w[a][v], &w[v][b]);
                // divide by the throughput of an eliminated target
                let scaled = RationalExpression {
                    num: through.num.mul(&mu.den),
                    den: through.den.mul(&mu.num),
                };
                updates.push((a, b, scaled));
            }
        }
        for (a, b, delta) in updates {
            w[a][b] = w[a][b].add(&delta);
        }
        for u in 0..n {
            w[u][v] = RationalExpression::zero(nvars);
            w[v][u] = RationalExpression::zero(nvars);
        }
        alive[v] = false;
        if is_target {
            throughput_product = throughput_product.mul_plain(&mu);
        }
    }

    let total = w[g.q()][last].mul_plain(&throughput_product);
    if total.is_zero() {
        return Err(Error::invalid("no path from q reaches the targets"));
    }
    let phi = total.into_polynomial()?;
    for (_, c) in phi.terms() {
        if c != &Rat::one() {
            return Err(Error::Internal(format!(
                "generating function has a non-unit coefficient {c}"
            )));
        }
    }
    Ok(phi)
}

/// Sum of the k = 0 path monomials, for cross-checking the star-mesh route.
pub fn path_genfun_by_enumeration(g: &Graph, targets: &[VertexId]) -> Result<QPoly> {
    let vars = VariableSet::oriented(g);
    let mut phi = QPoly::zero(vars.len());
    for p in orient::enumerate_k_paths(g, targets, 0)? {
        let mut exps = vec![0u16; vars.len()];
        for &oe in p.orientation.edges() {
            exps[vars.index_of_oriented(oe).unwrap()] = 1;
        }
        phi.add_term(exps, Rat::one());
    }
    Ok(phi)
}

/// Spanning-tree generating function (sum of `x^T` over spanning trees) via
/// the effective-conductance contraction recursion: pull vertices into the
/// q-blob one at a time, multiplying the effective conductances of the
/// contracted connecting edges.
pub fn spanning_genfun_conductance(g: &Graph) -> Result<QPoly> {
    if g.is_directed() {
        return Err(Error::invalid(
            "the conductance recursion needs an undirected graph",
        ));
    }
    let vars = VariableSet::edges(g);
    let nvars = vars.len();
    let n = g.vertex_count();

    // symmetric conductance matrix with parallels merged
    let mut c: Vec<Vec<QPoly>> = vec![vec![QPoly::zero(nvars); n]; n];
    for e in g.edges() {
        let var = vars.index_of_edge(e.id).unwrap();
        let term = QPoly::var(nvars, var);
        c[e.u][e.v] = c[e.u][e.v].add(&term);
        c[e.v][e.u] = c[e.v][e.u].add(&term);
    }

    let mut alive: Vec<bool> = vec![true; n];
    let mut merged_into_blob = vec![false; n];
    merged_into_blob[g.q()] = true;
    let mut phi = RationalExpression::from_poly(QPoly::one(nvars));
    for _ in 1..n {
        // next vertex: smallest id adjacent to the blob
        let v = (0..n)
            .find(|&v| alive[v] && !merged_into_blob[v] && !c[g.q()][v].is_zero())
            .ok_or_else(|| Error::Internal("blob lost adjacency; graph was connected".into()))?;
        let eff = effective_conductance(&c, &alive, g.q(), v, nvars);
        phi = phi.mul_plain(&eff);
        // contract v into the blob
        let mut updates = Vec::new();
        for u in 0..n {
            if alive[u] && u != v && u != g.q() && !c[v][u].is_zero() {
                updates.push((u, c[v][u].clone()));
            }
        }
        for (u, weight) in updates {
            c[g.q()][u] = c[g.q()][u].add(&weight);
            c[u][g.q()] = c[u][g.q()].add(&weight);
        }
        for u in 0..n {
            c[v][u] = QPoly::zero(nvars);
            c[u][v] = QPoly::zero(nvars);
        }
        alive[v] = false;
        merged_into_blob[v] = true;
    }
    phi.into_polynomial()
}

/// Effective conductance between `s` and `t`: eliminate every other alive
/// vertex by the conductance star-mesh rule and read off the remaining
/// weight.
fn effective_conductance(
    c: &[Vec<QPoly>],
    alive: &[bool],
    s: VertexId,
    t: VertexId,
    nvars: usize,
) -> RationalExpression {
    let n = alive.len();
    let mut w: Vec<Vec<RationalExpression>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| RationalExpression::from_poly(c[a][b].clone()))
                .collect()
        })
        .collect();
    let mut live = alive.to_vec();
    for v in 0..n {
        if !live[v] || v == s || v == t {
            continue;
        }
        let mut mu = RationalExpression::zero(nvars);
        for u in 0..n {
            if live[u] && u != v {
                mu = mu.add(&w[v][u]);
            }
        }
        let neighbors: Vec<usize> = (0..n)
            .filter(|&u| live[u] && u != v && !w[v][u].is_zero())
            .collect();
        for i in 0..neighbors.len() {
            for j in i + 1..neighbors.len() {
                let (a, b) = (neighbors[i], neighbors[j]);
                let through = w[a][v].mul_plain(&w[v][b]);
                let scaled = RationalExpression {
                    num: through.num.mul(&mu.den),
                    den: through.den.mul(&mu.num),
                };
                w[a][b] = w[a][b].add(&scaled);
                w[b][a] = w[a][b].clone();
            }
        }
        for u in 0..n {
            w[v][u] = RationalExpression::zero(nvars);
            w[u][v] = RationalExpression::zero(nvars);
        }
        live[v] = false;
    }
    w[s][t].clone()
}

/// Pretty form of a generating function over a variable set, one monomial
/// per summand.
pub fn genfun_terms(vars: &VariableSet, phi: &QPoly) -> Vec<String> {
    phi.terms()
        .map(|(exps, _)| {
            let names: Vec<&str> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| vars.name(i))
                .collect();
            names.join("*")
        })
        .collect()
}
