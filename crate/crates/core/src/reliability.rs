//! Exact reliability: K-polynomials of Betti tables, their evaluation at
//! edge probabilities, the brute-force state-enumeration oracle, the Tutte
//! polynomial, and the h-vector / multiplicity / Alexander-inversion
//! consistency checks.

use num_traits::{One, Zero};

use crate::betti::BettiTable;
use crate::error::Error;
use crate::graph::{EdgeId, Graph};
use crate::ideal::{IdealKind, MonomialIdeal};
use crate::poly::uni;
use crate::{QPoly, Rat, Result};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Numerator of the multigraded Hilbert series of the ideal:
/// `K_I = sum_i (-1)^i sum_j beta_{i,j} x^j`.
pub fn k_polynomial(t: &BettiTable) -> QPoly {
    let nvars = t.vars.len();
    let mut p = QPoly::zero(nvars);
    for ((i, deg), &r) in &t.entries {
        let sign = if i % 2 == 0 { rat(r as i64) } else { -rat(r as i64) };
        p.add_term(deg.clone(), sign);
    }
    p
}

/// Numerator for the quotient module: `1 - K_I`.
pub fn k_polynomial_quotient(t: &BettiTable) -> QPoly {
    QPoly::one(t.vars.len()).sub(&k_polynomial(t))
}

fn check_probability_range(probs: &[Rat]) -> Result<()> {
    for p in probs {
        if p < &Rat::zero() || p > &Rat::one() {
            return Err(Error::invalid(format!("probability {p} outside [0, 1]")));
        }
    }
    Ok(())
}

/// Reliability as the K-polynomial of the table evaluated at the given
/// per-variable probabilities.
pub fn reliability_exact(t: &BettiTable, probs: &[Rat]) -> Result<Rat> {
    if probs.len() != t.vars.len() {
        return Err(Error::invalid(format!(
            "expected {} probabilities, got {}",
            t.vars.len(),
            probs.len()
        )));
    }
    check_probability_range(probs)?;
    Ok(k_polynomial(t).evaluate(probs))
}

const MAX_BRUTEFORCE_VARS: usize = 22;

/// Brute-force reliability: sum over all working-variable subsets containing
/// a generator support of the product of working/failing probabilities.
pub fn reliability_bruteforce(ideal: &MonomialIdeal, probs: &[Rat]) -> Result<Rat> {
    let n = ideal.vars.len();
    if probs.len() != n {
        return Err(Error::invalid(format!(
            "expected {n} probabilities, got {}",
            probs.len()
        )));
    }
    check_probability_range(probs)?;
    if n > MAX_BRUTEFORCE_VARS {
        return Err(Error::ResourceGuard(format!(
            "brute-force enumeration limited to {MAX_BRUTEFORCE_VARS} variables, got {n}"
        )));
    }
    let gen_masks: Vec<u64> = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut m = 0u64;
            for i in g.support() {
                m |= 1 << i;
            }
            m
        })
        .collect();
    let mut total = Rat::zero();
    for state in 0..(1u64 << n) {
        if !gen_masks.iter().any(|&g| g & state == g) {
            continue;
        }
        let mut term = Rat::one();
        for (i, p) in probs.iter().enumerate() {
            if state >> i & 1 == 1 {
                term *= p.clone();
            } else {
                term *= Rat::one() - p.clone();
            }
        }
        total += term;
    }
    Ok(total)
}

/// Internal multigraph for deletion-contraction; loops and parallel edges
/// both arise during the recursion.
#[derive(Clone)]
struct DcGraph {
    n: usize,
    edges: Vec<(usize, usize)>, // endpoints; equal endpoints = loop
}

fn tutte_rec(g: &DcGraph, x: &QPoly, y: &QPoly) -> QPoly {
    let Some(&(u, v)) = g.edges.first() else {
        return QPoly::one(2);
    };
    let rest = DcGraph { n: g.n, edges: g.edges[1..].to_vec() };
    if u == v {
        // loop
        return y.mul(&tutte_rec(&rest, x, y));
    }
    // bridge test: does deleting the edge disconnect u from v?
    let mut reach = vec![false; g.n];
    reach[u] = true;
    let mut stack = vec![u];
    while let Some(w) = stack.pop() {
        for &(a, b) in &rest.edges {
            let other = if a == w {
                b
            } else if b == w {
                a
            } else {
                continue;
            };
            if !reach[other] {
                reach[other] = true;
                stack.push(other);
            }
        }
    }
    let contracted = DcGraph {
        n: g.n,
        edges: rest
            .edges
            .iter()
            .map(|&(a, b)| {
                let a2 = if a == v { u } else { a };
                let b2 = if b == v { u } else { b };
                (a2, b2)
            })
            .collect(),
    };
    if !reach[v] {
        // bridge
        x.mul(&tutte_rec(&contracted, x, y))
    } else {
        tutte_rec(&rest, x, y).add(&tutte_rec(&contracted, x, y))
    }
}

/// Tutte polynomial by deletion-contraction, in variables x (index 0) and
/// y (index 1).
pub fn tutte_polynomial(g: &Graph) -> Result<QPoly> {
    if g.is_directed() {
        return Err(Error::invalid("the Tutte polynomial needs an undirected graph"));
    }
    let dc = DcGraph {
        n: g.vertex_count(),
        edges: g.edges().iter().map(|e| (e.u, e.v)).collect(),
    };
    let x = QPoly::var(2, 0);
    let y = QPoly::var(2, 1);
    Ok(tutte_rec(&dc, &x, &y))
}

/// Coefficients of `T(1, y)` in ascending powers of y.
pub fn tutte_at_one(g: &Graph) -> Result<Vec<Rat>> {
    let t = tutte_polynomial(g)?;
    let mut out: Vec<Rat> = Vec::new();
    for (exps, c) in t.terms() {
        let d = exps[1] as usize;
        if out.len() <= d {
            out.resize(d + 1, Rat::zero());
        }
        out[d] += c.clone();
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

/// h-vector of the cut-ideal quotient: the Z-graded quotient numerator
/// divided by `(1-t)^(n-1)` (the codimension), as ascending coefficients.
pub fn cut_h_vector(g: &Graph) -> Result<Vec<Rat>> {
    let table = crate::syzygy::betti_table(g, IdealKind::Cut)?;
    let numerator = k_polynomial_quotient(&table).to_univariate();
    let codim = g.vertex_count() - 1;
    uni::divide_by_one_minus_t(&numerator, codim)
        .ok_or_else(|| Error::Internal("cut quotient numerator not divisible by (1-t)^codim".into()))
}

/// The h-vector of the cut quotient read against the Tutte polynomial:
/// `h_i = [y^(g-i)] T(1, y)`, i.e. the reversed coefficient list.
pub fn h_vector_check(g: &Graph) -> Result<bool> {
    let h = cut_h_vector(g)?;
    let mut t1y = tutte_at_one(g)?;
    t1y.reverse();
    // pad tails with zeros to the same length
    let len = h.len().max(t1y.len());
    let mut h = h;
    h.resize(len, Rat::zero());
    t1y.resize(len, Rat::zero());
    Ok(h == t1y)
}

/// Multiplicity of the cut quotient: h(1), which must equal the spanning
/// tree count (arborescence count when directed).
pub fn multiplicity_check(g: &Graph) -> Result<bool> {
    let table = crate::syzygy::betti_table(g, IdealKind::Cut)?;
    let numerator = k_polynomial_quotient(&table).to_univariate();
    let codim = g.vertex_count() - 1;
    let h = uni::divide_by_one_minus_t(&numerator, codim)
        .ok_or_else(|| Error::Internal("cut quotient numerator not divisible by (1-t)^codim".into()))?;
    let mult = uni::eval_at_one(&h);
    Ok(mult == rat(g.spanning_tree_count() as i64))
}

/// Alexander inversion: the multigraded cut-quotient numerator equals the
/// path-ideal numerator with every variable replaced by its complement.
pub fn alexander_inversion_check(g: &Graph, t: usize) -> Result<bool> {
    if t == g.q() {
        return Err(Error::invalid("target must differ from q"));
    }
    let mut g2 = g.clone();
    if !g.targets().contains(&t) {
        // rebuild with the requested target
        g2 = rebuild_with_target(g, t)?;
    }
    let cut_table = crate::syzygy::betti_table(&g2, IdealKind::CutSt)?;
    let path_table = crate::syzygy::betti_table(&g2, IdealKind::Path)?;
    let cut_quotient = k_polynomial_quotient(&cut_table);
    let path_numerator = k_polynomial(&path_table);
    Ok(cut_quotient == path_numerator.substitute_one_minus())
}

fn rebuild_with_target(g: &Graph, t: usize) -> Result<Graph> {
    Graph::new(
        g.vertex_count(),
        g.edges().to_vec(),
        g.q(),
        vec![t],
    )
}

/// Per-edge probability vector applied to a variable set: edge variables get
/// `p[e]`, oriented-edge variables get the probability of their underlying
/// edge, vertex variables are rejected.
pub fn probabilities_for_vars(
    vars: &crate::ideal::VariableSet,
    per_edge: &dyn Fn(EdgeId) -> Rat,
) -> Result<Vec<Rat>> {
    use crate::ideal::VarKind;
    match vars.kind {
        VarKind::Edge => Ok((0..vars.len()).map(|i| per_edge(vars.edge_id_at(i))).collect()),
        VarKind::OrientedEdge => Ok((0..vars.len())
            .map(|i| per_edge(vars.oriented_at(i).edge))
            .collect()),
        VarKind::Vertex => Err(Error::invalid(
            "vertex-variable ideals have no per-edge probability semantics",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::ideal::build_ideal;
    use crate::samples;
    use crate::syzygy::betti_table;

    fn half() -> Rat {
        Rat::new(1.into(), 2.into())
    }

    #[test]
    fn diamond_smt_k_polynomial() {
        let g = samples::diamond();
        let t = betti_table(&g, IdealKind::Smt).unwrap();
        let k = k_polynomial(&t).to_univariate();
        // 8t^3 - 11t^4 + 4t^5
        assert_eq!(
            k,
            vec![rat(0), rat(0), rat(0), rat(8), rat(-11), rat(4)]
        );
        let kq = k_polynomial_quotient(&t).to_univariate();
        assert_eq!(
            kq,
            vec![rat(1), rat(0), rat(0), rat(-8), rat(11), rat(-4)]
        );
    }

    #[test]
    fn principal_and_two_variable_k_polynomials() {
        use crate::ideal::{Monomial, MonomialIdeal, VariableSet};
        let g = samples::triangle();
        let vars = VariableSet::edges(&g);
        let one_gen = MonomialIdeal::new(vars.clone(), vec![Monomial::from_support(3, &[0])]);
        let t = crate::oracle::betti_table_homology(&one_gen).unwrap();
        let k = k_polynomial(&t);
        assert_eq!(k, QPoly::var(3, 0));

        let two = MonomialIdeal::new(
            vars,
            vec![
                Monomial::from_support(3, &[0]),
                Monomial::from_support(3, &[1]),
            ],
        );
        let t = crate::oracle::betti_table_homology(&two).unwrap();
        let k = k_polynomial(&t);
        let expect = QPoly::var(3, 0)
            .add(&QPoly::var(3, 1))
            .sub(&QPoly::var(3, 0).mul(&QPoly::var(3, 1)));
        assert_eq!(k, expect);
    }

    #[test]
    fn diamond_smt_reliability_at_half() {
        let g = samples::diamond();
        let table = betti_table(&g, IdealKind::Smt).unwrap();
        let probs = vec![half(); 5];
        let r = reliability_exact(&table, &probs).unwrap();
        assert_eq!(r, Rat::new(7.into(), 16.into()));
        let ideal = build_ideal(IdealKind::Smt, &g).unwrap();
        assert_eq!(reliability_bruteforce(&ideal, &probs).unwrap(), r);
    }

    #[test]
    fn reliability_extremes() {
        let g = samples::diamond();
        let table = betti_table(&g, IdealKind::Smt).unwrap();
        assert_eq!(
            reliability_exact(&table, &vec![Rat::one(); 5]).unwrap(),
            Rat::one()
        );
        assert_eq!(
            reliability_exact(&table, &vec![Rat::zero(); 5]).unwrap(),
            Rat::zero()
        );
        assert!(reliability_exact(&table, &vec![rat(2); 5]).is_err());
    }

    #[test]
    fn bruteforce_simple_ideals() {
        use crate::ideal::{Monomial, MonomialIdeal, VariableSet};
        let g = samples::triangle();
        let vars = VariableSet::edges(&g);
        let principal =
            MonomialIdeal::new(vars.clone(), vec![Monomial::from_support(3, &[0])]);
        let p3 = Rat::new(1.into(), 3.into());
        let probs = vec![p3.clone(), half(), half()];
        assert_eq!(reliability_bruteforce(&principal, &probs).unwrap(), p3);

        let series = MonomialIdeal::new(vars, vec![Monomial::from_support(3, &[0, 1])]);
        let probs = vec![half(), half(), half()];
        assert_eq!(
            reliability_bruteforce(&series, &probs).unwrap(),
            Rat::new(1.into(), 4.into())
        );
    }

    #[test]
    fn tutte_base_cases() {
        let bridge = Graph::parse("vertices 2\nq 0\nedge 1 0 1\n").unwrap();
        let t = tutte_polynomial(&bridge).unwrap();
        assert_eq!(t, QPoly::var(2, 0));

        let tri = samples::triangle();
        let t = tutte_polynomial(&tri).unwrap();
        // x^2 + x + y
        let expect = QPoly::var(2, 0)
            .mul(&QPoly::var(2, 0))
            .add(&QPoly::var(2, 0))
            .add(&QPoly::var(2, 1));
        assert_eq!(t, expect);
    }

    #[test]
    fn tutte_counts_spanning_trees() {
        for (name, g) in samples::checked_corpus() {
            let t = tutte_polynomial(&g).unwrap();
            let count = t.evaluate(&[Rat::one(), Rat::one()]);
            assert_eq!(count, rat(g.spanning_tree_count() as i64), "graph {name}");
        }
    }

    #[test]
    fn h_vector_and_multiplicity() {
        for (name, g) in samples::checked_corpus() {
            assert!(h_vector_check(&g).unwrap(), "h-vector failed on {name}");
            assert!(multiplicity_check(&g).unwrap(), "multiplicity failed on {name}");
        }
    }

    #[test]
    fn h_vector_of_tree_is_one() {
        let g = Graph::parse("vertices 3\nq 0\nedge 1 0 1\nedge 2 1 2\n").unwrap();
        assert!(h_vector_check(&g).unwrap());
        assert_eq!(cut_h_vector(&g).unwrap(), vec![Rat::one()]);
    }

    #[test]
    fn alexander_inversion_on_named_graphs() {
        let g = samples::diamond();
        assert!(alexander_inversion_check(&g, 1).unwrap());
        let g = samples::two_terminal();
        assert!(alexander_inversion_check(&g, 4).unwrap());
        let single = Graph::parse("vertices 2\nq 0\nt 1\nedge 1 0 1\n").unwrap();
        assert!(alexander_inversion_check(&single, 1).unwrap());
    }

    #[test]
    fn complement_duality() {
        // reliability of the system plus the dual system's reliability at
        // complementary probabilities is 1
        let g = samples::two_terminal();
        let cut = build_ideal(IdealKind::CutSt, &g).unwrap();
        let path = build_ideal(IdealKind::Path, &g).unwrap();
        let probs: Vec<Rat> = (0..8).map(|i| Rat::new((i as i64 + 1).into(), 10.into())).collect();
        let co: Vec<Rat> = probs.iter().map(|p| Rat::one() - p.clone()).collect();
        let r = reliability_bruteforce(&path, &probs).unwrap();
        let u = reliability_bruteforce(&cut, &co).unwrap();
        assert_eq!(r + u, Rat::one());
    }
}
