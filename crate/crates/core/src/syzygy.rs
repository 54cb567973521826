//! Explicit minimal free resolutions of the oriented spanning-tree and path
//! ideals, built from the combinatorial bases (oriented k-spanning trees and
//! k-paths), plus combinatorial Betti tables for every ideal family.
//!
//! The differential of a basis element T sends it to the signed sum of
//! `y_e [T - e]` over the edges whose removal stays in the previous basis.
//! The sign of (T, e) with head v is
//!
//! ```text
//! (-1)^( sum over w < v of max(indeg_T(w) - 1, 0)  +  rank of e among the
//!        edges of T with head v, in (edge id, sense) order )
//! ```
//!
//! i.e. the Koszul sign of a tensor product of one exterior factor per
//! vertex. Removing edges at distinct heads then picks up opposite parities
//! along the two orders, which is what makes consecutive differentials
//! compose to zero.

use std::collections::BTreeMap;

use crate::betti::{BettiTable, HomologicalStats};
use crate::cells;
use crate::divisor::PartialOrientation;
use crate::error::Error;
use crate::graph::Graph;
use crate::ideal::{build_ideal, IdealKind, Monomial, MonomialIdeal, VariableSet};
use crate::oracle;
use crate::orient;
use crate::Result;

/// One term of a differential: `sign * y_var * [target basis element]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub sign: i8,
    pub var: usize,
    pub target: usize,
}

/// Levels of basis elements together with the maps between consecutive
/// levels. `differentials[k-1][j]` lists the image terms of the j-th basis
/// element of level k inside level k-1.
#[derive(Clone, Debug)]
pub struct SyzygyComplex {
    pub vars: VariableSet,
    pub levels: Vec<Vec<PartialOrientation>>,
    pub differentials: Vec<Vec<Vec<DiffEntry>>>,
}

fn koszul_sign(g: &Graph, t: &PartialOrientation, e: crate::graph::OrientedEdge) -> i8 {
    let v = g.head(e);
    let mut exponent = 0usize;
    let mut indeg = vec![0usize; g.vertex_count()];
    for &oe in t.edges() {
        indeg[g.head(oe)] += 1;
    }
    for w in 0..v {
        exponent += indeg[w].saturating_sub(1);
    }
    // edges of t with head v come in canonical order already
    let rank = t
        .edges()
        .iter()
        .filter(|&&oe| g.head(oe) == v)
        .position(|&oe| oe == e)
        .expect("edge not in basis element");
    exponent += rank;
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

fn basis_levels(
    g: &Graph,
    family: IdealKind,
) -> Result<Vec<Vec<PartialOrientation>>> {
    let mut levels: Vec<Vec<PartialOrientation>> = match family {
        IdealKind::SmtOriented => (0..=g.genus())
            .map(|k| {
                orient::enumerate_k_spanning_trees(g, k)
                    .map(|ts| ts.into_iter().map(|t| t.orientation).collect())
            })
            .collect::<Result<_>>()?,
        IdealKind::PathOriented => {
            let mut by_k: Vec<Vec<PartialOrientation>> = vec![Vec::new(); g.genus() + 1];
            for p in orient::all_k_paths(g, g.targets())? {
                by_k[p.k].push(p.orientation);
            }
            by_k
        }
        other => {
            return Err(Error::invalid(format!(
                "syzygy complexes are built for oriented tree and path families, not `{}`",
                other.name()
            )))
        }
    };
    while levels.last().is_some_and(|l| l.is_empty()) {
        levels.pop();
    }
    Ok(levels)
}

/// Builds the resolution complex for `smt_oriented` or `path_oriented`.
pub fn build_syzygy_complex(g: &Graph, family: IdealKind) -> Result<SyzygyComplex> {
    let vars = VariableSet::oriented(g);
    let levels = basis_levels(g, family)?;
    let mut differentials = Vec::new();
    for k in 1..levels.len() {
        let prev = &levels[k - 1];
        let mut maps = Vec::with_capacity(levels[k].len());
        for t in &levels[k] {
            let mut entries = Vec::new();
            for &e in t.edges() {
                let reduced = t.without(e);
                if let Ok(target) = prev.binary_search(&reduced) {
                    entries.push(DiffEntry {
                        sign: koszul_sign(g, t, e),
                        var: vars.index_of_oriented(e).unwrap(),
                        target,
                    });
                }
            }
            maps.push(entries);
        }
        differentials.push(maps);
    }
    Ok(SyzygyComplex { vars, levels, differentials })
}

/// Verification report for a syzygy complex; `ok` is the conjunction of all
/// individual checks, failures carry human-readable detail.
#[derive(Clone, Debug, serde::Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub level_ranks: Vec<u64>,
    pub failures: Vec<String>,
}

fn monomial_of(vars: &VariableSet, p: &PartialOrientation) -> Monomial {
    let support: Vec<usize> = p
        .edges()
        .iter()
        .map(|&oe| vars.index_of_oriented(oe).unwrap())
        .collect();
    Monomial::from_support(vars.len(), &support)
}

/// Checks that a complex is a minimal free resolution of the ideal:
/// level-0 basis = minimal generators, squared differential zero (including
/// the augmentation to the ideal), entries of positive degree, and level
/// ranks equal to the homology oracle's over the rationals and over a prime
/// field.
pub fn verify_complex(g: &Graph, c: &SyzygyComplex, ideal: &MonomialIdeal) -> VerifyReport {
    let mut failures = Vec::new();

    // (a) level-0 monomials match the minimal generators
    let mut level0: Vec<Monomial> = c
        .levels
        .first()
        .map(|l| l.iter().map(|p| monomial_of(&c.vars, p)).collect())
        .unwrap_or_default();
    level0.sort();
    let mut gens = ideal.generators().to_vec();
    gens.sort();
    if level0 != gens {
        failures.push("level-0 basis differs from the minimal generating set".into());
    }

    // (b) augmentation: d1 followed by [T] -> y^T must vanish
    if let Some(d1) = c.differentials.first() {
        for (j, entries) in d1.iter().enumerate() {
            let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
            for en in entries {
                let m = monomial_of(&c.vars, &c.levels[0][en.target])
                    .mul(&Monomial::from_support(c.vars.len(), &[en.var]));
                *acc.entry(m).or_insert(0) += en.sign as i64;
            }
            if acc.values().any(|&v| v != 0) {
                failures.push(format!("level-1 element {j} is not a syzygy"));
            }
        }
    }

    // (b') d o d = 0 with monomial coefficients
    for k in 2..c.levels.len() {
        let dk = &c.differentials[k - 1];
        let dk1 = &c.differentials[k - 2];
        for (j, entries) in dk.iter().enumerate() {
            let mut acc: BTreeMap<(usize, Monomial), i64> = BTreeMap::new();
            for en in entries {
                for en2 in &dk1[en.target] {
                    let mono = Monomial::from_support(c.vars.len(), &[en.var, en2.var]);
                    *acc.entry((en2.target, mono)).or_insert(0) +=
                        (en.sign * en2.sign) as i64;
                }
            }
            if acc.values().any(|&v| v != 0) {
                failures.push(format!(
                    "d o d != 0 at level {k}, basis element {j}"
                ));
            }
        }
    }

    // (c) minimality: every differential coefficient has positive degree
    for (k, dk) in c.differentials.iter().enumerate() {
        for entries in dk {
            if entries.iter().any(|en| {
                Monomial::from_support(c.vars.len(), &[en.var]).degree() == 0
            }) {
                failures.push(format!("level {} map has a unit coefficient", k + 1));
            }
        }
    }

    // (d) level ranks agree with the homology oracle over Q and a prime field
    let level_ranks: Vec<u64> = c.levels.iter().map(|l| l.len() as u64).collect();
    match oracle::betti_table_homology(ideal) {
        Ok(table) => {
            if table.level_ranks() != level_ranks {
                failures.push(format!(
                    "rank mismatch vs rational oracle: {:?} vs {:?}",
                    level_ranks,
                    table.level_ranks()
                ));
            }
        }
        Err(e) => failures.push(format!("rational oracle failed: {e}")),
    }
    match oracle::betti_table_homology_in::<crate::F32003>(ideal) {
        Ok(table) => {
            if table.level_ranks() != level_ranks {
                failures.push(format!(
                    "rank mismatch vs prime-field oracle: {:?} vs {:?}",
                    level_ranks,
                    table.level_ranks()
                ));
            }
        }
        Err(e) => failures.push(format!("prime-field oracle failed: {e}")),
    }

    let _ = g;
    VerifyReport { ok: failures.is_empty(), level_ranks, failures }
}

/// Combinatorial multigraded Betti table of an ideal family: tree and path
/// families from the orientation enumerations, cut families and the vertex
/// relabeling from cell counts of the bounded complex.
pub fn betti_table(g: &Graph, family: IdealKind) -> Result<BettiTable> {
    match family {
        IdealKind::Smt | IdealKind::SmtOriented => {
            let vars = if family == IdealKind::Smt {
                VariableSet::edges(g)
            } else {
                VariableSet::oriented(g)
            };
            let mut table = BettiTable::new(vars.clone());
            for k in 0..=g.genus() {
                for t in orient::enumerate_k_spanning_trees(g, k)? {
                    let deg = degree_of(&vars, &t.orientation);
                    table.add(k, deg, 1);
                }
            }
            Ok(table)
        }
        IdealKind::Path | IdealKind::PathOriented => {
            let vars = if family == IdealKind::Path {
                VariableSet::edges(g)
            } else {
                VariableSet::oriented(g)
            };
            let mut table = BettiTable::new(vars.clone());
            for p in orient::all_k_paths(g, g.targets())? {
                let deg = degree_of(&vars, &p.orientation);
                table.add(p.k, deg, 1);
            }
            Ok(table)
        }
        IdealKind::Cut | IdealKind::CutOriented | IdealKind::Mgq => {
            let vars = match family {
                IdealKind::Cut => VariableSet::edges(g),
                IdealKind::CutOriented => VariableSet::oriented(g),
                _ => VariableSet::vertices(g),
            };
            let complex = cells::build_bounded_complex(g);
            Ok(cells::labeled_betti(g, &complex, &vars))
        }
        IdealKind::CutSt | IdealKind::CutStOriented => {
            let t = g
                .targets()
                .first()
                .copied()
                .ok_or_else(|| Error::invalid("cut_st needs a target vertex"))?;
            let vars = if family == IdealKind::CutSt {
                VariableSet::edges(g)
            } else {
                VariableSet::oriented(g)
            };
            let complex = cells::build_bounded_complex(g);
            let sub = cells::sink_subcomplex(g, &complex, t)?;
            Ok(cells::labeled_betti(g, &sub, &vars))
        }
    }
}

fn degree_of(vars: &VariableSet, p: &PartialOrientation) -> Vec<u16> {
    match vars.kind {
        crate::ideal::VarKind::OrientedEdge => {
            let mut deg = vec![0u16; vars.len()];
            for &oe in p.edges() {
                deg[vars.index_of_oriented(oe).unwrap()] += 1;
            }
            deg
        }
        _ => {
            let mut deg = vec![0u16; vars.len()];
            for &oe in p.edges() {
                deg[vars.index_of_edge(oe.edge).unwrap()] += 1;
            }
            deg
        }
    }
}

/// Projective dimension and regularity extracted from an ideal-level table.
pub fn derived_homological_stats(t: &BettiTable) -> Option<HomologicalStats> {
    HomologicalStats::from_table(t)
}

/// Convenience: build, verify and return the complex and its report.
pub fn build_and_verify(g: &Graph, family: IdealKind) -> Result<(SyzygyComplex, VerifyReport)> {
    let ideal_kind = match family {
        IdealKind::SmtOriented => IdealKind::SmtOriented,
        IdealKind::PathOriented => IdealKind::PathOriented,
        _ => return Err(Error::invalid("complexes exist for oriented tree/path families")),
    };
    let ideal = build_ideal(ideal_kind, g)?;
    let complex = build_syzygy_complex(g, family)?;
    let report = verify_complex(g, &complex, &ideal);
    Ok((complex, report))
}

/// Oracle comparison for any family: combinatorial table vs homology table,
/// over the rationals and one prime field.
pub fn crosscheck_family(g: &Graph, family: IdealKind) -> Result<bool> {
    let combinatorial = betti_table(g, family)?;
    let ideal = build_ideal(family, g)?;
    let oracle_q = oracle::betti_table_homology(&ideal)?;
    let oracle_p = oracle::betti_table_homology_in::<crate::F32003>(&ideal)?;
    Ok(combinatorial == oracle_q && combinatorial == oracle_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn diamond_complex_ranks_and_verification() {
        let g = samples::diamond();
        let (c, report) = build_and_verify(&g, IdealKind::SmtOriented).unwrap();
        assert_eq!(report.level_ranks, vec![8, 11, 4]);
        assert!(report.ok, "failures: {:?}", report.failures);
        assert_eq!(c.levels.len(), 3);
    }

    #[test]
    fn triangle_complex() {
        let g = samples::triangle();
        let (_, report) = build_and_verify(&g, IdealKind::SmtOriented).unwrap();
        assert_eq!(report.level_ranks, vec![3, 2]);
        assert!(report.ok, "failures: {:?}", report.failures);
    }

    #[test]
    fn triangle_level1_signs_are_opposite() {
        // a 1-tree has exactly two removable edges, both into its double
        // vertex, and the two terms carry opposite signs
        let g = samples::triangle();
        let c = build_syzygy_complex(&g, IdealKind::SmtOriented).unwrap();
        for entries in &c.differentials[0] {
            assert_eq!(entries.len(), 2);
            assert_eq!(entries[0].sign * entries[1].sign, -1);
        }
    }

    #[test]
    fn directed_complex() {
        let g = samples::mixed_digraph();
        let (c, report) = build_and_verify(&g, IdealKind::SmtOriented).unwrap();
        assert_eq!(report.level_ranks, vec![4, 3]);
        assert!(report.ok, "failures: {:?}", report.failures);
        assert_eq!(c.levels.len(), 2);
    }

    #[test]
    fn perturbed_sign_fails_verification() {
        let g = samples::triangle();
        let mut c = build_syzygy_complex(&g, IdealKind::SmtOriented).unwrap();
        let ideal = build_ideal(IdealKind::SmtOriented, &g).unwrap();
        c.differentials[0][0][0].sign *= -1;
        let report = verify_complex(&g, &c, &ideal);
        assert!(!report.ok);
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("not a syzygy")));
    }

    #[test]
    fn path_complex_on_two_terminal_graph() {
        let g = samples::two_terminal();
        let (_, report) = build_and_verify(&g, IdealKind::PathOriented).unwrap();
        assert_eq!(report.level_ranks, vec![9, 25, 31, 18, 4]);
        assert!(report.ok, "failures: {:?}", report.failures);
    }

    #[test]
    fn combinatorial_tables_match_oracle_on_corpus() {
        for (name, g) in samples::checked_corpus() {
            for family in [IdealKind::Smt, IdealKind::SmtOriented, IdealKind::Cut] {
                assert!(
                    crosscheck_family(&g, family).unwrap(),
                    "mismatch for {name}/{family:?}"
                );
            }
        }
    }

    #[test]
    fn diamond_multigraded_entry() {
        let g = samples::diamond();
        let t = betti_table(&g, IdealKind::Smt).unwrap();
        assert_eq!(t.entries[&(1, vec![1, 1, 1, 1, 0])], 3);
    }

    #[test]
    fn oriented_tables_have_multiplicity_one() {
        let g = samples::diamond();
        for family in [IdealKind::SmtOriented, IdealKind::CutOriented] {
            let t = betti_table(&g, family).unwrap();
            assert!(t.entries.values().all(|&r| r == 1), "family {family:?}");
        }
    }

    #[test]
    fn z_graded_tables_coincide_oriented_vs_not() {
        for (name, g) in samples::checked_corpus() {
            for (a, b) in [
                (IdealKind::Smt, IdealKind::SmtOriented),
                (IdealKind::Cut, IdealKind::CutOriented),
            ] {
                let ta = betti_table(&g, a).unwrap().z_graded();
                let tb = betti_table(&g, b).unwrap().z_graded();
                assert_eq!(ta, tb, "graph {name} families {a:?}/{b:?}");
            }
        }
    }

    #[test]
    fn folding_oriented_matches_edge_multidegrees() {
        let g = samples::diamond();
        let oriented = betti_table(&g, IdealKind::SmtOriented).unwrap();
        let plain = betti_table(&g, IdealKind::Smt).unwrap();
        // fold y-degrees onto x-degrees and compare entrywise
        let mut folded: BTreeMap<(usize, Vec<u16>), u64> = BTreeMap::new();
        for ((i, deg), &r) in &oriented.entries {
            let mut x = vec![0u16; g.edge_count()];
            for (vi, &e) in deg.iter().enumerate() {
                if e > 0 {
                    let oe = oriented.vars.oriented_at(vi);
                    x[plain.vars.index_of_edge(oe.edge).unwrap()] += e;
                }
            }
            *folded.entry((*i, x)).or_insert(0) += r;
        }
        assert_eq!(folded, plain.entries);
    }

    #[test]
    fn stats_pd_equals_genus() {
        for (name, g) in samples::checked_corpus() {
            let t = betti_table(&g, IdealKind::Smt).unwrap();
            let stats = derived_homological_stats(&t).unwrap();
            assert_eq!(stats.pd_ideal, g.genus(), "graph {name}");
        }
    }

    #[test]
    fn stats_reg_of_cut_quotient_equals_genus() {
        for (name, g) in samples::checked_corpus() {
            let t = betti_table(&g, IdealKind::Cut).unwrap();
            let stats = derived_homological_stats(&t).unwrap();
            assert_eq!(stats.reg_quotient, g.genus(), "graph {name}");
        }
    }

    #[test]
    fn tree_smt_is_principal() {
        let g = crate::graph::Graph::parse("vertices 3\nq 0\nedge 1 0 1\nedge 2 1 2\n").unwrap();
        let t = betti_table(&g, IdealKind::Smt).unwrap();
        let stats = derived_homological_stats(&t).unwrap();
        assert_eq!(stats.pd_ideal, 0);
    }

    #[test]
    fn per_orientation_multidegree_union() {
        // the four top orientations of the diamond generate per-orientation
        // tables whose multidegree unions have sizes 8 / 11 / 4
        let g = samples::diamond();
        let tops = orient::enumerate_acyclic_unique_source(&g);
        assert_eq!(tops.len(), 4);
        let mut unions: Vec<std::collections::BTreeSet<Vec<(usize, crate::graph::Dir)>>> =
            vec![Default::default(); 3];
        for top in &tops {
            // orient the diamond as this top cell dictates
            let edges: Vec<crate::graph::Edge> = g
                .edges()
                .iter()
                .map(|e| {
                    let oe = top
                        .edges()
                        .iter()
                        .find(|oe| oe.edge == e.id)
                        .copied()
                        .unwrap();
                    let (u, v) = (g.tail(oe), g.head(oe));
                    crate::graph::Edge { id: e.id, u, v, directed: true }
                })
                .collect();
            let og = Graph::new(4, edges, g.q(), vec![]).unwrap();
            for k in 0..=og.genus() {
                for t in orient::enumerate_k_spanning_trees(&og, k).unwrap() {
                    let key: Vec<(usize, crate::graph::Dir)> = t
                        .orientation
                        .edges()
                        .iter()
                        .map(|&oe| {
                            // normalize to the original graph's sense
                            let head = og.head(oe);
                            let orig = g.edge(oe.edge);
                            if orig.v == head {
                                (oe.edge, crate::graph::Dir::Fwd)
                            } else {
                                (oe.edge, crate::graph::Dir::Rev)
                            }
                        })
                        .collect();
                    unions[k].insert(key);
                }
            }
        }
        assert_eq!(
            unions.iter().map(|u| u.len()).collect::<Vec<_>>(),
            vec![8, 11, 4]
        );
    }
}
