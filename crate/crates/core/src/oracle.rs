//! Independent Betti-number oracle: multigraded Betti numbers of squarefree
//! monomial ideals via reduced simplicial homology of upper Koszul
//! subcomplexes, with exact rank computations over the rationals or a prime
//! field. Non-squarefree input is polarized first.
//!
//! Only the lcm lattice of the generators is visited; every other
//! multidegree has vanishing homology.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::betti::BettiTable;
use crate::error::Error;
use crate::field::Scalar;
use crate::ideal::MonomialIdeal;
use crate::linalg::SparseMatrix;
use crate::{Rat, Result};

const MAX_ORACLE_VARS: usize = 20;

/// Faces stored as vertex bitmasks, grouped by dimension (|face| - 1).
/// The empty face participates in the augmented (reduced) chain complex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    faces_by_size: Vec<Vec<u64>>,
}

impl SimplicialComplex {
    /// Downward closure of a facet list. Facets that are faces of others are
    /// absorbed silently.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Self {
        assert!(vertex_count <= 63);
        let mut masks = BTreeSet::new();
        for f in facets {
            let mut m = 0u64;
            for &v in f {
                assert!(v < vertex_count);
                m |= 1 << v;
            }
            // enumerate submasks of m, including 0
            let mut sub = m;
            loop {
                masks.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        Self::from_face_masks(vertex_count, masks)
    }

    pub(crate) fn from_face_masks(vertex_count: usize, masks: BTreeSet<u64>) -> Self {
        let mut faces_by_size: Vec<Vec<u64>> = Vec::new();
        for m in masks {
            let size = m.count_ones() as usize;
            if faces_by_size.len() <= size {
                faces_by_size.resize(size + 1, Vec::new());
            }
            faces_by_size[size].push(m);
        }
        SimplicialComplex { vertex_count, faces_by_size }
    }

    pub fn is_void(&self) -> bool {
        self.faces_by_size.is_empty()
    }

    /// Face counts indexed by dimension + 1 (entry 0 counts the empty face).
    pub fn face_counts(&self) -> Vec<usize> {
        self.faces_by_size.iter().map(|f| f.len()).collect()
    }

    fn faces_of_size(&self, size: usize) -> &[u64] {
        static EMPTY: &[u64] = &[];
        self.faces_by_size.get(size).map(|v| v.as_slice()).unwrap_or(EMPTY)
    }
}

/// Reduced homology ranks per dimension (dimension -1 is meaningful for the
/// irrelevant complex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub ranks: BTreeMap<i32, usize>,
}

impl RankProfile {
    pub fn rank(&self, dim: i32) -> usize {
        self.ranks.get(&dim).copied().unwrap_or(0)
    }
}

/// Rank of the boundary map from size-s faces to size-(s-1) faces.
fn boundary_rank<F: Scalar>(c: &SimplicialComplex, s: usize) -> usize {
    let cols = c.faces_of_size(s);
    let rows = c.faces_of_size(s.wrapping_sub(1));
    if s == 0 || cols.is_empty() || rows.is_empty() {
        return 0;
    }
    let row_index: BTreeMap<u64, usize> = rows.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut mat = SparseMatrix::<F>::new(rows.len(), cols.len());
    for (j, &face) in cols.iter().enumerate() {
        let mut sign = 1i64;
        for v in 0..c.vertex_count {
            let bit = 1u64 << v;
            if face & bit != 0 {
                let sub = face & !bit;
                let i = row_index[&sub];
                mat.set(i, j, F::from_i64(sign));
                sign = -sign;
            }
        }
    }
    mat.rank()
}

/// Reduced simplicial homology ranks over a chosen field.
pub fn homology_ranks_in<F: Scalar>(c: &SimplicialComplex) -> RankProfile {
    let mut ranks = BTreeMap::new();
    if c.is_void() {
        return RankProfile { ranks };
    }
    let max_size = c.faces_by_size.len() - 1;
    // rank of boundary from size s to size s-1, for s = 0..=max_size+1
    let b: Vec<usize> = (0..=max_size + 1)
        .map(|s| boundary_rank::<F>(c, s))
        .collect();
    for s in 0..=max_size {
        let f = c.faces_of_size(s).len();
        // H_(s-1) in reduced convention: chains are size-s faces
        let kernel = f - b[s];
        let image = b[s + 1];
        let h = kernel - image;
        if h > 0 {
            ranks.insert(s as i32 - 1, h);
        }
    }
    RankProfile { ranks }
}

/// Reduced homology over the rationals.
pub fn homology_ranks(c: &SimplicialComplex) -> RankProfile {
    homology_ranks_in::<Rat>(c)
}

/// Polarization of a monomial ideal: each power `x^e` becomes a product of
/// `e` fresh squarefree slots. Betti numbers are preserved; multidegrees
/// fold back by counting slots per original variable.
fn polarize(ideal: &MonomialIdeal) -> (Vec<Vec<u16>>, Vec<usize>, usize) {
    let nvars = ideal.vars.len();
    let mut max_exp = vec![0u16; nvars];
    for g in ideal.generators() {
        for (i, &e) in g.exponents().iter().enumerate() {
            max_exp[i] = max_exp[i].max(e);
        }
    }
    let mut slot_owner = Vec::new(); // polarized slot -> original variable
    let mut first_slot = vec![0usize; nvars];
    for v in 0..nvars {
        first_slot[v] = slot_owner.len();
        for _ in 0..max_exp[v] {
            slot_owner.push(v);
        }
    }
    let total = slot_owner.len();
    let gens: Vec<Vec<u16>> = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut exps = vec![0u16; total];
            for (v, &e) in g.exponents().iter().enumerate() {
                for j in 0..e {
                    exps[first_slot[v] + j as usize] = 1;
                }
            }
            exps
        })
        .collect();
    (gens, slot_owner, total)
}

fn lcm_exps(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// All lcms of nonempty generator subsets, via closure under pairwise lcm.
fn lcm_lattice(gens: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut seen: BTreeSet<Vec<u16>> = gens.iter().cloned().collect();
    let mut queue: Vec<Vec<u16>> = seen.iter().cloned().collect();
    while let Some(a) = queue.pop() {
        for g in gens {
            let l = lcm_exps(&a, g);
            if seen.insert(l.clone()) {
                queue.push(l);
            }
        }
    }
    seen.into_iter().collect()
}

/// Upper Koszul subcomplex at squarefree degree `a`: faces are the subsets
/// `b` of `supp(a)` such that `a - b` still lies in the ideal. Vertices are
/// relabeled to a compact range.
fn upper_koszul(a: &[u16], gens: &[Vec<u16>]) -> SimplicialComplex {
    let support: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0).collect();
    let k = support.len();
    let gens_in: Vec<u64> = gens
        .iter()
        .filter(|g| g.iter().zip(a).all(|(x, y)| x <= y))
        .map(|g| {
            let mut m = 0u64;
            for (pos, &v) in support.iter().enumerate() {
                if g[v] > 0 {
                    m |= 1 << pos;
                }
            }
            m
        })
        .collect();
    let mut faces = BTreeSet::new();
    for b in 0..(1u64 << k) {
        if gens_in.iter().any(|&g| g & b == 0) {
            faces.insert(b);
        }
    }
    SimplicialComplex::from_face_masks(k, faces)
}

/// Multigraded Betti table of a squarefree (or polarizable) monomial ideal
/// via homology ranks over the field `F`.
pub fn betti_table_homology_in<F: Scalar>(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let (gens, slot_owner, total_vars) = if ideal.is_squarefree() {
        let gens = ideal
            .generators()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect::<Vec<_>>();
        let owners = (0..ideal.vars.len()).collect();
        (gens, owners, ideal.vars.len())
    } else {
        polarize(ideal)
    };
    if total_vars > MAX_ORACLE_VARS {
        return Err(Error::ResourceGuard(format!(
            "homology oracle limited to {MAX_ORACLE_VARS} variables, got {total_vars}"
        )));
    }
    if gens.is_empty() {
        return Ok(BettiTable::new(ideal.vars.clone()));
    }
    let lattice = lcm_lattice(&gens);
    let computed: Vec<(Vec<u16>, RankProfile)> = lattice
        .par_iter()
        .map(|a| (a.clone(), homology_ranks_in::<F>(&upper_koszul(a, &gens))))
        .collect();
    let mut table = BettiTable::new(ideal.vars.clone());
    for (a, profile) in computed {
        // fold polarized slots back onto the original variables
        let mut degree = vec![0u16; ideal.vars.len()];
        for (slot, &e) in a.iter().enumerate() {
            degree[slot_owner[slot]] += e;
        }
        for (&dim, &rank) in &profile.ranks {
            let level = (dim + 1) as usize;
            table.add(level, degree.clone(), rank as u64);
        }
    }
    Ok(table)
}

/// Betti table over the rationals.
pub fn betti_table_homology(ideal: &MonomialIdeal) -> Result<BettiTable> {
    betti_table_homology_in::<Rat>(ideal)
}

/// Euler-characteristic consistency: alternating homology ranks equal the
/// alternating face-count sum (empty face included) for any complex.
pub fn euler_consistent(c: &SimplicialComplex) -> bool {
    let profile = homology_ranks(c);
    let faces: i64 = c
        .face_counts()
        .iter()
        .enumerate()
        .map(|(s, &f)| if s % 2 == 0 { -(f as i64) } else { f as i64 })
        .sum();
    let hom: i64 = profile
        .ranks
        .iter()
        .map(|(&d, &r)| if (d + 1) % 2 == 0 { -(r as i64) } else { r as i64 })
        .sum();
    faces == hom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{build_ideal, IdealKind, Monomial, VariableSet};
    use crate::samples;
    use crate::F32003;

    #[test]
    fn circle_has_one_dimensional_homology() {
        // hollow triangle
        let c = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let h = homology_ranks(&c);
        assert_eq!(h.rank(0), 0);
        assert_eq!(h.rank(1), 1);
    }

    #[test]
    fn full_simplex_is_contractible() {
        let c = SimplicialComplex::from_facets(4, &[vec![0, 1, 2, 3]]);
        let h = homology_ranks(&c);
        assert!(h.ranks.is_empty());
    }

    #[test]
    fn two_points_have_reduced_h0() {
        let c = SimplicialComplex::from_facets(2, &[vec![0], vec![1]]);
        let h = homology_ranks(&c);
        assert_eq!(h.rank(0), 1);
    }

    #[test]
    fn irrelevant_complex_has_hminus1() {
        let c = SimplicialComplex::from_facets(1, &[vec![]]);
        let h = homology_ranks(&c);
        assert_eq!(h.rank(-1), 1);
    }

    #[test]
    fn koszul_of_two_variables() {
        let g = samples::triangle();
        let vars = VariableSet::edges(&g);
        let ideal = MonomialIdeal::new(
            vars,
            vec![
                Monomial::from_support(3, &[0]),
                Monomial::from_support(3, &[1]),
            ],
        );
        let t = betti_table_homology(&ideal).unwrap();
        assert_eq!(t.level_ranks(), vec![2, 1]);
        assert_eq!(t.entries[&(1, vec![1, 1, 0])], 1);
    }

    #[test]
    fn diamond_smt_table_ranks() {
        let g = samples::diamond();
        let ideal = build_ideal(IdealKind::Smt, &g).unwrap();
        let t = betti_table_homology(&ideal).unwrap();
        assert_eq!(t.level_ranks(), vec![8, 11, 4]);
        // same over the prime field
        let tp = betti_table_homology_in::<F32003>(&ideal).unwrap();
        assert_eq!(t, tp);
    }

    #[test]
    fn diamond_cut_sink_table() {
        let mut text = samples::diamond_file().to_string();
        text.push_str("t 1\n");
        let g = crate::graph::Graph::parse(&text).unwrap();
        let ideal = build_ideal(IdealKind::CutStOriented, &g).unwrap();
        let t = betti_table_homology(&ideal).unwrap();
        assert_eq!(t.level_ranks(), vec![3, 3, 1]);
    }

    #[test]
    fn k4_relabeled_divisor_ideal_ranks() {
        let g = samples::k4();
        let ideal = build_ideal(IdealKind::Mgq, &g).unwrap();
        let t = betti_table_homology(&ideal).unwrap();
        assert_eq!(t.level_ranks(), vec![7, 12, 6]);
    }

    #[test]
    fn euler_consistency_on_koszul_complexes() {
        let g = samples::diamond();
        let ideal = build_ideal(IdealKind::Smt, &g).unwrap();
        let gens: Vec<Vec<u16>> = ideal
            .generators()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        for a in lcm_lattice(&gens) {
            assert!(euler_consistent(&upper_koszul(&a, &gens)));
        }
    }
}
