//! Enumeration of the combinatorial objects indexing syzygies: oriented
//! k-spanning trees, full acyclic orientations with unique source q, and
//! oriented k-paths.
//!
//! Strategy: iterate over edge supports, then over the legal senses of each
//! support edge, filtering the defining invariants. Deduplication and output
//! order come from the canonical (edge id, sense) order.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::divisor::PartialOrientation;
use crate::error::Error;
use crate::graph::{EdgeId, Graph, OrientedEdge, VertexId};
use crate::Result;

/// Acyclic connected sub-orientation on all of V with unique source q and
/// `n - 1 + k` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSpanningTree {
    pub orientation: PartialOrientation,
    pub k: usize,
}

/// Acyclic union of directed q-to-target paths; `k` is its cycle rank
/// `|E(P)| - |V(P)| + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPath {
    pub orientation: PartialOrientation,
    pub k: usize,
}

/// Checks the k-spanning-tree invariants for a sense assignment on a support
/// covering all vertices: q has indegree 0, every other vertex indegree >= 1,
/// and the orientation is acyclic. Reachability from q follows: walking
/// in-edges backward from any vertex must stop at the unique indegree-0
/// vertex, which is q.
fn is_valid_tree_orientation(g: &Graph, edges: &[OrientedEdge]) -> bool {
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    for &oe in edges {
        indeg[g.head(oe)] += 1;
    }
    if indeg[g.q()] != 0 {
        return false;
    }
    if (0..n).any(|v| v != g.q() && indeg[v] == 0) {
        return false;
    }
    acyclic(g, edges, n)
}

fn acyclic(g: &Graph, edges: &[OrientedEdge], n: usize) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &oe in edges {
        indeg[g.head(oe)] += 1;
        out[g.tail(oe)].push(g.head(oe));
    }
    let mut stack: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        removed += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    removed == n
}

/// Subsets of `items` of size `k`, in lexicographic order.
fn subsets_of_size<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    if k <= items.len() {
        rec(items, k, 0, &mut current, &mut out);
    }
    out
}

/// All legal sense assignments of a support, as oriented-edge lists in
/// canonical order.
fn sense_assignments(g: &Graph, support: &[EdgeId]) -> Vec<Vec<OrientedEdge>> {
    let mut out = vec![Vec::new()];
    for &id in support {
        let dirs = g.allowed_dirs(id);
        let mut next = Vec::with_capacity(out.len() * dirs.len());
        for assignment in &out {
            for &d in dirs {
                let mut a = assignment.clone();
                a.push(OrientedEdge { edge: id, dir: d });
                next.push(a);
            }
        }
        out = next;
    }
    out
}

fn support_spans_connected(g: &Graph, support: &[EdgeId]) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![g.q()];
    seen[g.q()] = true;
    while let Some(v) = stack.pop() {
        for &id in support {
            let e = g.edge(id);
            let w = if e.u == v {
                e.v
            } else if e.v == v {
                e.u
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// The set `S_k(G, q)` of oriented k-spanning trees, deduplicated, in
/// canonical order.
pub fn enumerate_k_spanning_trees(g: &Graph, k: usize) -> Result<Vec<KSpanningTree>> {
    if k > g.genus() {
        return Err(Error::invalid(format!(
            "k = {k} exceeds the genus {} of the graph",
            g.genus()
        )));
    }
    let size = g.vertex_count() - 1 + k;
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    let supports: Vec<Vec<EdgeId>> = subsets_of_size(&ids, size)
        .into_iter()
        .filter(|s| support_spans_connected(g, s))
        .collect();
    // the support-level loop shards across workers; collection order is the
    // support order, so output is deterministic
    let mut trees: Vec<KSpanningTree> = supports
        .par_iter()
        .map(|support| {
            sense_assignments(g, support)
                .into_iter()
                .filter(|edges| is_valid_tree_orientation(g, edges))
                .map(|edges| KSpanningTree {
                    orientation: PartialOrientation::from_sorted_unchecked(edges),
                    k,
                })
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    trees.sort_by(|a, b| a.orientation.cmp(&b.orientation));
    trees.dedup();
    Ok(trees)
}

/// Groups `S_k` by unoriented edge support; values count the valid sense
/// assignments of each support.
pub fn count_by_support(g: &Graph, k: usize) -> Result<BTreeMap<Vec<EdgeId>, usize>> {
    let mut map = BTreeMap::new();
    for t in enumerate_k_spanning_trees(g, k)? {
        let support: Vec<EdgeId> = t.orientation.edges().iter().map(|oe| oe.edge).collect();
        *map.entry(support).or_insert(0) += 1;
    }
    Ok(map)
}

/// Full orientations of E(G) that are acyclic with unique source q; equals
/// `S_genus(G, q)`.
pub fn enumerate_acyclic_unique_source(g: &Graph) -> Vec<PartialOrientation> {
    enumerate_k_spanning_trees(g, g.genus())
        .expect("genus is always a valid k")
        .into_iter()
        .map(|t| t.orientation)
        .collect()
}

/// Validity test for oriented k-paths: acyclic, unique source q, every
/// target covered, and every sink a target (so the subgraph is a union of
/// directed q-to-target paths).
fn is_valid_path_orientation(g: &Graph, edges: &[OrientedEdge], targets: &[VertexId]) -> bool {
    if edges.is_empty() {
        return false;
    }
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut covered = vec![false; n];
    for &oe in edges {
        indeg[g.head(oe)] += 1;
        outdeg[g.tail(oe)] += 1;
        covered[g.head(oe)] = true;
        covered[g.tail(oe)] = true;
    }
    if !covered[g.q()] || indeg[g.q()] != 0 {
        return false;
    }
    if targets.iter().any(|&t| !covered[t]) {
        return false;
    }
    for v in 0..n {
        if !covered[v] || v == g.q() {
            continue;
        }
        if indeg[v] == 0 {
            return false; // second source
        }
        if outdeg[v] == 0 && !targets.contains(&v) {
            return false; // sink that is not a target
        }
    }
    acyclic(g, edges, n)
}

fn path_rank(g: &Graph, edges: &[OrientedEdge]) -> usize {
    let mut covered = vec![false; g.vertex_count()];
    let mut nverts = 0;
    for &oe in edges {
        for v in [g.head(oe), g.tail(oe)] {
            if !covered[v] {
                covered[v] = true;
                nverts += 1;
            }
        }
    }
    edges.len() + 1 - nverts
}

/// All oriented k-paths of `(G, q, targets)` for every k at once, grouped in
/// canonical order. `k` of a path is its cycle rank.
pub fn all_k_paths(g: &Graph, targets: &[VertexId]) -> Result<Vec<KPath>> {
    if targets.is_empty() {
        return Err(Error::invalid("at least one target is required"));
    }
    for &t in targets {
        if t == g.q() || t >= g.vertex_count() {
            return Err(Error::invalid(format!("bad target {t}")));
        }
    }
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    let mut paths = Vec::new();
    for size in 1..=ids.len() {
        for support in subsets_of_size(&ids, size) {
            for edges in sense_assignments(g, &support) {
                if is_valid_path_orientation(g, &edges, targets) {
                    let k = path_rank(g, &edges);
                    paths.push(KPath {
                        orientation: PartialOrientation::from_sorted_unchecked(edges),
                        k,
                    });
                }
            }
        }
    }
    paths.sort_by(|a, b| a.orientation.cmp(&b.orientation));
    paths.dedup();
    if paths.iter().all(|p| p.k != 0) {
        return Err(Error::invalid("no target is reachable from q"));
    }
    Ok(paths)
}

/// The set `S_k(G, q, targets)` of oriented k-paths.
pub fn enumerate_k_paths(g: &Graph, targets: &[VertexId], k: usize) -> Result<Vec<KPath>> {
    if k > g.genus() {
        return Err(Error::invalid(format!(
            "k = {k} exceeds the genus {} of the graph",
            g.genus()
        )));
    }
    Ok(all_k_paths(g, targets)?
        .into_iter()
        .filter(|p| p.k == k)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn diamond_tree_counts() {
        let g = samples::diamond();
        assert_eq!(enumerate_k_spanning_trees(&g, 0).unwrap().len(), 8);
        assert_eq!(enumerate_k_spanning_trees(&g, 1).unwrap().len(), 11);
        assert_eq!(enumerate_k_spanning_trees(&g, 2).unwrap().len(), 4);
        assert!(enumerate_k_spanning_trees(&g, 3).is_err());
    }

    #[test]
    fn diamond_tree_supports_match_known_generators() {
        let g = samples::diamond();
        let mut supports: Vec<Vec<EdgeId>> = count_by_support(&g, 0)
            .unwrap()
            .into_keys()
            .collect();
        supports.sort();
        let mut expected = vec![
            vec![1, 2, 3],
            vec![2, 3, 5],
            vec![1, 3, 5],
            vec![1, 2, 4],
            vec![2, 4, 5],
            vec![1, 4, 5],
            vec![2, 3, 4],
            vec![1, 3, 4],
        ];
        expected.sort();
        assert_eq!(supports, expected);
    }

    #[test]
    fn diamond_support_multiplicities() {
        let g = samples::diamond();
        let by_support = count_by_support(&g, 1).unwrap();
        assert_eq!(by_support[&vec![1usize, 2, 3, 4]], 3);
        let total: usize = by_support.values().sum();
        assert_eq!(total, 11);
        let top = count_by_support(&g, 2).unwrap();
        assert_eq!(top[&vec![1usize, 2, 3, 4, 5]], 4);
    }

    #[test]
    fn tree_graph_single_support() {
        let g = crate::graph::Graph::parse("vertices 3\nq 0\nedge 1 0 1\nedge 2 1 2\n").unwrap();
        let by_support = count_by_support(&g, 0).unwrap();
        assert_eq!(by_support.len(), 1);
        assert_eq!(by_support[&vec![1usize, 2]], 1);
    }

    #[test]
    fn acyclic_unique_source_counts() {
        assert_eq!(enumerate_acyclic_unique_source(&samples::diamond()).len(), 4);
        assert_eq!(enumerate_acyclic_unique_source(&samples::triangle()).len(), 2);
        assert_eq!(enumerate_acyclic_unique_source(&samples::k4()).len(), 6);
    }

    #[test]
    fn s0_matches_matrix_tree() {
        for (_, g) in samples::checked_corpus() {
            let s0 = enumerate_k_spanning_trees(&g, 0).unwrap().len() as i128;
            assert_eq!(s0, g.spanning_tree_count());
        }
    }

    #[test]
    fn directed_graph_counts() {
        let g = samples::mixed_digraph();
        assert_eq!(enumerate_k_spanning_trees(&g, 0).unwrap().len(), 4);
        assert_eq!(enumerate_k_spanning_trees(&g, 1).unwrap().len(), 3);
        assert_eq!(enumerate_k_spanning_trees(&g, 2).unwrap().len(), 0);
    }

    #[test]
    fn cactus_counts() {
        let g = samples::cactus(&[3, 4]);
        let counts: Vec<usize> = (0..=g.genus())
            .map(|k| enumerate_k_spanning_trees(&g, k).unwrap().len())
            .collect();
        assert_eq!(counts, vec![12, 17, 6]);
        let g = samples::cactus(&[3, 3, 3]);
        let counts: Vec<usize> = (0..=g.genus())
            .map(|k| enumerate_k_spanning_trees(&g, k).unwrap().len())
            .collect();
        assert_eq!(counts, vec![27, 54, 36, 8]);
    }

    #[test]
    fn every_tree_passes_invariants() {
        let g = samples::diamond();
        for k in 0..=2 {
            for t in enumerate_k_spanning_trees(&g, k).unwrap() {
                assert_eq!(t.orientation.len(), g.vertex_count() - 1 + k);
                assert!(t.orientation.is_acyclic(&g));
                assert_eq!(t.orientation.indegree(&g, g.q()), 0);
            }
        }
    }

    #[test]
    fn two_terminal_path_counts() {
        let g = samples::two_terminal();
        let by_k: Vec<usize> = (0..=g.genus())
            .map(|k| enumerate_k_paths(&g, &[4], k).unwrap().len())
            .collect();
        assert_eq!(by_k, vec![9, 25, 31, 18, 4]);
    }

    #[test]
    fn path_on_a_path_graph() {
        let g = crate::graph::Graph::parse(
            "vertices 3\nq 0\nt 2\nedge 1 0 1\nedge 2 1 2\n",
        )
        .unwrap();
        let p = enumerate_k_paths(&g, &[2], 0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].orientation.len(), 2);
    }

    #[test]
    fn unreachable_target_is_an_error() {
        // arc pointing the wrong way: t cannot be reached
        let g = crate::graph::Graph::parse("vertices 2\nq 0\nt 1\narc 1 1 0\n").unwrap();
        assert!(all_k_paths(&g, &[1]).is_err());
    }

    #[test]
    fn smt_equals_paths_to_all_vertices() {
        // with every non-q vertex a target, k-paths on all of V are k-trees
        let g = samples::triangle();
        let targets: Vec<usize> = (0..2).collect();
        for k in 0..=g.genus() {
            let trees = enumerate_k_spanning_trees(&g, k).unwrap();
            let paths: Vec<_> = enumerate_k_paths(&g, &targets, k)
                .unwrap()
                .into_iter()
                .filter(|p| p.orientation.support_vertices(&g).len() == 3)
                .collect();
            assert_eq!(trees.len(), paths.len());
        }
    }
}
