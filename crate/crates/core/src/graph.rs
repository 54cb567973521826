//! Multigraph representation with directed-edge bookkeeping, connected cuts,
//! contractions, and the graph file parser.
//!
//! A graph is a finite connected loopless multigraph with a distinguished
//! source vertex `q` and optional target vertices. Each edge is stored with
//! its endpoints in file order; that stored order defines the *forward*
//! direction of the edge and the global edge order used by every sign
//! convention and tie-break downstream.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::Result;

pub type VertexId = usize;
/// 1-based edge identifier; also the global edge order.
pub type EdgeId = usize;

/// One of the two traversal senses of an edge. `Fwd` is the stored `(u, v)`
/// order. For a directed edge only `Fwd` is legal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Dir {
    Fwd,
    Rev,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Rev,
            Dir::Rev => Dir::Fwd,
        }
    }
}

/// An edge instance with a traversal sense: an element of the oriented edge
/// set `E(G)` (doubled for undirected edges, singleton for arcs).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct OrientedEdge {
    pub edge: EdgeId,
    pub dir: Dir,
}

impl OrientedEdge {
    pub fn fwd(edge: EdgeId) -> Self {
        OrientedEdge { edge, dir: Dir::Fwd }
    }

    pub fn rev(edge: EdgeId) -> Self {
        OrientedEdge { edge, dir: Dir::Rev }
    }

    pub fn reversed(self) -> Self {
        OrientedEdge { edge: self.edge, dir: self.dir.flip() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    /// Directed edges admit only the stored `u -> v` sense.
    pub directed: bool,
}

/// A connected cut, stored by its non-`q` side with the crossing edges
/// directed into that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side_a: Vec<VertexId>,
    pub oriented_edges: Vec<OrientedEdge>,
}

/// Connected loopless multigraph with source `q` and optional targets.
/// Immutable after construction; all operations are pure functions.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    q: VertexId,
    targets: Vec<VertexId>,
}

impl Graph {
    /// Validates and builds a graph. Edge ids must be unique and strictly
    /// increasing in list order (parsed graphs use exactly `1..=m`;
    /// contractions keep the surviving original ids).
    pub fn new(
        n: usize,
        edges: Vec<Edge>,
        q: VertexId,
        targets: Vec<VertexId>,
    ) -> Result<Graph> {
        if n < 2 {
            return Err(Error::parse("graph must have at least 2 vertices"));
        }
        if q >= n {
            return Err(Error::parse(format!("q={q} out of range (n={n})")));
        }
        let mut last_id = 0;
        for e in &edges {
            if e.id <= last_id {
                return Err(Error::parse(format!(
                    "edge ids must be unique and increasing (saw {} after {})",
                    e.id, last_id
                )));
            }
            last_id = e.id;
            if e.u >= n || e.v >= n {
                return Err(Error::parse(format!("edge {} endpoint out of range", e.id)));
            }
            if e.u == e.v {
                return Err(Error::parse(format!("edge {} is a loop", e.id)));
            }
        }
        let mut seen = BTreeSet::new();
        for &t in &targets {
            if t >= n {
                return Err(Error::parse(format!("target {t} out of range")));
            }
            if t == q {
                return Err(Error::parse("q cannot be a target"));
            }
            if !seen.insert(t) {
                return Err(Error::parse(format!("duplicate target {t}")));
            }
        }
        let g = Graph { n, edges, q, targets };
        if !g.is_connected_underlying() {
            return Err(Error::parse("graph is not connected"));
        }
        Ok(g)
    }

    /// Parses the line-oriented graph file format:
    /// `vertices <n>`, `q <id>`, `t <id>`, `edge <id> <u> <v>`,
    /// `arc <id> <u> <v>`, with `#` comments.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut q: Option<usize> = None;
        let mut targets = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let mut words = line.split_whitespace();
            let Some(kw) = words.next() else { continue };
            let mut num = |what: &str| -> Result<usize> {
                words
                    .next()
                    .ok_or_else(|| Error::parse(format!("line {}: missing {what}", lineno + 1)))?
                    .parse::<usize>()
                    .map_err(|_| Error::parse(format!("line {}: bad {what}", lineno + 1)))
            };
            match kw {
                "vertices" => {
                    if n.replace(num("vertex count")?).is_some() {
                        return Err(Error::parse("duplicate vertices line"));
                    }
                }
                "q" => {
                    if q.replace(num("q id")?).is_some() {
                        return Err(Error::parse("duplicate q line"));
                    }
                }
                "t" => targets.push(num("target id")?),
                "edge" | "arc" => {
                    let id = num("edge id")?;
                    let u = num("endpoint")?;
                    let v = num("endpoint")?;
                    edges.push(Edge { id, u, v, directed: kw == "arc" });
                }
                other => {
                    return Err(Error::parse(format!(
                        "line {}: unknown keyword `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse("missing `vertices` line"))?;
        let q = q.ok_or_else(|| Error::parse("missing `q` line"))?;
        // parsed files must number edges exactly 1..=m
        for (i, e) in edges.iter().enumerate() {
            if e.id != i + 1 {
                return Err(Error::parse(format!(
                    "edge ids must be 1..{} in order (saw {})",
                    edges.len(),
                    e.id
                )));
            }
        }
        Graph::new(n, edges, q, targets)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn q(&self) -> VertexId {
        self.q
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        let i = self
            .edges
            .binary_search_by_key(&id, |e| e.id)
            .unwrap_or_else(|_| panic!("unknown edge id {id}"));
        &self.edges[i]
    }

    /// Cycle rank `m - n + 1` of the underlying multigraph.
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.n
    }

    pub fn is_directed(&self) -> bool {
        self.edges.iter().any(|e| e.directed)
    }

    pub fn head(&self, oe: OrientedEdge) -> VertexId {
        let e = self.edge(oe.edge);
        match oe.dir {
            Dir::Fwd => e.v,
            Dir::Rev => e.u,
        }
    }

    pub fn tail(&self, oe: OrientedEdge) -> VertexId {
        let e = self.edge(oe.edge);
        match oe.dir {
            Dir::Fwd => e.u,
            Dir::Rev => e.v,
        }
    }

    /// Legal traversal senses of an edge.
    pub fn allowed_dirs(&self, id: EdgeId) -> &'static [Dir] {
        if self.edge(id).directed {
            &[Dir::Fwd]
        } else {
            &[Dir::Fwd, Dir::Rev]
        }
    }

    /// The oriented edge set `E(G)` in canonical order: ascending edge id,
    /// forward before reverse; arcs contribute only their stored sense.
    pub fn oriented_edges(&self) -> Vec<OrientedEdge> {
        let mut out = Vec::with_capacity(2 * self.edges.len());
        for e in &self.edges {
            out.push(OrientedEdge::fwd(e.id));
            if !e.directed {
                out.push(OrientedEdge::rev(e.id));
            }
        }
        out
    }

    fn is_connected_underlying(&self) -> bool {
        connected_on(self.n, (0..self.n).collect(), &self.edges)
    }

    /// Number of legal oriented edges from a vertex of `from` into `v`.
    pub fn oriented_edges_into(&self, from: &[bool], v: VertexId) -> usize {
        let mut count = 0;
        for e in &self.edges {
            if e.v == v && from[e.u] {
                count += 1; // forward sense lands on v
            }
            if !e.directed && e.u == v && from[e.v] {
                count += 1;
            }
        }
        count
    }

    /// All connected cuts with `q` on the complement side, ordered
    /// lexicographically by the A-side vertex set. With `sink` given, only
    /// cuts with the sink inside A. Cuts with no legal crossing edge into A
    /// (possible only on directed graphs) are omitted.
    pub fn connected_cuts(&self, sink: Option<VertexId>) -> Result<Vec<Cut>> {
        if let Some(t) = sink {
            if t == self.q {
                return Err(Error::invalid("sink must differ from q"));
            }
            if t >= self.n {
                return Err(Error::invalid(format!("sink {t} out of range")));
            }
        }
        let others: Vec<VertexId> = (0..self.n).filter(|&v| v != self.q).collect();
        let mut cuts = Vec::new();
        // subsets in lexicographic order on the sorted vertex list
        let count = 1usize << others.len();
        for mask in 1..count {
            let side_a: Vec<VertexId> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if let Some(t) = sink {
                if !side_a.contains(&t) {
                    continue;
                }
            }
            if let Some(cut) = self.cut_for_side(&side_a) {
                cuts.push(cut);
            }
        }
        cuts.sort_by(|a, b| a.side_a.cmp(&b.side_a));
        Ok(cuts)
    }

    /// Builds the connected cut with the given A-side, if it is one.
    pub fn cut_for_side(&self, side_a: &[VertexId]) -> Option<Cut> {
        let mut in_a = vec![false; self.n];
        for &v in side_a {
            in_a[v] = true;
        }
        if in_a[self.q] {
            return None;
        }
        let comp: Vec<VertexId> = (0..self.n).filter(|&v| !in_a[v]).collect();
        if !connected_on(self.n, side_a.to_vec(), &self.edges)
            || !connected_on(self.n, comp, &self.edges)
        {
            return None;
        }
        let mut oriented = Vec::new();
        for e in &self.edges {
            let cross = in_a[e.u] != in_a[e.v];
            if !cross {
                continue;
            }
            if in_a[e.v] {
                oriented.push(OrientedEdge::fwd(e.id));
            } else if !e.directed {
                oriented.push(OrientedEdge::rev(e.id));
            } else {
                // arc pointing out of A: no legal sense into A for this edge,
                // so the bipartition still cuts q from A only via the others
            }
        }
        if oriented.is_empty() {
            return None;
        }
        Some(Cut { side_a: side_a.to_vec(), oriented_edges: oriented })
    }

    /// Quotient multigraph by a vertex partition. Each block must induce a
    /// connected subgraph. Edges internal to a block are dropped; the rest
    /// keep their original ids. Blocks are renumbered by smallest member.
    pub fn contract(&self, partition: &[Vec<VertexId>]) -> Result<Graph> {
        let mut block_of = vec![usize::MAX; self.n];
        for (b, block) in partition.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid("empty block in partition"));
            }
            for &v in block {
                if v >= self.n {
                    return Err(Error::invalid(format!("vertex {v} out of range")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::invalid(format!("vertex {v} in two blocks")));
                }
                block_of[v] = b;
            }
            if !connected_on(self.n, block.clone(), &self.edges) {
                return Err(Error::invalid("partition block is not connected"));
            }
        }
        if block_of.iter().any(|&b| b == usize::MAX) {
            return Err(Error::invalid("partition does not cover all vertices"));
        }
        let mut order: Vec<usize> = (0..partition.len()).collect();
        order.sort_by_key(|&b| partition[b].iter().min().copied());
        let mut new_id = vec![0; partition.len()];
        for (i, &b) in order.iter().enumerate() {
            new_id[b] = i;
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| block_of[e.u] != block_of[e.v])
            .map(|e| Edge {
                id: e.id,
                u: new_id[block_of[e.u]],
                v: new_id[block_of[e.v]],
                directed: e.directed,
            })
            .collect();
        if partition.len() < 2 {
            return Err(Error::invalid("contraction to a single vertex is degenerate"));
        }
        Graph::new(partition.len(), edges, new_id[block_of[self.q]], Vec::new())
    }

    /// Number of spanning trees directed away from `q`: the Kirchhoff count
    /// for undirected graphs, the arborescence count for directed ones
    /// (undirected edges contribute both senses).
    pub fn spanning_tree_count(&self) -> i128 {
        // directed matrix-tree: delete q's row and column from the
        // indegree-minus-adjacency matrix of the doubled digraph
        let idx: Vec<Option<usize>> = {
            let mut idx = vec![None; self.n];
            let mut next = 0;
            for v in 0..self.n {
                if v != self.q {
                    idx[v] = Some(next);
                    next += 1;
                }
            }
            idx
        };
        let k = self.n - 1;
        let mut mat = vec![vec![0i128; k]; k];
        let mut add_arc = |tail: VertexId, head: VertexId| {
            if let Some(h) = idx[head] {
                mat[h][h] += 1;
                if let Some(t) = idx[tail] {
                    mat[h][t] -= 1;
                }
            }
        };
        for e in &self.edges {
            add_arc(e.u, e.v);
            if !e.directed {
                add_arc(e.v, e.u);
            }
        }
        crate::linalg::det_i128(mat)
    }
}

/// Connectivity of the induced subgraph on `verts` (underlying undirected).
fn connected_on(n: usize, verts: Vec<VertexId>, edges: &[Edge]) -> bool {
    if verts.is_empty() {
        return false;
    }
    let mut inside = vec![false; n];
    for &v in &verts {
        inside[v] = true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![verts[0]];
    seen[verts[0]] = true;
    while let Some(v) = stack.pop() {
        for e in edges {
            let w = if e.u == v {
                e.v
            } else if e.v == v {
                e.u
            } else {
                continue;
            };
            if inside[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    verts.iter().all(|&v| seen[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn parse_diamond() {
        let g = samples::diamond();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.q(), 3);
        assert_eq!(g.genus(), 2);
        assert!(!g.is_directed());
    }

    #[test]
    fn parse_single_edge() {
        let g = Graph::parse("vertices 2\nq 0\nedge 1 0 1\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.genus(), 0);
    }

    #[test]
    fn parse_rejects_loop() {
        let err = Graph::parse("vertices 2\nq 0\nedge 1 0 0\nedge 2 0 1\n").unwrap_err();
        assert!(err.to_string().contains("loop"));
    }

    #[test]
    fn parse_rejects_disconnected() {
        let err = Graph::parse("vertices 4\nq 0\nedge 1 0 1\nedge 2 2 3\n").unwrap_err();
        assert!(err.to_string().contains("connected"));
    }

    #[test]
    fn parse_rejects_duplicate_id_and_bad_q() {
        assert!(Graph::parse("vertices 3\nq 0\nedge 1 0 1\nedge 1 1 2\n").is_err());
        assert!(Graph::parse("vertices 3\nq 5\nedge 1 0 1\nedge 2 1 2\n").is_err());
        assert!(Graph::parse("vertices 1\nq 0\n").is_err());
    }

    #[test]
    fn diamond_connected_cuts() {
        let g = samples::diamond();
        let cuts = g.connected_cuts(None).unwrap();
        let sides: Vec<Vec<usize>> = cuts.iter().map(|c| c.side_a.clone()).collect();
        assert_eq!(
            sides,
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 1, 2],
                vec![0, 2],
                vec![1],
                vec![2]
            ]
        );
    }

    #[test]
    fn diamond_cuts_with_sink() {
        let g = samples::diamond();
        let cuts = g.connected_cuts(Some(1)).unwrap();
        let mut supports: Vec<Vec<EdgeId>> = cuts
            .iter()
            .map(|c| c.oriented_edges.iter().map(|oe| oe.edge).collect())
            .collect();
        supports.sort();
        assert_eq!(supports, vec![vec![1, 2], vec![2, 3, 5], vec![2, 4, 5]]);
        assert!(g.connected_cuts(Some(3)).is_err());
    }

    #[test]
    fn path_graph_single_cut() {
        let g = Graph::parse("vertices 2\nq 0\nedge 1 0 1\n").unwrap();
        let cuts = g.connected_cuts(None).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].side_a, vec![1]);
    }

    #[test]
    fn cut_orientation_points_into_a() {
        let g = samples::diamond();
        for cut in g.connected_cuts(None).unwrap() {
            for &oe in &cut.oriented_edges {
                assert!(cut.side_a.contains(&g.head(oe)));
                assert!(!cut.side_a.contains(&g.tail(oe)));
            }
        }
    }

    #[test]
    fn contract_diamond_pair() {
        let g = samples::diamond();
        // blocks {a,b}, {c}, {q}
        let h = g
            .contract(&[vec![0, 1], vec![2], vec![3]])
            .unwrap();
        assert_eq!(h.vertex_count(), 3);
        let ids: Vec<EdgeId> = h.edges().iter().map(|e| e.id).collect();
        assert_eq!(ids, vec![2, 3, 4, 5]);
    }

    #[test]
    fn contract_trivial_partition_is_identity() {
        let g = samples::diamond();
        let blocks: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
        let h = g.contract(&blocks).unwrap();
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(h.q(), g.q());
    }

    #[test]
    fn contract_full_is_rejected() {
        let g = samples::diamond();
        assert!(g.contract(&[vec![0, 1, 2, 3]]).is_err());
    }

    #[test]
    fn contract_rejects_disconnected_block() {
        let g = samples::diamond();
        // {b, c} has no internal edge in the diamond
        assert!(g.contract(&[vec![1, 2], vec![0], vec![3]]).is_err());
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(samples::diamond().spanning_tree_count(), 8);
        assert_eq!(samples::cycle(3).spanning_tree_count(), 3);
        let tree = Graph::parse("vertices 4\nq 0\nedge 1 0 1\nedge 2 1 2\nedge 3 1 3\n").unwrap();
        assert_eq!(tree.spanning_tree_count(), 1);
    }

    #[test]
    fn directed_arborescence_count() {
        let g = samples::mixed_digraph();
        assert_eq!(g.spanning_tree_count(), 4);
    }

    #[test]
    fn contract_composes_with_partition_join() {
        let g = samples::diamond();
        // contract {a,b} then merge with {c}: same as contracting {a,b,c} at once
        let h1 = g.contract(&[vec![0, 1], vec![2], vec![3]]).unwrap();
        // in h1 the block {a,b} became vertex 0, c became 1, q became 2
        let h2 = h1.contract(&[vec![0, 1], vec![2]]).unwrap();
        let direct = g.contract(&[vec![0, 1, 2], vec![3]]).unwrap();
        let ids1: Vec<EdgeId> = h2.edges().iter().map(|e| e.id).collect();
        let ids2: Vec<EdgeId> = direct.edges().iter().map(|e| e.id).collect();
        assert_eq!(ids1, ids2);
    }
}
