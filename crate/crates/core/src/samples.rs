//! Named example graphs used across the test suites and CLI demos.

use crate::graph::{Edge, Graph};

/// Four-cycle with one chord: vertices 0..3 (q = 3), five edges. The stored
/// edge senses give the reference orientation used by the oriented ideals.
pub fn diamond() -> Graph {
    Graph::parse(concat!(
        "vertices 4\n",
        "q 3\n",
        "edge 1 0 1\n",
        "edge 2 1 3\n",
        "edge 3 0 2\n",
        "edge 4 3 2\n",
        "edge 5 3 0\n",
    ))
    .unwrap()
}

/// The canonical diamond graph file contents.
pub fn diamond_file() -> &'static str {
    "vertices 4\nq 3\nedge 1 0 1\nedge 2 1 3\nedge 3 0 2\nedge 4 3 2\nedge 5 3 0\n"
}

/// Cycle on `n >= 3` vertices with q = vertex n-1 and edge i joining i-1, i.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push(Edge { id: i, u: i - 1, v: i, directed: false });
    }
    edges.push(Edge { id: n, u: n - 1, v: 0, directed: false });
    Graph::new(n, edges, n - 1, Vec::new()).unwrap()
}

/// Triangle with q = vertex 2.
pub fn triangle() -> Graph {
    cycle(3)
}

/// Complete graph on 4 vertices with q = vertex 3.
pub fn k4() -> Graph {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| Edge { id: i + 1, u, v, directed: false })
        .collect();
    Graph::new(4, edges, 3, Vec::new()).unwrap()
}

/// Cactus built from cycles glued at vertex 0, with q = 0.
/// `lengths` lists the cycle sizes.
pub fn cactus(lengths: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next_vertex = 1;
    let mut next_edge = 1;
    for &len in lengths {
        assert!(len >= 3);
        let ring: Vec<usize> = std::iter::once(0)
            .chain(next_vertex..next_vertex + len - 1)
            .collect();
        next_vertex += len - 1;
        for i in 0..len {
            edges.push(Edge {
                id: next_edge,
                u: ring[i],
                v: ring[(i + 1) % len],
                directed: false,
            });
            next_edge += 1;
        }
    }
    Graph::new(next_vertex, edges, 0, Vec::new()).unwrap()
}

/// Two-terminal network on 5 vertices and 8 edges: q = 0 on the left,
/// target t = 4 on the right, with top (1), center (2) and bottom (3)
/// relay vertices. Stored senses point from q toward t.
pub fn two_terminal() -> Graph {
    Graph::parse(concat!(
        "vertices 5\n",
        "q 0\n",
        "t 4\n",
        "edge 1 0 1\n",
        "edge 2 0 2\n",
        "edge 3 0 3\n",
        "edge 4 2 1\n",
        "edge 5 3 2\n",
        "edge 6 1 4\n",
        "edge 7 2 4\n",
        "edge 8 3 4\n",
    ))
    .unwrap()
}

/// Mixed directed graph on 5 vertices and 6 edges (two of them undirected),
/// q = 0. Its four arborescences and three first syzygies exercise the
/// directed code paths.
pub fn mixed_digraph() -> Graph {
    Graph::parse(concat!(
        "vertices 5\n",
        "q 0\n",
        "edge 1 0 1\n",
        "arc 2 0 2\n",
        "arc 3 2 3\n",
        "edge 4 1 3\n",
        "arc 5 4 2\n",
        "arc 6 3 4\n",
    ))
    .unwrap()
}

/// Graphs exercised by the cross-check suites, with human-readable names.
pub fn checked_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("diamond", diamond()),
        ("triangle", triangle()),
        ("cycle5", cycle(5)),
        ("k4", k4()),
        ("cactus34", cactus(&[3, 4])),
        ("two_terminal", two_terminal()),
    ]
}
