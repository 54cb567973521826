//! Divisors, the Laplacian, linear equivalence, Dhar's burning test,
//! q-reduced forms, and the dictionary between reduced divisors and
//! oriented k-spanning trees.

use crate::error::Error;
use crate::graph::{Dir, Graph, OrientedEdge, VertexId};
use crate::Result;

/// Integer vertex weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Divisor(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    pub fn coeff(&self, v: VertexId) -> i64 {
        self.0[v]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// A set of oriented edges with at most one sense per edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialOrientation {
    edges: Vec<OrientedEdge>,
}

impl PartialOrientation {
    /// Builds a partial orientation, sorting into canonical order and
    /// rejecting edges carrying both senses or senses illegal on the graph.
    pub fn new(g: &Graph, mut edges: Vec<OrientedEdge>) -> Result<Self> {
        edges.sort();
        for w in edges.windows(2) {
            if w[0].edge == w[1].edge {
                return Err(Error::invalid(format!(
                    "edge {} appears with both senses",
                    w[0].edge
                )));
            }
        }
        for &oe in &edges {
            if !g.edges().iter().any(|e| e.id == oe.edge) {
                return Err(Error::invalid(format!("unknown edge {}", oe.edge)));
            }
            if oe.dir == Dir::Rev && g.edge(oe.edge).directed {
                return Err(Error::invalid(format!(
                    "edge {} is directed; reverse sense is illegal",
                    oe.edge
                )));
            }
        }
        Ok(PartialOrientation { edges })
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<OrientedEdge>) -> Self {
        PartialOrientation { edges }
    }

    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, oe: OrientedEdge) -> bool {
        self.edges.binary_search(&oe).is_ok()
    }

    pub fn indegree(&self, g: &Graph, v: VertexId) -> usize {
        self.edges.iter().filter(|&&oe| g.head(oe) == v).count()
    }

    /// Oriented edges removed; keeps canonical order.
    pub fn without(&self, oe: OrientedEdge) -> Self {
        PartialOrientation {
            edges: self.edges.iter().copied().filter(|&e| e != oe).collect(),
        }
    }

    /// Vertices covered by some edge of the orientation.
    pub fn support_vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut seen = vec![false; g.vertex_count()];
        for &oe in &self.edges {
            seen[g.head(oe)] = true;
            seen[g.tail(oe)] = true;
        }
        (0..g.vertex_count()).filter(|&v| seen[v]).collect()
    }

    /// True when the directed graph (on the covered vertices) has no
    /// directed cycle.
    pub fn is_acyclic(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for &oe in &self.edges {
            indeg[g.head(oe)] += 1;
            out[g.tail(oe)].push(g.head(oe));
        }
        let mut queue: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        removed == n
    }
}

/// Laplacian applied to an integer vertex function:
/// `(Lf)(v) = sum over edges {v,w} of f(v) - f(w)` on the underlying graph.
pub fn laplacian_apply(g: &Graph, f: &[i64]) -> Divisor {
    assert_eq!(f.len(), g.vertex_count());
    let mut d = vec![0i64; g.vertex_count()];
    for e in g.edges() {
        d[e.u] += f[e.u] - f[e.v];
        d[e.v] += f[e.v] - f[e.u];
    }
    Divisor(d)
}

/// `D(v) = indegree(v) - 1` for every vertex.
pub fn divisor_of_orientation(g: &Graph, p: &PartialOrientation) -> Divisor {
    let mut d = vec![-1i64; g.vertex_count()];
    for &oe in p.edges() {
        d[g.head(oe)] += 1;
    }
    Divisor(d)
}

/// Dhar burning pass: starting from `{q}`, repeatedly burns any vertex with
/// fewer chips than legal oriented edges arriving from the burnt set.
/// Returns the burnt-set indicator.
fn burn(g: &Graph, d: &Divisor) -> Vec<bool> {
    let mut burnt = vec![false; g.vertex_count()];
    burnt[g.q()] = true;
    loop {
        let mut progressed = false;
        for v in 0..g.vertex_count() {
            if burnt[v] {
                continue;
            }
            let fire = g.oriented_edges_into(&burnt, v) as i64;
            if d.coeff(v) < fire {
                burnt[v] = true;
                progressed = true;
            }
        }
        if !progressed {
            return burnt;
        }
    }
}

/// q-reduced test: nonnegative off q, and Dhar's fire from q burns everything.
pub fn is_q_reduced(g: &Graph, d: &Divisor) -> bool {
    if (0..g.vertex_count()).any(|v| v != g.q() && d.coeff(v) < 0) {
        return false;
    }
    burn(g, d).iter().all(|&b| b)
}

const REDUCE_ITERATION_BOUND: usize = 1_000_000;

/// The unique q-reduced divisor linearly equivalent to `d` (undirected
/// graphs only). Degree is preserved.
pub fn reduce_divisor(g: &Graph, d: &Divisor) -> Result<Divisor> {
    if g.is_directed() {
        return Err(Error::invalid("divisor reduction requires an undirected graph"));
    }
    assert_eq!(d.coeffs().len(), g.vertex_count());
    let n = g.vertex_count();
    let mut cur = d.clone();

    // stage 1: clear debt outside q, sweeping BFS layers far-to-near; un-firing
    // the tail set only adds chips to layers at least as deep
    let layers = bfs_layers(g);
    let depth = layers.iter().max().copied().unwrap_or(0);
    for level in (1..=depth).rev() {
        let tail: Vec<VertexId> = (0..n).filter(|&v| layers[v] >= level).collect();
        let mut guard = 0;
        loop {
            let debt = tail
                .iter()
                .any(|&v| layers[v] == level && cur.coeff(v) < 0);
            if !debt {
                break;
            }
            let f = indicator(n, &tail);
            cur = cur.add(&laplacian_apply(g, &f));
            guard += 1;
            if guard > REDUCE_ITERATION_BOUND {
                return Err(Error::Internal("divisor reduction did not terminate".into()));
            }
        }
    }

    // stage 2: fire unburnt sets until Dhar's fire covers the graph
    let mut guard = 0;
    loop {
        let burnt = burn(g, &cur);
        if burnt.iter().all(|&b| b) {
            break;
        }
        let unburnt: Vec<VertexId> = (0..n).filter(|&v| !burnt[v]).collect();
        let f = indicator(n, &unburnt);
        cur = cur.sub(&laplacian_apply(g, &f));
        guard += 1;
        if guard > REDUCE_ITERATION_BOUND {
            return Err(Error::Internal("divisor reduction did not terminate".into()));
        }
    }
    debug_assert!(is_q_reduced(g, &cur));
    debug_assert_eq!(cur.degree(), d.degree());
    Ok(cur)
}

fn indicator(n: usize, verts: &[VertexId]) -> Vec<i64> {
    let mut f = vec![0i64; n];
    for &v in verts {
        f[v] = 1;
    }
    f
}

fn bfs_layers(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[g.q()] = 0;
    let mut frontier = vec![g.q()];
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for e in g.edges() {
                let w = if e.u == v {
                    e.v
                } else if e.v == v {
                    e.u
                } else {
                    continue;
                };
                if dist[w] == usize::MAX {
                    dist[w] = level;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Linear equivalence: equal degree and identical q-reduced forms.
pub fn divisors_equivalent(g: &Graph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    if d1.degree() != d2.degree() {
        return Ok(false);
    }
    Ok(reduce_divisor(g, d1)? == reduce_divisor(g, d2)?)
}

/// For a q-reduced divisor with `D(q) = -1` and degree `k - 1`, builds an
/// oriented k-spanning tree whose divisor equals `d` exactly: replay Dhar's
/// fire and give each vertex `D(v) + 1` incoming edges from the burnt side,
/// chosen in canonical edge order.
pub fn orientation_for_reduced_divisor(g: &Graph, d: &Divisor) -> Result<PartialOrientation> {
    if d.coeff(g.q()) != -1 {
        return Err(Error::invalid("expected D(q) = -1"));
    }
    if !is_q_reduced(g, d) {
        return Err(Error::invalid("divisor is not q-reduced"));
    }
    let k = d.degree() + 1;
    if k < 0 || k as usize > g.genus() {
        return Err(Error::invalid(format!(
            "degree {} outside [-1, genus-1] range",
            d.degree()
        )));
    }
    let n = g.vertex_count();
    let mut burnt = vec![false; n];
    burnt[g.q()] = true;
    let mut chosen: Vec<OrientedEdge> = Vec::new();
    for _ in 1..n {
        let mut next = None;
        for v in 0..n {
            if burnt[v] {
                continue;
            }
            if (g.oriented_edges_into(&burnt, v) as i64) > d.coeff(v) {
                next = Some(v);
                break;
            }
        }
        let Some(v) = next else {
            return Err(Error::Internal(
                "burning stalled on a q-reduced divisor".into(),
            ));
        };
        // orient the first D(v)+1 available edges from the burnt side into v
        let want = (d.coeff(v) + 1) as usize;
        let mut picked = 0;
        for oe in g.oriented_edges() {
            if picked == want {
                break;
            }
            if g.head(oe) == v && burnt[g.tail(oe)] {
                chosen.push(oe);
                picked += 1;
            }
        }
        debug_assert_eq!(picked, want);
        burnt[v] = true;
    }
    let p = PartialOrientation::new(g, chosen)?;
    debug_assert_eq!(divisor_of_orientation(g, &p), *d);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn laplacian_on_diamond_indicator() {
        let g = samples::diamond();
        let d = laplacian_apply(&g, &[1, 0, 0, 0]);
        assert_eq!(d.coeffs(), &[3, -1, -1, -1]);
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn laplacian_constant_is_zero() {
        let g = samples::diamond();
        assert_eq!(laplacian_apply(&g, &[5, 5, 5, 5]), Divisor::zero(4));
    }

    #[test]
    fn laplacian_triangle() {
        let g = samples::triangle();
        assert_eq!(laplacian_apply(&g, &[1, 0, 0]).coeffs(), &[2, -1, -1]);
    }

    #[test]
    fn orientation_divisors() {
        let g = samples::diamond();
        // spanning tree orientation rooted at q: edges q->b, q->c, q->a
        let p = PartialOrientation::new(
            &g,
            vec![
                OrientedEdge::rev(2),
                OrientedEdge::fwd(4),
                OrientedEdge::fwd(5),
            ],
        )
        .unwrap();
        let d = divisor_of_orientation(&g, &p);
        assert_eq!(d.coeffs(), &[0, 0, 0, -1]);

        let empty = PartialOrientation::new(&g, vec![]).unwrap();
        assert_eq!(divisor_of_orientation(&g, &empty).coeffs(), &[-1, -1, -1, -1]);
    }

    #[test]
    fn full_orientation_divisor_degree() {
        let g = samples::diamond();
        // all five edges oriented away from q plus b->a, c->a
        let p = PartialOrientation::new(
            &g,
            vec![
                OrientedEdge::rev(1),
                OrientedEdge::rev(2),
                OrientedEdge::rev(3),
                OrientedEdge::fwd(4),
                OrientedEdge::fwd(5),
            ],
        )
        .unwrap();
        let d = divisor_of_orientation(&g, &p);
        assert_eq!(d.degree(), 5 - 4);
        assert_eq!(d.coeffs(), &[2, 0, 0, -1]);
    }

    #[test]
    fn rejects_double_sense() {
        let g = samples::diamond();
        assert!(PartialOrientation::new(
            &g,
            vec![OrientedEdge::fwd(1), OrientedEdge::rev(1)]
        )
        .is_err());
    }

    #[test]
    fn q_reduced_on_triangle() {
        let g = samples::triangle(); // q = 2
        assert!(is_q_reduced(&g, &Divisor::new(vec![1, 0, -1])));
        assert!(!is_q_reduced(&g, &Divisor::new(vec![2, 0, -2])));
        assert!(!is_q_reduced(&g, &Divisor::new(vec![-1, 0, 1])));
    }

    /// Subset form of the reduced test, used as an independent oracle.
    fn is_q_reduced_subsets(g: &Graph, d: &Divisor) -> bool {
        let n = g.vertex_count();
        if (0..n).any(|v| v != g.q() && d.coeff(v) < 0) {
            return false;
        }
        let others: Vec<usize> = (0..n).filter(|&v| v != g.q()).collect();
        for mask in 1usize..(1 << others.len()) {
            let inside: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let mut outside = vec![true; n];
            for &v in &inside {
                outside[v] = false;
            }
            let ok = inside
                .iter()
                .any(|&v| d.coeff(v) < g.oriented_edges_into(&outside, v) as i64);
            if !ok {
                return false;
            }
        }
        true
    }

    #[test]
    fn burning_matches_subset_oracle() {
        let g = samples::diamond();
        // sweep a small box of divisors with D(q) fixed at -1
        for a in -1..=3 {
            for b in -1..=3 {
                for c in -1..=3 {
                    let d = Divisor::new(vec![a, b, c, -1]);
                    assert_eq!(
                        is_q_reduced(&g, &d),
                        is_q_reduced_subsets(&g, &d),
                        "divisor {:?}",
                        d
                    );
                }
            }
        }
    }

    #[test]
    fn reduce_already_reduced_is_identity() {
        let g = samples::triangle();
        let d = Divisor::new(vec![1, 0, -1]);
        assert_eq!(reduce_divisor(&g, &d).unwrap(), d);
    }

    #[test]
    fn reduce_principal_shift() {
        let g = samples::triangle();
        let base = Divisor::new(vec![1, 0, -1]);
        let shifted = base.add(&laplacian_apply(&g, &[1, 0, 0]));
        assert_eq!(reduce_divisor(&g, &shifted).unwrap(), base);
    }

    #[test]
    fn reduce_zero_divisor_stays_in_class() {
        let g = samples::diamond();
        let zero = Divisor::zero(4);
        let r = reduce_divisor(&g, &zero).unwrap();
        assert!(is_q_reduced(&g, &r));
        assert!(divisors_equivalent(&g, &r, &zero).unwrap());
    }

    #[test]
    fn inequivalent_reduced_divisors() {
        let g = samples::triangle();
        let d1 = Divisor::new(vec![1, 0, -1]);
        let d2 = Divisor::new(vec![0, 1, -1]);
        assert!(is_q_reduced(&g, &d1) && is_q_reduced(&g, &d2));
        assert!(!divisors_equivalent(&g, &d1, &d2).unwrap());
        assert!(!divisors_equivalent(
            &g,
            &Divisor::new(vec![1, 0, -1]),
            &Divisor::new(vec![1, 0, 0])
        )
        .unwrap());
    }

    #[test]
    fn orientation_from_reduced_divisor_triangle() {
        let g = samples::triangle();
        let d = Divisor::new(vec![1, 0, -1]);
        let p = orientation_for_reduced_divisor(&g, &d).unwrap();
        assert_eq!(divisor_of_orientation(&g, &p), d);
        assert_eq!(p.len(), 3); // full orientation, k = 1
        assert!(p.is_acyclic(&g));
    }

    #[test]
    fn orientation_from_tree_divisor() {
        let g = samples::diamond();
        let d = Divisor::new(vec![0, 0, 0, -1]);
        let p = orientation_for_reduced_divisor(&g, &d).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(divisor_of_orientation(&g, &p), d);
    }

    #[test]
    fn orientation_rejects_unreduced() {
        let g = samples::triangle();
        assert!(orientation_for_reduced_divisor(&g, &Divisor::new(vec![2, 0, -2])).is_err());
        assert!(orientation_for_reduced_divisor(&g, &Divisor::new(vec![1, 0, 0])).is_err());
    }
}
