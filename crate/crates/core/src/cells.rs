//! Combinatorial model of the bounded complex of the q-restricted graphic
//! arrangement, and its sink-restricted subcomplexes.
//!
//! A cell is an acyclic partial orientation whose unoriented edges induce the
//! block partition: every edge inside a block is unoriented, every
//! cross-block edge is oriented, the quotient orientation on blocks is
//! acyclic, and the block containing q is its unique source. Dimension is
//! (number of blocks) - 2; the 0-cells are exactly the connected cuts with
//! the q-side convention. The face relation is containment of oriented-edge
//! sets. No coordinates are ever computed: face counts and monomial labels
//! carry all the data the resolutions need.

use crate::betti::BettiTable;
use crate::divisor::PartialOrientation;
use crate::error::Error;
use crate::graph::{Graph, OrientedEdge, VertexId};
use crate::ideal::{Monomial, VariableSet, VarKind};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub orientation: PartialOrientation,
    /// Connected partition induced by the unoriented edges, blocks sorted by
    /// smallest member.
    pub blocks: Vec<Vec<VertexId>>,
    pub dimension: usize,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    /// Cells grouped by dimension.
    pub cells_by_dim: Vec<Vec<Cell>>,
}

impl CellComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells_by_dim.iter().map(|c| c.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells_by_dim.iter().flatten()
    }

    /// Face test: sigma <= tau iff sigma's oriented edges are contained in
    /// tau's (both must be cells of the same complex).
    pub fn is_face(sigma: &Cell, tau: &Cell) -> bool {
        sigma
            .orientation
            .edges()
            .iter()
            .all(|&oe| tau.orientation.contains(oe))
    }
}

/// Blocks of the partition induced by a set of unoriented edges.
fn unoriented_blocks(g: &Graph, oriented: &[OrientedEdge]) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let root = find(parent, parent[v]);
            parent[v] = root;
        }
        parent[v]
    }
    for e in g.edges() {
        if oriented.iter().any(|oe| oe.edge == e.id) {
            continue;
        }
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent[a] = b;
        }
    }
    let mut blocks: Vec<Vec<VertexId>> = Vec::new();
    let mut root_to_block = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_to_block[r] == usize::MAX {
            root_to_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_to_block[r]].push(v);
    }
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Validates the cell conditions for a sense assignment of an edge subset.
fn cell_for_orientation(g: &Graph, oriented: Vec<OrientedEdge>) -> Option<Cell> {
    let blocks = unoriented_blocks(g, &oriented);
    if blocks.len() < 2 {
        return None;
    }
    let mut block_of = vec![usize::MAX; g.vertex_count()];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            block_of[v] = b;
        }
    }
    // an oriented edge inside a block is unrealizable
    for &oe in &oriented {
        if block_of[g.head(oe)] == block_of[g.tail(oe)] {
            return None;
        }
    }
    // quotient orientation must be acyclic with unique source at q's block
    let nb = blocks.len();
    let mut indeg = vec![0usize; nb];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nb];
    for &oe in &oriented {
        let h = block_of[g.head(oe)];
        let t = block_of[g.tail(oe)];
        indeg[h] += 1;
        out[t].push(h);
    }
    let qb = block_of[g.q()];
    if indeg[qb] != 0 {
        return None;
    }
    if (0..nb).any(|b| b != qb && indeg[b] == 0) {
        return None;
    }
    let mut stack: Vec<usize> = vec![qb];
    let mut removed = 0;
    let mut indeg2 = indeg;
    while let Some(b) = stack.pop() {
        removed += 1;
        for &w in &out[b] {
            indeg2[w] -= 1;
            if indeg2[w] == 0 {
                stack.push(w);
            }
        }
    }
    if removed != nb {
        return None; // directed cycle among blocks
    }
    let dimension = nb - 2;
    Some(Cell {
        orientation: PartialOrientation::from_sorted_unchecked(oriented),
        blocks,
        dimension,
    })
}

/// Enumerates the bounded complex: all valid cells, grouped by dimension.
/// For directed graphs only the legal arc senses occur.
pub fn build_bounded_complex(g: &Graph) -> CellComplex {
    let m = g.edge_count();
    let ids: Vec<_> = g.edges().iter().map(|e| e.id).collect();
    let mut cells_by_dim: Vec<Vec<Cell>> = vec![Vec::new(); g.vertex_count() - 1];
    // each edge is unoriented, forward, or reverse (when legal)
    let mut states = vec![0u8; m];
    loop {
        let oriented: Vec<OrientedEdge> = ids
            .iter()
            .zip(&states)
            .filter_map(|(&id, &s)| match s {
                0 => None,
                1 => Some(OrientedEdge::fwd(id)),
                _ => Some(OrientedEdge::rev(id)),
            })
            .collect();
        if let Some(cell) = cell_for_orientation(g, oriented) {
            cells_by_dim[cell.dimension].push(cell);
        }
        // odometer over per-edge state counts
        let mut i = 0;
        loop {
            if i == m {
                while cells_by_dim.last().is_some_and(|v| v.is_empty()) {
                    cells_by_dim.pop();
                }
                for dim_cells in &mut cells_by_dim {
                    dim_cells.sort_by(|a, b| a.orientation.cmp(&b.orientation));
                }
                return CellComplex { cells_by_dim };
            }
            let limit = if g.edges()[i].directed { 2 } else { 3 };
            states[i] += 1;
            if states[i] < limit {
                break;
            }
            states[i] = 0;
            i += 1;
        }
    }
}

/// Induced subcomplex on the 0-cells whose cut contains `t` on the A side:
/// a face survives iff all of its 0-faces do.
pub fn sink_subcomplex(g: &Graph, b: &CellComplex, t: VertexId) -> Result<CellComplex> {
    if t == g.q() {
        return Err(Error::invalid("sink must differ from q"));
    }
    if t >= g.vertex_count() {
        return Err(Error::invalid(format!("sink {t} out of range")));
    }
    let zero_cells: Vec<&Cell> = b.cells_by_dim.first().map(|v| v.iter().collect()).unwrap_or_default();
    let kept_zero: Vec<&Cell> = zero_cells
        .iter()
        .copied()
        .filter(|c| {
            // the A side of a 0-cell is the block not containing q
            c.blocks
                .iter()
                .find(|blk| !blk.contains(&g.q()))
                .is_some_and(|blk| blk.contains(&t))
        })
        .collect();
    let mut cells_by_dim: Vec<Vec<Cell>> = Vec::new();
    for dim_cells in &b.cells_by_dim {
        let mut kept = Vec::new();
        for cell in dim_cells {
            let all_kept = zero_cells
                .iter()
                .filter(|z| CellComplex::is_face(z, cell))
                .all(|z| kept_zero.iter().any(|k| k.orientation == z.orientation));
            if all_kept {
                kept.push(cell.clone());
            }
        }
        cells_by_dim.push(kept);
    }
    while cells_by_dim.last().is_some_and(|v| v.is_empty()) {
        cells_by_dim.pop();
    }
    Ok(CellComplex { cells_by_dim })
}

/// Monomial label of a cell over a variable set: the product of its oriented
/// edge variables (oriented kind), their underlying edges (edge kind), or
/// their head vertices (vertex kind, exponents accumulating).
pub fn cell_label(g: &Graph, vars: &VariableSet, cell: &Cell) -> Monomial {
    let support: Vec<usize> = cell
        .orientation
        .edges()
        .iter()
        .map(|&oe| match vars.kind {
            VarKind::OrientedEdge => vars.index_of_oriented(oe).unwrap(),
            VarKind::Edge => vars.index_of_edge(oe.edge).unwrap(),
            VarKind::Vertex => g.head(oe),
        })
        .collect();
    Monomial::from_support(vars.len(), &support)
}

/// Betti table read off a labeled complex: the rank in (d, j) counts d-cells
/// with label exponent j.
pub fn labeled_betti(g: &Graph, c: &CellComplex, vars: &VariableSet) -> BettiTable {
    let mut table = BettiTable::new(vars.clone());
    for (d, dim_cells) in c.cells_by_dim.iter().enumerate() {
        for cell in dim_cells {
            let label = cell_label(g, vars, cell);
            table.add(d, label.exponents().to_vec(), 1);
        }
    }
    table
}
