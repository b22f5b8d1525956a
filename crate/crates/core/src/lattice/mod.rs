//! Coupling graphs of nearest-neighbour qubit lattices and their balanced cuts.
//!
//! Vertices are numbered row-major (`id = row * cols + col`) for every grid
//! kind. Graphs are immutable once built.

mod cut;
mod format;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cut::{all_min_balanced_cuts, min_balanced_cut, random_balanced_cut, CutMode, EXACT_CUT_LIMIT};
pub use format::{parse_graph, read_graph, write_graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("grid dimensions must be positive, got {rows}x{cols}")]
    ZeroDimension { rows: usize, cols: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("{n} is not a perfect square")]
    NotPerfectSquare { n: usize },
    #[error("deformation k = {k} must be smaller than sqrt(n) = {side}")]
    DeformationTooLarge { k: usize, side: usize },
    #[error("sqrt(n) - k = {short} does not divide n = {n}")]
    NotDivisible { n: usize, short: usize },
    #[error("vertex id {id} out of range for a graph with {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} listed twice in a cut side")]
    DuplicateVertex(usize),
    #[error("cut side has {got} vertices, a balanced cut of {n} needs {want}")]
    Unbalanced { n: usize, got: usize, want: usize },
    #[error("exact min-cut enumeration is limited to {limit} vertices (graph has {n}); use the heuristic mode")]
    ExactBudgetExceeded { n: usize, limit: usize },
    #[error("graph file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph file i/o: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeKind {
    SquareGrid { side: usize },
    /// `(sqrt(n) - k) x n / (sqrt(n) - k)` grid.
    DeformedGrid { k: usize, rows: usize, cols: usize },
    Rectangle { rows: usize, cols: usize },
    Custom,
}

impl LatticeKind {
    /// `(rows, cols)` for every grid kind, `None` for custom graphs.
    pub fn grid_dims(&self) -> Option<(usize, usize)> {
        match *self {
            LatticeKind::SquareGrid { side } => Some((side, side)),
            LatticeKind::DeformedGrid { rows, cols, .. } | LatticeKind::Rectangle { rows, cols } => {
                Some((rows, cols))
            }
            LatticeKind::Custom => None,
        }
    }
}

/// Edge support of the coupling matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    kind: LatticeKind,
}

impl LatticeGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in construction order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    /// `(row, col)` of a vertex on grid kinds.
    pub fn coord(&self, id: usize) -> Option<(usize, usize)> {
        let (_, cols) = self.kind.grid_dims()?;
        (id < self.n).then(|| (id / cols, id % cols))
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.contains(&key)
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Edges sorted by `(min id, max id)`.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

/// Rectangular nearest-neighbour lattice of `rows x cols` qubits.
pub fn build_grid(rows: usize, cols: usize) -> Result<LatticeGraph, LatticeError> {
    if rows == 0 || cols == 0 {
        return Err(LatticeError::ZeroDimension { rows, cols });
    }
    let kind = if rows == cols {
        LatticeKind::SquareGrid { side: rows }
    } else {
        LatticeKind::Rectangle { rows, cols }
    };
    Ok(grid_with_kind(rows, cols, kind))
}

fn grid_with_kind(rows: usize, cols: usize, kind: LatticeKind) -> LatticeGraph {
    let mut edges = Vec::with_capacity(rows * (cols - 1) + cols * (rows - 1));
    for r in 0..rows {
        for c in 0..cols {
            let id = r * cols + c;
            if c + 1 < cols {
                edges.push((id, id + 1));
            }
            if r + 1 < rows {
                edges.push((id, id + cols));
            }
        }
    }
    LatticeGraph { n: rows * cols, edges, kind }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: usize) -> Option<usize> {
    let mut s = (n as f64).sqrt() as usize;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    (s * s == n).then_some(s)
}

/// Validates `(n, k)` for a deformed grid and returns `(rows, cols)`.
pub fn deformed_dims(n: usize, k: usize) -> Result<(usize, usize), LatticeError> {
    let side = exact_sqrt(n).ok_or(LatticeError::NotPerfectSquare { n })?;
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if k >= side {
        return Err(LatticeError::DeformationTooLarge { k, side });
    }
    let short = side - k;
    if n % short != 0 {
        return Err(LatticeError::NotDivisible { n, short });
    }
    Ok((short, n / short))
}

/// The square grid on `n` qubits with one side shortened by `k` at constant `n`.
pub fn build_deformed_grid(n: usize, k: usize) -> Result<LatticeGraph, LatticeError> {
    let (rows, cols) = deformed_dims(n, k)?;
    let kind = if k == 0 {
        LatticeKind::SquareGrid { side: rows }
    } else {
        LatticeKind::DeformedGrid { k, rows, cols }
    };
    Ok(grid_with_kind(rows, cols, kind))
}

pub fn build_custom(n: usize, edges: &[(usize, usize)]) -> Result<LatticeGraph, LatticeError> {
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        for id in [a, b] {
            if id >= n {
                return Err(LatticeError::VertexOutOfRange { id, n });
            }
        }
        if a == b {
            return Err(LatticeError::SelfLoop(a));
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(LatticeError::DuplicateEdge(key.0, key.1));
        }
        out.push(key);
    }
    Ok(LatticeGraph { n, edges: out, kind: LatticeKind::Custom })
}

/// Number of edges with exactly one endpoint in `side_a`.
pub fn crossing_count(graph: &LatticeGraph, side_a: &[usize]) -> Result<usize, LatticeError> {
    let mut in_a = vec![false; graph.n];
    for &id in side_a {
        if id >= graph.n {
            return Err(LatticeError::VertexOutOfRange { id, n: graph.n });
        }
        in_a[id] = true;
    }
    Ok(graph.edges.iter().filter(|&&(a, b)| in_a[a] != in_a[b]).count())
}

/// Balanced bipartition with its crossing-edge count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
    f: usize,
}

impl Cut {
    /// Builds the cut whose first side is `side_a`; `|side_a|` must be `ceil(n/2)`.
    pub fn new(graph: &LatticeGraph, side_a: &[usize]) -> Result<Self, LatticeError> {
        let n = graph.n;
        let want = n.div_ceil(2);
        let mut in_a = vec![false; n];
        for &id in side_a {
            if id >= n {
                return Err(LatticeError::VertexOutOfRange { id, n });
            }
            if std::mem::replace(&mut in_a[id], true) {
                return Err(LatticeError::DuplicateVertex(id));
            }
        }
        if side_a.len() != want {
            return Err(LatticeError::Unbalanced { n, got: side_a.len(), want });
        }
        let f = graph.edges.iter().filter(|&&(a, b)| in_a[a] != in_a[b]).count();
        let side_a: Vec<usize> = (0..n).filter(|&v| in_a[v]).collect();
        let side_b: Vec<usize> = (0..n).filter(|&v| !in_a[v]).collect();
        Ok(Cut { side_a, side_b, f })
    }

    pub(crate) fn from_parts(side_a: Vec<usize>, side_b: Vec<usize>, f: usize) -> Self {
        Cut { side_a, side_b, f }
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn n(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    /// Size of the smaller side.
    pub fn min_side(&self) -> usize {
        self.side_a.len().min(self.side_b.len())
    }

    /// Whether the edge `(a, b)` has one endpoint on each side.
    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.side_a.binary_search(&a).is_ok() != self.side_a.binary_search(&b).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent edge count: every ordered pair of coordinates at Manhattan distance 1.
    fn brute_force_grid_edges(rows: usize, cols: usize) -> usize {
        let cells: Vec<(i64, i64)> =
            (0..rows).flat_map(|r| (0..cols).map(move |c| (r as i64, c as i64))).collect();
        let mut count = 0;
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                if (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1 {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn grid_examples() {
        let g = build_grid(7, 7).unwrap();
        assert_eq!((g.n(), g.edge_count()), (49, 84));
        assert_eq!(brute_force_grid_edges(7, 7), 84);
        assert_eq!(2 * 7 * 6, 84);

        let g = build_grid(1, 1).unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));

        let g = build_grid(2, 8).unwrap();
        assert_eq!((g.n(), g.edge_count()), (16, 22));
        assert_eq!(brute_force_grid_edges(2, 8), 22);
    }

    #[test]
    fn grid_rejects_zero_dimension() {
        assert_eq!(build_grid(0, 3), Err(LatticeError::ZeroDimension { rows: 0, cols: 3 }));
        assert!(build_grid(3, 0).is_err());
    }

    #[test]
    fn grid_coordinates_are_row_major() {
        let g = build_grid(3, 4).unwrap();
        assert_eq!(g.coord(0), Some((0, 0)));
        assert_eq!(g.coord(5), Some((1, 1)));
        assert_eq!(g.coord(11), Some((2, 3)));
        assert_eq!(g.coord(12), None);
        assert!(g.contains_edge(5, 6));
        assert!(g.contains_edge(9, 5));
        assert!(!g.contains_edge(3, 4));
    }

    #[test]
    fn every_square_grid_has_expected_edges() {
        for s in 1..=20 {
            let g = build_grid(s, s).unwrap();
            assert_eq!(g.edge_count(), 2 * s * (s - 1));
            assert_eq!(g.edge_count(), brute_force_grid_edges(s, s));
        }
    }

    #[test]
    fn deformed_examples() {
        let g = build_deformed_grid(16, 2).unwrap();
        assert_eq!(g.kind().grid_dims(), Some((2, 8)));
        assert_eq!(g.edge_count(), 22);

        let g = build_deformed_grid(16, 0).unwrap();
        assert_eq!(g, build_grid(4, 4).unwrap());
        assert_eq!(g.edge_count(), 24);

        let g = build_deformed_grid(16, 3).unwrap();
        assert_eq!(g.kind().grid_dims(), Some((1, 16)));
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn deformed_errors_are_distinct() {
        assert_eq!(build_deformed_grid(15, 1), Err(LatticeError::NotPerfectSquare { n: 15 }));
        assert_eq!(
            build_deformed_grid(16, 4),
            Err(LatticeError::DeformationTooLarge { k: 4, side: 4 })
        );
        assert_eq!(build_deformed_grid(16, 1), Err(LatticeError::NotDivisible { n: 16, short: 3 }));
    }

    #[test]
    fn custom_examples() {
        let g = build_custom(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.kind(), LatticeKind::Custom);
        assert_eq!(build_custom(2, &[(0, 0)]), Err(LatticeError::SelfLoop(0)));
        assert_eq!(build_custom(3, &[(0, 1), (0, 1)]), Err(LatticeError::DuplicateEdge(0, 1)));
        assert_eq!(build_custom(3, &[(0, 1), (1, 0)]), Err(LatticeError::DuplicateEdge(0, 1)));
        assert_eq!(
            build_custom(3, &[(0, 3)]),
            Err(LatticeError::VertexOutOfRange { id: 3, n: 3 })
        );
    }

    #[test]
    fn crossing_count_examples() {
        let g = build_grid(4, 4).unwrap();
        let left: Vec<usize> = (0..16).filter(|v| v % 4 < 2).collect();
        assert_eq!(crossing_count(&g, &left).unwrap(), 4);
        assert_eq!(crossing_count(&g, &[]).unwrap(), 0);

        let g = build_grid(2, 8).unwrap();
        let left: Vec<usize> = (0..16).filter(|v| v % 8 < 4).collect();
        assert_eq!(crossing_count(&g, &left).unwrap(), 2);

        assert!(matches!(
            crossing_count(&g, &[16]),
            Err(LatticeError::VertexOutOfRange { id: 16, n: 16 })
        ));
    }

    #[test]
    fn cut_validation() {
        let g = build_grid(3, 3).unwrap();
        let cut = Cut::new(&g, &[4, 0, 1, 3, 2]).unwrap();
        assert_eq!(cut.side_a(), &[0, 1, 2, 3, 4]);
        assert_eq!(cut.side_b(), &[5, 6, 7, 8]);
        assert_eq!(cut.f(), crossing_count(&g, cut.side_a()).unwrap());
        assert!(cut.separates(4, 5));
        assert!(!cut.separates(0, 1));
        assert!(matches!(Cut::new(&g, &[0, 1, 2, 3]), Err(LatticeError::Unbalanced { .. })));
        assert!(matches!(Cut::new(&g, &[0, 0, 1, 2, 3]), Err(LatticeError::DuplicateVertex(0))));
    }

    #[test]
    fn exact_sqrt_matches_squares() {
        for s in 0..2000usize {
            assert_eq!(exact_sqrt(s * s), Some(s));
            if s > 1 {
                assert_eq!(exact_sqrt(s * s + 1), None);
            }
        }
    }
}
