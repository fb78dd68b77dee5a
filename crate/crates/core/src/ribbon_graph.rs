//! Oriented 3-regular multigraphs stored as a pair of permutations on darts.
//!
//! A graph with `2n` vertices has `6n` darts (half-edges). Dart `d` is
//! anchored at vertex `d / 3`, so the three darts of vertex `v` are
//! `3v, 3v + 1, 3v + 2`. Two permutations carry all the structure:
//!
//! * `sigma` cyclically permutes the darts of each vertex; it is the
//!   rotation system (the orientation of the graph);
//! * `alpha` is a fixed-point-free involution pairing darts into edges.
//!
//! Loops and parallel edges are allowed, as is disconnectedness.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version tag written into, and required from, graph JSON files.
pub const GRAPH_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid ribbon graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("vertex {vertex} out of range for a graph with {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("unsupported graph format version {0} (expected {GRAPH_FORMAT_VERSION})")]
    FormatVersion(u32),
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(
        "rotation list for vertex {vertex} names neighbour {neighbor} which does not list it back"
    )]
    InconsistentRotation { vertex: usize, neighbor: usize },
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Which of the two permutations a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Perm {
    Sigma,
    Alpha,
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Perm::Sigma => f.write_str("sigma"),
            Perm::Alpha => f.write_str("alpha"),
        }
    }
}

/// A single broken invariant, pointing at the offending dart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroSize,
    WrongLength {
        perm: Perm,
        len: usize,
        expected: usize,
    },
    OutOfRange {
        perm: Perm,
        dart: usize,
        image: usize,
    },
    SigmaLeavesBlock {
        dart: usize,
        image: usize,
    },
    SigmaNotThreeCycle {
        dart: usize,
    },
    AlphaFixedPoint {
        dart: usize,
    },
    AlphaNotInvolution {
        dart: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::ZeroSize => write!(f, "n must be at least 1"),
            Violation::WrongLength {
                perm,
                len,
                expected,
            } => {
                write!(f, "{perm} has length {len}, expected {expected}")
            }
            Violation::OutOfRange { perm, dart, image } => {
                write!(f, "{perm} maps dart {dart} to out-of-range dart {image}")
            }
            Violation::SigmaLeavesBlock { dart, .. } => {
                write!(f, "sigma leaves vertex block of dart {dart}")
            }
            Violation::SigmaNotThreeCycle { dart } => {
                write!(
                    f,
                    "sigma is not a 3-cycle on the vertex block of dart {dart}"
                )
            }
            Violation::AlphaFixedPoint { dart } => {
                write!(f, "alpha has fixed point at dart {dart}")
            }
            Violation::AlphaNotInvolution { dart } => {
                write!(f, "alpha is not an involution at dart {dart}")
            }
        }
    }
}

/// Checks raw permutation arrays against every ribbon-graph invariant.
///
/// Returns the empty list when the arrays describe a valid graph with `2n`
/// vertices. Violations are reported per offending dart.
pub fn validate(n: usize, sigma: &[usize], alpha: &[usize]) -> Vec<Violation> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Violation::ZeroSize);
        return out;
    }
    let darts = 6 * n;
    for (perm, arr) in [(Perm::Sigma, sigma), (Perm::Alpha, alpha)] {
        if arr.len() != darts {
            out.push(Violation::WrongLength {
                perm,
                len: arr.len(),
                expected: darts,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut block_ok = vec![true; 2 * n];
    for (d, &s) in sigma.iter().enumerate() {
        if s >= darts {
            out.push(Violation::OutOfRange {
                perm: Perm::Sigma,
                dart: d,
                image: s,
            });
            block_ok[d / 3] = false;
        } else if s / 3 != d / 3 {
            out.push(Violation::SigmaLeavesBlock { dart: d, image: s });
            block_ok[d / 3] = false;
        }
    }
    for v in (0..2 * n).filter(|&v| block_ok[v]) {
        for d in 3 * v..3 * v + 3 {
            if sigma[d] == d || sigma[sigma[sigma[d]]] != d {
                out.push(Violation::SigmaNotThreeCycle { dart: d });
                break;
            }
        }
    }

    for (d, &a) in alpha.iter().enumerate() {
        if a >= darts {
            out.push(Violation::OutOfRange {
                perm: Perm::Alpha,
                dart: d,
                image: a,
            });
        } else if a == d {
            out.push(Violation::AlphaFixedPoint { dart: d });
        } else if alpha[a] != d {
            out.push(Violation::AlphaNotInvolution { dart: d });
        }
    }
    out
}

/// A 3-regular multigraph with a rotation system, on `2n` vertices.
///
/// Values are immutable once built; every constructor validates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    n: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
}

/// One edge of the graph, named by its two darts (`a < b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub is_loop: bool,
}

/// Derived edge view of a ribbon graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub edges: Vec<Edge>,
    /// Number of edges between each unordered vertex pair `(u, v)`, `u <= v`.
    pub multiplicity: BTreeMap<(usize, usize), usize>,
}

impl EdgeList {
    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop).count()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    format_version: u32,
    n: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
}

impl RibbonGraph {
    pub fn new(n: usize, sigma: Vec<usize>, alpha: Vec<usize>) -> Result<Self, GraphError> {
        let violations = validate(n, &sigma, &alpha);
        if violations.is_empty() {
            Ok(RibbonGraph { n, sigma, alpha })
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    /// Builds a simple graph from per-vertex neighbour lists.
    ///
    /// `rotation[v]` lists the three neighbours of `v` in cyclic order; dart
    /// `3v + k` points at `rotation[v][k]` and `sigma` advances `k`. Each
    /// neighbour relation must be listed from both ends exactly once.
    pub fn from_rotation(rotation: &[[usize; 3]]) -> Result<Self, GraphError> {
        let vertices = rotation.len();
        let mut alpha = vec![0; 3 * vertices];
        for (v, nbrs) in rotation.iter().enumerate() {
            for (k, &w) in nbrs.iter().enumerate() {
                if w >= vertices {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        vertices,
                    });
                }
                let back = rotation[w].iter().position(|&x| x == v).ok_or(
                    GraphError::InconsistentRotation {
                        vertex: v,
                        neighbor: w,
                    },
                )?;
                alpha[3 * v + k] = 3 * w + back;
            }
        }
        let sigma = (0..3 * vertices)
            .map(|d| 3 * (d / 3) + (d % 3 + 1) % 3)
            .collect();
        // An odd vertex count or a doubly-listed neighbour surfaces as a violation here.
        Self::new(vertices / 2, sigma, alpha)
    }

    /// Builds a planar graph from vertex coordinates, with each vertex's
    /// rotation taken counterclockwise around it.
    pub fn from_planar_embedding(
        coords: &[(f64, f64)],
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); coords.len()];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= coords.len() {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x,
                        vertices: coords.len(),
                    });
                }
            }
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut rotation = Vec::with_capacity(coords.len());
        for (v, list) in nbrs.iter_mut().enumerate() {
            let (x0, y0) = coords[v];
            list.sort_by(|&a, &b| {
                let ta = (coords[a].1 - y0).atan2(coords[a].0 - x0);
                let tb = (coords[b].1 - y0).atan2(coords[b].0 - x0);
                ta.total_cmp(&tb)
            });
            let arr: [usize; 3] = list.as_slice().try_into().map_err(|_| {
                GraphError::Invalid(vec![Violation::WrongLength {
                    perm: Perm::Alpha,
                    len: list.len(),
                    expected: 3,
                }])
            })?;
            rotation.push(arr);
        }
        Self::from_rotation(&rotation)
    }

    /// Disjoint union; darts of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &RibbonGraph) -> RibbonGraph {
        let shift = self.dart_count();
        let mut sigma = self.sigma.clone();
        let mut alpha = self.alpha.clone();
        sigma.extend(other.sigma.iter().map(|s| s + shift));
        alpha.extend(other.alpha.iter().map(|a| a + shift));
        RibbonGraph {
            n: self.n + other.n,
            sigma,
            alpha,
        }
    }

    /// The same graph with every rotation reversed.
    pub fn mirror(&self) -> RibbonGraph {
        let mut sigma = vec![0; self.sigma.len()];
        for (d, &s) in self.sigma.iter().enumerate() {
            sigma[s] = d;
        }
        RibbonGraph {
            n: self.n,
            sigma,
            alpha: self.alpha.clone(),
        }
    }

    /// Half the vertex count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        3 * self.n
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        6 * self.n
    }

    #[inline]
    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    #[inline]
    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn sigma_slice(&self) -> &[usize] {
        &self.sigma
    }

    pub fn alpha_slice(&self) -> &[usize] {
        &self.alpha
    }

    #[inline]
    pub fn vertex_of(&self, d: usize) -> usize {
        d / 3
    }

    /// The three darts at vertex `v`.
    #[inline]
    pub fn darts_at(&self, v: usize) -> std::ops::Range<usize> {
        3 * v..3 * v + 3
    }

    /// Far endpoint of the edge leaving through dart `d`.
    #[inline]
    pub fn head(&self, d: usize) -> usize {
        self.alpha[d] / 3
    }

    #[inline]
    pub fn is_loop_dart(&self, d: usize) -> bool {
        self.alpha[d] / 3 == d / 3
    }

    /// Canonical edge identifier: the smaller of its two darts.
    #[inline]
    pub fn edge_id(&self, d: usize) -> usize {
        d.min(self.alpha[d])
    }

    /// Re-checks the invariants; always empty for a constructed graph.
    pub fn validate(&self) -> Vec<Violation> {
        validate(self.n, &self.sigma, &self.alpha)
    }

    pub fn edges(&self) -> EdgeList {
        let mut edges = Vec::with_capacity(self.edge_count());
        let mut multiplicity = BTreeMap::new();
        for d in 0..self.dart_count() {
            let a = self.alpha[d];
            if d < a {
                let (u, v) = (d / 3, a / 3);
                edges.push(Edge {
                    a: d,
                    b: a,
                    is_loop: u == v,
                });
                *multiplicity.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
        EdgeList {
            edges,
            multiplicity,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.edges()
            .multiplicity
            .iter()
            .all(|(&(u, v), &m)| u != v && m == 1)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let vertices = self.vertex_count();
        let mut seen = vec![false; vertices];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..vertices {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for d in self.darts_at(v) {
                    let w = self.head(d);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Graph distance (in edges) between two vertex sets.
    ///
    /// `Ok(None)` means the sets lie in different components.
    pub fn set_distance(&self, a: &[usize], b: &[usize]) -> Result<Option<usize>, GraphError> {
        self.set_distance_within(a, b, usize::MAX)
    }

    /// Like [`set_distance`](Self::set_distance), but stops searching past
    /// `limit` and reports `None` for anything farther.
    pub fn set_distance_within(
        &self,
        a: &[usize],
        b: &[usize],
        limit: usize,
    ) -> Result<Option<usize>, GraphError> {
        if a.is_empty() || b.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let vertices = self.vertex_count();
        if let Some(&v) = a.iter().chain(b).find(|&&v| v >= vertices) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertices,
            });
        }
        let mut target = vec![false; vertices];
        for &v in b {
            target[v] = true;
        }
        let mut dist = vec![usize::MAX; vertices];
        let mut queue = VecDeque::new();
        for &v in a {
            if target[v] {
                return Ok(Some(0));
            }
            if dist[v] == usize::MAX {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            if dist[v] >= limit {
                break;
            }
            for d in self.darts_at(v) {
                let w = self.head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    if target[w] {
                        return Ok(Some(dist[w]));
                    }
                    queue.push_back(w);
                }
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            format_version: GRAPH_FORMAT_VERSION,
            n: self.n,
            sigma: self.sigma.clone(),
            alpha: self.alpha.clone(),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    /// Parses and validates the graph JSON format; invalid graphs are refused.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text)?;
        if file.format_version != GRAPH_FORMAT_VERSION {
            return Err(GraphError::FormatVersion(file.format_version));
        }
        Self::new(file.n, file.sigma, file.alpha)
    }
}

/// Small named graphs with fixed rotation systems.
pub mod catalog {
    use super::RibbonGraph;

    /// Two vertices joined by three parallel edges (`alpha = {0↔3, 1↔4, 2↔5}`).
    ///
    /// With `twisted = false` both rotations are `(0 1 2)(3 4 5)`, giving a
    /// single face of length 6. With `twisted = true` the second vertex uses
    /// `(3 5 4)`, giving three faces of length 2.
    pub fn theta(twisted: bool) -> RibbonGraph {
        let sigma = if twisted {
            vec![1, 2, 0, 5, 3, 4]
        } else {
            vec![1, 2, 0, 4, 5, 3]
        };
        RibbonGraph::new(1, sigma, vec![3, 4, 5, 0, 1, 2]).unwrap()
    }

    /// A loop at each of two vertices plus the bridge between them.
    pub fn loops_and_bridge() -> RibbonGraph {
        RibbonGraph::new(1, vec![1, 2, 0, 4, 5, 3], vec![1, 0, 3, 2, 5, 4]).unwrap()
    }

    /// K4 drawn in the plane: an outer triangle around a centre vertex.
    pub fn k4_planar() -> RibbonGraph {
        let coords = [(0.0, 10.0), (-9.0, -5.0), (9.0, -5.0), (0.0, 0.0)];
        let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        RibbonGraph::from_planar_embedding(&coords, &edges).unwrap()
    }

    /// The cube's 1-skeleton with its planar rotation system.
    pub fn cube_planar() -> RibbonGraph {
        let coords = [
            (-2.0, -2.0),
            (2.0, -2.0),
            (2.0, 2.0),
            (-2.0, 2.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
        ];
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ];
        RibbonGraph::from_planar_embedding(&coords, &edges).unwrap()
    }

    /// The triangular prism (two triangles joined by a perfect matching), planar.
    pub fn prism_planar() -> RibbonGraph {
        let coords = [
            (0.0, 4.0),
            (-4.0, -2.0),
            (4.0, -2.0),
            (0.0, 1.0),
            (-1.0, -0.5),
            (1.0, -0.5),
        ];
        let edges = [
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ];
        RibbonGraph::from_planar_embedding(&coords, &edges).unwrap()
    }

    /// K3,3 with one vertex blown up into a triangle: exactly one 3-cycle.
    pub fn k33_with_triangle() -> RibbonGraph {
        // Vertices 0,1 and 5,6,7 are the untouched sides; 2,3,4 form the
        // triangle replacing the third vertex of the first side.
        RibbonGraph::from_rotation(&[
            [5, 6, 7],
            [5, 6, 7],
            [3, 4, 5],
            [2, 4, 6],
            [2, 3, 7],
            [0, 1, 2],
            [0, 1, 3],
            [0, 1, 4],
        ])
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn theta_is_valid() {
        let g = theta(false);
        assert!(g.validate().is_empty());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn alpha_fixed_point_is_reported() {
        let v = validate(1, &[1, 2, 0, 4, 5, 3], &[0, 4, 5, 3, 1, 2]);
        assert!(v.contains(&Violation::AlphaFixedPoint { dart: 0 }));
        assert!(v
            .iter()
            .any(|x| x.to_string() == "alpha has fixed point at dart 0"));
    }

    #[test]
    fn sigma_leaving_block_is_reported() {
        let v = validate(1, &[3, 2, 0, 4, 5, 1], &[3, 4, 5, 0, 1, 2]);
        assert!(v.contains(&Violation::SigmaLeavesBlock { dart: 0, image: 3 }));
        assert!(v
            .iter()
            .any(|x| x.to_string() == "sigma leaves vertex block of dart 0"));
    }

    #[test]
    fn other_violations() {
        assert_eq!(validate(0, &[], &[]), vec![Violation::ZeroSize]);
        assert!(matches!(
            validate(1, &[1, 2, 0], &[3, 4, 5, 0, 1, 2])[0],
            Violation::WrongLength {
                perm: Perm::Sigma,
                ..
            }
        ));
        // transposition plus fixed point inside a block
        let v = validate(1, &[1, 0, 2, 4, 5, 3], &[3, 4, 5, 0, 1, 2]);
        assert_eq!(v, vec![Violation::SigmaNotThreeCycle { dart: 0 }]);
        // 0->3, 3->1, 1->4: not an involution
        let v = validate(1, &[1, 2, 0, 4, 5, 3], &[3, 4, 5, 1, 0, 2]);
        assert!(v.contains(&Violation::AlphaNotInvolution { dart: 0 }));
        let v = validate(1, &[1, 2, 0, 4, 5, 3], &[3, 4, 5, 0, 1, 9]);
        assert!(v.contains(&Violation::OutOfRange {
            perm: Perm::Alpha,
            dart: 5,
            image: 9
        }));
        assert!(RibbonGraph::new(1, vec![1, 2, 0, 4, 5, 3], vec![0, 4, 5, 3, 1, 2]).is_err());
    }

    #[test]
    fn simplicity() {
        assert!(!theta(false).is_simple());
        assert!(!loops_and_bridge().is_simple());
        assert!(cube_planar().is_simple());
        assert!(k4_planar().is_simple());
        assert_eq!(loops_and_bridge().edges().loop_count(), 2);
        assert_eq!(theta(true).edges().multiplicity[&(0, 1)], 3);
    }

    #[test]
    fn components() {
        assert_eq!(
            cube_planar().connected_components(),
            vec![(0..8).collect::<Vec<_>>()]
        );
        assert_eq!(k4_planar().connected_components(), vec![vec![0, 1, 2, 3]]);
        let two = theta(false).disjoint_union(&theta(true));
        assert_eq!(two.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(two.validate().is_empty());
    }

    #[test]
    fn distances() {
        let cube = cube_planar();
        assert_eq!(cube.set_distance(&[0, 1], &[0, 1]).unwrap(), Some(0));
        // 0 = outer (-2,-2) and 6 = inner (1,1) are antipodal in the cube
        assert_eq!(cube.set_distance(&[0], &[6]).unwrap(), Some(3));
        assert_eq!(cube.set_distance(&[0], &[1]).unwrap(), Some(1));
        assert_eq!(cube.set_distance_within(&[0], &[6], 2).unwrap(), None);
        let two = theta(false).disjoint_union(&theta(false));
        assert_eq!(two.set_distance(&[0], &[3]).unwrap(), None);
        assert!(matches!(
            cube.set_distance(&[], &[1]),
            Err(GraphError::EmptyVertexSet)
        ));
        assert!(cube.set_distance(&[0], &[99]).is_err());
    }

    #[test]
    fn json_round_trip_and_refusal() {
        let g = cube_planar();
        let text = g.to_json();
        assert!(text.starts_with(r#"{"format_version":1,"n":4,"sigma":["#));
        assert_eq!(RibbonGraph::from_json(&text).unwrap(), g);
        let theta_text = theta(false).to_json();
        assert_eq!(
            theta_text,
            r#"{"format_version":1,"n":1,"sigma":[1,2,0,4,5,3],"alpha":[3,4,5,0,1,2]}"#
        );
        let bad = r#"{"format_version":1,"n":1,"sigma":[3,2,0,4,5,1],"alpha":[3,4,5,0,1,2]}"#;
        assert!(matches!(
            RibbonGraph::from_json(bad),
            Err(GraphError::Invalid(_))
        ));
        let v2 = r#"{"format_version":2,"n":1,"sigma":[1,2,0,4,5,3],"alpha":[3,4,5,0,1,2]}"#;
        assert!(matches!(
            RibbonGraph::from_json(v2),
            Err(GraphError::FormatVersion(2))
        ));
    }

    #[test]
    fn rotation_builder_rejects_one_sided_lists() {
        let r = RibbonGraph::from_rotation(&[[1, 1, 1], [0, 0, 2], [0, 0, 0], [0, 0, 0]]);
        assert!(r.is_err());
    }

    #[test]
    fn mirror_inverts_sigma() {
        let g = theta(false);
        let m = g.mirror();
        for d in 0..6 {
            assert_eq!(m.sigma(g.sigma(d)), d);
        }
        assert_eq!(m.mirror(), g);
    }
}
