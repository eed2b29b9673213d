//! Graphs, drawings and crossing relations.
//!
//! Every type here is an immutable value once constructed. Constructors
//! enforce the simplicity invariants that the rest of the crate relies on:
//! graphs have no loops or parallel edges, and a crossing relation never
//! pairs two edges that share an endpoint.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// A violated graph invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphViolation {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} ({u},{v}) duplicates edge {first}")]
    DuplicateEdge {
        edge: usize,
        first: usize,
        u: usize,
        v: usize,
    },
    #[error("edge {edge} uses vertex {vertex}, but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
}

/// Checks raw input against the simple-graph invariants and returns the
/// first violation, scanning edges in input order.
pub fn validate_graph(n: usize, edges: &[(usize, usize)]) -> Result<(), GraphViolation> {
    if n == 0 {
        return Err(GraphViolation::NoVertices);
    }
    let mut seen = std::collections::HashMap::with_capacity(edges.len());
    for (idx, &(a, b)) in edges.iter().enumerate() {
        for vertex in [a, b] {
            if vertex >= n {
                return Err(GraphViolation::VertexOutOfRange { edge: idx, vertex, n });
            }
        }
        if a == b {
            return Err(GraphViolation::SelfLoop { edge: idx, vertex: a });
        }
        let key = (a.min(b), a.max(b));
        if let Some(&first) = seen.get(&key) {
            return Err(GraphViolation::DuplicateEdge {
                edge: idx,
                first,
                u: key.0,
                v: key.1,
            });
        }
        seen.insert(key, idx);
    }
    Ok(())
}

/// A simple undirected graph with stable, input-ordered edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, storing every edge as `(min, max)`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphViolation> {
        let edges: Vec<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        validate_graph(n, &edges)?;
        Ok(Graph { n, edges })
    }

    pub fn empty(n: usize) -> Result<Self, GraphViolation> {
        Graph::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> (usize, usize) {
        self.edges[idx]
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_adjacent_pair(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    pub fn is_incident(&self, e: usize, v: usize) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edge indices incident to each vertex, ascending.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(idx);
            inc[b].push(idx);
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    /// Subgraph on the same vertex set keeping the listed edges, in the
    /// listed order.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        Graph {
            n: self.n,
            edges: keep.iter().map(|&e| self.edges[e]).collect(),
        }
    }

    /// Proper 2-colouring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let inc = self.incidence();
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let cv = color[v].unwrap();
                for &e in &inc[v] {
                    let w = self.other_end(e, v);
                    match color[w] {
                        None => {
                            color[w] = Some(1 - cv);
                            stack.push(w);
                        }
                        Some(cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = self.n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }
}

/// Exact rational point in the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }

    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point {
            x: BigRational::new(BigInt::from(xn), BigInt::from(xd)),
            y: BigRational::new(BigInt::from(yn), BigInt::from(yd)),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("drawing has {coords} coordinates for {n} vertices")]
    CoordinateCount { n: usize, coords: usize },
    #[error(transparent)]
    Graph(#[from] GraphViolation),
    #[error(transparent)]
    Crossings(#[from] CrossingViolation),
}

/// A graph with exact rational vertex positions and straight edges.
///
/// Construction only checks that every vertex has a position; the geometric
/// simplicity conditions are reported by
/// [`validate_simplicity`](crate::crossings::validate_simplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightLineDrawing {
    graph: Graph,
    coords: Vec<Point>,
}

impl StraightLineDrawing {
    pub fn new(graph: Graph, coords: Vec<Point>) -> Result<Self, DrawingError> {
        if coords.len() != graph.n() {
            return Err(DrawingError::CoordinateCount {
                n: graph.n(),
                coords: coords.len(),
            });
        }
        Ok(StraightLineDrawing { graph, coords })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    /// Drawing of the subgraph formed by `keep`, same vertex positions.
    pub fn restrict(&self, keep: &[usize]) -> StraightLineDrawing {
        StraightLineDrawing {
            graph: self.graph.edge_subgraph(keep),
            coords: self.coords.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossingViolation {
    #[error("crossing pair ({0},{1}) references a missing edge")]
    EdgeOutOfRange(usize, usize),
    #[error("edge {0} cannot cross itself")]
    SelfCrossing(usize),
    #[error("edges {0} and {1} share an endpoint and cannot cross")]
    AdjacentPair(usize, usize),
}

/// Unordered pairs of crossing edges, stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct CrossingRelation {
    pairs: BTreeSet<(usize, usize)>,
}

impl CrossingRelation {
    pub fn empty() -> Self {
        CrossingRelation::default()
    }

    /// Validates `pairs` against `graph`.
    pub fn new(graph: &Graph, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CrossingViolation> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            let (i, j) = (a.min(b), a.max(b));
            if j >= graph.edge_count() {
                return Err(CrossingViolation::EdgeOutOfRange(a, b));
            }
            if i == j {
                return Err(CrossingViolation::SelfCrossing(i));
            }
            if graph.is_adjacent_pair(i, j) {
                return Err(CrossingViolation::AdjacentPair(i, j));
            }
            set.insert((i, j));
        }
        Ok(CrossingRelation { pairs: set })
    }

    /// Builds a relation whose pairs are already known to be valid.
    pub(crate) fn from_sorted_unchecked(pairs: BTreeSet<(usize, usize)>) -> Self {
        CrossingRelation { pairs }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    /// For each edge, the ascending list of edges it crosses.
    pub fn adjacency(&self, edge_count: usize) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); edge_count];
        for &(i, j) in &self.pairs {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Cyclic edge orders around vertices and crossing orders along edges.
///
/// This is the combinatorial embedding of a topological drawing: at each
/// vertex the incident edges in counter-clockwise order, and along each edge
/// the edges it crosses, ordered from its lower-numbered endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
    pub crossing_order: Vec<Vec<usize>>,
}

/// A drawing known only through which edges cross which.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractDrawing {
    graph: Graph,
    crossings: CrossingRelation,
    provenance: String,
    embedding: Option<Embedding>,
}

impl AbstractDrawing {
    pub fn new(graph: Graph, crossings: CrossingRelation, provenance: impl Into<String>) -> Self {
        AbstractDrawing {
            graph,
            crossings,
            provenance: provenance.into(),
            embedding: None,
        }
    }

    /// Attaches a combinatorial embedding. The embedding must list every
    /// incident edge once per vertex and, per edge, exactly the edges that
    /// cross it.
    pub fn with_embedding(mut self, embedding: Embedding) -> Result<Self, EmbeddingError> {
        check_embedding(&self.graph, &self.crossings, &embedding)?;
        self.embedding = Some(embedding);
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn crossings(&self) -> &CrossingRelation {
        &self.crossings
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation lists {got} vertices, graph has {n}")]
    VertexCount { n: usize, got: usize },
    #[error("rotation at vertex {0} is not a permutation of its incident edges")]
    Rotation(usize),
    #[error("crossing order of edge {0} does not match the crossing relation")]
    CrossingOrder(usize),
}

fn check_embedding(graph: &Graph, crossings: &CrossingRelation, emb: &Embedding) -> Result<(), EmbeddingError> {
    if emb.rotation.len() != graph.n() {
        return Err(EmbeddingError::VertexCount {
            n: graph.n(),
            got: emb.rotation.len(),
        });
    }
    let inc = graph.incidence();
    for (v, rot) in emb.rotation.iter().enumerate() {
        let mut sorted = rot.clone();
        sorted.sort_unstable();
        if sorted != inc[v] {
            return Err(EmbeddingError::Rotation(v));
        }
    }
    if emb.crossing_order.len() != graph.edge_count() {
        return Err(EmbeddingError::CrossingOrder(
            emb.crossing_order.len().min(graph.edge_count()),
        ));
    }
    let adj = crossings.adjacency(graph.edge_count());
    for (e, order) in emb.crossing_order.iter().enumerate() {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != adj[e] {
            return Err(EmbeddingError::CrossingOrder(e));
        }
    }
    Ok(())
}

/// Either kind of drawing the crate can check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Drawing {
    Straight(StraightLineDrawing),
    Abstract(AbstractDrawing),
}

impl Drawing {
    pub fn graph(&self) -> &Graph {
        match self {
            Drawing::Straight(d) => d.graph(),
            Drawing::Abstract(d) => d.graph(),
        }
    }

    pub fn as_straight(&self) -> Option<&StraightLineDrawing> {
        match self {
            Drawing::Straight(d) => Some(d),
            Drawing::Abstract(_) => None,
        }
    }
}

impl From<StraightLineDrawing> for Drawing {
    fn from(d: StraightLineDrawing) -> Self {
        Drawing::Straight(d)
    }
}

impl From<AbstractDrawing> for Drawing {
    fn from(d: AbstractDrawing) -> Self {
        Drawing::Abstract(d)
    }
}

/// An edge `crosser` crossing `fan.len()` edges that all end at `apex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FanWitness {
    pub crosser: usize,
    pub apex: usize,
    pub fan: Vec<usize>,
}

impl FanWitness {
    /// Re-checks the witness against a graph and crossing relation.
    pub fn is_valid(&self, graph: &Graph, crossings: &CrossingRelation) -> bool {
        !graph.is_incident(self.crosser, self.apex)
            && self
                .fan
                .iter()
                .all(|&e| graph.is_incident(e, self.apex) && crossings.contains(self.crosser, e))
    }
}

impl fmt::Display for FanWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edge {} crosses edges {:?} at vertex {}",
            self.crosser, self.fan, self.apex
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_valid() {
        assert_eq!(validate_graph(3, &[(0, 1), (1, 2), (0, 2)]), Ok(()));
    }

    #[test]
    fn duplicate_edge_is_reported() {
        let err = validate_graph(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, GraphViolation::DuplicateEdge { edge: 1, first: 0, .. }));
    }

    #[test]
    fn self_loop_is_reported() {
        let err = validate_graph(4, &[(3, 3)]).unwrap_err();
        assert_eq!(err, GraphViolation::SelfLoop { edge: 0, vertex: 3 });
    }

    #[test]
    fn out_of_range_and_empty() {
        assert!(matches!(
            validate_graph(2, &[(0, 2)]),
            Err(GraphViolation::VertexOutOfRange { vertex: 2, .. })
        ));
        assert_eq!(validate_graph(0, &[]), Err(GraphViolation::NoVertices));
    }

    #[test]
    fn edge_counts() {
        let k6 = Graph::new(6, (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(k6.edge_count(), 15);
        assert_eq!(Graph::empty(5).unwrap().edge_count(), 0);
    }

    #[test]
    fn canonicalisation_is_idempotent() {
        let g = Graph::new(4, [(3, 0), (2, 1), (1, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 2), (1, 3)]);
        let again = Graph::new(g.n(), g.edges().iter().copied()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn crossing_relation_rejects_adjacent_pairs() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            CrossingRelation::new(&g, [(0, 1)]),
            Err(CrossingViolation::AdjacentPair(0, 1))
        );
        let rel = CrossingRelation::new(&g, [(2, 0)]).unwrap();
        assert!(rel.contains(0, 2));
        assert_eq!(rel.pairs().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn bipartite_check() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.two_coloring().is_some());
        let c3 = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(c3.two_coloring().is_none());
    }

    #[test]
    fn components_count_isolated_vertices() {
        let g = Graph::new(5, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.component_count(), 3);
    }
}
