//! Exact crossing computation, simplicity validation and k-fan detection.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::geom::IntCoords;
use crate::model::{CrossingRelation, Drawing, FanWitness, Graph, StraightLineDrawing};

/// One way a straight-line drawing fails to be simple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimplicityViolation {
    /// Two vertices share a position.
    CoincidentVertices { a: usize, b: usize },
    /// A vertex lies in the open interior of an edge it is not incident to.
    VertexOnEdge { vertex: usize, edge: usize },
    /// Two edges with a common endpoint overlap along a segment.
    AdjacentOverlap { e: usize, f: usize },
}

impl SimplicityViolation {
    pub fn kind(&self) -> &'static str {
        match self {
            SimplicityViolation::CoincidentVertices { .. } => "coincident-vertices",
            SimplicityViolation::VertexOnEdge { .. } => "vertex-on-edge",
            SimplicityViolation::AdjacentOverlap { .. } => "adjacent-overlap",
        }
    }

    pub fn indices(&self) -> [usize; 2] {
        match *self {
            SimplicityViolation::CoincidentVertices { a, b } => [a, b],
            SimplicityViolation::VertexOnEdge { vertex, edge } => [vertex, edge],
            SimplicityViolation::AdjacentOverlap { e, f } => [e, f],
        }
    }
}

impl fmt::Display for SimplicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SimplicityViolation::CoincidentVertices { a, b } => write!(f, "vertices {a} and {b} coincide"),
            SimplicityViolation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies on the interior of edge {edge}")
            }
            SimplicityViolation::AdjacentOverlap { e, f: g } => {
                write!(f, "edges {e} and {g} share an endpoint and overlap")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicityReport {
    pub ok: bool,
    pub violations: Vec<SimplicityViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("drawing is not simple: {0}")]
pub struct SimplicityError(pub SimplicityViolation);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanCheckError {
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error(transparent)]
    NotSimple(#[from] SimplicityError),
}

/// Reports every simplicity violation of a straight-line drawing.
pub fn validate_simplicity(d: &StraightLineDrawing) -> SimplicityReport {
    let coords = IntCoords::from_points(d.coords());
    let violations = simplicity_violations(d.graph(), &coords);
    SimplicityReport {
        ok: violations.is_empty(),
        violations,
    }
}

fn simplicity_violations(g: &Graph, coords: &IntCoords) -> Vec<SimplicityViolation> {
    let mut out = Vec::new();

    let mut first_at: HashMap<_, usize> = HashMap::new();
    for v in 0..coords.len() {
        let key = coords.key(v);
        match first_at.get(&key) {
            Some(&a) => out.push(SimplicityViolation::CoincidentVertices { a, b: v }),
            None => {
                first_at.insert(key, v);
            }
        }
    }

    for (edge, &(a, b)) in g.edges().iter().enumerate() {
        for vertex in 0..g.n() {
            if vertex != a && vertex != b && coords.on_open_segment(vertex, a, b) {
                out.push(SimplicityViolation::VertexOnEdge { vertex, edge });
            }
        }
    }

    let inc = g.incidence();
    for (v, edges) in inc.iter().enumerate() {
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                let (x, y) = (g.other_end(e, v), g.other_end(f, v));
                if coords.overlap_at_shared(v, x, y) {
                    out.push(SimplicityViolation::AdjacentOverlap { e, f });
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Exact crossing relation of a simple straight-line drawing.
///
/// Fails with the first simplicity violation when an endpoint touches another
/// edge's interior, two vertices coincide, or adjacent edges overlap.
pub fn compute_crossings(d: &StraightLineDrawing) -> Result<CrossingRelation, SimplicityError> {
    let coords = IntCoords::from_points(d.coords());
    crossings_with(d.graph(), &coords)
}

pub(crate) fn crossings_with(g: &Graph, coords: &IntCoords) -> Result<CrossingRelation, SimplicityError> {
    if let Some(v) = simplicity_violations(g, coords).into_iter().next() {
        return Err(SimplicityError(v));
    }
    let edges = g.edges();
    let mut pairs = BTreeSet::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if coords.properly_cross(a, b, c, d) {
                pairs.insert((i, j));
            }
        }
    }
    Ok(CrossingRelation::from_sorted_unchecked(pairs))
}

/// Crossing relation of either kind of drawing.
pub fn crossing_relation(d: &Drawing) -> Result<CrossingRelation, SimplicityError> {
    match d {
        Drawing::Straight(s) => compute_crossings(s),
        Drawing::Abstract(a) => Ok(a.crossings().clone()),
    }
}

/// All k-fan crossings, one witness per (crossing edge, apex) pair.
///
/// For each edge `g`, the edges it crosses are bucketed by endpoint; every
/// bucket with at least `k` members yields a witness whose fan is the `k`
/// smallest edge indices of the bucket. Witnesses are ordered by crossing
/// edge, then apex.
pub fn find_k_fans(g: &Graph, c: &CrossingRelation, k: usize) -> Result<Vec<FanWitness>, FanCheckError> {
    if k < 2 {
        return Err(FanCheckError::InvalidK(k));
    }
    let adj = c.adjacency(g.edge_count());
    let mut out = Vec::new();
    for (crosser, crossed) in adj.iter().enumerate() {
        if crossed.len() < k {
            continue;
        }
        let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &e in crossed {
            let (a, b) = g.edge(e);
            buckets.entry(a).or_default().push(e);
            buckets.entry(b).or_default().push(e);
        }
        for (apex, members) in buckets {
            if members.len() >= k {
                // `crossed` is ascending, so members are too
                out.push(FanWitness {
                    crosser,
                    apex,
                    fan: members[..k].to_vec(),
                });
            }
        }
    }
    Ok(out)
}

/// Whether a drawing contains no k-fan crossing.
pub fn is_k_fan_free(d: &Drawing, k: usize) -> Result<bool, FanCheckError> {
    if k < 2 {
        return Err(FanCheckError::InvalidK(k));
    }
    let rel = crossing_relation(d)?;
    Ok(find_k_fans(d.graph(), &rel, k)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Point;

    fn drawing(pts: &[(i64, i64)], edges: &[(usize, usize)]) -> StraightLineDrawing {
        let g = Graph::new(pts.len(), edges.iter().copied()).unwrap();
        StraightLineDrawing::new(g, pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    /// v=(0,0), a=(2,2), b=(2,-2), c=(1,3), d=(1,-3); edges va, vb, cd.
    fn fan_fixture() -> StraightLineDrawing {
        drawing(&[(0, 0), (2, 2), (2, -2), (1, 3), (1, -3)], &[(0, 1), (0, 2), (3, 4)])
    }

    #[test]
    fn disjoint_segments_do_not_cross() {
        let d = drawing(&[(0, 0), (1, 0), (0, 1), (1, 1)], &[(0, 1), (2, 3)]);
        assert!(compute_crossings(&d).unwrap().is_empty());
    }

    #[test]
    fn x_configuration_crosses() {
        let d = drawing(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        let rel = compute_crossings(&d).unwrap();
        assert_eq!(rel.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn fan_fixture_crossings() {
        let rel = compute_crossings(&fan_fixture()).unwrap();
        assert_eq!(rel.pairs().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn fan_fixture_witnesses() {
        let d = fan_fixture();
        let rel = compute_crossings(&d).unwrap();
        let fans = find_k_fans(d.graph(), &rel, 2).unwrap();
        assert_eq!(
            fans,
            vec![FanWitness {
                crosser: 2,
                apex: 0,
                fan: vec![0, 1]
            }]
        );
        assert!(fans[0].is_valid(d.graph(), &rel));
        assert!(find_k_fans(d.graph(), &rel, 3).unwrap().is_empty());
        let d: Drawing = d.into();
        assert!(!is_k_fan_free(&d, 2).unwrap());
        assert!(is_k_fan_free(&d, 3).unwrap());
    }

    #[test]
    fn k_below_two_is_rejected() {
        let d = fan_fixture();
        let rel = compute_crossings(&d).unwrap();
        assert_eq!(find_k_fans(d.graph(), &rel, 1), Err(FanCheckError::InvalidK(1)));
    }

    #[test]
    fn crossing_free_drawing_has_no_fans() {
        let d = drawing(
            &[(0, 0), (4, 0), (0, 4), (1, 1)],
            &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        );
        let rel = compute_crossings(&d).unwrap();
        assert!(rel.is_empty());
        for k in 2..5 {
            assert!(find_k_fans(d.graph(), &rel, k).unwrap().is_empty());
        }
    }

    #[test]
    fn vertex_on_edge_is_a_violation() {
        let d = drawing(&[(0, 0), (2, 0), (1, 0), (1, 5)], &[(0, 1), (2, 3)]);
        let report = validate_simplicity(&d);
        assert!(!report.ok);
        assert_eq!(
            report.violations,
            vec![SimplicityViolation::VertexOnEdge { vertex: 2, edge: 0 }]
        );
        assert!(matches!(
            compute_crossings(&d),
            Err(SimplicityError(SimplicityViolation::VertexOnEdge { .. }))
        ));
    }

    #[test]
    fn adjacent_overlap_is_a_violation() {
        let d = drawing(&[(0, 0), (2, 0), (4, 0)], &[(0, 1), (0, 2)]);
        let report = validate_simplicity(&d);
        assert!(report
            .violations
            .contains(&SimplicityViolation::AdjacentOverlap { e: 0, f: 1 }));
        assert_eq!(report.violations[0].kind(), "vertex-on-edge");
    }

    #[test]
    fn coincident_vertices_are_a_violation() {
        let d = drawing(&[(0, 0), (1, 1), (0, 0)], &[(0, 1)]);
        let report = validate_simplicity(&d);
        assert_eq!(
            report.violations,
            vec![SimplicityViolation::CoincidentVertices { a: 0, b: 2 }]
        );
    }

    #[test]
    fn three_edges_through_one_point_are_allowed() {
        let d = drawing(
            &[(-1, 0), (1, 0), (0, -1), (0, 1), (-1, -1), (1, 1)],
            &[(0, 1), (2, 3), (4, 5)],
        );
        let rel = compute_crossings(&d).unwrap();
        assert_eq!(rel.len(), 3);
    }
}
