//! Closed-form edge bounds and their comparison against concrete inputs.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::crossings::{is_k_fan_free, FanCheckError};
use crate::model::{Drawing, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bounds need n >= 3, got {0}")]
    SmallN(usize),
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("no nonexistence argument for n = {0}; only 7 and 9 have one")]
    NoArgument(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Topological,
    StraightLine,
}

/// Largest edge count of a k-fan-crossing free drawing on `n` vertices
/// allowed by the proven bounds.
pub fn upper_bound(n: usize, k: usize, straight: bool) -> Result<i64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::SmallN(n));
    }
    if k < 2 {
        return Err(BoundsError::BadK(k));
    }
    let (n, k) = (n as i64, k as i64);
    Ok(match (k, straight) {
        (2, false) => 4 * n - 8,
        (2, true) => 4 * n - 9,
        _ => 3 * (k - 1) * (n - 2),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalReason {
    /// `K_n` is fan-crossing free.
    CompleteGraph,
    /// n = 7: a quadrangulation has average degree 20/7 < 3.
    AverageDegree,
    /// n = 9: the bipartition equation 4 + 3j = 3(8 - j) has no integer root.
    BipartiteParity,
    /// A quadrangulation with both diagonals in every face exists.
    QuadrangulationWithDiagonals,
}

/// Exact maximum edge count of a fan-crossing free (k = 2) graph.
pub fn exact_extremal_k2(n: usize) -> Result<(i64, ExtremalReason), BoundsError> {
    if n < 3 {
        return Err(BoundsError::SmallN(n));
    }
    let v = n as i64;
    Ok(match n {
        3..=6 => (v * (v - 1) / 2, ExtremalReason::CompleteGraph),
        7 => (4 * v - 9, ExtremalReason::AverageDegree),
        9 => (4 * v - 9, ExtremalReason::BipartiteParity),
        _ => (4 * v - 8, ExtremalReason::QuadrangulationWithDiagonals),
    })
}

/// One row of the bipartition equation check for n = 9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityRow {
    pub j: i64,
    pub lhs: i64,
    pub rhs: i64,
}

/// Arithmetic showing that no extremal graph with 4n - 8 edges exists for
/// n = 7 and n = 9. Such a graph would be a quadrangulation on `n`
/// vertices with `2n - 4` edges plus both diagonals of every face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "n")]
pub enum NonexistenceFacts {
    #[serde(rename = "7")]
    Seven {
        quad_edges: i64,
        total_degree: i64,
        avg_degree: (i64, i64),
        avg_below_three: bool,
        /// Some vertex has degree at most two.
        degree2_forced: bool,
    },
    #[serde(rename = "9")]
    Nine {
        quad_edges: i64,
        total_degree: i64,
        /// Degree sequence forced by minimum degree three.
        degree_sequence: Vec<i64>,
        /// `4 + 3j` against `3(8 - j)` for every split of the eight
        /// degree-3 vertices.
        rows: Vec<ParityRow>,
        integer_solution: Option<i64>,
    },
}

impl NonexistenceFacts {
    /// Whether the facts rule out 4n - 8 edges.
    pub fn holds(&self) -> bool {
        match self {
            NonexistenceFacts::Seven {
                avg_below_three,
                degree2_forced,
                ..
            } => *avg_below_three && *degree2_forced,
            NonexistenceFacts::Nine {
                integer_solution,
                degree_sequence,
                ..
            } => integer_solution.is_none() && degree_sequence.len() == 9,
        }
    }
}

pub fn nonexistence_argument(n: usize) -> Result<NonexistenceFacts, BoundsError> {
    let v = n as i64;
    let quad_edges = 2 * v - 4;
    let total_degree = 2 * quad_edges;
    match n {
        7 => {
            let avg = Ratio::new(total_degree, v);
            Ok(NonexistenceFacts::Seven {
                quad_edges,
                total_degree,
                avg_degree: (*avg.numer(), *avg.denom()),
                avg_below_three: avg < Ratio::from_integer(3),
                // a degree sum below 3n leaves some vertex below degree 3
                degree2_forced: total_degree < 3 * v,
            })
        }
        9 => {
            let excess = total_degree - 3 * v;
            let degree_sequence = if excess >= 0 {
                let mut seq = vec![3 + excess];
                seq.extend(std::iter::repeat_n(3, n - 1));
                seq
            } else {
                Vec::new()
            };
            // the side holding the degree-4 vertex and j degree-3 vertices
            // must carry as many edge ends as the other side
            let rows: Vec<ParityRow> = (0..=v - 1)
                .map(|j| ParityRow {
                    j,
                    lhs: 4 + 3 * j,
                    rhs: 3 * (v - 1 - j),
                })
                .collect();
            let integer_solution = rows.iter().find(|r| r.lhs == r.rhs).map(|r| r.j);
            Ok(NonexistenceFacts::Nine {
                quad_edges,
                total_degree,
                degree_sequence,
                rows,
                integer_solution,
            })
        }
        _ => Err(BoundsError::NoArgument(n)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BelowBound,
    /// Exactly at the limit, fan-freeness unknown or not established.
    AtBound,
    /// At the limit and verified fan-free.
    Extremal,
    /// More edges than any k-fan-crossing free drawing can have.
    CannotBeFanFree,
    /// A verified fan-free drawing above a proven bound.
    FalsificationEvent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub edges: usize,
    pub upper_bound: Option<i64>,
    pub exact_extremal: Option<i64>,
    pub source: &'static str,
    pub fan_free: Option<bool>,
    pub verdict: Verdict,
}

/// What to compare: a bare graph, or a drawing whose fan-freeness is
/// checked too.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Graph(&'a Graph),
    Drawing(&'a Drawing),
}

pub fn source_for(k: usize, straight: bool) -> &'static str {
    match (k, straight) {
        (2, false) => "fan-crossing free graphs have at most 4n-8 edges",
        (2, true) => "straight-line fan-crossing free graphs have at most 4n-9 edges",
        _ => "k-fan-crossing free graphs have at most 3(k-1)(n-2) edges",
    }
}

/// Compares an input against the bounds. For drawings the mode follows the
/// drawing kind and fan-freeness is decided exactly.
pub fn check_against_bounds(subject: Subject<'_>, k: usize, straight: bool) -> Result<BoundReport, FanCheckError> {
    if k < 2 {
        return Err(FanCheckError::InvalidK(k));
    }
    let (g, straight, fan_free) = match subject {
        Subject::Graph(g) => (g, straight, None),
        Subject::Drawing(d) => (d.graph(), d.as_straight().is_some(), Some(is_k_fan_free(d, k)?)),
    };
    let n = g.n();
    let e = g.edge_count() as i64;
    let upper = upper_bound(n, k, straight).ok();
    let exact = if k == 2 {
        exact_extremal_k2(n).ok().map(|(v, _)| v)
    } else {
        None
    };
    let complete = (n * n.saturating_sub(1) / 2) as i64;
    let limit = [upper, exact, Some(complete)].into_iter().flatten().min().unwrap();
    let proven = upper.map_or(complete, |u| u.min(complete));
    let verdict = if fan_free == Some(true) && e > proven {
        Verdict::FalsificationEvent
    } else if e > limit {
        Verdict::CannotBeFanFree
    } else if e == limit && fan_free == Some(true) {
        Verdict::Extremal
    } else if e == limit {
        Verdict::AtBound
    } else {
        Verdict::BelowBound
    };
    Ok(BoundReport {
        n,
        k,
        mode: if straight {
            Mode::StraightLine
        } else {
            Mode::Topological
        },
        edges: g.edge_count(),
        upper_bound: upper,
        exact_extremal: exact,
        source: source_for(k, straight),
        fan_free,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(10, 2, false), Ok(32));
        assert_eq!(upper_bound(6, 2, true), Ok(15));
        assert_eq!(upper_bound(10, 3, false), Ok(48));
        assert_eq!(upper_bound(10, 3, true), Ok(48));
        assert_eq!(upper_bound(2, 2, false), Err(BoundsError::SmallN(2)));
        assert_eq!(upper_bound(5, 1, false), Err(BoundsError::BadK(1)));
    }

    #[test]
    fn exact_values() {
        assert_eq!(exact_extremal_k2(5), Ok((10, ExtremalReason::CompleteGraph)));
        assert_eq!(exact_extremal_k2(7), Ok((19, ExtremalReason::AverageDegree)));
        assert_eq!(exact_extremal_k2(9), Ok((27, ExtremalReason::BipartiteParity)));
        assert_eq!(exact_extremal_k2(8).unwrap().0, 24);
        for n in 3..=100 {
            let (v, _) = exact_extremal_k2(n).unwrap();
            let u = upper_bound(n, 2, false).unwrap();
            assert!(v <= u);
            assert_eq!(v == u, n == 8 || n >= 10, "n = {n}");
            assert_eq!(upper_bound(n, 2, true).unwrap(), u - 1);
        }
    }

    #[test]
    fn seven_and_nine() {
        let seven = nonexistence_argument(7).unwrap();
        assert_eq!(
            seven,
            NonexistenceFacts::Seven {
                quad_edges: 10,
                total_degree: 20,
                avg_degree: (20, 7),
                avg_below_three: true,
                degree2_forced: true
            }
        );
        let nine = nonexistence_argument(9).unwrap();
        match &nine {
            NonexistenceFacts::Nine {
                total_degree,
                degree_sequence,
                integer_solution,
                rows,
                ..
            } => {
                assert_eq!(*total_degree, 28);
                assert_eq!(degree_sequence, &vec![4, 3, 3, 3, 3, 3, 3, 3, 3]);
                assert_eq!(*integer_solution, None);
                assert!(rows.iter().all(|r| r.rhs == 24 - 3 * r.j));
            }
            _ => panic!("wrong variant"),
        }
        assert!(seven.holds() && nine.holds());
        assert_eq!(nonexistence_argument(8), Err(BoundsError::NoArgument(8)));
    }

    #[test]
    fn verdicts_for_graphs() {
        let k7 = Graph::new(7, (0..7).flat_map(|a| (a + 1..7).map(move |b| (a, b)))).unwrap();
        let r = check_against_bounds(Subject::Graph(&k7), 2, false).unwrap();
        assert_eq!(r.verdict, Verdict::CannotBeFanFree);
        assert_eq!(r.exact_extremal, Some(19));
        let empty = Graph::empty(5).unwrap();
        let r = check_against_bounds(Subject::Graph(&empty), 2, false).unwrap();
        assert_eq!(r.verdict, Verdict::BelowBound);
    }
}
