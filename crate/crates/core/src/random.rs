//! Seeded random drawings for property tests and the reproduction battery.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crossings::{crossings_with, find_k_fans};
use crate::geom::IntCoords;
use crate::model::{Graph, Point, StraightLineDrawing};

/// Shape of a random drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub max_edges: usize,
    /// Numerators are drawn from `-range..=range`.
    pub range: i64,
    /// Denominators are drawn from `1..=max_den`.
    pub max_den: i64,
}

impl RandomSpec {
    pub fn new(n: usize, max_edges: usize) -> Self {
        RandomSpec {
            n,
            max_edges,
            range: 40,
            max_den: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct rational points, no three collinear, so every straight-line
/// drawing on them is simple.
pub fn general_position_points<R: Rng>(rng: &mut R, spec: &RandomSpec) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(spec.n);
    while pts.len() < spec.n {
        let mut coord = || {
            BigRational::new(
                rng.gen_range(-spec.range..=spec.range).into(),
                rng.gen_range(1..=spec.max_den).into(),
            )
        };
        let p = Point::new(coord(), coord());
        let mut trial = pts.clone();
        trial.push(p);
        let c = IntCoords::from_points(&trial);
        let last = trial.len() - 1;
        let fine = (0..last).all(|i| !c.same_point(i, last))
            && (0..last).all(|i| (i + 1..last).all(|j| c.orient(i, j, last) != std::cmp::Ordering::Equal));
        if fine {
            pts = trial;
        }
    }
    pts
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Random simple straight-line drawing with up to `max_edges` edges, in
/// random edge order.
pub fn random_drawing<R: Rng>(rng: &mut R, spec: &RandomSpec) -> StraightLineDrawing {
    let pts = general_position_points(rng, spec);
    let mut pairs = all_pairs(spec.n);
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=spec.max_edges.min(pairs.len()));
    pairs.truncate(m);
    let g = Graph::new(spec.n, pairs).expect("distinct pairs form a simple graph");
    StraightLineDrawing::new(g, pts).expect("one point per vertex")
}

/// Random k-fan-crossing free straight-line drawing: candidate edges are
/// tried in random order and kept when no k-fan appears.
pub fn random_fan_free_drawing<R: Rng>(rng: &mut R, spec: &RandomSpec, k: usize) -> StraightLineDrawing {
    let pts = general_position_points(rng, spec);
    let coords = IntCoords::from_points(&pts);
    let mut pairs = all_pairs(spec.n);
    pairs.shuffle(rng);
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for pair in pairs {
        if kept.len() >= spec.max_edges {
            break;
        }
        kept.push(pair);
        let g = Graph::new(spec.n, kept.iter().copied()).expect("distinct pairs");
        let rel = crossings_with(&g, &coords).expect("general position");
        if !find_k_fans(&g, &rel, k).expect("k >= 2").is_empty() {
            kept.pop();
        }
    }
    let g = Graph::new(spec.n, kept).expect("distinct pairs");
    StraightLineDrawing::new(g, pts).expect("one point per vertex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossings::compute_crossings;

    #[test]
    fn seeded_output_is_reproducible() {
        let spec = RandomSpec::new(9, 16);
        let a = random_drawing(&mut rng(7), &spec);
        let b = random_drawing(&mut rng(7), &spec);
        assert_eq!(a, b);
        assert!(a.graph().edge_count() <= 16);
        assert!(compute_crossings(&a).is_ok());
    }

    #[test]
    fn fan_free_drawings_are_fan_free_and_maximal() {
        let spec = RandomSpec::new(8, usize::MAX);
        for seed in 0..5 {
            let d = random_fan_free_drawing(&mut rng(seed), &spec, 2);
            let rel = compute_crossings(&d).unwrap();
            assert!(find_k_fans(d.graph(), &rel, 2).unwrap().is_empty());
            assert!(d.graph().edge_count() <= 4 * 8 - 9);
        }
    }
}
