//! Exact integer predicates on a drawing's vertex positions.
//!
//! Rational coordinates are scaled by the least common multiple of their
//! denominators, which preserves every orientation sign. Coordinates that fit
//! in 60 bits use `i128` arithmetic; anything larger falls back to `BigInt`.

use std::cmp::Ordering;
use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::Point;

pub(crate) trait Scalar: Clone + Ord + Zero + Sub<Output = Self> + Mul<Output = Self> {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

#[derive(Debug, Clone)]
pub(crate) struct Pts<T>(Vec<(T, T)>);

impl<T: Scalar> Pts<T> {
    fn vec(&self, from: usize, to: usize) -> (T, T) {
        let (a, b) = (&self.0[from], &self.0[to]);
        (b.0.clone() - a.0.clone(), b.1.clone() - a.1.clone())
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> Ordering {
        let (ux, uy) = self.vec(a, b);
        let (vx, vy) = self.vec(a, c);
        (ux * vy).cmp(&(uy * vx))
    }

    fn dot_sign(&self, o: usize, a: usize, b: usize) -> Ordering {
        let (ux, uy) = self.vec(o, a);
        let (vx, vy) = self.vec(o, b);
        (ux * vx + uy * vy).cmp(&T::zero())
    }

    fn same(&self, a: usize, b: usize) -> bool {
        self.0[a] == self.0[b]
    }

    fn in_box(&self, p: usize, a: usize, b: usize) -> bool {
        let (pt, pa, pb) = (&self.0[p], &self.0[a], &self.0[b]);
        let within = |v: &T, x: &T, y: &T| if x <= y { x <= v && v <= y } else { y <= v && v <= x };
        within(&pt.0, &pa.0, &pb.0) && within(&pt.1, &pa.1, &pb.1)
    }

    fn boxes_disjoint(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let p = &self.0;
        let (minx1, maxx1) = minmax(&p[a].0, &p[b].0);
        let (minx2, maxx2) = minmax(&p[c].0, &p[d].0);
        if maxx1 < minx2 || maxx2 < minx1 {
            return true;
        }
        let (miny1, maxy1) = minmax(&p[a].1, &p[b].1);
        let (miny2, maxy2) = minmax(&p[c].1, &p[d].1);
        maxy1 < miny2 || maxy2 < miny1
    }

    fn cmp_angle(&self, center: usize, a: usize, b: usize) -> Ordering {
        let u = self.vec(center, a);
        let v = self.vec(center, b);
        let half = |w: &(T, T)| {
            let z = T::zero();
            if w.1 > z || (w.1 == z && w.0 > z) {
                0
            } else {
                1
            }
        };
        half(&u).cmp(&half(&v)).then_with(|| {
            let c = u.0.clone() * v.1.clone() - u.1.clone() * v.0.clone();
            // positive cross product: u comes first counter-clockwise
            T::zero().cmp(&c)
        })
    }

    fn y_cmp(&self, a: usize, b: usize) -> Ordering {
        self.0[a].1.cmp(&self.0[b].1)
    }
}

fn minmax<'a, T: Ord>(a: &'a T, b: &'a T) -> (&'a T, &'a T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Integer-scaled vertex positions of one drawing.
#[derive(Debug, Clone)]
pub(crate) enum IntCoords {
    Small(Pts<i128>),
    Big(Pts<BigInt>),
}

macro_rules! dispatch {
    ($self:ident, $p:ident => $body:expr) => {
        match $self {
            IntCoords::Small($p) => $body,
            IntCoords::Big($p) => $body,
        }
    };
}

const SMALL_LIMIT: i64 = 1 << 60;

impl IntCoords {
    pub(crate) fn from_points(points: &[Point]) -> Self {
        let mut lcm = BigInt::one();
        for p in points {
            lcm = lcm.lcm(p.x.denom());
            lcm = lcm.lcm(p.y.denom());
        }
        let scale = |r: &num_rational::BigRational| r.numer() * (&lcm / r.denom());
        let big: Vec<(BigInt, BigInt)> = points.iter().map(|p| (scale(&p.x), scale(&p.y))).collect();
        let fits = |v: &BigInt| v.to_i64().is_some_and(|x| x.abs() <= SMALL_LIMIT);
        if big.iter().all(|(x, y)| fits(x) && fits(y)) {
            let small = big
                .iter()
                .map(|(x, y)| (x.to_i64().unwrap() as i128, y.to_i64().unwrap() as i128))
                .collect();
            IntCoords::Small(Pts(small))
        } else {
            IntCoords::Big(Pts(big))
        }
    }

    pub(crate) fn len(&self) -> usize {
        dispatch!(self, p => p.0.len())
    }

    /// Sign of the turn a -> b -> c (`Greater` = counter-clockwise).
    pub(crate) fn orient(&self, a: usize, b: usize, c: usize) -> Ordering {
        dispatch!(self, p => p.orient(a, b, c))
    }

    pub(crate) fn same_point(&self, a: usize, b: usize) -> bool {
        dispatch!(self, p => p.same(a, b))
    }

    /// Whether `p` lies on the closed segment `ab`.
    pub(crate) fn on_closed_segment(&self, pt: usize, a: usize, b: usize) -> bool {
        dispatch!(self, p => p.orient(a, b, pt) == Ordering::Equal && p.in_box(pt, a, b))
    }

    /// Whether `p` lies strictly inside segment `ab` (not at an endpoint).
    pub(crate) fn on_open_segment(&self, pt: usize, a: usize, b: usize) -> bool {
        self.on_closed_segment(pt, a, b) && !self.same_point(pt, a) && !self.same_point(pt, b)
    }

    /// For segments `o-a` and `o-b` sharing endpoint `o`: whether they are
    /// collinear and point the same way, i.e. overlap beyond `o`.
    pub(crate) fn overlap_at_shared(&self, o: usize, a: usize, b: usize) -> bool {
        dispatch!(self, p => p.orient(o, a, b) == Ordering::Equal && p.dot_sign(o, a, b) == Ordering::Greater)
    }

    /// Proper crossing of segments `ab` and `cd` with four distinct
    /// endpoints: a single common point interior to both.
    pub(crate) fn properly_cross(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        dispatch!(self, p => {
            if p.boxes_disjoint(a, b, c, d) {
                return false;
            }
            let o1 = p.orient(a, b, c);
            let o2 = p.orient(a, b, d);
            if o1 == Ordering::Equal || o2 == Ordering::Equal || o1 == o2 {
                return false;
            }
            let o3 = p.orient(c, d, a);
            let o4 = p.orient(c, d, b);
            o3 != Ordering::Equal && o4 != Ordering::Equal && o3 != o4
        })
    }

    /// Counter-clockwise angular order of directions `center->a` and
    /// `center->b`, starting from the positive x axis.
    pub(crate) fn cmp_angle(&self, center: usize, a: usize, b: usize) -> Ordering {
        dispatch!(self, p => p.cmp_angle(center, a, b))
    }

    pub(crate) fn y_cmp(&self, a: usize, b: usize) -> Ordering {
        dispatch!(self, p => p.y_cmp(a, b))
    }

    /// Twice the signed area of a closed vertex walk. Always evaluated in
    /// `BigInt`, since long walks can overflow `i128` partial sums.
    pub(crate) fn area2(&self, cycle: &[usize]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &a) in cycle.iter().enumerate() {
            let b = cycle[(i + 1) % cycle.len()];
            let (ax, ay) = self.big(a);
            let (bx, by) = self.big(b);
            acc += ax * by - bx * ay;
        }
        acc
    }

    /// Scaled integer position of vertex `i`.
    pub(crate) fn key(&self, i: usize) -> (BigInt, BigInt) {
        self.big(i)
    }

    fn big(&self, i: usize) -> (BigInt, BigInt) {
        match self {
            IntCoords::Small(p) => (BigInt::from(p.0[i].0), BigInt::from(p.0[i].1)),
            IntCoords::Big(p) => p.0[i].clone(),
        }
    }

    /// Position along segment `from -> to` where it crosses segment `c-d`,
    /// as an unreduced fraction with positive denominator.
    pub(crate) fn crossing_parameter(&self, from: usize, to: usize, c: usize, d: usize) -> (BigInt, BigInt) {
        let (px, py) = self.big(from);
        let (qx, qy) = self.big(to);
        let (cx, cy) = self.big(c);
        let (dx, dy) = self.big(d);
        let (rx, ry) = (&qx - &px, &qy - &py);
        let (sx, sy) = (&dx - &cx, &dy - &cy);
        let denom = &rx * &sy - &ry * &sx;
        let numer = (&cx - &px) * &sy - (&cy - &py) * &sx;
        if denom.is_negative() {
            (-numer, -denom)
        } else {
            (numer, denom)
        }
    }

    /// Winding number of the closed walk `cycle` around vertex `pt`, which
    /// must not lie on the walk. Uses the half-open upward/downward rule, so
    /// horizontal edges and vertices at the query height are handled without
    /// special cases.
    pub(crate) fn winding_number(&self, pt: usize, cycle: &[usize]) -> i64 {
        let mut w = 0;
        for (i, &a) in cycle.iter().enumerate() {
            let b = cycle[(i + 1) % cycle.len()];
            let a_le = self.y_cmp(a, pt) != Ordering::Greater;
            let b_le = self.y_cmp(b, pt) != Ordering::Greater;
            if a_le && !b_le {
                if self.orient(a, b, pt) == Ordering::Greater {
                    w += 1;
                }
            } else if !a_le && b_le && self.orient(a, b, pt) == Ordering::Less {
                w -= 1;
            }
        }
        w
    }
}

/// Compares two fractions `a/b` and `c/d` with positive denominators.
pub(crate) fn cmp_fraction(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> Ordering {
    (&a.0 * &b.1).cmp(&(&b.0 * &a.1))
}
