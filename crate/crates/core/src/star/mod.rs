//! The m-star arrow puzzle.
//!
//! An m-star is a convex m-gon with vertices `v_1..v_m` in counter-clockwise
//! order and boundary edges `e_j = v_j v_{j+1}` (indices mod m). An arrow
//! starts at a vertex, runs through the interior and leaves through a
//! boundary edge not incident to its start. Whether two arrows cross depends
//! only on the cyclic order of their endpoints along the boundary, so a star
//! is stored purely combinatorially: each arrow records its start vertex, its
//! exit edge and its slot, the rank of its exit point on that edge counted
//! from `v_j`.
//!
//! Vertex and edge numbers in this module are 1-based, matching the usual
//! `v_1..v_m` naming.

mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use search::{
    bound_b, max_arrows, verify_base_cases, BaseCaseRow, SearchError, SearchFilter, SearchOptions, SearchOutcome,
    DEFAULT_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("an m-star needs m >= 3, got {0}")]
    TooSmall(usize),
    #[error("arrow {arrow}: vertex or edge number out of 1..={m}")]
    OutOfRange { arrow: usize, m: usize },
    #[error("arrow {arrow} from v{start} cannot exit through incident edge e{exit}")]
    IncidentExit { arrow: usize, start: usize, exit: usize },
    #[error("slots on edge e{edge} are not a permutation of 0..{count}")]
    BadSlots { edge: usize, count: usize },
    #[error("arrow {0} is long and has no witness")]
    LongArrow(usize),
    #[error("arrow index {0} out of range")]
    NoSuchArrow(usize),
}

/// One arrow: start vertex, exit edge and slot on the exit edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Arrow {
    pub start: usize,
    pub exit: usize,
    pub slot: usize,
}

impl Arrow {
    pub fn new(start: usize, exit: usize, slot: usize) -> Self {
        Arrow { start, exit, slot }
    }
}

impl From<[usize; 3]> for Arrow {
    fn from([start, exit, slot]: [usize; 3]) -> Self {
        Arrow { start, exit, slot }
    }
}

impl From<Arrow> for [usize; 3] {
    fn from(a: Arrow) -> Self {
        [a.start, a.exit, a.slot]
    }
}

/// A point of the boundary cycle refined by arrow exit points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclePoint {
    Vertex(usize),
    /// Exit point of the arrow with this index.
    Exit(usize),
}

/// Something that can take part in a fan crossing inside a star.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StarObject {
    Arrow(usize),
    Edge(usize),
}

impl fmt::Display for StarObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarObject::Arrow(a) => write!(f, "arrow {a}"),
            StarObject::Edge(e) => write!(f, "e{e}"),
        }
    }
}

/// A k-fan inside a star: `crosser` meets every member, and every member is
/// incident to `apex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFan {
    pub crosser: StarObject,
    pub apex: usize,
    pub members: Vec<StarObject>,
}

impl fmt::Display for StarFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} crosses", self.crosser)?;
        for m in &self.members {
            write!(f, " {m}")?;
        }
        write!(f, " at v{}", self.apex)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexTag {
    Heavy,
    LeftLight,
    RightLight,
    Void,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    pub tags: Vec<VertexTag>,
    pub heavy: usize,
    pub light: usize,
    pub void: usize,
}

impl VertexClass {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.heavy, self.light, self.void)
    }
}

/// An m-star with arrows. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawStar", into = "RawStar")]
pub struct StarConfig {
    m: usize,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct RawStar {
    m: usize,
    arrows: Vec<Arrow>,
}

impl TryFrom<RawStar> for StarConfig {
    type Error = StarError;
    fn try_from(raw: RawStar) -> Result<Self, StarError> {
        StarConfig::new(raw.m, raw.arrows)
    }
}

impl From<StarConfig> for RawStar {
    fn from(s: StarConfig) -> Self {
        RawStar {
            m: s.m,
            arrows: s.arrows,
        }
    }
}

impl StarConfig {
    pub fn new(m: usize, arrows: Vec<Arrow>) -> Result<Self, StarError> {
        if m < 3 {
            return Err(StarError::TooSmall(m));
        }
        let mut per_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (idx, a) in arrows.iter().enumerate() {
            if !(1..=m).contains(&a.start) || !(1..=m).contains(&a.exit) {
                return Err(StarError::OutOfRange { arrow: idx, m });
            }
            if a.exit == a.start || a.exit == prev(a.start, m) {
                return Err(StarError::IncidentExit {
                    arrow: idx,
                    start: a.start,
                    exit: a.exit,
                });
            }
            per_edge.entry(a.exit).or_default().push(a.slot);
        }
        for (edge, mut slots) in per_edge {
            slots.sort_unstable();
            if slots.iter().enumerate().any(|(i, &s)| i != s) {
                return Err(StarError::BadSlots {
                    edge,
                    count: slots.len(),
                });
            }
        }
        Ok(StarConfig { m, arrows })
    }

    /// Builds a star from `(start, exit)` pairs, assigning slots on each edge
    /// in the order the pairs are listed.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Self, StarError> {
        let mut next_slot: BTreeMap<usize, usize> = BTreeMap::new();
        let arrows = pairs
            .iter()
            .map(|&(start, exit)| {
                let slot = next_slot.entry(exit).or_insert(0);
                *slot += 1;
                Arrow::new(start, exit, *slot - 1)
            })
            .collect();
        StarConfig::new(m, arrows)
    }

    pub fn empty(m: usize) -> Result<Self, StarError> {
        StarConfig::new(m, Vec::new())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Number of arrows starting at `v` (the vertex degree).
    pub fn degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.start == v).count()
    }

    /// Number of arrows starting at `v` and exiting through `e`.
    pub fn count(&self, v: usize, e: usize) -> usize {
        self.arrows.iter().filter(|a| a.start == v && a.exit == e).count()
    }

    /// Boundary cycle `v_1, exits on e_1, v_2, exits on e_2, ...`.
    pub fn refined_cycle(&self) -> Vec<CyclePoint> {
        let mut out = Vec::with_capacity(self.m + self.arrows.len());
        for j in 1..=self.m {
            out.push(CyclePoint::Vertex(j));
            let mut on_edge: Vec<(usize, usize)> = self
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.exit == j)
                .map(|(idx, a)| (a.slot, idx))
                .collect();
            on_edge.sort_unstable();
            out.extend(on_edge.into_iter().map(|(_, idx)| CyclePoint::Exit(idx)));
        }
        out
    }

    /// Positions on the refined cycle of each vertex (index 1..=m) and of
    /// each arrow's exit point.
    fn positions(&self) -> (Vec<usize>, Vec<usize>) {
        let mut vertex_pos = vec![0; self.m + 1];
        let mut exit_pos = vec![0; self.arrows.len()];
        for (pos, p) in self.refined_cycle().into_iter().enumerate() {
            match p {
                CyclePoint::Vertex(v) => vertex_pos[v] = pos,
                CyclePoint::Exit(a) => exit_pos[a] = pos,
            }
        }
        (vertex_pos, exit_pos)
    }

    fn check_index(&self, a: usize) -> Result<(), StarError> {
        if a < self.arrows.len() {
            Ok(())
        } else {
            Err(StarError::NoSuchArrow(a))
        }
    }

    /// Whether arrows `a` and `b` cross. Arrows with a common start never
    /// cross; otherwise they cross iff their endpoints interleave on the
    /// refined cycle.
    pub fn arrows_cross(&self, a: usize, b: usize) -> Result<bool, StarError> {
        self.check_index(a)?;
        self.check_index(b)?;
        let (vp, ep) = self.positions();
        Ok(cross_at(&self.arrows, &vp, &ep, a, b))
    }

    /// Checks that no arrow or boundary edge crosses `k` objects incident to
    /// one vertex. Returns the first fan found otherwise.
    pub fn is_fan_free(&self, k: usize) -> Result<(), StarFan> {
        let (vp, ep) = self.positions();
        let m = self.m;
        for (a, arrow) in self.arrows.iter().enumerate() {
            let mut at: BTreeMap<usize, Vec<StarObject>> = BTreeMap::new();
            for (b, other) in self.arrows.iter().enumerate() {
                if b != a && cross_at(&self.arrows, &vp, &ep, a, b) {
                    at.entry(other.start).or_default().push(StarObject::Arrow(b));
                }
            }
            for v in [arrow.exit, next(arrow.exit, m)] {
                at.entry(v).or_default().push(StarObject::Edge(arrow.exit));
            }
            if let Some((&apex, members)) = at.iter().find(|(_, list)| list.len() >= k) {
                return Err(StarFan {
                    crosser: StarObject::Arrow(a),
                    apex,
                    members: members.clone(),
                });
            }
        }
        for e in 1..=m {
            let mut at: BTreeMap<usize, Vec<StarObject>> = BTreeMap::new();
            for (a, arrow) in self.arrows.iter().enumerate() {
                if arrow.exit == e {
                    at.entry(arrow.start).or_default().push(StarObject::Arrow(a));
                }
            }
            if let Some((&apex, members)) = at.iter().find(|(_, list)| list.len() >= k) {
                return Err(StarFan {
                    crosser: StarObject::Edge(e),
                    apex,
                    members: members.clone(),
                });
            }
        }
        Ok(())
    }

    /// Number of vertices on the shorter of the two boundary chains an arrow
    /// cuts off.
    pub fn arrow_length(&self, a: usize) -> Result<usize, StarError> {
        self.check_index(a)?;
        let (near, far) = chain_sizes(self.arrows[a], self.m);
        Ok(near.min(far))
    }

    pub fn is_short(&self, a: usize) -> Result<bool, StarError> {
        Ok(self.arrow_length(a)? == 1)
    }

    /// The single vertex on the short side of a short arrow. When both sides
    /// have one vertex (m = 3) the vertex after the start is returned.
    pub fn short_arrow_witness(&self, a: usize) -> Result<usize, StarError> {
        self.check_index(a)?;
        let arrow = self.arrows[a];
        match chain_sizes(arrow, self.m) {
            (1, _) => Ok(next(arrow.start, self.m)),
            (_, 1) => Ok(prev(arrow.start, self.m)),
            _ => Err(StarError::LongArrow(a)),
        }
    }

    /// Heavy / left-light / right-light / void tags.
    ///
    /// A vertex with arrows is heavy. In a maximal run `v_s..v_t` of
    /// zero-degree vertices, all are left-light when the vertex before the
    /// run has no short arrow over `v_s`; otherwise all are right-light when
    /// the vertex after the run has no short arrow over `v_t`; otherwise the
    /// first `t - s` are right-light and `v_t` is void.
    pub fn classify_vertices(&self) -> VertexClass {
        let m = self.m;
        let degree: Vec<usize> = (0..=m).map(|v| if v == 0 { 0 } else { self.degree(v) }).collect();
        let mut tags = vec![VertexTag::Heavy; m];
        if (1..=m).all(|v| degree[v] == 0) {
            tags.fill(VertexTag::LeftLight);
        } else {
            // start scanning just after a heavy vertex so no run wraps the origin
            let anchor = (1..=m).find(|&v| degree[v] > 0).unwrap();
            let mut i = 1;
            while i <= m {
                let v = wrap(anchor + i, m);
                if degree[v] > 0 {
                    i += 1;
                    continue;
                }
                let first = v;
                let mut len = 0;
                while i <= m && degree[wrap(anchor + i, m)] == 0 {
                    len += 1;
                    i += 1;
                }
                let last = wrap(first + len - 1, m);
                let before = prev(first, m);
                let after = next(last, m);
                let left_ok = self.count(before, first) == 0;
                let right_ok = self.count(after, prev(last, m)) == 0;
                for step in 0..len {
                    let u = wrap(first + step, m);
                    tags[u - 1] = if left_ok {
                        VertexTag::LeftLight
                    } else if right_ok || step + 1 < len {
                        VertexTag::RightLight
                    } else {
                        VertexTag::Void
                    };
                }
            }
        }
        let heavy = tags.iter().filter(|&&t| t == VertexTag::Heavy).count();
        let void = tags.iter().filter(|&&t| t == VertexTag::Void).count();
        VertexClass {
            light: m - heavy - void,
            heavy,
            void,
            tags,
        }
    }

    /// The star with arrow `a` removed and slots on its edge re-ranked.
    pub fn without(&self, a: usize) -> StarConfig {
        let removed = self.arrows[a];
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != a)
            .map(|(_, &x)| {
                if x.exit == removed.exit && x.slot > removed.slot {
                    Arrow::new(x.start, x.exit, x.slot - 1)
                } else {
                    x
                }
            })
            .collect();
        StarConfig { m: self.m, arrows }
    }

    /// Relabels `v_i` as `v_{i+r}`.
    pub fn rotate(&self, r: usize) -> StarConfig {
        let m = self.m;
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(wrap(a.start + r, m), wrap(a.exit + r, m), a.slot))
            .collect();
        StarConfig { m, arrows }
    }

    /// Mirror image: `v_i` becomes `v_{2-i}`, so `e_j` becomes `e_{1-j}` and
    /// slot order along each edge reverses.
    pub fn reflect(&self) -> StarConfig {
        let m = self.m;
        let mut on_edge: BTreeMap<usize, usize> = BTreeMap::new();
        for a in &self.arrows {
            *on_edge.entry(a.exit).or_default() += 1;
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                let start = wrap(2 * m + 2 - a.start, m);
                let exit = wrap(2 * m + 1 - a.exit, m);
                Arrow::new(start, exit, on_edge[&a.exit] - 1 - a.slot)
            })
            .collect();
        StarConfig { m, arrows }
    }

    /// Arrows sorted by (start, exit, slot). Two stars with the same sorted
    /// form are the same configuration up to arrow numbering; arrows sharing
    /// start and exit are treated as interchangeable.
    pub fn normalized(&self) -> StarConfig {
        let mut arrows = self.arrows.clone();
        arrows.sort_unstable();
        StarConfig { m: self.m, arrows }
    }

    /// Smallest normalized form over all rotations and reflections.
    pub fn canonical_form(&self) -> StarConfig {
        let mut best = self.normalized();
        let mirrored = self.reflect();
        for base in [self, &mirrored] {
            for r in 0..self.m {
                let cand = base.rotate(r).normalized();
                if cand.arrows < best.arrows {
                    best = cand;
                }
            }
        }
        best
    }
}

impl fmt::Display for StarConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-star [", self.m)?;
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "v{}->e{}#{}", a.start, a.exit, a.slot)?;
        }
        write!(f, "]")
    }
}

fn wrap(x: usize, m: usize) -> usize {
    (x + m - 1) % m + 1
}

fn next(v: usize, m: usize) -> usize {
    wrap(v + 1, m)
}

fn prev(v: usize, m: usize) -> usize {
    wrap(v + m - 1, m)
}

/// Sizes of the chains `v_{i+1}..v_j` and `v_{j+1}..v_{i-1}`.
fn chain_sizes(a: Arrow, m: usize) -> (usize, usize) {
    let near = (a.exit + m - a.start) % m;
    (near, m - 1 - near)
}

fn cross_at(arrows: &[Arrow], vp: &[usize], ep: &[usize], a: usize, b: usize) -> bool {
    if arrows[a].start == arrows[b].start {
        return false;
    }
    let (lo, hi) = {
        let (x, y) = (vp[arrows[a].start], ep[a]);
        (x.min(y), x.max(y))
    };
    let inside = |p: usize| lo < p && p < hi;
    inside(vp[arrows[b].start]) != inside(ep[b])
}

#[cfg(test)]
mod tests;
