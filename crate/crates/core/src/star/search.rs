//! Exact maximum-arrow search.
//!
//! Arrow types `(start, exit)` are enumerated in lexicographic order; a
//! configuration is built as a non-decreasing sequence of types, each new
//! arrow being inserted at every possible rank on its exit edge. Copies of
//! one type are interchangeable, so later copies only go to higher ranks.
//! This visits every configuration exactly once. Fans are checked
//! incrementally: a fan created by a new arrow must involve that arrow.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{Arrow, StarConfig};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
const MAX_M: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchFilter {
    All,
    LongOnly,
    Class { heavy: usize, light: usize, void: usize },
}

impl fmt::Display for SearchFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchFilter::All => write!(f, "all"),
            SearchFilter::LongOnly => write!(f, "long-only"),
            SearchFilter::Class { heavy, light, void } => write!(f, "class({heavy},{light},{void})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Keep every extremal configuration (one per symmetry class) instead of
    /// stopping at the first.
    pub collect_all: bool,
    /// Only explore configurations with an arrow at `v_1`.
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            collect_all: false,
            symmetry: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("m must be in 3..={MAX_M}, got {0}")]
    BadM(usize),
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("class ({h},{l},{v}) does not sum to m = {m}")]
    BadClass { h: usize, l: usize, v: usize, m: usize },
    #[error("bound needs h >= 2 and k >= 3, got h = {h}, k = {k}")]
    BoundDomain { h: usize, k: usize },
    #[error("inconclusive: node budget of {budget} exhausted")]
    Inconclusive { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub m: usize,
    pub k: usize,
    pub filter: SearchFilter,
    /// `None` when no configuration passes the filter.
    pub maximum: Option<usize>,
    pub witnesses: Vec<StarConfig>,
    pub nodes: u64,
}

/// Maximum number of arrows in a k-fan-free m-star passing `filter`.
pub fn max_arrows(m: usize, k: usize, filter: SearchFilter, opts: SearchOptions) -> Result<SearchOutcome, SearchError> {
    if !(3..=MAX_M).contains(&m) {
        return Err(SearchError::BadM(m));
    }
    if k < 2 {
        return Err(SearchError::BadK(k));
    }
    if let SearchFilter::Class { heavy, light, void } = filter {
        if heavy + light + void != m {
            return Err(SearchError::BadClass {
                h: heavy,
                l: light,
                v: void,
                m,
            });
        }
    }
    let mut s = Search::new(m, k, filter, opts);
    s.visit_current();
    let first = if opts.symmetry { s.start_mask[0] } else { s.all };
    s.extend(s.all, first, None)?;
    let witnesses = s.witnesses.into_iter().map(|(c, _)| c).collect();
    Ok(SearchOutcome {
        m,
        k,
        filter,
        maximum: s.best,
        witnesses,
        nodes: s.nodes,
    })
}

struct Search {
    m: usize,
    k: usize,
    filter: SearchFilter,
    opts: SearchOptions,
    types: Vec<(usize, usize)>,
    all: u128,
    /// Types that can never coexist with a given type (k = 2 only).
    conflict: Vec<u128>,
    /// Types starting at each vertex.
    start_mask: Vec<u128>,
    /// Arrows as indices into `types`.
    arrows: Vec<usize>,
    on_edge: Vec<Vec<usize>>,
    degree: Vec<usize>,
    nodes: u64,
    best: Option<usize>,
    witnesses: Vec<(StarConfig, StarConfig)>,
    seen: HashSet<StarConfig>,
}

impl Search {
    fn new(m: usize, k: usize, filter: SearchFilter, opts: SearchOptions) -> Self {
        let mut types = Vec::new();
        for s in 0..m {
            for j in 0..m {
                if j == s || (j + 1) % m == s {
                    continue;
                }
                let near = (j + m - s) % m;
                let length = near.min(m - 1 - near);
                if filter == SearchFilter::LongOnly && length < 2 {
                    continue;
                }
                types.push((s, j));
            }
        }
        let all = if types.len() == 128 {
            u128::MAX
        } else {
            (1u128 << types.len()) - 1
        };
        let mut start_mask = vec![0u128; m];
        for (t, &(s, _)) in types.iter().enumerate() {
            start_mask[s] |= 1 << t;
        }
        let mut conflict = vec![0u128; types.len()];
        if k == 2 {
            for (a, &ta) in types.iter().enumerate() {
                for (b, &tb) in types.iter().enumerate() {
                    if a != b && pair_conflict(m, ta, tb) {
                        conflict[a] |= 1 << b;
                    }
                }
            }
        }
        Search {
            m,
            k,
            filter,
            opts,
            types,
            all,
            conflict,
            start_mask,
            arrows: Vec::new(),
            on_edge: vec![Vec::new(); m],
            degree: vec![0; m],
            nodes: 0,
            best: None,
            witnesses: Vec::new(),
            seen: HashSet::new(),
        }
    }

    /// Tries every type of `cand` allowed by `pick`, in order. `repeat`
    /// carries the type and rank of the arrow added last, so a further copy
    /// goes above it.
    fn extend(&mut self, mut cand: u128, pick: u128, repeat: Option<(usize, usize)>) -> Result<(), SearchError> {
        while cand & pick != 0 {
            if !self.promising(cand) {
                return Ok(());
            }
            let t = (cand & pick).trailing_zeros() as usize;
            cand &= if t == 127 { 0 } else { u128::MAX << (t + 1) };
            let (s, j) = self.types[t];
            let min_rank = match repeat {
                Some((rt, rank)) if rt == t => rank + 1,
                _ => 0,
            };
            for rank in min_rank..=self.on_edge[j].len() {
                self.nodes += 1;
                if self.nodes > self.opts.budget {
                    return Err(SearchError::Inconclusive {
                        budget: self.opts.budget,
                    });
                }
                let id = self.arrows.len();
                self.arrows.push(t);
                self.on_edge[j].insert(rank, id);
                self.degree[s] += 1;
                if !self.fan_through(id) {
                    self.visit_current();
                    let copies = self.arrows.iter().filter(|&&x| x == t).count();
                    let mut next = cand & !self.conflict[t];
                    if copies < self.k - 1 {
                        next |= 1 << t;
                    }
                    self.extend(next, self.all, Some((t, rank)))?;
                }
                self.degree[s] -= 1;
                self.on_edge[j].remove(rank);
                self.arrows.pop();
            }
        }
        Ok(())
    }

    /// Whether some extension drawn from `cand` could still matter.
    fn promising(&self, cand: u128) -> bool {
        let reach = self.arrows.len() + (self.k - 1) * cand.count_ones() as usize;
        match self.best {
            Some(b) if reach < b || (reach == b && !self.opts.collect_all) => return false,
            _ => {}
        }
        if let SearchFilter::Class { heavy, .. } = self.filter {
            let now = self.degree.iter().filter(|&&d| d > 0).count();
            let more = (0..self.m)
                .filter(|&v| self.degree[v] == 0 && cand & self.start_mask[v] != 0)
                .count();
            if now + more < heavy {
                return false;
            }
        }
        true
    }

    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.arrows.len()];
        for (j, list) in self.on_edge.iter().enumerate() {
            for (rank, &a) in list.iter().enumerate() {
                let s = self.types[self.arrows[a]].0;
                pos[a] = (s * 64, j * 64 + 1 + rank);
            }
        }
        pos
    }

    fn crosses(&self, pos: &[(usize, usize)], a: usize, b: usize) -> bool {
        if self.types[self.arrows[a]].0 == self.types[self.arrows[b]].0 {
            return false;
        }
        let (x, y) = pos[a];
        let (lo, hi) = (x.min(y), x.max(y));
        let inside = |p: usize| lo < p && p < hi;
        inside(pos[b].0) != inside(pos[b].1)
    }

    /// Whether arrow `x` takes part in a k-fan.
    fn fan_through(&self, x: usize) -> bool {
        let m = self.m;
        let k = self.k;
        let (sx, jx) = self.types[self.arrows[x]];
        let same = self.on_edge[jx]
            .iter()
            .filter(|&&a| self.types[self.arrows[a]].0 == sx)
            .count();
        if same >= k {
            return true;
        }
        let pos = self.positions();
        let mut per_vertex = vec![0usize; m];
        per_vertex[jx] += 1;
        per_vertex[(jx + 1) % m] += 1;
        let mut crossed = Vec::new();
        for b in 0..self.arrows.len() {
            if b != x && self.crosses(&pos, x, b) {
                per_vertex[self.types[self.arrows[b]].0] += 1;
                crossed.push(b);
            }
        }
        if per_vertex.iter().any(|&c| c >= k) {
            return true;
        }
        for &c in &crossed {
            let jc = self.types[self.arrows[c]].1;
            let mut at_sx = usize::from(jc == sx || (jc + 1) % m == sx);
            for b in 0..self.arrows.len() {
                if b != c && self.types[self.arrows[b]].0 == sx && self.crosses(&pos, c, b) {
                    at_sx += 1;
                }
            }
            if at_sx >= k {
                return true;
            }
        }
        false
    }

    fn config(&self) -> StarConfig {
        let mut arrows = vec![Arrow::new(0, 0, 0); self.arrows.len()];
        for (j, list) in self.on_edge.iter().enumerate() {
            for (rank, &a) in list.iter().enumerate() {
                let s = self.types[self.arrows[a]].0;
                arrows[a] = Arrow::new(s + 1, j + 1, rank);
            }
        }
        StarConfig { m: self.m, arrows }
    }

    fn visit_current(&mut self) {
        let count = self.arrows.len();
        match self.best {
            Some(b) if count < b || (count == b && !self.opts.collect_all) => return,
            _ => {}
        }
        let cfg = self.config();
        if let SearchFilter::Class { heavy, light, void } = self.filter {
            if cfg.classify_vertices().counts() != (heavy, light, void) {
                return;
            }
        }
        if self.best != Some(count) {
            self.best = Some(count);
            self.witnesses.clear();
            self.seen.clear();
        }
        let canon = cfg.canonical_form();
        if self.seen.insert(canon.clone()) {
            self.witnesses.push((cfg, canon));
        }
    }
}

/// Two distinct arrow types that form a 2-fan in every slot order: they
/// cross and one exit edge is incident to the other's start.
fn pair_conflict(m: usize, (sa, ja): (usize, usize), (sb, jb): (usize, usize)) -> bool {
    if sa == sb || ja == jb {
        return false;
    }
    let incident = |j: usize, v: usize| j == v || (j + 1) % m == v;
    if !incident(ja, sb) && !incident(jb, sa) {
        return false;
    }
    // with distinct exit edges the boundary order of the four endpoints is fixed
    let pa = (sa * 2, ja * 2 + 1);
    let pb = (sb * 2, jb * 2 + 1);
    let (lo, hi) = (pa.0.min(pa.1), pa.0.max(pa.1));
    let inside = |p: usize| lo < p && p < hi;
    inside(pb.0) != inside(pb.1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseCaseRow {
    pub heavy: usize,
    pub light: usize,
    pub void: usize,
    pub searched: Option<usize>,
    pub formula: i64,
    pub bound: i64,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip)]
    pub witness: Option<StarConfig>,
}

/// The nine triangle and quadrilateral rows `(h, λ, ν)` with their closed
/// forms `A = c·k + d`.
const BASE_ROWS: [(usize, usize, usize, i64, i64); 9] = [
    (3, 0, 0, 3, -6),
    (2, 0, 1, 2, -4),
    (2, 1, 0, 1, -1),
    (4, 0, 0, 5, -9),
    (3, 0, 1, 4, -6),
    (3, 1, 0, 3, -5),
    (2, 0, 2, 4, -8),
    (2, 1, 1, 3, -5),
    (2, 2, 0, 2, -2),
];

/// Searches every base-case class and compares with its closed form.
pub fn verify_base_cases(k: usize, opts: SearchOptions) -> Result<Vec<BaseCaseRow>, SearchError> {
    BASE_ROWS
        .iter()
        .map(|&(h, l, v, c, d)| {
            let filter = SearchFilter::Class {
                heavy: h,
                light: l,
                void: v,
            };
            let out = max_arrows(h + l + v, k, filter, opts)?;
            let formula = c * k as i64 + d;
            Ok(BaseCaseRow {
                heavy: h,
                light: l,
                void: v,
                searched: out.maximum,
                formula,
                bound: bound_b(h, l, v, k)?,
                matches: out.maximum.map(|x| x as i64) == Some(formula),
                witness: out.witnesses.into_iter().next(),
            })
        })
        .collect()
}

/// `B(h, λ, ν) = (3k-5)h + kλ + (2k-3)ν - (6k-9)`.
pub fn bound_b(h: usize, light: usize, void: usize, k: usize) -> Result<i64, SearchError> {
    if h < 2 || k < 3 {
        return Err(SearchError::BoundDomain { h, k });
    }
    let (h, l, v, k) = (h as i64, light as i64, void as i64, k as i64);
    Ok((3 * k - 5) * h + k * l + (2 * k - 3) * v - (6 * k - 9))
}
