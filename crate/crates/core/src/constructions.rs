//! Generators for extremal and lower-bound drawings.
//!
//! Every generator checks its own output with the exact checkers before
//! returning it, so a returned drawing is always verified.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crossings::{compute_crossings, find_k_fans};
use crate::model::{
    AbstractDrawing, CrossingRelation, Drawing, Embedding, FanWitness, Graph, Point, StraightLineDrawing,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    QuadExtremal,
    StraightExtremal,
    K6,
    Grid,
    KqSubdivision,
    TriPlusDual,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::QuadExtremal,
        Family::StraightExtremal,
        Family::K6,
        Family::Grid,
        Family::KqSubdivision,
        Family::TriPlusDual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::QuadExtremal => "quad-extremal",
            Family::StraightExtremal => "straight-extremal",
            Family::K6 => "k6",
            Family::Grid => "grid",
            Family::KqSubdivision => "kq-subdivision",
            Family::TriPlusDual => "tri-plus-dual",
        }
    }

    /// The k for which outputs of this family are fan-free.
    pub fn fan_k(self, k: usize) -> usize {
        match self {
            Family::Grid => k,
            Family::TriPlusDual => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// A family plus its parameters. Unused parameters are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub q: Option<usize>,
    pub side: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec {
            family,
            n: None,
            k: None,
            q: None,
            side: None,
            rows: None,
            cols: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family}: {reason}")]
    Domain { family: Family, reason: String },
    #[error("{family}: missing parameter `{param}`")]
    MissingParam { family: Family, param: &'static str },
    #[error("{family}: output failed verification: {detail}")]
    Verification { family: Family, detail: String },
    #[error("{family}: output contains a k-fan crossing: {witness}")]
    FanFound { family: Family, witness: FanWitness },
}

fn domain(family: Family, reason: impl Into<String>) -> ConstructionError {
    ConstructionError::Domain {
        family,
        reason: reason.into(),
    }
}

fn failed(family: Family, detail: impl Into<String>) -> ConstructionError {
    ConstructionError::Verification {
        family,
        detail: detail.into(),
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Drawing, ConstructionError> {
    let need = |v: Option<usize>, param| {
        v.ok_or(ConstructionError::MissingParam {
            family: spec.family,
            param,
        })
    };
    Ok(match spec.family {
        Family::QuadExtremal => gen_quad_extremal(need(spec.n, "n")?)?.into(),
        Family::StraightExtremal => gen_straight_extremal(need(spec.n, "n")?)?.into(),
        Family::K6 => gen_straight_extremal(6)?.into(),
        Family::Grid => gen_grid(need(spec.side.or(spec.n), "side")?, need(spec.k, "k")?)?.into(),
        Family::KqSubdivision => gen_kq_subdivision(need(spec.q.or(spec.n), "q")?)?.into(),
        Family::TriPlusDual => {
            let rows = need(spec.rows.or(spec.side), "rows")?;
            let cols = need(spec.cols.or(spec.side), "cols")?;
            gen_tri_plus_dual(rows, cols)?.into()
        }
    })
}

// ---------------------------------------------------------------------------
// quadrangulation plus both diagonals (topological)

/// Faces of a spherical quadrangulation, each listed with the face on the
/// left of every directed boundary edge.
fn quad_faces(n: usize) -> Vec<[usize; 4]> {
    if n == 8 {
        // nested squares a_i = i, b_i = 4 + i, plus inner and outer face
        let mut faces: Vec<[usize; 4]> = (0..4).map(|i| [i, (i + 1) % 4, 4 + (i + 1) % 4, 4 + i]).collect();
        faces.push([4, 5, 6, 7]);
        faces.push([3, 2, 1, 0]);
        return faces;
    }
    let odd = n % 2 == 1;
    let (poles, t) = if odd { (3, (n - 3) / 2) } else { (2, (n - 2) / 2) };
    let south = poles - 1;
    let u = |i: usize| poles + 2 * (i % t);
    let w = |i: usize| poles + 2 * (i % t) + 1;
    // N1 serves u_0..u_{a-1}, N2 serves u_{a-1}..u_{t-1}, u_0
    let split = (t + 2) / 2;
    let north = |i: usize| if odd && i >= split - 1 { 1 } else { 0 };
    let mut faces = Vec::with_capacity(n - 2);
    for i in 0..t {
        faces.push([north(i), u(i), w(i), u(i + 1)]);
    }
    for i in 0..t {
        faces.push([south, w(i + 1), u(i + 1), w(i)]);
    }
    if odd {
        faces.push([0, u(split - 1), 1, u(0)]);
    }
    faces
}

/// A quadrangulation with both diagonals added to every face, on `n = 8` or
/// `n >= 10` vertices: `4n - 8` edges with each pair of diagonals crossing.
///
/// Edges are numbered quadrangulation edges first, then the first diagonal
/// of each face, then the second.
pub fn gen_quad_extremal(n: usize) -> Result<AbstractDrawing, ConstructionError> {
    let family = Family::QuadExtremal;
    match n {
        0..=6 => {
            return Err(domain(
                family,
                format!(
                    "n = {n}: K_{n} has only {} edges, fewer than 4n-8 = {}",
                    n * n.saturating_sub(1) / 2,
                    (4 * n).saturating_sub(8)
                ),
            ))
        }
        7 => {
            return Err(domain(
                family,
                "n = 7: a quadrangulation has average degree 20/7 < 3, forcing a degree-2 vertex",
            ))
        }
        9 => {
            return Err(domain(
                family,
                "n = 9: degrees (4, 3^8) need 4 + 3j = 3(8 - j), i.e. 6j = 20, which has no integer solution",
            ))
        }
        _ => {}
    }
    let faces = quad_faces(n);

    let mut q_edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = HashMap::new();
    for f in &faces {
        for i in 0..4 {
            let key = ordered(f[i], f[(i + 1) % 4]);
            seen.entry(key).or_insert_with(|| {
                q_edges.push(key);
                q_edges.len() - 1
            });
        }
    }
    let q = q_edges.len();
    let m = faces.len();
    let mut edges = q_edges.clone();
    edges.extend(faces.iter().map(|f| ordered(f[0], f[2])));
    edges.extend(faces.iter().map(|f| ordered(f[1], f[3])));
    let graph = Graph::new(n, edges.iter().copied()).map_err(|e| failed(family, e.to_string()))?;
    let pairs: Vec<(usize, usize)> = (0..m).map(|i| (q + i, q + m + i)).collect();
    let crossings = CrossingRelation::new(&graph, pairs.iter().copied()).map_err(|e| failed(family, e.to_string()))?;

    // rotation: at every corner, edge to next, diagonal, edge to previous
    let edge_id = |a: usize, b: usize| graph.find_edge(a, b).expect("edge exists");
    let mut corner_at: Vec<BTreeMap<usize, (usize, usize, usize)>> = vec![BTreeMap::new(); n];
    for f in &faces {
        for i in 0..4 {
            let (x, next, opp, prev) = (f[i], f[(i + 1) % 4], f[(i + 2) % 4], f[(i + 3) % 4]);
            if corner_at[x]
                .insert(next, (edge_id(x, opp), prev, edge_id(x, next)))
                .is_some()
            {
                return Err(failed(family, format!("directed edge {x}->{next} used twice")));
            }
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (x, corners) in corner_at.iter().enumerate() {
        let first = *corners
            .keys()
            .next()
            .ok_or_else(|| failed(family, format!("vertex {x} unused")))?;
        let mut rot = Vec::new();
        let mut cur = first;
        loop {
            let &(diag, prev, to_next) = corners
                .get(&cur)
                .ok_or_else(|| failed(family, format!("rotation at {x} does not close")))?;
            rot.push(to_next);
            rot.push(diag);
            cur = prev;
            if cur == first {
                break;
            }
        }
        if rot.len() != 2 * corners.len() {
            return Err(failed(family, format!("vertex {x} is not a disc neighbourhood")));
        }
        rotation.push(rot);
    }
    let mut crossing_order = vec![Vec::new(); graph.edge_count()];
    for &(a, b) in &pairs {
        crossing_order[a].push(b);
        crossing_order[b].push(a);
    }
    let drawing = AbstractDrawing::new(graph, crossings, format!("quad-extremal n={n}"))
        .with_embedding(Embedding {
            rotation,
            crossing_order,
        })
        .map_err(|e| failed(family, e.to_string()))?;
    verify_quad(&drawing, q, m)?;
    Ok(drawing)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn verify_quad(d: &AbstractDrawing, q: usize, faces: usize) -> Result<(), ConstructionError> {
    let family = Family::QuadExtremal;
    let g = d.graph();
    let n = g.n();
    if q != 2 * n - 4 || faces != n - 2 || g.edge_count() != 4 * n - 8 {
        return Err(failed(family, "edge or face count off"));
    }
    let skeleton = g.edge_subgraph(&(0..q).collect::<Vec<_>>());
    if skeleton.two_coloring().is_none() {
        return Err(failed(family, "quadrangulation is not bipartite"));
    }
    if skeleton.component_count() != 1 {
        return Err(failed(family, "quadrangulation is disconnected"));
    }
    // Euler on the sphere: faces traced from the skeleton rotation
    let rot = &d.embedding().expect("embedding attached").rotation;
    let skeleton_rot: Vec<Vec<usize>> = rot
        .iter()
        .map(|r| r.iter().copied().filter(|&e| e < q).collect())
        .collect();
    let traced = count_face_walks(g, &skeleton_rot, q);
    if n as i64 - q as i64 + traced as i64 != 2 {
        return Err(failed(
            family,
            format!("Euler characteristic off: {traced} faces traced"),
        ));
    }
    if let Some(w) = find_k_fans(g, d.crossings(), 2).expect("k = 2").into_iter().next() {
        return Err(ConstructionError::FanFound { family, witness: w });
    }
    Ok(())
}

/// Number of face walks of the plane graph formed by edges `0..q` under the
/// given rotation.
fn count_face_walks(g: &Graph, rot: &[Vec<usize>], q: usize) -> usize {
    let mut used = vec![[false; 2]; q];
    let side = |e: usize, from: usize| usize::from(g.edge(e).0 != from);
    let mut walks = 0;
    for e in 0..q {
        for s in 0..2 {
            if used[e][s] {
                continue;
            }
            walks += 1;
            let (mut from, mut edge) = (if s == 0 { g.edge(e).0 } else { g.edge(e).1 }, e);
            while !used[edge][side(edge, from)] {
                used[edge][side(edge, from)] = true;
                let to = g.other_end(edge, from);
                // the dart after from->to keeps the face on its left
                let r = &rot[to];
                let pos = r.iter().position(|&x| x == edge).expect("edge in rotation");
                edge = r[(pos + r.len() - 1) % r.len()];
                from = to;
            }
        }
    }
    walks
}

// ---------------------------------------------------------------------------
// nested triangles plus diagonals (straight-line)

const BASE: [(i64, i64); 3] = [(0, 24), (-24, -12), (24, -12)];

/// `4n - 9` edges for `n >= 6`: nested triangles with both diagonals of each
/// annulus quadrilateral, plus a small gadget inside the innermost triangle
/// when `n` is not a multiple of three.
pub fn gen_straight_extremal(n: usize) -> Result<StraightLineDrawing, ConstructionError> {
    let family = Family::StraightExtremal;
    if n < 6 {
        return Err(domain(family, format!("n = {n}: needs n >= 6")));
    }
    let gadget = n % 3;
    let gadget_size = [0, 4, 5][gadget];
    let rings = (n - gadget_size) / 3;
    let ring = |j: usize, i: usize| 3 * j + i % 3;

    let mut coords: Vec<Point> = Vec::with_capacity(n);
    for j in 0..rings {
        let scale = BigInt::from(1) << j;
        for &(x, y) in &BASE {
            coords.push(Point::new(
                BigRational::from_integer(&scale * x),
                BigRational::from_integer(&scale * y),
            ));
        }
    }
    let p0 = 3 * rings;
    let (t0, t1, t2) = (ring(0, 0), ring(0, 1), ring(0, 2));
    let mut q_edges: Vec<(usize, usize)> = Vec::new();
    let mut quads: Vec<[usize; 4]> = Vec::new();
    for j in 0..rings {
        for i in 0..3 {
            q_edges.push((ring(j, i), ring(j, i + 1)));
        }
    }
    for j in 0..rings.saturating_sub(1) {
        for i in 0..3 {
            q_edges.push((ring(j, i), ring(j + 1, i)));
            quads.push([ring(j, i), ring(j + 1, i), ring(j + 1, i + 1), ring(j, i + 1)]);
        }
    }
    let p = |i: usize| p0 + i;
    match gadget {
        1 => {
            for (x, y) in [(8, 7), (-8, -3), (1, -3), (9, 5)] {
                coords.push(Point::from_ints(x, y));
            }
            q_edges.extend((0..4).map(|i| (p(i), p((i + 1) % 4))));
            q_edges.extend([(p(0), t0), (p(1), t1), (p(2), t2), (p(3), t2)]);
            quads.extend([
                [p(0), p(1), p(2), p(3)],
                [p(1), p(0), t0, t1],
                [p(2), p(1), t1, t2],
                [p(0), p(3), t2, t0],
            ]);
        }
        2 => {
            for (x, y) in [(-6, -2), (-13, -7), (18, -7), (11, 5), (-15, 1)] {
                coords.push(Point::from_ints(x, y));
            }
            let z = p(4);
            q_edges.extend((0..4).map(|i| (p(i), p((i + 1) % 4))));
            q_edges.extend([(p(0), z), (z, t0), (z, t1), (p(1), t1), (p(2), t2), (p(3), t0)]);
            quads.extend([
                [p(0), p(1), p(2), p(3)],
                [p(1), p(0), z, t1],
                [p(2), p(1), t1, t2],
                [p(3), p(2), t2, t0],
                [p(0), p(3), t0, z],
            ]);
        }
        _ => {}
    }
    let mut edges = q_edges.clone();
    edges.extend(quads.iter().map(|f| (f[0], f[2])));
    edges.extend(quads.iter().map(|f| (f[1], f[3])));
    let graph = Graph::new(n, edges).map_err(|e| failed(family, e.to_string()))?;
    let drawing = StraightLineDrawing::new(graph, coords).map_err(|e| failed(family, e.to_string()))?;

    if drawing.graph().edge_count() != 4 * n - 9 || q_edges.len() != 2 * n - 3 || quads.len() != n - 3 {
        return Err(failed(family, "edge count is not 4n-9"));
    }
    let rel = verify_straight(family, &drawing, 2)?;
    // each quadrilateral contributes exactly its own diagonal crossing
    let q = q_edges.len();
    let m = quads.len();
    let expected: Vec<(usize, usize)> = (0..m).map(|i| (q + i, q + m + i)).collect();
    if rel.pairs().collect::<Vec<_>>() != expected {
        return Err(failed(family, "crossings are not exactly the quadrilateral diagonals"));
    }
    Ok(drawing)
}

fn verify_straight(family: Family, d: &StraightLineDrawing, k: usize) -> Result<CrossingRelation, ConstructionError> {
    let rel = compute_crossings(d).map_err(|e| failed(family, e.to_string()))?;
    if let Some(w) = find_k_fans(d.graph(), &rel, k).expect("k >= 2").into_iter().next() {
        return Err(ConstructionError::FanFound { family, witness: w });
    }
    Ok(rel)
}

// ---------------------------------------------------------------------------
// grid with a short-vector stencil

/// The `k - 1` shortest primitive integer vectors with angle in `[0, pi)`,
/// ordered by length then angle.
pub fn stencil(k: usize) -> Vec<(i64, i64)> {
    let want = k.saturating_sub(1);
    let mut r = 1i64;
    loop {
        let mut vs: Vec<(i64, i64)> = Vec::new();
        for dy in 0..=r {
            for dx in -r..=r {
                if (dy > 0 || dx > 0) && dx.gcd(&dy) == 1 {
                    vs.push((dx, dy));
                }
            }
        }
        vs.sort_by(|a, b| {
            let la = a.0 * a.0 + a.1 * a.1;
            let lb = b.0 * b.0 + b.1 * b.1;
            // both lie in the upper half-plane, so a positive cross product
            // means a comes first counter-clockwise
            la.cmp(&lb).then_with(|| (b.0 * a.1 - a.0 * b.1).cmp(&0))
        });
        // every vector of length <= r is present once the box has radius r
        if vs.iter().filter(|v| v.0 * v.0 + v.1 * v.1 <= r * r).count() >= want {
            vs.truncate(want);
            return vs;
        }
        r += 1;
    }
}

/// `side x side` integer grid; every point joins `p + d` for each stencil
/// vector `d` that stays inside the grid.
pub fn gen_grid(side: usize, k: usize) -> Result<StraightLineDrawing, ConstructionError> {
    let family = Family::Grid;
    if side < 4 {
        return Err(domain(family, format!("side = {side}: needs side >= 4")));
    }
    if k < 2 {
        return Err(domain(family, format!("k = {k}: needs k >= 2")));
    }
    let s = side as i64;
    let id = |x: i64, y: i64| (y * s + x) as usize;
    let mut coords = Vec::with_capacity(side * side);
    for y in 0..s {
        for x in 0..s {
            coords.push(Point::from_ints(x, y));
        }
    }
    let mut edges = Vec::new();
    let st = stencil(k);
    for y in 0..s {
        for x in 0..s {
            for &(dx, dy) in &st {
                let (nx, ny) = (x + dx, y + dy);
                if (0..s).contains(&nx) && (0..s).contains(&ny) {
                    edges.push((id(x, y), id(nx, ny)));
                }
            }
        }
    }
    let graph = Graph::new(side * side, edges).map_err(|e| failed(family, e.to_string()))?;
    let drawing = StraightLineDrawing::new(graph, coords).map_err(|e| failed(family, e.to_string()))?;
    verify_straight(family, &drawing, k)?;
    Ok(drawing)
}

/// Whether `edges >= (k-1)(n - 8 sqrt(nk))`, decided without square roots.
pub fn grid_lower_bound_holds(n: usize, k: usize, edges: usize) -> bool {
    let deficit = (n * (k - 1)) as i128 - edges as i128;
    deficit <= 0 || deficit * deficit <= 64 * (n * k) as i128 * ((k - 1) * (k - 1)) as i128
}

// ---------------------------------------------------------------------------
// subdivided complete graph

/// Rational point on the unit circle near angle `theta`.
fn circle_point(theta: f64, den: i64) -> (BigRational, BigRational) {
    let t = BigRational::new(
        BigInt::from(((theta / 2.0).tan() * den as f64).round() as i64),
        BigInt::from(den),
    );
    let one = BigRational::from_integer(1.into());
    let t2 = &t * &t;
    let d = &one + &t2;
    ((&one - &t2) / &d, (&t * BigRational::from_integer(2.into())) / d)
}

/// `K_q` on a circle with every edge split into three, the two new vertices
/// placed at parameter `eps` from each end. Fan-crossing free for small
/// enough `eps`; `eps` starts at `1/(8q^2)` and halves until verified.
pub fn gen_kq_subdivision(q: usize) -> Result<StraightLineDrawing, ConstructionError> {
    let family = Family::KqSubdivision;
    if !(3..=12).contains(&q) {
        return Err(domain(family, format!("q = {q}: needs 3 <= q <= 12")));
    }
    let hubs: Vec<(BigRational, BigRational)> = (0..q)
        .map(|i| circle_point(-3.0 + std::f64::consts::TAU * i as f64 / q as f64, 1 << 12))
        .collect();
    let mut eps = BigRational::new(1.into(), BigInt::from(8 * q * q));
    for _ in 0..16 {
        let mut coords: Vec<Point> = hubs.iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect();
        let mut edges = Vec::new();
        for a in 0..q {
            for b in a + 1..q {
                let (ua, va) = &hubs[a];
                let (ub, vb) = &hubs[b];
                let at = |s: &BigRational| Point::new(ua + (ub - ua) * s, va + (vb - va) * s);
                let x = coords.len();
                coords.push(at(&eps));
                coords.push(at(&(BigRational::from_integer(1.into()) - &eps)));
                edges.extend([(a, x), (x, x + 1), (x + 1, b)]);
            }
        }
        let n = coords.len();
        let graph = Graph::new(n, edges).map_err(|e| failed(family, e.to_string()))?;
        let drawing = StraightLineDrawing::new(graph, coords).map_err(|e| failed(family, e.to_string()))?;
        if verify_straight(family, &drawing, 2).is_ok() {
            return Ok(drawing);
        }
        eps /= BigRational::from_integer(2.into());
    }
    Err(failed(
        family,
        "no epsilon down to 2^-16/(8q^2) gives a fan-crossing free drawing",
    ))
}

// ---------------------------------------------------------------------------
// triangulated grid plus dual edges

/// `rows x cols` grid triangulated by the `(1, 1)` diagonal of each cell;
/// for every interior edge the two vertices opposite it are joined.
pub fn gen_tri_plus_dual(rows: usize, cols: usize) -> Result<StraightLineDrawing, ConstructionError> {
    let family = Family::TriPlusDual;
    if rows < 3 || cols < 3 {
        return Err(domain(family, format!("{rows}x{cols}: needs rows, cols >= 3")));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut coords = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            coords.push(Point::from_ints(c as i64, r as i64));
        }
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if r + 1 < rows && c + 1 < cols {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            // cell diagonal -> cell anti-diagonal
            if r + 1 < rows && c + 1 < cols {
                edges.push((id(r, c + 1), id(r + 1, c)));
            }
            // interior horizontal edge (r,c)-(r,c+1)
            if r >= 1 && r + 1 < rows && c + 1 < cols {
                edges.push((id(r - 1, c), id(r + 1, c + 1)));
            }
            // interior vertical edge (r,c)-(r+1,c)
            if c >= 1 && c + 1 < cols && r + 1 < rows {
                edges.push((id(r, c - 1), id(r + 1, c + 1)));
            }
        }
    }
    let graph = Graph::new(rows * cols, edges).map_err(|e| failed(family, e.to_string()))?;
    let drawing = StraightLineDrawing::new(graph, coords).map_err(|e| failed(family, e.to_string()))?;
    verify_straight(family, &drawing, 4)?;
    Ok(drawing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_extremal_counts() {
        let d = gen_quad_extremal(8).unwrap();
        assert_eq!(d.graph().edge_count(), 24);
        assert_eq!(d.crossings().len(), 6);
        assert_eq!(gen_quad_extremal(12).unwrap().graph().edge_count(), 40);
        let d = gen_quad_extremal(11).unwrap();
        assert_eq!(d.graph().edge_count(), 36);
        assert_eq!(d.crossings().len(), 9);
    }

    #[test]
    fn quad_extremal_rejects_small_n() {
        for n in [3, 4, 5, 6, 7, 9] {
            assert!(matches!(gen_quad_extremal(n), Err(ConstructionError::Domain { .. })));
        }
        let err = gen_quad_extremal(9).unwrap_err().to_string();
        assert!(err.contains("6j = 20"));
    }

    #[test]
    fn straight_extremal_small() {
        let k6 = gen_straight_extremal(6).unwrap();
        assert_eq!(k6.graph().edge_count(), 15);
        assert_eq!(gen_straight_extremal(9).unwrap().graph().edge_count(), 27);
        assert_eq!(gen_straight_extremal(10).unwrap().graph().edge_count(), 31);
        assert_eq!(gen_straight_extremal(8).unwrap().graph().edge_count(), 23);
        assert!(gen_straight_extremal(5).is_err());
    }

    #[test]
    fn stencils() {
        assert_eq!(stencil(2), vec![(1, 0)]);
        assert_eq!(stencil(3), vec![(1, 0), (0, 1)]);
        assert_eq!(stencil(5), vec![(1, 0), (0, 1), (1, 1), (-1, 1)]);
        assert_eq!(stencil(7), vec![(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1), (1, 2)]);
    }

    #[test]
    fn grid_k2_is_paths() {
        let d = gen_grid(6, 2).unwrap();
        assert_eq!(d.graph().edge_count(), 30);
    }

    #[test]
    fn kq_small() {
        let d = gen_kq_subdivision(3).unwrap();
        assert_eq!((d.graph().n(), d.graph().edge_count()), (9, 9));
        assert!(compute_crossings(&d).unwrap().is_empty());
        let d = gen_kq_subdivision(5).unwrap();
        assert_eq!((d.graph().n(), d.graph().edge_count()), (25, 30));
    }

    #[test]
    fn tri_plus_dual_small() {
        let d = gen_tri_plus_dual(3, 3).unwrap();
        assert!(d.graph().edge_count() <= 6 * 9 - 12);
    }

    #[test]
    fn lower_bound_arithmetic() {
        assert!(grid_lower_bound_holds(100, 3, 200));
        assert!(grid_lower_bound_holds(100, 3, 0) == (200 * 200 <= 64 * 300 * 4));
    }
}
