//! Planarization of a drawing and per-face arrow audits.
//!
//! A maximal crossing-free edge set H is chosen greedily. Every other edge
//! becomes two arrows, one from each endpoint up to the first edge of H it
//! crosses. The faces of H are traced, and the arrows landing in each face
//! are compared with the per-face bound. Summing the face bounds gives the
//! global edge bound, so a face exceeding its bound in a fan-free drawing
//! would contradict the global theorem; such a face is reported as a
//! falsification event.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::crossings::{crossings_with, find_k_fans, SimplicityError};
use crate::geom::{cmp_fraction, IntCoords};
use crate::model::{AbstractDrawing, CrossingRelation, Drawing, Graph, StraightLineDrawing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error(transparent)]
    NotSimple(#[from] SimplicityError),
    #[error("edges {0} and {1} of the plane subgraph cross")]
    PlaneCrossing(usize, usize),
    #[error("excluded edge {0} crosses no edge of the plane subgraph")]
    NotMaximal(usize),
    #[error("the plane subgraph is disconnected and the drawing has no coordinates to nest its components")]
    DisconnectedEmbedding,
    #[error("inconsistent face structure: {0}")]
    Inconsistent(String),
}

/// Greedy maximal crossing-free edge set: edges in ascending index order,
/// each kept iff it crosses no edge kept before it.
pub fn maximal_plane_subgraph(g: &Graph, c: &CrossingRelation) -> Vec<usize> {
    let adj = c.adjacency(g.edge_count());
    let mut kept = vec![false; g.edge_count()];
    let mut h = Vec::new();
    for e in 0..g.edge_count() {
        if adj[e].iter().all(|&f| !kept[f]) {
            kept[e] = true;
            h.push(e);
        }
    }
    h
}

/// One boundary walk of a face. `darts` lists `(edge, tail)` pairs in walk
/// order; an isolated vertex is a walk with no darts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub darts: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    pub walks: Vec<Walk>,
    /// `None` when faces come from a combinatorial embedding, where no face
    /// is distinguished as outer.
    pub bounded: Option<bool>,
}

impl Face {
    /// Boundary darts; an edge seen from both sides counts twice.
    pub fn complexity(&self) -> usize {
        self.walks.iter().map(|w| w.darts.len()).sum()
    }

    pub fn chains(&self) -> usize {
        self.walks.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTrace {
    pub faces: Vec<Face>,
    pub components: usize,
    dart_face: HashMap<(usize, usize), usize>,
    vertex_face: HashMap<usize, usize>,
    rotation: Vec<Vec<usize>>,
}

impl FaceTrace {
    /// Face on the left of the dart along `edge` leaving `tail`.
    pub fn face_of_dart(&self, edge: usize, tail: usize) -> Option<usize> {
        self.dart_face.get(&(edge, tail)).copied()
    }

    /// Face holding an isolated vertex.
    pub fn face_of_isolated(&self, v: usize) -> Option<usize> {
        self.vertex_face.get(&v).copied()
    }

    /// Counter-clockwise order of plane edges at each vertex.
    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }
}

fn component_labels(g: &Graph, h: &[usize]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..g.n()).collect();
    fn find(l: &mut [usize], mut x: usize) -> usize {
        while l[x] != x {
            l[x] = l[l[x]];
            x = l[x];
        }
        x
    }
    for &e in h {
        let (a, b) = g.edge(e);
        let (ra, rb) = (find(&mut label, a), find(&mut label, b));
        label[ra] = rb;
    }
    (0..g.n()).map(|v| find(&mut label, v)).collect()
}

/// Walks of the plane graph with rotation `rot`; the face lies on the left
/// of every dart.
fn trace_walks(g: &Graph, h: &[usize], rot: &[Vec<usize>]) -> Vec<Walk> {
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, r) in rot.iter().enumerate() {
        for (i, &e) in r.iter().enumerate() {
            pos.insert((e, v), i);
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut walks = Vec::new();
    for &e in h {
        let (a, b) = g.edge(e);
        for tail in [a, b] {
            if seen.contains(&(e, tail)) {
                continue;
            }
            let mut walk = Walk {
                vertices: Vec::new(),
                darts: Vec::new(),
            };
            let (mut edge, mut from) = (e, tail);
            while seen.insert((edge, from)) {
                walk.vertices.push(from);
                walk.darts.push((edge, from));
                let to = g.other_end(edge, from);
                let r = &rot[to];
                let i = pos[&(edge, to)];
                edge = r[(i + r.len() - 1) % r.len()];
                from = to;
            }
            walks.push(walk);
        }
    }
    for (v, r) in rot.iter().enumerate() {
        if r.is_empty() {
            walks.push(Walk {
                vertices: vec![v],
                darts: Vec::new(),
            });
        }
    }
    walks
}

fn index_faces(faces: Vec<Face>, components: usize, rotation: Vec<Vec<usize>>) -> FaceTrace {
    let mut dart_face = HashMap::new();
    let mut vertex_face = HashMap::new();
    for f in &faces {
        for w in &f.walks {
            if w.darts.is_empty() {
                vertex_face.insert(w.vertices[0], f.id);
            }
            for &d in &w.darts {
                dart_face.insert(d, f.id);
            }
        }
    }
    FaceTrace {
        faces,
        components,
        dart_face,
        vertex_face,
        rotation,
    }
}

/// Faces of the plane subgraph `h` of a straight-line drawing.
///
/// Walks with positive area are the outer boundaries of bounded faces. Every
/// other walk (including isolated vertices) is a hole, placed in the
/// smallest positive walk of another component that encloses it, or in the
/// outer face.
pub fn trace_faces(d: &StraightLineDrawing, h: &[usize]) -> Result<FaceTrace, DecomposeError> {
    let coords = IntCoords::from_points(d.coords());
    trace_with(d.graph(), &coords, h)
}

fn trace_with(g: &Graph, coords: &IntCoords, h: &[usize]) -> Result<FaceTrace, DecomposeError> {
    let sub = g.edge_subgraph(h);
    let rel = crossings_with(&sub, coords)?;
    if let Some((a, b)) = rel.pairs().next() {
        return Err(DecomposeError::PlaneCrossing(h[a], h[b]));
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for &e in h {
        let (a, b) = g.edge(e);
        rot[a].push(e);
        rot[b].push(e);
    }
    for (v, r) in rot.iter_mut().enumerate() {
        r.sort_by(|&e, &f| coords.cmp_angle(v, g.other_end(e, v), g.other_end(f, v)));
    }
    let walks = trace_walks(g, h, &rot);
    let label = component_labels(g, h);
    let areas: Vec<BigInt> = walks.iter().map(|w| coords.area2(&w.vertices)).collect();
    let zero = BigInt::from(0);

    let mut faces: Vec<Face> = Vec::new();
    let mut face_of_walk = vec![usize::MAX; walks.len()];
    for (i, w) in walks.iter().enumerate() {
        if areas[i] > zero {
            face_of_walk[i] = faces.len();
            faces.push(Face {
                id: faces.len(),
                walks: vec![w.clone()],
                bounded: Some(true),
            });
        }
    }
    let outer = faces.len();
    faces.push(Face {
        id: outer,
        walks: Vec::new(),
        bounded: Some(false),
    });
    for (i, w) in walks.iter().enumerate() {
        if areas[i] > zero {
            continue;
        }
        let probe = w.vertices[0];
        let mut best: Option<usize> = None;
        for (j, cand) in walks.iter().enumerate() {
            if areas[j] <= zero || label[cand.vertices[0]] == label[probe] {
                continue;
            }
            if coords.winding_number(probe, &cand.vertices) != 0 && best.is_none_or(|b| areas[j] < areas[b]) {
                best = Some(j);
            }
        }
        let f = best.map_or(outer, |j| face_of_walk[j]);
        faces[f].walks.push(w.clone());
    }
    let components = sub.component_count();
    Ok(index_faces(faces, components, rot))
}

/// Faces of the plane subgraph `h` of an abstract drawing with an embedding.
/// The subgraph must be connected, since a bare rotation system cannot say
/// which face holds which component.
pub fn trace_faces_embedded(d: &AbstractDrawing, h: &[usize]) -> Result<FaceTrace, DecomposeError> {
    let g = d.graph();
    let emb = d
        .embedding()
        .ok_or_else(|| DecomposeError::Inconsistent("drawing has no embedding".into()))?;
    for (a, b) in d.crossings().pairs() {
        if h.contains(&a) && h.contains(&b) {
            return Err(DecomposeError::PlaneCrossing(a, b));
        }
    }
    let sub = g.edge_subgraph(h);
    let components = sub.component_count();
    if components != 1 {
        return Err(DecomposeError::DisconnectedEmbedding);
    }
    let mut in_h = vec![false; g.edge_count()];
    for &e in h {
        in_h[e] = true;
    }
    let rot: Vec<Vec<usize>> = emb
        .rotation
        .iter()
        .map(|r| r.iter().copied().filter(|&e| in_h[e]).collect())
        .collect();
    let faces = trace_walks(g, h, &rot)
        .into_iter()
        .enumerate()
        .map(|(id, w)| Face {
            id,
            walks: vec![w],
            bounded: None,
        })
        .collect();
    Ok(index_faces(faces, components, rot))
}

/// One half of an excluded edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArrowRecord {
    pub edge: usize,
    pub start: usize,
    pub face: usize,
    pub first_crossed: usize,
}

/// Splits every excluded edge into two arrows and finds the face each one
/// starts in and the first plane edge it crosses.
pub fn arrowize(d: &Drawing, h: &[usize], trace: &FaceTrace) -> Result<Vec<ArrowRecord>, DecomposeError> {
    let g = d.graph();
    let mut in_h = vec![false; g.edge_count()];
    for &e in h {
        in_h[e] = true;
    }
    let rel = match d {
        Drawing::Straight(s) => crossings_with(g, &IntCoords::from_points(s.coords()))?,
        Drawing::Abstract(a) => a.crossings().clone(),
    };
    let adj = rel.adjacency(g.edge_count());
    let coords = d.as_straight().map(|s| IntCoords::from_points(s.coords()));
    let mut out = Vec::new();
    for e in (0..g.edge_count()).filter(|&e| !in_h[e]) {
        let (a, b) = g.edge(e);
        let crossed: Vec<usize> = adj[e].iter().copied().filter(|&f| in_h[f]).collect();
        if crossed.is_empty() {
            return Err(DecomposeError::NotMaximal(e));
        }
        for (start, end) in [(a, b), (b, a)] {
            let (face, first_crossed) = match (d, &coords) {
                (Drawing::Straight(_), Some(c)) => {
                    let first = crossed
                        .iter()
                        .copied()
                        .min_by(|&x, &y| {
                            let (xa, xb) = g.edge(x);
                            let (ya, yb) = g.edge(y);
                            cmp_fraction(
                                &c.crossing_parameter(start, end, xa, xb),
                                &c.crossing_parameter(start, end, ya, yb),
                            )
                        })
                        .expect("non-empty");
                    (face_geometric(g, c, trace, start, end)?, first)
                }
                (Drawing::Abstract(ad), _) => {
                    let emb = ad
                        .embedding()
                        .ok_or(DecomposeError::Inconsistent("no embedding".into()))?;
                    let order: Vec<usize> = emb.crossing_order[e].iter().copied().filter(|&f| in_h[f]).collect();
                    let first = if start == a { order[0] } else { order[order.len() - 1] };
                    (face_embedded(&emb.rotation, &in_h, trace, start, e)?, first)
                }
                _ => unreachable!("straight drawings always have coordinates"),
            };
            let f = &trace.faces[face];
            let on_boundary = f
                .walks
                .iter()
                .flat_map(|w| w.darts.iter())
                .any(|&(edge, _)| edge == first_crossed);
            let touches_start = f.walks.iter().any(|w| w.vertices.contains(&start));
            if !touches_start {
                return Err(DecomposeError::Inconsistent(format!(
                    "arrow of edge {e} starts at {start}, which is not on face {face}"
                )));
            }
            if !on_boundary {
                return Err(DecomposeError::Inconsistent(format!(
                    "arrow of edge {e} from {start} starts in face {face} but first crosses edge {first_crossed} outside it"
                )));
            }
            out.push(ArrowRecord {
                edge: e,
                start,
                face,
                first_crossed,
            });
        }
    }
    Ok(out)
}

/// Face entered by the segment `start -> end` as it leaves `start`: the face
/// left of the last plane edge at or before its direction, counter-clockwise.
fn face_geometric(
    g: &Graph,
    c: &IntCoords,
    trace: &FaceTrace,
    start: usize,
    end: usize,
) -> Result<usize, DecomposeError> {
    let r = &trace.rotation[start];
    if r.is_empty() {
        return trace
            .face_of_isolated(start)
            .ok_or_else(|| DecomposeError::Inconsistent(format!("isolated vertex {start} has no face")));
    }
    let before = r
        .iter()
        .rposition(|&e| c.cmp_angle(start, g.other_end(e, start), end) == Ordering::Less)
        .unwrap_or(r.len() - 1);
    trace
        .face_of_dart(r[before], start)
        .ok_or_else(|| DecomposeError::Inconsistent(format!("dart of edge {} has no face", r[before])))
}

fn face_embedded(
    rotation: &[Vec<usize>],
    in_h: &[bool],
    trace: &FaceTrace,
    start: usize,
    e: usize,
) -> Result<usize, DecomposeError> {
    let full = &rotation[start];
    let i = full.iter().position(|&x| x == e).expect("edge in rotation");
    let len = full.len();
    let before = (1..len)
        .map(|s| full[(i + len - s) % len])
        .find(|&x| in_h[x])
        .ok_or_else(|| DecomposeError::Inconsistent(format!("vertex {start} has no plane edge")))?;
    trace
        .face_of_dart(before, start)
        .ok_or_else(|| DecomposeError::Inconsistent(format!("dart of edge {before} has no face")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceAudit {
    pub face: usize,
    pub complexity: usize,
    pub chains: usize,
    pub arrows: usize,
    pub k: usize,
    pub bound: i64,
    /// Whether the face meets the bound's hypothesis (complexity >= 3).
    pub applicable: bool,
    pub pass: bool,
}

/// Arrow bound for a face of complexity `m` with `p` boundary chains.
pub fn face_bound(m: usize, p: usize, k: usize) -> i64 {
    let (m, p, k) = (m as i64, p as i64, k as i64);
    if k == 2 {
        3 * m + 8 * p - 16
    } else {
        3 * (k - 1) * (m + 2 * p - 4) - 2 * m + 3
    }
}

/// Global bound on `2|E|`.
pub fn global_bound_twice(n: usize, k: usize) -> i64 {
    let (n, k) = (n as i64, k as i64);
    if k == 2 {
        8 * n - 16
    } else {
        6 * (k - 1) * (n - 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FalsificationEvent {
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub fan_free: bool,
    pub plane: Vec<usize>,
    pub excluded: Vec<usize>,
    pub arrows: Vec<ArrowRecord>,
    pub faces_traced: bool,
    pub faces: Vec<FaceAudit>,
    /// Number of faces r.
    pub faces_count: usize,
    /// Components p of the plane subgraph.
    pub components: usize,
    pub complexity_sum: usize,
    pub chain_excess_sum: usize,
    pub complexity_sum_ok: bool,
    pub chain_sum_ok: bool,
    pub euler_ok: bool,
    pub global_bound: i64,
    pub global_ok: bool,
    /// Excluded edges whose two arrows start in the same face.
    pub same_face_edges: usize,
    pub falsifications: Vec<FalsificationEvent>,
}

impl DecompositionReport {
    /// All identities hold and every applicable face passes.
    pub fn is_clean(&self) -> bool {
        self.falsifications.is_empty()
            && (!self.faces_traced || (self.complexity_sum_ok && self.chain_sum_ok && self.euler_ok))
            && self.faces.iter().all(|f| f.pass || !f.applicable)
    }
}

/// Full pipeline: plane subgraph, faces, arrows, per-face and global bounds.
///
/// Straight-line drawings and abstract drawings with an embedding are traced
/// face by face; other abstract drawings only get the global edge check.
/// Any violated bound in a fan-free drawing becomes a falsification event.
pub fn audit(d: &Drawing, k: usize) -> Result<DecompositionReport, DecomposeError> {
    if k < 2 {
        return Err(DecomposeError::BadK(k));
    }
    let g = d.graph();
    let rel = match d {
        Drawing::Straight(s) => crossings_with(g, &IntCoords::from_points(s.coords()))?,
        Drawing::Abstract(a) => a.crossings().clone(),
    };
    let fan_free = find_k_fans(g, &rel, k).expect("k >= 2").is_empty();
    let plane = maximal_plane_subgraph(g, &rel);
    let mut in_h = vec![false; g.edge_count()];
    for &e in &plane {
        in_h[e] = true;
    }
    let excluded: Vec<usize> = (0..g.edge_count()).filter(|&e| !in_h[e]).collect();
    let n = g.n();
    let global_bound = global_bound_twice(n, k);
    let global_ok = 2 * g.edge_count() as i64 <= global_bound;

    let trace = match d {
        Drawing::Straight(s) => Some(trace_faces(s, &plane)?),
        Drawing::Abstract(a) if a.embedding().is_some() => Some(trace_faces_embedded(a, &plane)?),
        Drawing::Abstract(_) => None,
    };
    let mut report = DecompositionReport {
        n,
        k,
        edges: g.edge_count(),
        fan_free,
        plane: plane.clone(),
        excluded,
        arrows: Vec::new(),
        faces_traced: trace.is_some(),
        faces: Vec::new(),
        faces_count: 0,
        components: g.edge_subgraph(&plane).component_count(),
        complexity_sum: 0,
        chain_excess_sum: 0,
        complexity_sum_ok: true,
        chain_sum_ok: true,
        euler_ok: true,
        global_bound,
        global_ok,
        same_face_edges: 0,
        falsifications: Vec::new(),
    };
    if let Some(trace) = &trace {
        let arrows = arrowize(d, &plane, trace)?;
        let mut per_face = vec![0usize; trace.faces.len()];
        for a in &arrows {
            per_face[a.face] += 1;
        }
        report.same_face_edges = arrows.chunks(2).filter(|pair| pair[0].face == pair[1].face).count();
        report.faces = trace
            .faces
            .iter()
            .map(|f| {
                let (m, p) = (f.complexity(), f.chains());
                let bound = face_bound(m, p, k);
                FaceAudit {
                    face: f.id,
                    complexity: m,
                    chains: p,
                    arrows: per_face[f.id],
                    k,
                    bound,
                    applicable: m >= 3,
                    pass: per_face[f.id] as i64 <= bound,
                }
            })
            .collect();
        report.arrows = arrows;
        let r = trace.faces.len();
        let p = report.components;
        report.faces_count = r;
        report.complexity_sum = report.faces.iter().map(|f| f.complexity).sum();
        report.chain_excess_sum = report.faces.iter().map(|f| f.chains - 1).sum();
        report.complexity_sum_ok = report.complexity_sum == 2 * plane.len();
        report.chain_sum_ok = report.chain_excess_sum == p - 1;
        report.euler_ok = n as i64 - plane.len() as i64 + r as i64 == 1 + p as i64;
    }

    if fan_free {
        let mut events = Vec::new();
        for f in &report.faces {
            if f.applicable && !f.pass {
                events.push(FalsificationEvent {
                    kind: "face-bound".into(),
                    detail: format!(
                        "face {} (m = {}, p = {}) has {} arrows, bound {}",
                        f.face, f.complexity, f.chains, f.arrows, f.bound
                    ),
                });
            }
        }
        if !global_ok {
            events.push(FalsificationEvent {
                kind: "global-bound".into(),
                detail: format!("2|E| = {} exceeds {}", 2 * g.edge_count(), global_bound),
            });
        }
        if report.faces_traced && !(report.complexity_sum_ok && report.chain_sum_ok && report.euler_ok) {
            events.push(FalsificationEvent {
                kind: "identity".into(),
                detail: "face sums or Euler identity violated".into(),
            });
        }
        report.falsifications = events;
    }
    Ok(report)
}
