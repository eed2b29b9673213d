//! JSON reading and writing for drawings, stars and reports.
//!
//! Every document carries `"schema": 1`. Coordinates are stored as exact
//! `[x_num, x_den, y_num, y_den]` quadruples; integers of any size are
//! written as JSON numbers, and strings holding integers are accepted on
//! input.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::crossings::compute_crossings;
use crate::model::{
    AbstractDrawing, CrossingRelation, CrossingViolation, Drawing, DrawingError, Embedding, EmbeddingError, Graph,
    GraphViolation, Point, StraightLineDrawing,
};
use crate::star::{StarConfig, StarError};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read or write {path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u64),
    #[error("not an integer: {0}")]
    BadInteger(String),
    #[error("coordinate {0} has a zero denominator")]
    ZeroDenominator(usize),
    #[error("{0}")]
    Graph(#[from] GraphViolation),
    #[error("{0}")]
    Drawing(#[from] DrawingError),
    #[error("{0}")]
    Crossing(#[from] CrossingViolation),
    #[error("{0}")]
    Embedding(#[from] EmbeddingError),
    #[error("{0}")]
    Star(#[from] StarError),
    #[error("listed crossings disagree with the coordinates")]
    CrossingMismatch,
    #[error("rotation and crossing_order must be given together")]
    PartialEmbedding,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DrawingDoc {
    #[serde(default = "default_schema")]
    schema: u64,
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<[Value; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    crossings: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    crossing_order: Option<Vec<Vec<usize>>>,
}

fn default_schema() -> u64 {
    SCHEMA
}

fn int_value(v: &BigInt) -> Value {
    let s = v.to_string();
    Value::Number(s.parse::<Number>().expect("integers are valid JSON numbers"))
}

fn parse_int(v: &Value) -> Result<BigInt, IoError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(IoError::BadInteger(other.to_string())),
    };
    text.parse::<BigInt>().map_err(|_| IoError::BadInteger(text))
}

fn ratio(num: &Value, den: &Value, idx: usize) -> Result<BigRational, IoError> {
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(IoError::ZeroDenominator(idx));
    }
    Ok(BigRational::new(parse_int(num)?, d))
}

fn edge_pairs(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().iter().map(|&(a, b)| [a, b]).collect()
}

/// JSON document for a drawing.
pub fn drawing_to_value(d: &Drawing, provenance: &str) -> Value {
    let g = d.graph();
    let mut doc = DrawingDoc {
        schema: SCHEMA,
        n: g.n(),
        edges: edge_pairs(g),
        coords: None,
        crossings: None,
        provenance: provenance.to_string(),
        rotation: None,
        crossing_order: None,
    };
    match d {
        Drawing::Straight(s) => {
            doc.coords = Some(
                s.coords()
                    .iter()
                    .map(|p| {
                        [
                            int_value(p.x.numer()),
                            int_value(p.x.denom()),
                            int_value(p.y.numer()),
                            int_value(p.y.denom()),
                        ]
                    })
                    .collect(),
            );
            if let Ok(rel) = compute_crossings(s) {
                doc.crossings = Some(rel.pairs().map(|(a, b)| [a, b]).collect());
            }
        }
        Drawing::Abstract(a) => {
            doc.crossings = Some(a.crossings().pairs().map(|(x, y)| [x, y]).collect());
            if provenance.is_empty() {
                doc.provenance = a.provenance().to_string();
            }
            if let Some(emb) = a.embedding() {
                doc.rotation = Some(emb.rotation.clone());
                doc.crossing_order = Some(emb.crossing_order.clone());
            }
        }
    }
    serde_json::to_value(doc).expect("drawing documents serialize")
}

pub fn drawing_to_string(d: &Drawing, provenance: &str) -> String {
    serde_json::to_string_pretty(&drawing_to_value(d, provenance)).expect("values serialize")
}

/// A parsed drawing document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedDrawing {
    pub drawing: Drawing,
    pub provenance: String,
}

/// Parses a drawing. With coordinates the result is a straight-line drawing
/// and any listed crossings must equal the computed ones (simplicity is
/// left to the caller); without them it
/// is an abstract drawing built from the listed crossings.
pub fn drawing_from_str(text: &str) -> Result<LoadedDrawing, IoError> {
    let doc: DrawingDoc = serde_json::from_str(text)?;
    if doc.schema != SCHEMA {
        return Err(IoError::Schema(doc.schema));
    }
    let graph = Graph::new(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))?;
    let listed = doc
        .crossings
        .as_ref()
        .map(|c| c.iter().map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect::<Vec<_>>());
    let drawing = match &doc.coords {
        Some(coords) => {
            let pts = coords
                .iter()
                .enumerate()
                .map(|(i, c)| Ok(Point::new(ratio(&c[0], &c[1], i)?, ratio(&c[2], &c[3], i)?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            let s = StraightLineDrawing::new(graph, pts)?;
            if let (Some(mut listed), Ok(rel)) = (listed, compute_crossings(&s)) {
                listed.sort_unstable();
                listed.dedup();
                if listed != rel.pairs().collect::<Vec<_>>() {
                    return Err(IoError::CrossingMismatch);
                }
            }
            Drawing::Straight(s)
        }
        None => {
            let rel = CrossingRelation::new(&graph, listed.unwrap_or_default())?;
            let a = AbstractDrawing::new(graph, rel, doc.provenance.clone());
            let a = match (doc.rotation, doc.crossing_order) {
                (Some(rotation), Some(crossing_order)) => a.with_embedding(Embedding {
                    rotation,
                    crossing_order,
                })?,
                (None, None) => a,
                _ => return Err(IoError::PartialEmbedding),
            };
            Drawing::Abstract(a)
        }
    };
    Ok(LoadedDrawing {
        drawing,
        provenance: doc.provenance,
    })
}

pub fn read_drawing(path: &Path) -> Result<LoadedDrawing, IoError> {
    drawing_from_str(&read(path)?)
}

pub fn write_drawing(path: &Path, d: &Drawing, provenance: &str) -> Result<(), IoError> {
    write(path, &drawing_to_string(d, provenance))
}

pub fn star_from_str(text: &str) -> Result<StarConfig, IoError> {
    let mut v: Value = serde_json::from_str(text)?;
    if let Value::Object(map) = &mut v {
        if let Some(s) = map.remove("schema") {
            let s = s.as_u64().unwrap_or(0);
            if s != SCHEMA {
                return Err(IoError::Schema(s));
            }
        }
    }
    Ok(serde_json::from_value(v)?)
}

pub fn star_to_string(s: &StarConfig) -> String {
    to_document(s)
}

/// Serializes `value` with a leading `"schema": 1` field when it is an
/// object.
pub fn with_schema<T: Serialize>(value: &T) -> Value {
    let v = serde_json::to_value(value).expect("reports serialize");
    match v {
        Value::Object(fields) => {
            let mut out = Map::new();
            out.insert("schema".into(), Value::from(SCHEMA));
            out.extend(fields);
            Value::Object(out)
        }
        other => other,
    }
}

pub fn to_document<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(&with_schema(value)).expect("reports serialize")
}

pub fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}
