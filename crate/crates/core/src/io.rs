//! JSON helpers: rationals as "p/q" strings, and the embedding file format.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{parse_rational, rational_to_string, AbstractGraph, PLEmbedding, VertexId};

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Polylines of 2D rational points.
pub mod rat_polylines {
    use super::*;

    pub fn serialize<S: Serializer>(
        arcs: &[Vec<[BigRational; 2]>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<[String; 2]>> = arcs
            .iter()
            .map(|a| {
                a.iter()
                    .map(|p| [rational_to_string(&p[0]), rational_to_string(&p[1])])
                    .collect()
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<[BigRational; 2]>>, D::Error> {
        let v: Vec<Vec<[String; 2]>> = Deserialize::deserialize(d)?;
        v.into_iter()
            .map(|a| {
                a.into_iter()
                    .map(|[x, y]| Ok([parse_rational(&x)?, parse_rational(&y)?]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Big integers as decimal strings.
pub mod dec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub mod dec_unsigned {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct VertexRecord {
    id: usize,
    x: String,
    y: String,
    z: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EmbeddingFile {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
}

pub fn graph_edge_records(g: &AbstractGraph) -> Vec<EdgeRecord> {
    g.edges()
        .iter()
        .enumerate()
        .map(|(id, e)| EdgeRecord {
            id,
            u: e.u.0,
            v: e.v.0,
            weight: e.weight,
        })
        .collect()
}

pub fn graph_from_records(vertex_count: usize, edges: &[EdgeRecord]) -> Result<AbstractGraph> {
    let mut g = AbstractGraph::new(vertex_count);
    for (i, e) in edges.iter().enumerate() {
        if e.id != i {
            return Err(Error::Parse(format!(
                "edge ids must be 0..{} in order",
                edges.len()
            )));
        }
        g.add_weighted_edge(VertexId(e.u), VertexId(e.v), e.weight)?;
    }
    g.validate()?;
    Ok(g)
}

pub fn embedding_to_json(emb: &PLEmbedding) -> serde_json::Value {
    let vertices = emb
        .coords()
        .iter()
        .enumerate()
        .map(|(id, p)| VertexRecord {
            id,
            x: rational_to_string(&p[0]),
            y: rational_to_string(&p[1]),
            z: rational_to_string(&p[2]),
        })
        .collect();
    serde_json::to_value(EmbeddingFile {
        vertices,
        edges: graph_edge_records(emb.graph()),
    })
    .expect("embedding serializes")
}

pub fn embedding_from_json(v: &serde_json::Value) -> Result<PLEmbedding> {
    let f: EmbeddingFile =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let mut coords = Vec::with_capacity(f.vertices.len());
    for (i, r) in f.vertices.iter().enumerate() {
        if r.id != i {
            return Err(Error::Parse(format!(
                "vertex ids must be 0..{} in order",
                f.vertices.len()
            )));
        }
        coords.push([
            parse_rational(&r.x)?,
            parse_rational(&r.y)?,
            parse_rational(&r.z)?,
        ]);
    }
    let g = graph_from_records(coords.len(), &f.edges)?;
    PLEmbedding::new(g, coords)
}
