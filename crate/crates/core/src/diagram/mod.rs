//! Planar diagrams: projected arcs plus an ordered, signed crossing list.

mod twist;

pub use twist::{
    build_twisted_embedding, insert_twists, insert_twists_at, orient_by_max_weight,
    symbolic_linking, TwistOutcome, TwistRegion, TwistedDiagram, DEFAULT_EXPANSION_CAP,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::AbstractGraph;
use crate::geometry::{Arrangement, EdgeId, PLEmbedding, ProjectionDirection, RawCrossing};
use crate::io::{graph_edge_records, graph_from_records, EdgeRecord};

/// Location of a crossing along an arc: polyline segment, parameter inside
/// it, and a tie-breaker for crossings inserted at the same parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position {
    pub seg: u32,
    #[serde(with = "crate::io::rat")]
    pub t: BigRational,
    #[serde(default)]
    pub sub: u32,
}

impl Position {
    pub fn on_segment(seg: u32, t: BigRational) -> Self {
        Self { seg, t, sub: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strand {
    pub edge: EdgeId,
    #[serde(flatten)]
    pub pos: Position,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub a: Strand,
    pub b: Strand,
    pub over: Over,
    /// +1 when the under strand is the over strand turned by +90 degrees,
    /// both taken in stored edge direction.
    pub handedness: i8,
    /// Set on crossings added by a literal twist insertion; these do not
    /// come from a planar drawing of the arcs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<usize>,
}

impl Crossing {
    pub fn over_edge(&self) -> EdgeId {
        match self.over {
            Over::A => self.a.edge,
            Over::B => self.b.edge,
        }
    }

    pub fn other(&self, e: EdgeId) -> Option<&Strand> {
        if self.a.edge == e {
            Some(&self.b)
        } else if self.b.edge == e {
            Some(&self.a)
        } else {
            None
        }
    }

    fn from_raw(c: RawCrossing) -> Self {
        Crossing {
            a: Strand {
                edge: c.e,
                pos: Position::on_segment(0, c.t_e),
            },
            b: Strand {
                edge: c.f,
                pos: Position::on_segment(0, c.t_f),
            },
            over: if c.e_over { Over::A } else { Over::B },
            handedness: c.handedness,
            twist: None,
        }
    }
}

/// A diagram of a graph: one oriented polyline per edge and the list of
/// crossings between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    graph: AbstractGraph,
    arcs: Vec<Vec<[BigRational; 2]>>,
    crossings: Vec<Crossing>,
    /// Crossing indices on each edge, ordered along the edge.
    by_edge: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    vertex_count: usize,
    edges: Vec<EdgeRecord>,
    #[serde(with = "crate::io::rat_polylines")]
    arcs: Vec<Vec<[BigRational; 2]>>,
    crossings: Vec<Crossing>,
}

fn to_rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl Diagram {
    pub fn new(
        graph: AbstractGraph,
        arcs: Vec<Vec<[BigRational; 2]>>,
        crossings: Vec<Crossing>,
    ) -> Result<Self> {
        if arcs.len() != graph.edge_count() {
            return Err(Error::InvalidGraph(format!(
                "{} arcs for {} edges",
                arcs.len(),
                graph.edge_count()
            )));
        }
        let mut d = Self {
            by_edge: vec![Vec::new(); graph.edge_count()],
            graph,
            arcs,
            crossings,
        };
        for c in &d.crossings {
            for s in [&c.a, &c.b] {
                if s.edge.0 >= d.graph.edge_count() {
                    return Err(Error::InvalidGraph(format!(
                        "crossing on unknown edge {}",
                        s.edge
                    )));
                }
                let segs = d.arcs[s.edge.0].len().saturating_sub(1) as u32;
                if s.pos.seg >= segs
                    || s.pos.t <= BigRational::zero()
                    || s.pos.t >= BigRational::one()
                {
                    return Err(Error::InvalidGraph(format!(
                        "crossing position {:?} on {} is not inside a segment",
                        s.pos, s.edge
                    )));
                }
            }
            if c.handedness.abs() != 1 {
                return Err(Error::InvalidGraph("handedness must be +1 or -1".into()));
            }
        }
        d.reindex();
        for e in d.graph.edge_ids() {
            let list = &d.by_edge[e.0];
            for w in list.windows(2) {
                if d.position(w[0], e) == d.position(w[1], e) {
                    return Err(Error::InvalidGraph(format!(
                        "two crossings share a position on {e}"
                    )));
                }
            }
        }
        Ok(d)
    }

    /// Projects an embedding along `dir`.
    pub fn project(emb: &PLEmbedding, dir: ProjectionDirection) -> Result<Self> {
        let (arr, raw) = Arrangement::build(emb, dir)?;
        Ok(Self::from_arrangement(emb, &arr, raw))
    }

    pub(crate) fn from_arrangement(
        emb: &PLEmbedding,
        arr: &Arrangement,
        raw: Vec<RawCrossing>,
    ) -> Self {
        let g = emb.graph();
        let arcs = g
            .edges()
            .iter()
            .map(|e| {
                let (p, q) = (arr.point(e.u), arr.point(e.v));
                vec![[to_rat(p[0]), to_rat(p[1])], [to_rat(q[0]), to_rat(q[1])]]
            })
            .collect();
        let mut d = Self {
            graph: g.clone(),
            arcs,
            crossings: raw.into_iter().map(Crossing::from_raw).collect(),
            by_edge: Vec::new(),
        };
        d.reindex();
        d
    }

    /// Appends the newest edge of `emb` (already added to `arr`'s embedding)
    /// together with its crossings.
    pub(crate) fn push_projected_edge(
        &mut self,
        emb: &PLEmbedding,
        arr: &Arrangement,
        raw: Vec<RawCrossing>,
    ) {
        let g = emb.graph();
        let id = EdgeId(self.graph.edge_count());
        let e = g.edge(id);
        self.graph
            .add_weighted_edge(e.u, e.v, e.weight)
            .expect("edge endpoints exist");
        let (p, q) = (arr.point(e.u), arr.point(e.v));
        self.arcs.push(vec![
            [to_rat(p[0]), to_rat(p[1])],
            [to_rat(q[0]), to_rat(q[1])],
        ]);
        self.by_edge.push(Vec::new());
        for c in raw {
            let idx = self.crossings.len();
            let c = Crossing::from_raw(c);
            let (ea, eb) = (c.a.edge, c.b.edge);
            self.crossings.push(c);
            self.insert_sorted(ea, idx);
            self.insert_sorted(eb, idx);
        }
    }

    fn insert_sorted(&mut self, e: EdgeId, idx: usize) {
        let key = self.position(idx, e).clone();
        let list = &self.by_edge[e.0];
        let at = list.partition_point(|&c| *self.position(c, e) < key);
        self.by_edge[e.0].insert(at, idx);
    }

    fn position(&self, c: usize, e: EdgeId) -> &Position {
        let c = &self.crossings[c];
        if c.a.edge == e {
            &c.a.pos
        } else {
            &c.b.pos
        }
    }

    fn reindex(&mut self) {
        let mut by_edge = vec![Vec::new(); self.graph.edge_count()];
        for (i, c) in self.crossings.iter().enumerate() {
            by_edge[c.a.edge.0].push(i);
            if c.b.edge != c.a.edge {
                by_edge[c.b.edge.0].push(i);
            }
        }
        for (e, list) in by_edge.iter_mut().enumerate() {
            list.sort_by(|&x, &y| self.position(x, EdgeId(e)).cmp(self.position(y, EdgeId(e))));
        }
        self.by_edge = by_edge;
    }

    pub fn graph(&self) -> &AbstractGraph {
        &self.graph
    }

    pub fn arcs(&self) -> &[Vec<[BigRational; 2]>] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Crossing indices along edge `e` in its stored direction.
    pub fn crossings_on(&self, e: EdgeId) -> &[usize] {
        &self.by_edge[e.0]
    }

    /// Mirror image: every crossing switches over/under.
    pub fn mirror(&self) -> Self {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.over = match c.over {
                Over::A => Over::B,
                Over::B => Over::A,
            };
            c.handedness = -c.handedness;
        }
        d
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramFile {
            vertex_count: self.graph.vertex_count(),
            edges: graph_edge_records(&self.graph),
            arcs: self.arcs.clone(),
            crossings: self.crossings.clone(),
        })
        .expect("diagram serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let f: DiagramFile =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let g = graph_from_records(f.vertex_count, &f.edges)?;
        Self::new(g, f.arcs, f.crossings)
    }
}
