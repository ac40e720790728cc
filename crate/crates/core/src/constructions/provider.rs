//! Linking data for the constructions: either read off a projected
//! embedding, or taken from an explicit bilinear table over edges.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::cycles::OrientedCycle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::geometry::{
    AbstractGraph, Arrangement, EdgeId, PLEmbedding, ProjectionDirection, VertexId,
};
use crate::invariants::{conway_a2, linking_number};

/// Embedding-backed provider. New connector edges are added as straight
/// segments and projected incrementally.
#[derive(Clone, Debug)]
pub struct GeometricProvider {
    emb: PLEmbedding,
    arr: Arrangement,
    diagram: Diagram,
}

impl GeometricProvider {
    pub fn new(emb: PLEmbedding, dir: ProjectionDirection) -> Result<Self> {
        let (arr, raw) = Arrangement::build(&emb, dir)?;
        let diagram = Diagram::from_arrangement(&emb, &arr, raw);
        Ok(Self { emb, arr, diagram })
    }

    pub fn embedding(&self) -> &PLEmbedding {
        &self.emb
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn direction(&self) -> ProjectionDirection {
        self.arr.direction()
    }

    fn connect(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if let Some(e) = self.emb.graph().edge_between(u, v) {
            return Ok(e);
        }
        let e = self.emb.add_edge(u, v)?;
        match self.arr.add_edge(&self.emb, e) {
            Ok(raw) => {
                self.diagram.push_projected_edge(&self.emb, &self.arr, raw);
                Ok(e)
            }
            Err(err) => {
                self.emb.remove_last_edge()?;
                Err(err)
            }
        }
    }
}

/// How the synthetic provider answers for edge pairs missing from its table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillRule {
    Zero,
    /// Deterministic pseudo-random value in `[-bound, bound]` per edge pair.
    Seeded {
        seed: u64,
        bound: i64,
    },
}

/// Linking numbers from a symmetric bilinear form `B` on edges:
/// `lk(C, D) = Σ_{e∈C, f∈D} s_C(e) s_D(f) B(e, f)`. This is additive under
/// symmetric difference, like the geometric linking number.
#[derive(Clone, Debug)]
pub struct SyntheticProvider {
    graph: AbstractGraph,
    base_edges: usize,
    /// Value on every pair of distinct representative edges absent from `table`.
    base_value: i64,
    table: HashMap<(EdgeId, EdgeId), i64>,
    fill: FillRule,
}

fn key(e: EdgeId, f: EdgeId) -> (EdgeId, EdgeId) {
    (e.min(f), e.max(f))
}

impl SyntheticProvider {
    /// Builds `matrix.len()` disjoint triangles. Entry `(i, j)` becomes the
    /// value of `B` on the last edges of triangles `i` and `j`, so the base
    /// components realize `matrix` exactly; all other base pairs are zero.
    pub fn from_matrix(matrix: &[Vec<i64>], fill: FillRule) -> Result<(Self, Vec<OrientedCycle>)> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadShape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for j in 0..n {
                if row[j] != matrix[j][i] {
                    return Err(Error::BadShape(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        let (mut p, cycles) = Self::triangles(n, fill)?;
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] != 0 {
                    p.table
                        .insert(key(EdgeId(3 * i + 2), EdgeId(3 * j + 2)), matrix[i][j]);
                }
            }
        }
        Ok((p, cycles))
    }

    fn triangles(n: usize, fill: FillRule) -> Result<(Self, Vec<OrientedCycle>)> {
        let mut g = AbstractGraph::new(3 * n);
        for i in 0..n {
            for k in 0..3 {
                g.add_edge(VertexId(3 * i + k), VertexId(3 * i + (k + 1) % 3))?;
            }
        }
        let cycles: Vec<OrientedCycle> = (0..n)
            .map(|i| {
                OrientedCycle::from_vertices(
                    &g,
                    &[VertexId(3 * i), VertexId(3 * i + 1), VertexId(3 * i + 2)],
                )
            })
            .collect::<Result<_>>()?;
        Ok((
            Self {
                base_edges: g.edge_count(),
                base_value: 0,
                graph: g,
                table: HashMap::new(),
                fill,
            },
            cycles,
        ))
    }

    /// `count` triangles with the listed pairs `(i, j, lk)` linking; all
    /// other base pairs are unlinked.
    pub fn from_pairs(
        count: usize,
        pairs: &[(usize, usize, i64)],
        fill: FillRule,
    ) -> Result<(Self, Vec<OrientedCycle>)> {
        let (mut p, cycles) = Self::triangles(count, fill)?;
        for &(i, j, v) in pairs {
            if i >= count || j >= count || i == j {
                return Err(Error::BadShape(format!(
                    "pair ({i}, {j}) out of range for {count} components"
                )));
            }
            p.table.insert(key(EdgeId(3 * i + 2), EdgeId(3 * j + 2)), v);
        }
        Ok((p, cycles))
    }

    /// `count` triangles, every pair linking `value` times. Nothing is
    /// stored per pair, so very large links are cheap.
    pub fn uniform(count: usize, value: i64, fill: FillRule) -> Result<(Self, Vec<OrientedCycle>)> {
        let (mut p, cycles) = Self::triangles(count, fill)?;
        p.base_value = value;
        Ok((p, cycles))
    }

    /// Overrides `B(e, f)` (and `B(f, e)`).
    pub fn set(&mut self, e: EdgeId, f: EdgeId, value: i64) {
        self.table.insert(key(e, f), value);
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.graph.add_edge(u, v)
    }

    fn value(&self, e: EdgeId, f: EdgeId) -> i64 {
        if let Some(&x) = self.table.get(&key(e, f)) {
            return x;
        }
        if e.0 < self.base_edges && f.0 < self.base_edges {
            let rep = e.0 % 3 == 2 && f.0 % 3 == 2 && e != f;
            return if rep { self.base_value } else { 0 };
        }
        match self.fill {
            FillRule::Zero => 0,
            FillRule::Seeded { seed, bound } => {
                let (a, b) = key(e, f);
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed ^ (a.0 as u64) << 40 ^ (b.0 as u64) << 8);
                rng.random_range(-bound..=bound)
            }
        }
    }

    fn lk(&self, a: &OrientedCycle, b: &OrientedCycle) -> i64 {
        let mut sum = 0;
        for s in a.steps() {
            for t in b.steps() {
                sum += s.sign() * t.sign() * self.value(s.edge, t.edge);
            }
        }
        sum
    }
}

/// Source of linking numbers (and, geometrically, of a₂) for constructions
/// that work inside a complete graph: any missing connector edge is created
/// on demand.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum LinkingProvider {
    Geometric(GeometricProvider),
    Synthetic(SyntheticProvider),
}

impl LinkingProvider {
    pub fn geometric(emb: PLEmbedding, dir: ProjectionDirection) -> Result<Self> {
        Ok(Self::Geometric(GeometricProvider::new(emb, dir)?))
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Self::Geometric(_) => "geometric",
            Self::Synthetic(_) => "synthetic",
        }
    }

    pub fn is_geometric(&self) -> bool {
        matches!(self, Self::Geometric(_))
    }

    pub fn graph(&self) -> &AbstractGraph {
        match self {
            Self::Geometric(p) => p.emb.graph(),
            Self::Synthetic(p) => &p.graph,
        }
    }

    /// The edge joining `u` and `v`, added if absent.
    pub fn connect(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        match self {
            Self::Geometric(p) => p.connect(u, v),
            Self::Synthetic(p) => match p.graph.edge_between(u, v) {
                Some(e) => Ok(e),
                None => p.add_edge(u, v),
            },
        }
    }

    pub fn connect_all(&mut self, pairs: &[(VertexId, VertexId)]) -> Result<Vec<EdgeId>> {
        pairs.iter().map(|&(u, v)| self.connect(u, v)).collect()
    }

    pub fn lk(&self, a: &OrientedCycle, b: &OrientedCycle) -> Result<i64> {
        if !a.is_disjoint(b) {
            return Err(Error::CyclesNotDisjoint);
        }
        match self {
            Self::Geometric(p) => linking_number(&p.diagram, a, b),
            Self::Synthetic(p) => Ok(p.lk(a, b)),
        }
    }

    pub fn omega(&self, a: &OrientedCycle, b: &OrientedCycle) -> Result<u8> {
        Ok(self.lk(a, b)?.rem_euclid(2) as u8)
    }

    /// a₂ of a cycle; `None` when linking data alone cannot determine it.
    pub fn a2(&self, k: &OrientedCycle) -> Result<Option<i64>> {
        match self {
            Self::Geometric(p) => conway_a2(&p.diagram, k).map(Some),
            Self::Synthetic(_) => Ok(None),
        }
    }

    pub fn diagram(&self) -> Option<&Diagram> {
        match self {
            Self::Geometric(p) => Some(&p.diagram),
            Self::Synthetic(_) => None,
        }
    }
}
