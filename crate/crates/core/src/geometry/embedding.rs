use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::exact::{segments_meet_3d, P3};
use super::graph::{AbstractGraph, EdgeId, VertexId};
use crate::error::{Error, Result};

/// Largest accepted magnitude of a vertex coordinate after clearing denominators.
pub const COORD_LIMIT: i64 = (1 << 31) - 1;
/// Largest accepted magnitude of a (primitive) projection direction component.
pub const DIRECTION_LIMIT: i64 = 1 << 12;

/// Number of resamples `random_embedding` attempts before giving up.
pub const RESAMPLE_BUDGET: usize = 256;

pub type Point3 = [BigRational; 3];

pub fn int_point(x: i64, y: i64, z: i64) -> Point3 {
    [
        BigRational::from_integer(x.into()),
        BigRational::from_integer(y.into()),
        BigRational::from_integer(z.into()),
    ]
}

/// A graph with straight edges between exact rational vertex positions.
///
/// Construction verifies that vertex positions are distinct and that the
/// closed segments of distinct edges meet only in shared endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLEmbedding {
    graph: AbstractGraph,
    coords: Vec<Point3>,
    // coords times the common denominator, cached for exact predicates
    scaled: Vec<[i64; 3]>,
}

impl PLEmbedding {
    pub fn new(graph: AbstractGraph, coords: Vec<Point3>) -> Result<Self> {
        if coords.len() != graph.vertex_count() {
            return Err(Error::InvalidEmbedding(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                graph.vertex_count()
            )));
        }
        graph.validate()?;
        let scaled = scale_to_integers(&coords)?;
        let emb = Self {
            graph,
            coords,
            scaled,
        };
        emb.check_vertices()?;
        for e in emb.graph.edge_ids() {
            emb.check_edge_against(e, e.0)?;
        }
        Ok(emb)
    }

    /// Builds an embedding from integer coordinates.
    pub fn from_integer_coords(graph: AbstractGraph, coords: &[[i64; 3]]) -> Result<Self> {
        Self::new(
            graph,
            coords.iter().map(|c| int_point(c[0], c[1], c[2])).collect(),
        )
    }

    pub fn graph(&self) -> &AbstractGraph {
        &self.graph
    }

    pub fn coords(&self) -> &[Point3] {
        &self.coords
    }

    pub fn coord(&self, v: VertexId) -> &Point3 {
        &self.coords[v.0]
    }

    /// Vertex positions scaled by the common denominator.
    pub fn scaled(&self, v: VertexId) -> [i64; 3] {
        self.scaled[v.0]
    }

    pub(crate) fn scaled_p3(&self, v: VertexId) -> P3 {
        let c = self.scaled[v.0];
        [c[0] as i128, c[1] as i128, c[2] as i128]
    }

    /// Adds a straight edge, rejecting it if it meets any existing edge away
    /// from shared endpoints.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let e = self.graph.add_edge(u, v)?;
        if let Err(err) = self.check_edge_against(e, self.graph.edge_count() - 1) {
            // roll back by rebuilding the graph without the new edge
            let mut g = AbstractGraph::new(self.graph.vertex_count());
            for old in &self.graph.edges()[..e.0] {
                g.add_weighted_edge(old.u, old.v, old.weight)?;
            }
            self.graph = g;
            return Err(err);
        }
        Ok(e)
    }

    /// Drops the most recently added edge.
    pub(crate) fn remove_last_edge(&mut self) -> Result<()> {
        let n = self.graph.edge_count();
        let mut g = AbstractGraph::new(self.graph.vertex_count());
        for old in &self.graph.edges()[..n.saturating_sub(1)] {
            g.add_weighted_edge(old.u, old.v, old.weight)?;
        }
        self.graph = g;
        Ok(())
    }

    fn check_vertices(&self) -> Result<()> {
        let mut sorted: Vec<(&[i64; 3], usize)> = self
            .scaled
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidEmbedding(format!(
                    "vertices v{} and v{} share a position",
                    w[0].1, w[1].1
                )));
            }
        }
        Ok(())
    }

    /// Checks edge `e` against edges with ids below `upto`.
    fn check_edge_against(&self, e: EdgeId, upto: usize) -> Result<()> {
        let edge = self.graph.edge(e);
        if edge.u == edge.v {
            return Err(Error::InvalidEmbedding(format!(
                "loop {e} cannot be a straight segment"
            )));
        }
        let p1 = self.scaled_p3(edge.u);
        let p2 = self.scaled_p3(edge.v);
        for f in (0..upto).map(EdgeId) {
            let other = self.graph.edge(f);
            let q1 = self.scaled_p3(other.u);
            let q2 = self.scaled_p3(other.v);
            let shared: Vec<VertexId> = [edge.u, edge.v]
                .into_iter()
                .filter(|&x| other.touches(x))
                .collect();
            let bad = match shared.len() {
                0 => segments_meet_3d(p1, p2, q1, q2),
                1 => {
                    // meeting at the shared endpoint is fine; collinear overlap is not
                    let s = self.scaled_p3(shared[0]);
                    let a = self.scaled_p3(edge.other(shared[0]));
                    let b = self.scaled_p3(other.other(shared[0]));
                    let da = super::exact::sub3(a, s);
                    let db = super::exact::sub3(b, s);
                    super::exact::cross3(da, db).iter().all(|&c| c == 0)
                        && super::exact::dot3(da, db) > 0
                }
                _ => true,
            };
            if bad {
                return Err(Error::InvalidEmbedding(format!(
                    "edges {e} and {f} intersect away from shared endpoints"
                )));
            }
        }
        Ok(())
    }
}

fn scale_to_integers(coords: &[Point3]) -> Result<Vec<[i64; 3]>> {
    let mut lcm = BigInt::one();
    for c in coords.iter().flatten() {
        lcm = lcm.lcm(c.denom());
    }
    coords
        .iter()
        .map(|c| {
            let mut out = [0i64; 3];
            for (o, x) in out.iter_mut().zip(c) {
                let v = x.numer() * (&lcm / x.denom());
                *o = v
                    .to_i64()
                    .filter(|v| v.abs() <= COORD_LIMIT)
                    .ok_or_else(|| {
                        Error::CoordinateRange(format!(
                            "scaled coordinate {v} exceeds {COORD_LIMIT}"
                        ))
                    })?;
            }
            Ok(out)
        })
        .collect()
}

/// A projection direction, stored as a primitive integer vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectionDirection {
    dir: [i64; 3],
}

impl ProjectionDirection {
    pub fn new(x: i64, y: i64, z: i64) -> Result<Self> {
        if x == 0 && y == 0 && z == 0 {
            return Err(Error::InvalidEmbedding("zero projection direction".into()));
        }
        let g = x.gcd(&y).gcd(&z);
        let dir = [x / g, y / g, z / g];
        if dir.iter().any(|c| c.abs() > DIRECTION_LIMIT) {
            return Err(Error::CoordinateRange(format!(
                "direction component exceeds {DIRECTION_LIMIT}"
            )));
        }
        Ok(Self { dir })
    }

    pub fn from_rationals(d: &Point3) -> Result<Self> {
        let lcm = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints = [0i64; 3];
        for (o, x) in ints.iter_mut().zip(d) {
            *o = (x.numer() * (&lcm / x.denom()))
                .to_i64()
                .ok_or_else(|| Error::CoordinateRange("direction too large".into()))?;
        }
        Self::new(ints[0], ints[1], ints[2])
    }

    pub fn vector(&self) -> [i64; 3] {
        self.dir
    }

    /// Samples a nonzero direction with components in [-16, 16].
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let c: [i64; 3] = [
                rng.random_range(-16..=16),
                rng.random_range(-16..=16),
                rng.random_range(-16..=16),
            ];
            if let Ok(d) = Self::new(c[0], c[1], c[2]) {
                return d;
            }
        }
    }

    /// The mirror image under z -> -z.
    pub fn mirrored(&self) -> Self {
        Self {
            dir: [self.dir[0], self.dir[1], -self.dir[2]],
        }
    }

    /// Integer frame (u, v) with u x v a positive multiple of the direction.
    pub(crate) fn frame(&self) -> (P3, P3) {
        let d = [
            self.dir[0] as i128,
            self.dir[1] as i128,
            self.dir[2] as i128,
        ];
        let axis = (0..3).min_by_key(|&i| d[i].abs()).unwrap();
        let mut e = [0i128; 3];
        e[axis] = 1;
        let u = super::exact::cross3(d, e);
        let v = super::exact::cross3(d, u);
        (u, v)
    }
}

/// Samples integer coordinates uniformly from `[0, 2^coordinate_bits)` until
/// the embedding is valid. Deterministic in `(graph, seed, coordinate_bits)`.
pub fn random_embedding(
    graph: &AbstractGraph,
    seed: u64,
    coordinate_bits: u32,
) -> Result<PLEmbedding> {
    if !(4..=30).contains(&coordinate_bits) {
        return Err(Error::InvalidEmbedding(format!(
            "coordinate_bits must lie in 4..=30, got {coordinate_bits}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = 1i64 << coordinate_bits;
    for _ in 0..RESAMPLE_BUDGET {
        let coords: Vec<[i64; 3]> = (0..graph.vertex_count())
            .map(|_| {
                [
                    rng.random_range(0..hi),
                    rng.random_range(0..hi),
                    rng.random_range(0..hi),
                ]
            })
            .collect();
        if let Ok(emb) = PLEmbedding::from_integer_coords(graph.clone(), &coords) {
            return Ok(emb);
        }
    }
    Err(Error::RetryExhausted {
        attempts: RESAMPLE_BUDGET,
    })
}

/// Reflection z -> -z.
pub fn mirror_embedding(emb: &PLEmbedding) -> PLEmbedding {
    let coords: Vec<Point3> = emb
        .coords
        .iter()
        .map(|c| [c[0].clone(), c[1].clone(), -c[2].clone()])
        .collect();
    let scaled = emb.scaled.iter().map(|c| [c[0], c[1], -c[2]]).collect();
    PLEmbedding {
        graph: emb.graph.clone(),
        coords,
        scaled,
    }
}

/// Translates an embedding by an integer offset.
pub fn translate(emb: &PLEmbedding, offset: [i64; 3]) -> Result<PLEmbedding> {
    let coords: Vec<Point3> = emb
        .coords
        .iter()
        .map(|c| {
            let mut out = c.clone();
            for (x, o) in out.iter_mut().zip(offset) {
                *x += BigRational::from_integer(o.into());
            }
            out
        })
        .collect();
    PLEmbedding::new(emb.graph.clone(), coords)
}

/// Places several embeddings side by side in one embedding; returns vertex and
/// edge offsets of each part.
pub fn disjoint_union(parts: &[PLEmbedding]) -> Result<(PLEmbedding, Vec<(usize, usize)>)> {
    let mut graph = AbstractGraph::new(0);
    let mut coords = Vec::new();
    let mut offsets = Vec::new();
    for p in parts {
        offsets.push(graph.append(&p.graph));
        coords.extend(p.coords.iter().cloned());
    }
    Ok((PLEmbedding::new(graph, coords)?, offsets))
}

pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(n, d);
    debug_assert!(!r.denom().is_negative());
    Ok(r)
}
