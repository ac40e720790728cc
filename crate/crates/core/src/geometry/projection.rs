use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashSet;

use super::embedding::{PLEmbedding, ProjectionDirection};
use super::exact::{bboxes_overlap, cross2, dot2, orient2d, ratio, sub2, within_bbox, P2};
use super::graph::{EdgeId, VertexId};
use crate::error::{Error, PositionFailure, Result};

/// A transverse double point between the projections of two edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCrossing {
    pub e: EdgeId,
    pub f: EdgeId,
    /// Parameter along `e` in its stored direction, strictly inside (0, 1).
    pub t_e: BigRational,
    pub t_f: BigRational,
    pub e_over: bool,
    /// Sign with both strands traversed in stored edge direction.
    pub handedness: i8,
    pub point: (BigRational, BigRational),
}

/// Incrementally built planar arrangement of projected edges. Every edge
/// added is checked against all vertices and previously added edges.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dir: ProjectionDirection,
    pts: Vec<P2>,
    heights: Vec<i128>,
    edges: Vec<EdgeId>,
    points: HashSet<(BigRational, BigRational)>,
}

fn violation(class: PositionFailure, edges: &[EdgeId]) -> Error {
    Error::GenericPositionViolation {
        class,
        edges: edges.iter().map(|e| e.0).collect(),
    }
}

impl Arrangement {
    /// Projects vertex positions only; edges are added with [`Arrangement::add_edge`].
    pub fn new(emb: &PLEmbedding, dir: ProjectionDirection) -> Result<Self> {
        let (u, v) = dir.frame();
        let d = dir.vector().map(|c| c as i128);
        let mut pts = Vec::with_capacity(emb.graph().vertex_count());
        let mut heights = Vec::with_capacity(pts.capacity());
        for x in emb.graph().vertices() {
            let p = emb.scaled_p3(x);
            pts.push([
                p[0] * u[0] + p[1] * u[1] + p[2] * u[2],
                p[0] * v[0] + p[1] * v[1] + p[2] * v[2],
            ]);
            heights.push(p[0] * d[0] + p[1] * d[1] + p[2] * d[2]);
        }
        let mut sorted: Vec<P2> = pts.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(violation(PositionFailure::CoincidentVertices, &[]));
        }
        Ok(Self {
            dir,
            pts,
            heights,
            edges: Vec::new(),
            points: HashSet::new(),
        })
    }

    /// Projects and checks every edge of the embedding.
    pub fn build(emb: &PLEmbedding, dir: ProjectionDirection) -> Result<(Self, Vec<RawCrossing>)> {
        let mut arr = Self::new(emb, dir)?;
        let mut all = Vec::new();
        for e in emb.graph().edge_ids() {
            all.extend(arr.add_edge(emb, e)?);
        }
        Ok((arr, all))
    }

    pub fn direction(&self) -> ProjectionDirection {
        self.dir
    }

    pub fn point(&self, v: VertexId) -> P2 {
        self.pts[v.0]
    }

    /// Adds one edge, returning its crossings with previously added edges.
    /// On error the arrangement is left unchanged.
    pub fn add_edge(&mut self, emb: &PLEmbedding, e: EdgeId) -> Result<Vec<RawCrossing>> {
        let g = emb.graph();
        let edge = g.edge(e);
        let (p1, p2) = (self.pts[edge.u.0], self.pts[edge.v.0]);
        for w in g.vertices() {
            if edge.touches(w) {
                continue;
            }
            let q = self.pts[w.0];
            if orient2d(p1, p2, q) == 0 && within_bbox(p1, p2, q) {
                return Err(violation(PositionFailure::ThroughVertex, &[e]));
            }
        }
        let mut found = Vec::new();
        let mut new_points = HashSet::new();
        for &f in &self.edges {
            let other = g.edge(f);
            let (q1, q2) = (self.pts[other.u.0], self.pts[other.v.0]);
            let shared: Vec<VertexId> = [edge.u, edge.v]
                .into_iter()
                .filter(|&x| other.touches(x))
                .collect();
            if !shared.is_empty() {
                if shared.len() == 2 {
                    return Err(violation(PositionFailure::Overlap, &[e, f]));
                }
                let s = self.pts[shared[0].0];
                let a = sub2(self.pts[edge.other(shared[0]).0], s);
                let b = sub2(self.pts[other.other(shared[0]).0], s);
                if cross2(a, b) == 0 && dot2(a, b) > 0 {
                    return Err(violation(PositionFailure::Overlap, &[e, f]));
                }
                continue;
            }
            if !bboxes_overlap(p1, p2, q1, q2) {
                continue;
            }
            let o1 = orient2d(p1, p2, q1).signum();
            let o2 = orient2d(p1, p2, q2).signum();
            let o3 = orient2d(q1, q2, p1).signum();
            let o4 = orient2d(q1, q2, p2).signum();
            if o1 == 0 && o2 == 0 {
                // collinear; endpoints inside were rejected above, so only
                // disjoint or containing configurations remain
                if within_bbox(q1, q2, p1) || within_bbox(p1, p2, q1) {
                    return Err(violation(PositionFailure::Overlap, &[e, f]));
                }
                continue;
            }
            if o1 * o2 >= 0 || o3 * o4 >= 0 {
                continue;
            }
            let c = self.crossing(emb, e, f)?;
            if self.points.contains(&c.point) || !new_points.insert(c.point.clone()) {
                return Err(violation(PositionFailure::TriplePoint, &[e, f]));
            }
            found.push(c);
        }
        self.points.extend(new_points);
        self.edges.push(e);
        Ok(found)
    }

    fn crossing(&self, emb: &PLEmbedding, e: EdgeId, f: EdgeId) -> Result<RawCrossing> {
        let g = emb.graph();
        let (a, b) = (g.edge(e), g.edge(f));
        let (p1, p2, q1, q2) = (
            self.pts[a.u.0],
            self.pts[a.v.0],
            self.pts[b.u.0],
            self.pts[b.v.0],
        );
        let r = sub2(p2, p1);
        let w = sub2(q2, q1);
        let den = cross2(r, w);
        let qp = sub2(q1, p1);
        let sn = cross2(qp, w);
        let tn = cross2(qp, r);
        let t_e = ratio(sn, den);
        let t_f = ratio(tn, den);
        let big = |x: i128| BigInt::from(x);
        let (he1, he2) = (self.heights[a.u.0], self.heights[a.v.0]);
        let (hf1, hf2) = (self.heights[b.u.0], self.heights[b.v.0]);
        // heights scaled by den (sign of den cancels on both sides)
        let he = big(he1) * big(den) + big(sn) * big(he2 - he1);
        let hf = big(hf1) * big(den) + big(tn) * big(hf2 - hf1);
        let e_over = match he.cmp(&hf) {
            std::cmp::Ordering::Equal => {
                return Err(Error::InvalidEmbedding(format!(
                    "edges {e} and {f} intersect in space"
                )))
            }
            ord => (ord == std::cmp::Ordering::Greater) == (den > 0),
        };
        let s = den.signum() as i8;
        let handedness = if e_over { s } else { -s };
        let x = BigRational::from_integer(big(p1[0])) + &t_e * BigRational::from_integer(big(r[0]));
        let y = BigRational::from_integer(big(p1[1])) + &t_e * BigRational::from_integer(big(r[1]));
        Ok(RawCrossing {
            e,
            f,
            t_e,
            t_f,
            e_over,
            handedness,
            point: (x, y),
        })
    }
}

/// Exact general-position check of a projection.
pub fn validate_general_position(emb: &PLEmbedding, dir: ProjectionDirection) -> Result<()> {
    Arrangement::build(emb, dir).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::graph::AbstractGraph;

    fn tetra() -> PLEmbedding {
        PLEmbedding::from_integer_coords(
            AbstractGraph::complete(4),
            &[[0, 0, 0], [8, 0, 1], [0, 8, 2], [3, 3, 9]],
        )
        .unwrap()
    }

    #[test]
    fn tetrahedron_is_generic_from_above() {
        let emb = tetra();
        let dir = ProjectionDirection::new(0, 0, 1).unwrap();
        let (_, crossings) = Arrangement::build(&emb, dir).unwrap();
        assert!(crossings.is_empty());
    }

    #[test]
    fn overlapping_projections_rejected() {
        let mut g = AbstractGraph::new(4);
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g.add_edge(VertexId(2), VertexId(3)).unwrap();
        let emb =
            PLEmbedding::from_integer_coords(g, &[[0, 0, 0], [4, 0, 0], [1, 0, 5], [6, 0, 5]])
                .unwrap();
        let err = validate_general_position(&emb, ProjectionDirection::new(0, 0, 1).unwrap());
        assert!(matches!(
            err,
            Err(Error::GenericPositionViolation {
                class: PositionFailure::ThroughVertex | PositionFailure::Overlap,
                ..
            })
        ));
        // a tilted view separates them
        assert!(
            validate_general_position(&emb, ProjectionDirection::new(0, 1, 1).unwrap()).is_ok()
        );
    }

    #[test]
    fn segment_through_vertex_rejected() {
        let mut g = AbstractGraph::new(3);
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        let emb = PLEmbedding::from_integer_coords(g, &[[0, 0, 0], [4, 4, 0], [2, 2, 7]]).unwrap();
        let err = validate_general_position(&emb, ProjectionDirection::new(0, 0, 1).unwrap());
        assert!(matches!(
            err,
            Err(Error::GenericPositionViolation {
                class: PositionFailure::ThroughVertex,
                ..
            })
        ));
    }

    #[test]
    fn triple_point_rejected() {
        let mut g = AbstractGraph::new(6);
        for i in 0..3 {
            g.add_edge(VertexId(2 * i), VertexId(2 * i + 1)).unwrap();
        }
        let emb = PLEmbedding::from_integer_coords(
            g,
            &[
                [-2, 0, 0],
                [2, 0, 0],
                [0, -2, 1],
                [0, 2, 1],
                [-2, -2, 2],
                [2, 2, 2],
            ],
        )
        .unwrap();
        let err = validate_general_position(&emb, ProjectionDirection::new(0, 0, 1).unwrap());
        assert!(matches!(
            err,
            Err(Error::GenericPositionViolation {
                class: PositionFailure::TriplePoint,
                ..
            })
        ));
    }

    #[test]
    fn crossing_over_and_sign() {
        // e along +x at height 0, f along +y at height 1 above it
        let mut g = AbstractGraph::new(4);
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g.add_edge(VertexId(2), VertexId(3)).unwrap();
        let emb =
            PLEmbedding::from_integer_coords(g, &[[-2, 0, 0], [2, 0, 0], [0, -2, 1], [0, 2, 1]])
                .unwrap();
        let dir = ProjectionDirection::new(0, 0, 1).unwrap();
        let (_, c) = Arrangement::build(&emb, dir).unwrap();
        assert_eq!(c.len(), 1);
        // f is added second and is the crossing's first edge
        assert_eq!(c[0].e, EdgeId(1));
        assert!(c[0].e_over);
        // over = +y, under = +x: under is over rotated by -90 degrees
        assert_eq!(c[0].handedness, -1);
        assert_eq!(c[0].t_e, ratio(1, 2));
        assert!(validate_general_position(&emb, dir).is_ok());
    }
}
