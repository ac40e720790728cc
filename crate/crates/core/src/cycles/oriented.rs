use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::geometry::{AbstractGraph, EdgeId, VertexId};

/// One traversal of an edge; `forward` means from `u` to `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Step {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Self { edge, forward }
    }

    pub fn tail(&self, g: &AbstractGraph) -> VertexId {
        let e = g.edge(self.edge);
        if self.forward {
            e.u
        } else {
            e.v
        }
    }

    pub fn head(&self, g: &AbstractGraph) -> VertexId {
        let e = g.edge(self.edge);
        if self.forward {
            e.v
        } else {
            e.u
        }
    }

    pub fn reversed(self) -> Self {
        Self::new(self.edge, !self.forward)
    }

    pub fn sign(&self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }
}

impl Serialize for Step {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.edge.0)?;
        t.serialize_element(if self.forward { "+" } else { "-" })?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Step {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (edge, dir): (usize, String) = Deserialize::deserialize(d)?;
        let forward = match dir.as_str() {
            "+" => true,
            "-" => false,
            other => return Err(de::Error::custom(format!("bad direction {other:?}"))),
        };
        Ok(Step::new(EdgeId(edge), forward))
    }
}

/// A simple closed oriented edge walk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCycle {
    steps: Vec<Step>,
    vertices: Vec<VertexId>,
}

impl OrientedCycle {
    pub fn new(g: &AbstractGraph, steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::NotAKnot("empty walk".into()));
        }
        for s in &steps {
            if s.edge.0 >= g.edge_count() {
                return Err(Error::InvalidGraph(format!("unknown edge {}", s.edge)));
            }
        }
        let vertices: Vec<VertexId> = steps.iter().map(|s| s.tail(g)).collect();
        for i in 0..steps.len() {
            let next = &steps[(i + 1) % steps.len()];
            if steps[i].head(g) != next.tail(g) {
                return Err(Error::NotAKnot(format!(
                    "step {} does not continue step {}",
                    (i + 1) % steps.len(),
                    i
                )));
            }
        }
        let distinct: HashSet<VertexId> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::NotAKnot("walk revisits a vertex".into()));
        }
        let edges: HashSet<EdgeId> = steps.iter().map(|s| s.edge).collect();
        if edges.len() != steps.len() {
            return Err(Error::NotAKnot("walk repeats an edge".into()));
        }
        Ok(Self { steps, vertices })
    }

    /// Cycle through the given vertices in order, using the first edge
    /// between each consecutive pair.
    pub fn from_vertices(g: &AbstractGraph, vs: &[VertexId]) -> Result<Self> {
        let mut steps = Vec::with_capacity(vs.len());
        for i in 0..vs.len() {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            let e = g
                .edge_between(a, b)
                .ok_or_else(|| Error::NotAKnot(format!("no edge {a}-{b}")))?;
            steps.push(Step::new(e, g.edge(e).u == a));
        }
        Self::new(g, steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges().collect()
    }

    /// +1 / -1 if the cycle uses `e` forward / backward.
    pub fn direction_of(&self, e: EdgeId) -> Option<i64> {
        self.steps.iter().find(|s| s.edge == e).map(Step::sign)
    }

    /// Map from edge to traversal sign.
    pub fn direction_map(&self) -> HashMap<EdgeId, i64> {
        self.steps.iter().map(|s| (s.edge, s.sign())).collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn reversed(&self) -> Self {
        let steps: Vec<Step> = self.steps.iter().rev().map(|s| s.reversed()).collect();
        let n = self.vertices.len();
        // tail of reversed step i is the head of original step n-1-i
        let vertices = (0..n).map(|i| self.vertices[(n - i) % n]).collect();
        Self { steps, vertices }
    }

    pub fn is_disjoint(&self, other: &OrientedCycle) -> bool {
        let mine: HashSet<VertexId> = self.vertices.iter().copied().collect();
        !other.vertices.iter().any(|v| mine.contains(v))
    }

    /// Same cycle as a set of oriented steps, up to rotation.
    pub fn same_oriented(&self, other: &OrientedCycle) -> bool {
        let a: BTreeSet<Step> = self.steps.iter().copied().collect();
        let b: BTreeSet<Step> = other.steps.iter().copied().collect();
        a == b
    }

    /// Steps as a path following the cycle from vertex `from` to vertex `to`,
    /// either along (`with = true`) or against the orientation.
    pub fn path(
        &self,
        g: &AbstractGraph,
        from: VertexId,
        to: VertexId,
        with: bool,
    ) -> Result<Vec<Step>> {
        let oriented = if with { self.clone() } else { self.reversed() };
        let n = oriented.len();
        let start = oriented
            .vertices
            .iter()
            .position(|&v| v == from)
            .ok_or_else(|| Error::SpecBroken(format!("{from} is not on the cycle")))?;
        if !oriented.contains_vertex(to) {
            return Err(Error::SpecBroken(format!("{to} is not on the cycle")));
        }
        let mut out = Vec::new();
        let mut i = start;
        while oriented.vertices[i] != to {
            out.push(oriented.steps[i]);
            i = (i + 1) % n;
        }
        debug_assert!(out.last().is_none_or(|s| s.head(g) == to));
        Ok(out)
    }
}

impl Serialize for OrientedCycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

/// Unvalidated cycle as read from a file; resolve against a graph with
/// [`OrientedCycle::new`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(transparent)]
pub struct CycleSteps(pub Vec<Step>);

impl CycleSteps {
    pub fn resolve(self, g: &AbstractGraph) -> Result<OrientedCycle> {
        OrientedCycle::new(g, self.0)
    }
}

/// Closure of the symmetric difference of two cycles. Edges kept from `a`
/// keep their direction; the shared part must be traversed oppositely.
pub fn symmetric_difference(
    g: &AbstractGraph,
    a: &OrientedCycle,
    b: &OrientedCycle,
) -> Result<OrientedCycle> {
    let da = a.direction_map();
    let db = b.direction_map();
    let mut shared = 0;
    for (e, s) in &da {
        if let Some(t) = db.get(e) {
            if s == t {
                return Err(Error::InconsistentOrientation(format!(
                    "edge {e} is traversed the same way by both cycles"
                )));
            }
            shared += 1;
        }
    }
    if shared == 0 {
        return Err(Error::NotASingleCycle("cycles share no edge".into()));
    }
    let kept: Vec<Step> = a
        .steps
        .iter()
        .filter(|s| !db.contains_key(&s.edge))
        .chain(b.steps.iter().filter(|s| !da.contains_key(&s.edge)))
        .copied()
        .collect();
    if kept.is_empty() {
        return Err(Error::NotASingleCycle("difference is empty".into()));
    }
    let mut by_tail: HashMap<VertexId, Step> = HashMap::with_capacity(kept.len());
    for s in &kept {
        if by_tail.insert(s.tail(g), *s).is_some() {
            return Err(Error::NotASingleCycle(format!(
                "vertex {} has two outgoing steps",
                s.tail(g)
            )));
        }
    }
    let mut steps = Vec::with_capacity(kept.len());
    let mut cur = kept[0];
    loop {
        steps.push(cur);
        match by_tail.get(&cur.head(g)) {
            Some(&next) if next == kept[0] => break,
            Some(&next) => {
                if steps.len() > kept.len() {
                    return Err(Error::NotASingleCycle("walk does not close".into()));
                }
                cur = next;
            }
            None => return Err(Error::NotASingleCycle("walk does not close".into())),
        }
    }
    if steps.len() != kept.len() {
        return Err(Error::NotASingleCycle(format!(
            "difference splits ({} of {} edges in the first component)",
            steps.len(),
            kept.len()
        )));
    }
    OrientedCycle::new(g, steps).map_err(|e| Error::NotASingleCycle(e.to_string()))
}

/// Iterated symmetric difference `base △ parts[0] △ parts[1] △ …`.
pub fn symmetric_difference_all<'a>(
    g: &AbstractGraph,
    base: &OrientedCycle,
    parts: impl IntoIterator<Item = &'a OrientedCycle>,
) -> Result<OrientedCycle> {
    let mut acc = base.clone();
    for p in parts {
        acc = symmetric_difference(g, &acc, p)?;
    }
    Ok(acc)
}
