use serde::{Deserialize, Serialize};

use super::oriented::{OrientedCycle, Step};
use crate::error::{Error, Result};
use crate::geometry::{AbstractGraph, EdgeId, VertexId};

/// Direction in which each path `q_i` runs relative to its cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Traversal {
    With,
    Against,
}

/// Recipe for a cycle that visits `cycles` in order: on cycle `i` it runs
/// from `ends[i].0` to `ends[i].1`, then takes `connectors[i]` to the
/// start of the next cycle.
#[derive(Clone, Debug)]
pub struct ConnectingCycleSpec {
    pub cycles: Vec<OrientedCycle>,
    pub ends: Vec<(VertexId, VertexId)>,
    /// Empty means "look up the first edge between the endpoints".
    pub connectors: Vec<EdgeId>,
    pub traversal: Traversal,
}

impl ConnectingCycleSpec {
    /// Uses the endpoints of each cycle's least edge so that every path is
    /// that single edge.
    pub fn with_default_ends(
        g: &AbstractGraph,
        cycles: Vec<OrientedCycle>,
        traversal: Traversal,
    ) -> Self {
        let ends = cycles
            .iter()
            .map(|c| default_ends(g, c, traversal))
            .collect();
        Self {
            cycles,
            ends,
            connectors: Vec::new(),
            traversal,
        }
    }

    /// Vertex pairs `(w_i, u_{i+1})` the connectors must join.
    pub fn connector_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.ends.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| (self.ends[i].1, self.ends[(i + 1) % n].0))
            .collect()
    }
}

/// `(u, w)` on the cycle's least edge, ordered so the path from `u` to `w`
/// under `traversal` is that edge.
pub fn default_ends(
    g: &AbstractGraph,
    c: &OrientedCycle,
    traversal: Traversal,
) -> (VertexId, VertexId) {
    let s: Step = *c
        .steps()
        .iter()
        .min_by_key(|s| s.edge)
        .expect("cycles are nonempty");
    match traversal {
        Traversal::With => (s.tail(g), s.head(g)),
        Traversal::Against => (s.head(g), s.tail(g)),
    }
}

pub fn build_connecting_cycle(
    g: &AbstractGraph,
    spec: &ConnectingCycleSpec,
) -> Result<OrientedCycle> {
    let n = spec.cycles.len();
    if n == 0 {
        return Err(Error::SpecBroken("no cycles".into()));
    }
    if spec.ends.len() != n {
        return Err(Error::SpecBroken(format!(
            "{} endpoint pairs for {n} cycles",
            spec.ends.len()
        )));
    }
    let with = spec.traversal == Traversal::With;
    if n == 1 {
        return Ok(if with {
            spec.cycles[0].clone()
        } else {
            spec.cycles[0].reversed()
        });
    }
    let pairs = spec.connector_pairs();
    let connectors: Vec<EdgeId> = if spec.connectors.is_empty() {
        pairs
            .iter()
            .map(|&(a, b)| {
                g.edge_between(a, b)
                    .ok_or_else(|| Error::SpecBroken(format!("no connector edge {a}-{b}")))
            })
            .collect::<Result<_>>()?
    } else {
        spec.connectors.clone()
    };
    if connectors.len() != n {
        return Err(Error::SpecBroken(format!(
            "{} connectors for {n} cycles",
            connectors.len()
        )));
    }
    let mut steps = Vec::new();
    for i in 0..n {
        let (u, w) = spec.ends[i];
        steps.extend(spec.cycles[i].path(g, u, w, with)?);
        let (a, b) = pairs[i];
        let e = g.edge(connectors[i]);
        if !(e.u == a && e.v == b || e.u == b && e.v == a) {
            return Err(Error::SpecBroken(format!(
                "connector {} does not join {a} and {b}",
                connectors[i]
            )));
        }
        steps.push(Step::new(connectors[i], e.u == a));
    }
    OrientedCycle::new(g, steps).map_err(|e| Error::SpecBroken(e.to_string()))
}
