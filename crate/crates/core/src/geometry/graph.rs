use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Option<u64>,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Finite pseudograph with dense vertex and edge ids. Parallel edges and
/// loops are allowed; each edge is identified by its id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbstractGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl AbstractGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    /// The complete graph on `n` vertices, edges in lexicographic order.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(VertexId(i), VertexId(j))
                    .expect("vertices are in range");
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_count += 1;
        self.adjacency.push(Vec::new());
        VertexId(self.vertex_count - 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.add_weighted_edge(u, v, None)
    }

    pub fn add_weighted_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        weight: Option<u64>,
    ) -> Result<EdgeId> {
        if u.0 >= self.vertex_count || v.0 >= self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "edge {u}-{v} references an undeclared vertex"
            )));
        }
        if weight == Some(0) {
            return Err(Error::InvalidGraph("edge weights must be positive".into()));
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { u, v, weight });
        self.adjacency[u.0].push(id);
        if u != v {
            self.adjacency[v.0].push(id);
        }
        Ok(id)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v.0]
    }

    /// First edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = if self.adjacency[u.0].len() <= self.adjacency[v.0].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a.0]
            .iter()
            .copied()
            .find(|&e| self.edges[e.0].other(a) == b)
    }

    /// True when the two edges have no endpoint in common.
    pub fn edges_disjoint(&self, e: EdgeId, f: EdgeId) -> bool {
        let a = &self.edges[e.0];
        let b = &self.edges[f.0];
        !(b.touches(a.u) || b.touches(a.v))
    }

    pub fn set_weights(&mut self, weights: &[u64]) -> Result<()> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidGraph(format!(
                "{} weights for {} edges",
                weights.len(),
                self.edges.len()
            )));
        }
        for (e, &w) in self.edges.iter_mut().zip(weights) {
            if w == 0 {
                return Err(Error::InvalidGraph("edge weights must be positive".into()));
            }
            e.weight = Some(w);
        }
        Ok(())
    }

    /// Weights as a vector, if every edge carries one and they are pairwise distinct.
    pub fn unique_weights(&self) -> Option<Vec<u64>> {
        let w: Option<Vec<u64>> = self.edges.iter().map(|e| e.weight).collect();
        let w = w?;
        let mut sorted = w.clone();
        sorted.sort_unstable();
        sorted.dedup();
        (sorted.len() == w.len()).then_some(w)
    }

    /// Checks that present weights are pairwise distinct.
    pub fn validate(&self) -> Result<()> {
        let mut seen: Vec<u64> = self.edges.iter().filter_map(|e| e.weight).collect();
        let n = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != n {
            return Err(Error::NonuniqueWeights);
        }
        Ok(())
    }

    /// Appends a copy of `other`, returning the vertex and edge id offsets.
    pub fn append(&mut self, other: &AbstractGraph) -> (usize, usize) {
        let voff = self.vertex_count;
        let eoff = self.edges.len();
        for _ in 0..other.vertex_count {
            self.add_vertex();
        }
        for e in &other.edges {
            self.add_weighted_edge(VertexId(e.u.0 + voff), VertexId(e.v.0 + voff), e.weight)
                .expect("appended vertices exist");
        }
        (voff, eoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let g = AbstractGraph::complete(6);
        assert_eq!(g.edge_count(), 15);
        assert!(g.edge_between(VertexId(2), VertexId(5)).is_some());
        assert!(g.edges_disjoint(EdgeId(0), g.edge_between(VertexId(2), VertexId(3)).unwrap()));
    }

    #[test]
    fn rejects_undeclared_vertex() {
        let mut g = AbstractGraph::new(2);
        assert!(g.add_edge(VertexId(0), VertexId(2)).is_err());
    }

    #[test]
    fn duplicate_weights_flagged() {
        let mut g = AbstractGraph::complete(3);
        g.set_weights(&[1, 2, 2]).unwrap();
        assert_eq!(g.validate(), Err(Error::NonuniqueWeights));
        assert!(g.unique_weights().is_none());
        g.set_weights(&[3, 1, 2]).unwrap();
        assert_eq!(g.unique_weights(), Some(vec![3, 1, 2]));
    }
}
