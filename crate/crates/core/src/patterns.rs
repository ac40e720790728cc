//! Linking patterns of links and subgraph containment queries on them.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::constructions::LinkingProvider;
use crate::cycles::OrientedCycle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::{conway_a2, linking_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternMode {
    /// Edges where `lk ≠ 0`, weighted by `|lk|`.
    Integer,
    /// Edges where `lk` is odd, all of weight 1.
    Mod2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEdge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

/// The graph on link components with an edge wherever the components link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    mode: PatternMode,
    n: usize,
    edges: BTreeMap<(usize, usize), u64>,
    vertex_weights: Option<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    mode: PatternMode,
    vertices: usize,
    edges: Vec<PatternEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_weights: Option<Vec<u64>>,
}

impl Serialize for PatternGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PatternJson {
            mode: self.mode,
            vertices: self.n,
            edges: self.edges(),
            vertex_weights: self.vertex_weights.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PatternGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PatternJson::deserialize(d)?;
        let mut p = PatternGraph::empty(j.mode, j.vertices);
        for e in j.edges {
            p.set_edge(e.u, e.v, e.weight)
                .map_err(serde::de::Error::custom)?;
        }
        if let Some(w) = j.vertex_weights {
            p.set_vertex_weights(w).map_err(serde::de::Error::custom)?;
        }
        Ok(p)
    }
}

impl PatternGraph {
    pub fn empty(mode: PatternMode, n: usize) -> Self {
        Self {
            mode,
            n,
            edges: BTreeMap::new(),
            vertex_weights: None,
        }
    }

    /// Pattern of a symmetric matrix of linking numbers.
    pub fn from_linking(lk: &[Vec<i64>], mode: PatternMode) -> Result<Self> {
        let n = lk.len();
        let mut p = Self::empty(mode, n);
        for i in 0..n {
            if lk[i].len() != n {
                return Err(Error::BadShape(format!(
                    "row {i} has {} entries, expected {n}",
                    lk[i].len()
                )));
            }
            for j in i + 1..n {
                if lk[i][j] != lk[j][i] {
                    return Err(Error::BadShape(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
                let w = match mode {
                    PatternMode::Integer => lk[i][j].unsigned_abs(),
                    PatternMode::Mod2 => lk[i][j].rem_euclid(2) as u64,
                };
                if w > 0 {
                    p.edges.insert((i, j), w);
                }
            }
        }
        Ok(p)
    }

    /// Adds or replaces an edge; weight 0 removes it.
    pub fn set_edge(&mut self, u: usize, v: usize, weight: u64) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::BadShape(format!(
                "edge ({u}, {v}) invalid for {} vertices",
                self.n
            )));
        }
        if self.mode == PatternMode::Mod2 && weight > 1 {
            return Err(Error::BadShape(format!(
                "mod-2 edge ({u}, {v}) has weight {weight}"
            )));
        }
        let k = (u.min(v), u.max(v));
        if weight == 0 {
            self.edges.remove(&k);
        } else {
            self.edges.insert(k, weight);
        }
        Ok(())
    }

    pub fn set_vertex_weights(&mut self, w: Vec<u64>) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::BadShape(format!(
                "{} vertex weights for {} vertices",
                w.len(),
                self.n
            )));
        }
        self.vertex_weights = Some(w);
        Ok(())
    }

    pub fn mode(&self) -> PatternMode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn vertex_weights(&self) -> Option<&[u64]> {
        self.vertex_weights.as_deref()
    }

    pub fn edges(&self) -> Vec<PatternEdge> {
        self.edges
            .iter()
            .map(|(&(u, v), &weight)| PatternEdge { u, v, weight })
            .collect()
    }

    /// The same pattern reduced mod 2.
    pub fn to_mod2(&self) -> Self {
        let mut p = Self::empty(PatternMode::Mod2, self.n);
        for (&k, &w) in &self.edges {
            if w % 2 == 1 {
                p.edges.insert(k, 1);
            }
        }
        p.vertex_weights = self.vertex_weights.clone();
        p
    }

    /// Graphviz rendering; edges carry their weight, vertices their a₂
    /// weight when known.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph pattern {\n");
        for v in 0..self.n {
            match &self.vertex_weights {
                Some(w) => writeln!(s, "  v{v} [label=\"{v} ({})\"];", w[v]),
                None => writeln!(s, "  v{v} [label=\"{v}\"];"),
            }
            .expect("writing to a string");
        }
        for (&(u, v), &w) in &self.edges {
            writeln!(s, "  v{u} -- v{v} [label=\"{w}\"];").expect("writing to a string");
        }
        s.push_str("}\n");
        s
    }

    fn vertex_ok(&self, v: usize, min: u64) -> bool {
        self.vertex_weights.as_ref().is_none_or(|w| w[v] >= min)
    }
}

/// Pattern of `link` read off `d`; vertex weights `|a₂|` only on request.
pub fn extract_pattern(
    d: &Diagram,
    link: &[OrientedCycle],
    mode: PatternMode,
    with_vertex_weights: bool,
) -> Result<PatternGraph> {
    let m = linking_matrix(d, link)?;
    let mut p = PatternGraph::from_linking(&m.entries, mode)?;
    if with_vertex_weights {
        let w = link
            .iter()
            .map(|k| conway_a2(d, k).map(|a| a.unsigned_abs()))
            .collect::<Result<_>>()?;
        p.set_vertex_weights(w)?;
    }
    Ok(p)
}

/// Pattern of `link` under any linking provider. Vertex weights are not
/// tracked.
pub fn provider_pattern(
    p: &LinkingProvider,
    link: &[OrientedCycle],
    mode: PatternMode,
) -> Result<PatternGraph> {
    let n = link.len();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = p.lk(&link[i], &link[j])?;
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    PatternGraph::from_linking(&rows, mode)
}

fn grow_clique(
    ok: &dyn Fn(usize, usize) -> bool,
    cands: &[usize],
    n: usize,
    cur: &mut Vec<usize>,
) -> bool {
    if cur.len() == n {
        return true;
    }
    for (k, &v) in cands.iter().enumerate() {
        if cands.len() - k < n - cur.len() {
            return false;
        }
        if cur.iter().all(|&u| ok(u, v)) {
            cur.push(v);
            if grow_clique(ok, &cands[k + 1..], n, cur) {
                return true;
            }
            cur.pop();
        }
    }
    false
}

/// Lexicographically first `n` vertices pairwise joined by edges of weight at
/// least `min_edge_weight`, each of vertex weight at least
/// `min_vertex_weight` when vertex weights are present.
pub fn contains_complete(
    p: &PatternGraph,
    n: usize,
    min_edge_weight: u64,
    min_vertex_weight: u64,
) -> Option<Vec<usize>> {
    let cands: Vec<usize> = (0..p.n)
        .filter(|&v| p.vertex_ok(v, min_vertex_weight))
        .collect();
    let ok = |u: usize, v: usize| p.weight(u, v).is_some_and(|w| w >= min_edge_weight);
    let mut cur = Vec::with_capacity(n);
    grow_clique(&ok, &cands, n, &mut cur).then_some(cur)
}

/// As [`contains_complete`] with every edge weight also required to be odd.
/// No existence claim is attached to this query.
pub fn contains_complete_odd(
    p: &PatternGraph,
    n: usize,
    min_edge_weight: u64,
) -> Option<Vec<usize>> {
    let cands: Vec<usize> = (0..p.n).collect();
    let ok = |u: usize, v: usize| {
        p.weight(u, v)
            .is_some_and(|w| w >= min_edge_weight && w % 2 == 1)
    };
    let mut cur = Vec::with_capacity(n);
    grow_clique(&ok, &cands, n, &mut cur).then_some(cur)
}

/// Calls `f` on each `k`-subset of `items` in lexicographic order until it
/// returns `Some`.
fn first_subset<T>(
    items: &[usize],
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    fn go<T>(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Option<T>,
    ) -> Option<T> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if let Some(t) = go(items, k, i + 1, cur, f) {
                return Some(t);
            }
            cur.pop();
        }
        None
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f)
}

fn bipartite_within(
    p: &PatternGraph,
    pool: &[usize],
    n: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    first_subset(pool, n, &mut |a: &[usize]| {
        let common: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|v| !a.contains(v) && a.iter().all(|&u| p.has_edge(u, *v)))
            .collect();
        (common.len() >= n).then(|| (a.to_vec(), common[..n].to_vec()))
    })
}

/// Two disjoint `n`-sets with every cross pair joined; edges inside the sets
/// are allowed.
pub fn contains_complete_bipartite(p: &PatternGraph, n: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let all: Vec<usize> = (0..p.n).collect();
    bipartite_within(p, &all, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipartiteWitness {
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
    pub q: Vec<usize>,
}

/// A copy of `H(n, m)`: classes `P₁`, `P₂` of size `m` and singletons
/// `Q_1..Q_n`, every cross-class pair joined, `Q` pairs of weight greater
/// than `min_q_weight`.
pub fn contains_multipartite(
    p: &PatternGraph,
    n: usize,
    m: usize,
    min_q_weight: u64,
) -> Option<MultipartiteWitness> {
    if 2 * m + n == 0 || 2 * m + n > p.n {
        return None;
    }
    let all: Vec<usize> = (0..p.n).collect();
    let ok = |u: usize, v: usize| p.weight(u, v).is_some_and(|w| w > min_q_weight);
    first_subset(&all, n, &mut |qs: &[usize]| {
        if !qs
            .iter()
            .enumerate()
            .all(|(i, &a)| qs[i + 1..].iter().all(|&b| ok(a, b)))
        {
            return None;
        }
        let pool: Vec<usize> = all
            .iter()
            .copied()
            .filter(|v| !qs.contains(v) && qs.iter().all(|&q| p.has_edge(q, *v)))
            .collect();
        let (p1, p2) = if m == 0 {
            (Vec::new(), Vec::new())
        } else {
            bipartite_within(p, &pool, m)?
        };
        Some(MultipartiteWitness {
            p1,
            p2,
            q: qs.to_vec(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> PatternGraph {
        let mut p = PatternGraph::empty(PatternMode::Integer, 4);
        for i in 0..4 {
            p.set_edge(i, (i + 1) % 4, 1).unwrap();
        }
        p
    }

    #[test]
    fn four_cycle_queries() {
        let p = cycle4();
        assert_eq!(
            contains_complete_bipartite(&p, 2),
            Some((vec![0, 2], vec![1, 3]))
        );
        let w = contains_multipartite(&p, 0, 2, 0).unwrap();
        assert_eq!((w.p1, w.p2), (vec![0, 2], vec![1, 3]));
        assert_eq!(contains_complete(&p, 3, 1, 0), None);
        assert_eq!(contains_complete(&p, 2, 1, 0), Some(vec![0, 1]));
    }

    #[test]
    fn star_has_no_k22() {
        let mut p = PatternGraph::empty(PatternMode::Mod2, 4);
        for i in 1..4 {
            p.set_edge(0, i, 1).unwrap();
        }
        assert_eq!(contains_complete_bipartite(&p, 2), None);
        assert_eq!(contains_complete_bipartite(&p, 1), Some((vec![0], vec![1])));
    }

    #[test]
    fn empty_pattern() {
        let p = PatternGraph::empty(PatternMode::Integer, 0);
        assert_eq!(contains_multipartite(&p, 1, 1, 0), None);
        assert_eq!(contains_complete(&p, 1, 1, 0), None);
    }

    #[test]
    fn json_and_dot() {
        let mut p = cycle4();
        p.set_vertex_weights(vec![1, 0, 2, 0]).unwrap();
        let j = serde_json::to_value(&p).unwrap();
        assert_eq!(
            j["edges"][0],
            serde_json::json!({ "u": 0, "v": 1, "weight": 1 })
        );
        let back: PatternGraph = serde_json::from_value(j).unwrap();
        assert_eq!(back, p);
        let dot = p.to_dot();
        assert!(dot.contains("v0 -- v1 [label=\"1\"]"));
        assert!(dot.contains("v2 [label=\"2 (2)\"]"));
    }
}
