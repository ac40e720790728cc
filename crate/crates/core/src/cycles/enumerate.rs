use super::oriented::{OrientedCycle, Step};
use crate::geometry::{AbstractGraph, EdgeId, VertexId};

struct Search<'a> {
    g: &'a AbstractGraph,
    start: VertexId,
    min_len: usize,
    max_len: usize,
    on_path: Vec<bool>,
    verts: Vec<VertexId>,
    steps: Vec<Step>,
    out: Vec<OrientedCycle>,
}

impl Search<'_> {
    fn step_from(&self, x: VertexId, e: EdgeId) -> Step {
        Step::new(e, self.g.edge(e).u == x)
    }

    fn visit(&mut self, x: VertexId) {
        for &e in self.g.incident(x) {
            let y = self.g.edge(e).other(x);
            if self.steps.last().map(|s| s.edge) == Some(e) {
                continue;
            }
            if y == self.start {
                let len = self.steps.len() + 1;
                if len < self.min_len.max(2) || len > self.max_len {
                    continue;
                }
                // each cycle is met twice, once per direction; keep one
                let keep = if len == 2 {
                    self.steps[0].edge < e
                } else {
                    self.verts[1] < x
                };
                if keep {
                    let mut steps = self.steps.clone();
                    steps.push(self.step_from(x, e));
                    let c = OrientedCycle::new(self.g, steps).expect("search builds simple cycles");
                    self.out.push(c);
                }
                continue;
            }
            if y < self.start || self.on_path[y.0] || self.steps.len() + 1 >= self.max_len {
                continue;
            }
            self.on_path[y.0] = true;
            self.verts.push(y);
            self.steps.push(self.step_from(x, e));
            self.visit(y);
            self.steps.pop();
            self.verts.pop();
            self.on_path[y.0] = false;
        }
    }
}

/// Every simple cycle with length in `min_len..=max_len`, each once.
/// Cycles start at their least vertex and continue towards the lesser of
/// its two cycle neighbours. Loops count as cycles of length 1.
pub fn enumerate_cycles(g: &AbstractGraph, min_len: usize, max_len: usize) -> Vec<OrientedCycle> {
    let mut out = Vec::new();
    for s in g.vertices() {
        if min_len <= 1 {
            for &e in g.incident(s) {
                if g.edge(e).u == g.edge(e).v {
                    out.push(OrientedCycle::new(g, vec![Step::new(e, true)]).expect("loop"));
                }
            }
        }
        let mut search = Search {
            g,
            start: s,
            min_len,
            max_len,
            on_path: vec![false; g.vertex_count()],
            verts: vec![s],
            steps: Vec::new(),
            out: Vec::new(),
        };
        search.on_path[s.0] = true;
        search.visit(s);
        out.append(&mut search.out);
    }
    out
}

/// All cycles of any length.
pub fn all_cycles(g: &AbstractGraph) -> Vec<OrientedCycle> {
    enumerate_cycles(g, 1, g.vertex_count())
}

pub fn hamiltonian_cycles(g: &AbstractGraph) -> Vec<OrientedCycle> {
    let n = g.vertex_count();
    enumerate_cycles(g, n, n)
}

/// Unordered pairs of vertex-disjoint cycles, in enumeration order.
pub fn disjoint_cycle_pairs(g: &AbstractGraph) -> Vec<(OrientedCycle, OrientedCycle)> {
    let cycles = all_cycles(g);
    let mut out = Vec::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if cycles[i].is_disjoint(&cycles[j]) {
                out.push((cycles[i].clone(), cycles[j].clone()));
            }
        }
    }
    out
}
