use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

use super::oriented::{symmetric_difference, OrientedCycle, Step};
use crate::error::{Error, Result};
use crate::geometry::{AbstractGraph, EdgeId, VertexId};

/// A cycle `W'` meeting four pairwise disjoint cycles `C_1..C_4` in one
/// oppositely oriented arc each.
#[derive(Clone, Debug, Serialize)]
pub struct D4Configuration {
    pub w_prime: OrientedCycle,
    pub c: [OrientedCycle; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct D4Cycle {
    /// `Σ ε_i 2^(i-1)`.
    pub index: usize,
    pub eps: [bool; 4],
    pub cycle: OrientedCycle,
}

impl D4Configuration {
    pub fn new(w_prime: OrientedCycle, c: [OrientedCycle; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in i + 1..4 {
                if !c[i].is_disjoint(&c[j]) {
                    return Err(Error::InvalidGraph(format!(
                        "C{} and C{} intersect",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for (i, ci) in c.iter().enumerate() {
            check_single_arc(&w_prime, ci)
                .map_err(|m| Error::InvalidGraph(format!("W' and C{}: {m}", i + 1)))?;
        }
        Ok(Self { w_prime, c })
    }

    /// The four maximal runs of `W'` avoiding every `C_i` edge, in `W'` order.
    pub fn connector_arcs(&self) -> Vec<Vec<Step>> {
        let on_c: HashSet<EdgeId> = self.c.iter().flat_map(|c| c.edges()).collect();
        let steps = self.w_prime.steps();
        let n = steps.len();
        let Some(first) = (0..n).find(|&i| on_c.contains(&steps[i].edge)) else {
            return vec![steps.to_vec()];
        };
        let mut arcs = Vec::new();
        let mut cur: Vec<Step> = Vec::new();
        for k in 1..=n {
            let s = steps[(first + k) % n];
            if on_c.contains(&s.edge) {
                if !cur.is_empty() {
                    arcs.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(s);
            }
        }
        if !cur.is_empty() {
            arcs.push(cur);
        }
        arcs
    }
}

fn check_single_arc(w: &OrientedCycle, c: &OrientedCycle) -> std::result::Result<(), String> {
    let dc = c.direction_map();
    let steps = w.steps();
    let n = steps.len();
    let shared: Vec<usize> = (0..n)
        .filter(|&i| dc.contains_key(&steps[i].edge))
        .collect();
    if shared.is_empty() {
        return Err("no common arc".into());
    }
    for &i in &shared {
        if dc[&steps[i].edge] == steps[i].sign() {
            return Err("common arc is not oppositely oriented".into());
        }
    }
    // shared steps must form one cyclic run
    let runs = (0..n)
        .filter(|&i| {
            dc.contains_key(&steps[i].edge) && !dc.contains_key(&steps[(i + n - 1) % n].edge)
        })
        .count();
    if runs != 1 && shared.len() != n {
        return Err(format!("{runs} common arcs"));
    }
    let cv: BTreeSet<VertexId> = c.vertices().iter().copied().collect();
    let touching = w.vertices().iter().filter(|v| cv.contains(v)).count();
    if touching != shared.len() + 1 {
        return Err("W' touches the cycle outside the common arc".into());
    }
    Ok(())
}

/// The sixteen cycles `W' △ ε_1 C_1 △ … △ ε_4 C_4`, indexed by `Σ ε_i 2^(i-1)`.
pub fn d4_hamiltonian_cycles(g: &AbstractGraph, cfg: &D4Configuration) -> Result<Vec<D4Cycle>> {
    (0..16usize)
        .map(|index| {
            let eps = [0, 1, 2, 3].map(|i| index >> i & 1 == 1);
            let mut cyc = cfg.w_prime.clone();
            for i in 0..4 {
                if eps[i] {
                    cyc = symmetric_difference(g, &cyc, &cfg.c[i])?;
                }
            }
            Ok(D4Cycle {
                index,
                eps,
                cycle: cyc,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Four squares on K16 joined in a ring by single edges.
    pub(crate) fn square_ring() -> (AbstractGraph, D4Configuration) {
        let g = AbstractGraph::complete(16);
        let v = VertexId;
        let c: Vec<OrientedCycle> = (0..4)
            .map(|i| {
                let b = 4 * i;
                OrientedCycle::from_vertices(&g, &[v(b), v(b + 1), v(b + 2), v(b + 3)]).unwrap()
            })
            .collect();
        // W' runs b+1 -> b on each square (against it), then jumps to the next
        let mut ring = Vec::new();
        for i in 0..4 {
            ring.push(v(4 * i + 1));
            ring.push(v(4 * i));
        }
        let w = OrientedCycle::from_vertices(&g, &ring).unwrap();
        let cfg = D4Configuration::new(w, c.try_into().unwrap()).unwrap();
        (g, cfg)
    }

    #[test]
    fn sixteen_distinct_cycles() {
        let (g, cfg) = square_ring();
        let all = d4_hamiltonian_cycles(&g, &cfg).unwrap();
        assert_eq!(all.len(), 16);
        assert!(all[0].cycle.same_oriented(&cfg.w_prime));
        let sets: BTreeSet<BTreeSet<EdgeId>> = all.iter().map(|d| d.cycle.edge_set()).collect();
        assert_eq!(sets.len(), 16);
        let arcs = cfg.connector_arcs();
        assert_eq!(arcs.len(), 4);
        for d in &all {
            for arc in &arcs {
                assert!(arc
                    .iter()
                    .all(|s| d.cycle.direction_of(s.edge) == Some(s.sign())));
            }
            for (i, c) in cfg.c.iter().enumerate() {
                let used = c
                    .edges()
                    .filter(|e| d.cycle.direction_of(*e).is_some())
                    .count();
                assert_eq!(used, if d.eps[i] { 3 } else { 1 });
            }
        }
    }

    #[test]
    fn coherent_arc_rejected() {
        let (_, cfg) = square_ring();
        let mut c = cfg.c.clone();
        c[0] = c[0].reversed();
        assert!(D4Configuration::new(cfg.w_prime.clone(), c).is_err());
    }
}
