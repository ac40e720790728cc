use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::cycles::OrientedCycle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::geometry::EdgeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub crossing: usize,
    pub over: bool,
}

/// Signed Gauss code of a link diagram. Crossing labels are dense and
/// numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussCode {
    pub components: Vec<Vec<Pass>>,
    /// Sign of each crossing with respect to the component orientations.
    pub signs: Vec<i8>,
    /// Whether each crossing came from a literal twist insertion.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twisted: Vec<bool>,
}

impl GaussCode {
    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn has_twist_crossings(&self) -> bool {
        self.twisted.iter().any(|&t| t)
    }

    /// Checks every crossing appears exactly twice, once over and once under.
    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![(0u8, 0u8); self.signs.len()];
        for p in self.components.iter().flatten() {
            let s = seen
                .get_mut(p.crossing)
                .ok_or_else(|| Error::Parse(format!("crossing {} has no sign", p.crossing)))?;
            if p.over {
                s.0 += 1;
            } else {
                s.1 += 1;
            }
        }
        if let Some(i) = seen.iter().position(|&s| s != (1, 1)) {
            return Err(Error::Parse(format!(
                "crossing {i} is not met once over and once under"
            )));
        }
        if self.signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::Parse("crossing signs must be +1 or -1".into()));
        }
        Ok(())
    }
}

/// Gauss code of the sub-diagram formed by the given cycles: only crossings
/// between their own edges are kept.
pub fn gauss_code(d: &Diagram, cycles: &[OrientedCycle]) -> Result<GaussCode> {
    let mut dir: HashMap<EdgeId, i64> = HashMap::new();
    for c in cycles {
        for s in c.steps() {
            if dir.insert(s.edge, s.sign()).is_some() {
                return Err(Error::CyclesNotDisjoint);
            }
        }
    }
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if !cycles[i].is_disjoint(&cycles[j]) {
                return Err(Error::CyclesNotDisjoint);
            }
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut signs = Vec::new();
    let mut twisted = Vec::new();
    let mut components = Vec::with_capacity(cycles.len());
    for c in cycles {
        let mut passes = Vec::new();
        for s in c.steps() {
            let on = d.crossings_on(s.edge);
            let mut visit = |idx: usize| {
                let x = &d.crossings()[idx];
                let other = x.other(s.edge).expect("crossing lies on the edge");
                let Some(&od) = dir.get(&other.edge) else {
                    return;
                };
                let id = *label.entry(idx).or_insert_with(|| {
                    signs.push((x.handedness as i64 * s.sign() * od) as i8);
                    twisted.push(x.twist.is_some());
                    signs.len() - 1
                });
                passes.push(Pass {
                    crossing: id,
                    over: x.over_edge() == s.edge,
                });
            };
            if s.forward {
                on.iter().copied().for_each(&mut visit);
            } else {
                on.iter().rev().copied().for_each(&mut visit);
            }
        }
        components.push(passes);
    }
    let gc = GaussCode {
        components,
        signs,
        twisted,
    };
    debug_assert!(gc.validate().is_ok());
    Ok(gc)
}
