use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycles::OrientedCycle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Half the signed count of crossings between the two cycles.
pub fn linking_number(d: &Diagram, c1: &OrientedCycle, c2: &OrientedCycle) -> Result<i64> {
    if !c1.is_disjoint(c2) {
        return Err(Error::CyclesNotDisjoint);
    }
    let d2 = c2.direction_map();
    let mut sum = 0i64;
    for s in c1.steps() {
        for &idx in d.crossings_on(s.edge) {
            let x = &d.crossings()[idx];
            let other = x.other(s.edge).expect("crossing lies on the edge");
            if let Some(&od) = d2.get(&other.edge) {
                sum += x.handedness as i64 * s.sign() * od;
            }
        }
    }
    if sum % 2 != 0 {
        return Err(Error::ParityError(sum));
    }
    Ok(sum / 2)
}

pub fn mod2_linking(d: &Diagram, c1: &OrientedCycle, c2: &OrientedCycle) -> Result<u8> {
    Ok(linking_number(d, c1, c2)?.rem_euclid(2) as u8)
}

/// Pairwise linking numbers of a link; the diagonal is zero and unused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingMatrix {
    pub components: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        for i in 0..n {
            if entries[i].len() != n {
                return Err(Error::BadShape(format!(
                    "row {i} has {} entries, expected {n}",
                    entries[i].len()
                )));
            }
            for j in 0..n {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::BadShape(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self {
            components: (0..n).collect(),
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn mod2(&self) -> Vec<Vec<u8>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect())
            .collect()
    }
}

pub fn linking_matrix(d: &Diagram, link: &[OrientedCycle]) -> Result<LinkingMatrix> {
    let n = link.len();
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Ok(0)
                    } else {
                        linking_number(d, &link[i], &link[j])
                    }
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    LinkingMatrix::from_entries(rows)
}
