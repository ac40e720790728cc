use num_integer::Roots;
use serde::Serialize;
use serde_json::json;

use super::{connecting_cycle, LinkingProvider, Trace};
use crate::cycles::{symmetric_difference_all, OrientedCycle};
use crate::error::{Error, Result};
use crate::gf2::{select_row_vector, GF2Matrix, RowSelection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeBranch {
    /// At least half of the `ω(C, X_j)` were already 1; `Z = C`.
    Direct,
    /// `Z = C △ J_{i₁} △ …` from a row combination of `M_ij = ω(J_i, X_j)`.
    Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct MergeResult {
    pub z: OrientedCycle,
    /// Indices `j` (into `X`) with `ω(Z, X_j) = 1`.
    pub index_set: Vec<usize>,
    pub branch: MergeBranch,
    pub selection: Option<RowSelection>,
    pub trace: Trace,
}

/// One cycle through all of `J` that links an odd number of times with at
/// least `n/2` of the `X_j`, given `ω(J_i, X_i) = 1`.
pub fn multimerge(
    p: &mut LinkingProvider,
    j: &[OrientedCycle],
    x: &[OrientedCycle],
    n: usize,
) -> Result<MergeResult> {
    let nn = n * n;
    if n == 0 || j.len() != nn || x.len() != nn {
        return Err(Error::HypothesisViolation(format!(
            "need n^2 = {nn} J's and X's with n >= 1, got {} and {}",
            j.len(),
            x.len()
        )));
    }
    for i in 0..nn {
        if p.omega(&j[i], &x[i])? != 1 {
            return Err(Error::HypothesisViolation(format!(
                "omega(J_{i}, X_{i}) != 1"
            )));
        }
    }
    let mut trace = Trace::new();
    let c = connecting_cycle(p, j)?;
    let omega_c: Vec<u8> = x.iter().map(|xj| p.omega(&c, xj)).collect::<Result<_>>()?;
    let ones: Vec<usize> = (0..nn).filter(|&k| omega_c[k] == 1).collect();
    trace.push(
        "multimerge.connect",
        json!({ "n": n, "components": nn }),
        json!({ "omega_c": omega_c, "edges": c.len() }),
        "C runs backwards along the least edge of each J_i",
    );

    let (z, index_set, branch, selection) = if 2 * ones.len() >= n {
        trace.push(
            "multimerge.branch",
            json!({ "ones": ones.len(), "half": n as f64 / 2.0 }),
            json!("direct"),
            "at least n/2 of the omega(C, X_j) are 1, so Z = C",
        );
        (c, ones, MergeBranch::Direct, None)
    } else {
        let mut m = GF2Matrix::zeros(nn, nn);
        for a in 0..nn {
            for b in 0..nn {
                m.set(a, b, p.omega(&j[a], &x[b])? == 1);
            }
        }
        let sel = select_row_vector(&m, n)?;
        let idx: Vec<usize> = (0..nn)
            .filter(|&k| sel.v[k] == 1 && omega_c[k] == 0)
            .collect();
        let parts: Vec<&OrientedCycle> = sel.source_rows.iter().map(|&i| &j[i]).collect();
        let z = symmetric_difference_all(p.graph(), &c, parts)?;
        trace.push(
            "multimerge.branch",
            json!({ "ones": ones.len(), "matrix": m, "rank": sel.rank }),
            json!({ "branch": "matrix", "v": sel.v, "source_rows": sel.source_rows, "case": sel.case }),
            "fewer than n/2 ones; Z adds the J's whose rows sum to V, flipping omega exactly where V is 1",
        );
        (z, idx, MergeBranch::Matrix, Some(sel))
    };

    for &k in &index_set {
        if p.omega(&z, &x[k])? != 1 {
            return Err(Error::NoWitness(format!(
                "omega(Z, X_{k}) != 1 after merge"
            )));
        }
    }
    if 2 * index_set.len() < n {
        return Err(Error::NoWitness(format!(
            "|I| = {} < n/2 = {}",
            index_set.len(),
            n as f64 / 2.0
        )));
    }
    trace.push(
        "multimerge.result",
        json!({ "n": n }),
        json!({ "index_set": index_set, "size": index_set.len(), "strict": 2 * index_set.len() > n }),
        "|I| >= n/2 checked; `strict` records whether |I| > n/2",
    );
    Ok(MergeResult {
        z,
        index_set,
        branch,
        selection,
        trace,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BipartiteResult {
    /// `Z_1..Z_n`; `Z_k` is built from the `k`-th keys.
    pub z: Vec<OrientedCycle>,
    /// Rings linked oddly with every `Z_k`.
    pub rings: Vec<usize>,
    /// `|I_0|, |I_1|, …, |I_n|`.
    pub stage_sizes: Vec<usize>,
    pub trace: Trace,
}

/// `(4n)^(2^n) / 4`, if it fits.
pub fn bipartite_ring_count(n: usize) -> Option<u128> {
    let e = 1u32.checked_shl(n as u32)?;
    (4 * n as u128).checked_pow(e).map(|v| v / 4)
}

/// Iterates [`multimerge`] over keyrings: stage `k` merges the `k`-th keys
/// of the surviving rings and keeps the rings it links oddly.
pub fn bipartite_pattern_build(
    p: &mut LinkingProvider,
    rings: &[OrientedCycle],
    keys: &[Vec<OrientedCycle>],
    n: usize,
) -> Result<BipartiteResult> {
    if n == 0 {
        return Err(Error::HypothesisViolation("n must be at least 1".into()));
    }
    let need = bipartite_ring_count(n)
        .ok_or_else(|| Error::HypothesisViolation(format!("(4n)^(2^n)/4 overflows for n = {n}")))?;
    if (rings.len() as u128) < need {
        return Err(Error::HypothesisViolation(format!(
            "{} rings < (4n)^(2^n)/4 = {need}",
            rings.len()
        )));
    }
    if keys.len() != rings.len() {
        return Err(Error::HypothesisViolation(format!(
            "{} key lists for {} rings",
            keys.len(),
            rings.len()
        )));
    }
    for (i, ks) in keys.iter().enumerate() {
        if ks.len() < n {
            return Err(Error::HypothesisViolation(format!(
                "ring {i} has {} keys < {n}",
                ks.len()
            )));
        }
    }
    let mut trace = Trace::new();
    let mut alive: Vec<usize> = (0..rings.len()).collect();
    let mut sizes = vec![alive.len()];
    let mut zs = Vec::with_capacity(n);
    for k in 0..n {
        let s = alive.len().sqrt();
        let used = &alive[..s * s];
        let js: Vec<OrientedCycle> = used.iter().map(|&i| keys[i][k].clone()).collect();
        let xs: Vec<OrientedCycle> = used.iter().map(|&i| rings[i].clone()).collect();
        let res = multimerge(p, &js, &xs, s)?;
        let next: Vec<usize> = res.index_set.iter().map(|&t| used[t]).collect();
        trace.push(
            "bipartite.stage",
            json!({ "stage": k + 1, "alive": alive.len(), "square": s * s }),
            json!({ "kept": next, "branch": res.branch }),
            format!("merge the key {} of the first {s}^2 surviving rings", k + 1),
        );
        trace.extend(res.trace);
        zs.push(res.z);
        alive = next;
        sizes.push(alive.len());
    }
    if alive.len() < n {
        return Err(Error::NoWitness(format!(
            "only {} rings survive, need {n}",
            alive.len()
        )));
    }
    for z in &zs {
        for &i in &alive {
            if p.omega(z, &rings[i])? != 1 {
                return Err(Error::NoWitness(format!(
                    "a merged cycle is not odd with ring {i}"
                )));
            }
        }
    }
    Ok(BipartiteResult {
        z: zs,
        rings: alive,
        stage_sizes: sizes,
        trace,
    })
}
