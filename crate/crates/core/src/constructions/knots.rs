use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{connecting_cycle, LinkingProvider, Trace};
use crate::cycles::{
    d4_hamiltonian_cycles, symmetric_difference, symmetric_difference_all, D4Configuration,
    OrientedCycle,
};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::{conway_a2, linking_number};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WPrimeCase {
    /// Some `W_r` already has `lk(W_r, A_h) ≥ 0` for every `h`.
    NonNegative,
    /// The count of negative `A`'s stalls between `W_r` and `W_{r+1}`.
    Stalled,
}

#[derive(Clone, Debug, Serialize)]
pub struct WPrime {
    pub config: D4Configuration,
    pub case: WPrimeCase,
    pub r: usize,
    /// `lk(W_k, A_h)` for `k = 0..=n`.
    pub lk_w: Vec<Vec<i64>>,
    /// `lk(A_h, W' △ ε·C)` indexed by `ε` then `h`.
    pub guarantee: Vec<Vec<i64>>,
    pub trace: Trace,
}

/// The `W'` and `C_1..C_4` for which every Hamiltonian cycle of the `D₄`
/// links each `A_h` at least `λ` times in absolute value.
pub fn wprime_build(
    p: &mut LinkingProvider,
    a: &[OrientedCycle],
    b: &[OrientedCycle],
    lam: u64,
) -> Result<WPrime> {
    let n = a.len();
    let nb = 6 * n + 6;
    if b.len() < nb {
        return Err(Error::HypothesisViolation(format!(
            "{} B's < 6n+6 = {nb}",
            b.len()
        )));
    }
    let b = &b[..nb];
    let lam = lam as i64;
    for (h, ah) in a.iter().enumerate() {
        for (i, bi) in b.iter().enumerate() {
            let v = p.lk(ah, bi)?;
            if v < lam {
                return Err(Error::HypothesisViolation(format!(
                    "lk(A_{h}, B_{i}) = {v} < {lam}"
                )));
            }
        }
    }
    let mut trace = Trace::new();
    let reversed: Vec<OrientedCycle> = b.iter().rev().cloned().collect();
    let mut w = connecting_cycle(p, &reversed)?;
    let group = |i: usize| &b[6 * i..6 * i + 6];
    let mut ws = vec![w.clone()];
    for i in 0..n {
        w = symmetric_difference_all(p.graph(), &w, group(i))?;
        ws.push(w.clone());
    }
    let lk_w: Vec<Vec<i64>> = ws
        .iter()
        .map(|wk| a.iter().map(|ah| p.lk(wk, ah)).collect())
        .collect::<Result<_>>()?;
    trace.push(
        "wprime.sequence",
        json!({ "n": n, "b": nb }),
        json!({ "lk_w": lk_w }),
        "W_0 joins B_N..B_1; W_i adds the i-th group of six B's",
    );
    let negatives: Vec<usize> = lk_w
        .iter()
        .map(|row| row.iter().filter(|&&v| v < 0).count())
        .collect();
    let (case, r) = match negatives.iter().position(|&c| c == 0) {
        Some(r) => (WPrimeCase::NonNegative, r),
        None => {
            let r = (0..n)
                .find(|&k| negatives[k] == negatives[k + 1])
                .ok_or_else(|| {
                    Error::NoWitness("negative counts strictly decrease n+1 times".into())
                })?;
            (WPrimeCase::Stalled, r)
        }
    };
    trace.push(
        "wprime.case",
        json!({ "negatives": negatives }),
        json!({ "case": case, "r": r }),
        match case {
            WPrimeCase::NonNegative => "first W_r with every lk(W_r, A_h) >= 0",
            WPrimeCase::Stalled => {
                "first r where the number of negative lk(W_r, A_h) does not drop"
            }
        },
    );
    let g = group(r);
    let w_prime = symmetric_difference(p.graph(), &ws[r], &g[5])?;
    let config = D4Configuration::new(
        w_prime,
        [g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone()],
    )?;
    let cycles = d4_hamiltonian_cycles(p.graph(), &config)?;
    let guarantee: Vec<Vec<i64>> = cycles
        .iter()
        .map(|c| a.iter().map(|ah| p.lk(ah, &c.cycle)).collect())
        .collect::<Result<_>>()?;
    for (e, row) in guarantee.iter().enumerate() {
        if let Some(h) = row.iter().position(|v| v.abs() < lam) {
            return Err(Error::NoWitness(format!(
                "|lk(A_{h}, cycle {e})| = {} < {lam}",
                row[h].abs()
            )));
        }
    }
    trace.push(
        "wprime.guarantee",
        json!({ "lambda": lam, "r": r }),
        json!({ "lk": guarantee }),
        "all 16 Hamiltonian cycles of the D4 checked against every A_h",
    );
    Ok(WPrime {
        config,
        case,
        r,
        lk_w,
        guarantee,
        trace,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub index: usize,
    pub eps: [bool; 4],
    /// `None` when the provider cannot determine a₂.
    pub a2: Option<i64>,
    pub lk_a: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotExtraction {
    pub k: OrientedCycle,
    pub index: usize,
    pub a2: Option<i64>,
    pub lk_a: Vec<i64>,
    pub candidates: Vec<Candidate>,
    /// `⌈λ²/16⌉`.
    pub a2_bound: i64,
    /// Whether a₂ was actually evaluated (geometric providers only).
    pub a2_checked: bool,
    pub wprime: WPrime,
    pub trace: Trace,
}

pub fn a2_bound(lam: u64) -> i64 {
    (lam * lam).div_ceil(16) as i64
}

/// A Hamiltonian cycle of the `D₄` from [`wprime_build`] with `|a₂| ≥ ⌈λ²/16⌉`
/// that still links every `A_h` at least `λ` times.
pub fn knot_extract(
    p: &mut LinkingProvider,
    a: &[OrientedCycle],
    b: &[OrientedCycle],
    lam: u64,
) -> Result<KnotExtraction> {
    let nb = 6 * a.len() + 6;
    if b.len() < nb {
        return Err(Error::HypothesisViolation(format!(
            "{} B's < 6n+6 = {nb}",
            b.len()
        )));
    }
    let li = lam as i64;
    for i in 0..nb {
        for k in i + 1..nb {
            let v = p.lk(&b[i], &b[k])?;
            if v.abs() < li {
                return Err(Error::HypothesisViolation(format!(
                    "|lk(B_{i}, B_{k})| = {} < {lam}",
                    v.abs()
                )));
            }
        }
    }
    let wp = wprime_build(p, a, b, lam)?;
    let mut trace = Trace::new();
    let cycles = d4_hamiltonian_cycles(p.graph(), &wp.config)?;
    let prov: &LinkingProvider = p;
    let a2s: Vec<Option<i64>> = cycles
        .par_iter()
        .map(|c| prov.a2(&c.cycle))
        .collect::<Result<_>>()?;
    let candidates: Vec<Candidate> = cycles
        .iter()
        .zip(&a2s)
        .zip(&wp.guarantee)
        .map(|((c, &a2), lk)| Candidate {
            index: c.index,
            eps: c.eps,
            a2,
            lk_a: lk.clone(),
        })
        .collect();
    let bound = a2_bound(lam);
    let checked = p.is_geometric();
    let best = if checked {
        let c = &wp.config.c;
        let rhs = (p.lk(&c[0], &c[2])? * p.lk(&c[1], &c[3])?).abs();
        let sum: i64 = a2s.iter().map(|v| v.unwrap_or(0).abs()).sum();
        trace.push(
            "knot_extract.ty",
            json!({ "lk13_lk24": rhs }),
            json!({ "sum_abs_a2": sum }),
            "sum of |a2| over the 16 cycles bounds |lk(C1,C3) lk(C2,C4)|",
        );
        if sum < rhs {
            return Err(Error::TyViolation { sum, bound: rhs });
        }
        // first maximum in index order
        let mut best = 0;
        for (i, c) in candidates.iter().enumerate() {
            if c.a2.unwrap_or(0).abs() > candidates[best].a2.unwrap_or(0).abs() {
                best = i;
            }
        }
        best
    } else {
        0
    };
    let chosen = &candidates[best];
    trace.push(
        "knot_extract.select",
        json!({ "candidates": candidates, "bound": bound }),
        json!({ "index": chosen.index, "a2": chosen.a2 }),
        if checked {
            "largest |a2|, ties to the lowest index"
        } else {
            "a2 not determined by linking data; assertion skipped, lowest index taken"
        },
    );
    if let Some(v) = chosen.a2 {
        if v.abs() < bound {
            return Err(Error::NoWitness(format!(
                "max |a2| = {} < ceil(λ²/16) = {bound}",
                v.abs()
            )));
        }
    }
    if let Some(h) = chosen.lk_a.iter().position(|v| v.abs() < li) {
        return Err(Error::NoWitness(format!("|lk(A_{h}, K)| < {lam}")));
    }
    let mut full = wp.trace.clone();
    full.extend(trace);
    Ok(KnotExtraction {
        k: cycles[best].cycle.clone(),
        index: chosen.index,
        a2: chosen.a2,
        lk_a: chosen.lk_a.clone(),
        candidates,
        a2_bound: bound,
        a2_checked: checked,
        wprime: wp,
        trace: full,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TyReport {
    pub a2: Vec<i64>,
    pub lk13: i64,
    pub lk24: i64,
    pub sum: i64,
    pub bound: i64,
    pub pass: bool,
}

/// Both sides of `Σ|a₂(Q)| ≥ |lk(C₁,C₃)·lk(C₂,C₄)|` over the 16 Hamiltonian
/// cycles of the configuration.
pub fn verify_ty(cfg: &D4Configuration, d: &Diagram) -> Result<TyReport> {
    let cycles = d4_hamiltonian_cycles(d.graph(), cfg)?;
    let a2: Vec<i64> = cycles
        .par_iter()
        .map(|c| conway_a2(d, &c.cycle))
        .collect::<Result<_>>()?;
    let lk13 = linking_number(d, &cfg.c[0], &cfg.c[2])?;
    let lk24 = linking_number(d, &cfg.c[1], &cfg.c[3])?;
    let sum = a2.iter().map(|v| v.abs()).sum();
    let bound = (lk13 * lk24).abs();
    Ok(TyReport {
        a2,
        lk13,
        lk24,
        sum,
        bound,
        pass: sum >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::a2_bound;

    #[test]
    fn rounded_bound() {
        assert_eq!(a2_bound(1), 1);
        assert_eq!(a2_bound(4), 1);
        assert_eq!(a2_bound(5), 2);
        assert_eq!(a2_bound(8), 4);
    }
}
