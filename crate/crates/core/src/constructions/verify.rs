//! Randomized and exhaustive checks of the classical intrinsic linking and
//! knotting invariants and of the twisted-embedding guarantees.

use num_bigint::BigInt;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::verify_ty;
use crate::cycles::{all_cycles, disjoint_cycle_pairs, hamiltonian_cycles, OrientedCycle};
use crate::diagram::{orient_by_max_weight, symbolic_linking, Diagram, TwistedDiagram};
use crate::error::Result;
use crate::geometry::{d4_random_fixture, generic_direction, random_embedding, AbstractGraph};
use crate::invariants::{conway_a2, linking_number};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub check: String,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<TrialFailure>,
    /// The invariant sum of each trial, `None` where the trial errored.
    pub sums: Vec<Option<i64>>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.passes == self.trials
    }
}

/// Per-trial seeds drawn from one generator seeded with `seed`.
fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.next_u64()).collect()
}

fn random_diagram(g: &AbstractGraph, seed: u64, bits: u32) -> Result<Diagram> {
    let emb = random_embedding(g, seed, bits)?;
    let dir = generic_direction(&emb, seed)?;
    Diagram::project(&emb, dir)
}

fn odd(v: i64) -> (i64, Option<String>) {
    (
        v,
        (v.rem_euclid(2) != 1).then(|| format!("sum {v} is even")),
    )
}

/// Runs `one` per trial seed; it returns the trial's value and a failure
/// detail when the trial's check did not hold.
fn run_trials(
    check: &str,
    seed: u64,
    trials: usize,
    one: impl Fn(u64) -> Result<(i64, Option<String>)> + Sync,
) -> VerifyReport {
    let seeds = trial_seeds(seed, trials);
    let results: Vec<Result<(i64, Option<String>)>> = seeds.par_iter().map(|&s| one(s)).collect();
    let mut failures = Vec::new();
    let mut sums = Vec::with_capacity(trials);
    for (trial, (r, &s)) in results.into_iter().zip(&seeds).enumerate() {
        match r {
            Ok((v, bad)) => {
                if let Some(detail) = bad {
                    failures.push(TrialFailure {
                        trial,
                        seed: s,
                        detail,
                    });
                }
                sums.push(Some(v));
            }
            Err(e) => {
                failures.push(TrialFailure {
                    trial,
                    seed: s,
                    detail: format!("{}: {e}", e.code()),
                });
                sums.push(None);
            }
        }
    }
    VerifyReport {
        check: check.to_string(),
        seed,
        trials,
        passes: trials - failures.len(),
        failures,
        sums,
    }
}

/// Sum of `lk mod 2` over the 10 pairs of disjoint triangles of a random
/// `K₆`, which must be odd.
pub fn verify_cg6(trials: usize, seed: u64, bits: u32) -> VerifyReport {
    let g = AbstractGraph::complete(6);
    let pairs = disjoint_cycle_pairs(&g);
    run_trials("cg6", seed, trials, |s| {
        let d = random_diagram(&g, s, bits)?;
        let mut sum = 0;
        for (a, b) in &pairs {
            sum += linking_number(&d, a, b)?.rem_euclid(2);
        }
        Ok(odd(sum))
    })
}

/// Sum of a₂ over the 360 Hamiltonian cycles of a random `K₇`, which must be
/// odd.
pub fn verify_cg7(trials: usize, seed: u64, bits: u32) -> VerifyReport {
    let g = AbstractGraph::complete(7);
    let cycles = hamiltonian_cycles(&g);
    run_trials("cg7", seed, trials, |s| {
        let d = random_diagram(&g, s, bits)?;
        let a2: Vec<i64> = cycles
            .par_iter()
            .map(|c| conway_a2(&d, c))
            .collect::<Result<_>>()?;
        Ok(odd(a2.iter().sum()))
    })
}

/// Σ|a₂| over the 16 Hamiltonian cycles of a random `D₄` against
/// `|lk(C₁, C₃)·lk(C₂, C₄)|`; the recorded value is the sum.
pub fn verify_ty_random(trials: usize, seed: u64, bits: u32) -> VerifyReport {
    run_trials("ty", seed, trials, |s| {
        let fx = d4_random_fixture(s, bits)?;
        let r = verify_ty(&fx.config, &fx.diagram()?)?;
        Ok((
            r.sum,
            (!r.pass).then(|| format!("sum {} < bound {}", r.sum, r.bound)),
        ))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop2Report {
    pub lambda: u64,
    pub pairs: usize,
    /// Smallest symbolic lk over all pairs, as a decimal string.
    pub min_lk: Option<String>,
    pub failures: Vec<String>,
    /// Pairs whose literal expansion was compared, when requested.
    pub literal_checked: usize,
    pub pass: bool,
}

/// Every pair of disjoint cycles, oriented by their heaviest edge, has
/// symbolic lk at least `lam`. With `expansion_cap`, the twisted diagram is
/// also expanded and each symbolic value compared with the literal one.
pub fn verify_prop2(
    td: &TwistedDiagram,
    lam: u64,
    expansion_cap: Option<u64>,
) -> Result<Prop2Report> {
    let g = td.base.graph();
    let pairs = disjoint_cycle_pairs(g);
    let literal = expansion_cap.map(|cap| td.expand(cap)).transpose()?;
    let mut failures = Vec::new();
    let mut min: Option<BigInt> = None;
    let mut literal_checked = 0;
    for (a, b) in &pairs {
        let (a, b) = (orient_by_max_weight(g, a)?, orient_by_max_weight(g, b)?);
        let v = symbolic_linking(td, &a, &b)?;
        if v < BigInt::from(lam) {
            failures.push(format!("{:?} / {:?}: lk = {v}", a.vertices(), b.vertices()));
        }
        if let Some(d) = &literal {
            let lit = linking_number(d, &a, &b)?;
            if BigInt::from(lit) != v {
                failures.push(format!(
                    "{:?} / {:?}: symbolic {v} != literal {lit}",
                    a.vertices(),
                    b.vertices()
                ));
            }
            literal_checked += 1;
        }
        if min.as_ref().is_none_or(|m| v < *m) {
            min = Some(v);
        }
    }
    Ok(Prop2Report {
        lambda: lam,
        pairs: pairs.len(),
        min_lk: min.map(|m| m.to_string()),
        pass: failures.is_empty(),
        failures,
        literal_checked,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Cor3Report {
    pub triples: usize,
    /// Orientation assignments examined, per diagram.
    pub assignments: usize,
    pub positive_pass: bool,
    pub mirror_negative_pass: bool,
    pub failures: Vec<String>,
}

fn triple_values(td: &TwistedDiagram, t: [&OrientedCycle; 3]) -> Result<[BigInt; 3]> {
    Ok([
        symbolic_linking(td, t[0], t[1])?,
        symbolic_linking(td, t[0], t[2])?,
        symbolic_linking(td, t[1], t[2])?,
    ])
}

/// `true` when every orientation of the triple has a pair with lk of the
/// given sign.
fn every_orientation_has(vals: &[BigInt; 3], positive: bool) -> bool {
    (0..8u8).all(|mask| {
        let s = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
        let signs = [s(0) * s(1), s(0) * s(2), s(1) * s(2)];
        vals.iter().zip(signs).any(|(v, sg)| {
            let v = v * BigInt::from(sg);
            if positive {
                v > BigInt::from(0)
            } else {
                v < BigInt::from(0)
            }
        })
    })
}

/// For every unordered triple of pairwise disjoint cycles and every one of
/// its 8 orientations, some pair links positively; in the mirror, some pair
/// links negatively.
pub fn verify_cor3(td: &TwistedDiagram) -> Result<Cor3Report> {
    let g = td.base.graph();
    let cycles: Vec<OrientedCycle> = all_cycles(g)
        .iter()
        .map(|c| orient_by_max_weight(g, c))
        .collect::<Result<_>>()?;
    let mirror = td.mirror();
    let mut triples = 0;
    let mut failures = Vec::new();
    let (mut pos_ok, mut neg_ok) = (true, true);
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if !cycles[i].is_disjoint(&cycles[j]) {
                continue;
            }
            for k in j + 1..cycles.len() {
                if !cycles[k].is_disjoint(&cycles[i]) || !cycles[k].is_disjoint(&cycles[j]) {
                    continue;
                }
                triples += 1;
                let t = [&cycles[i], &cycles[j], &cycles[k]];
                if !every_orientation_has(&triple_values(td, t)?, true) {
                    pos_ok = false;
                    failures.push(format!(
                        "triple ({i}, {j}, {k}) has an orientation with no positive pair"
                    ));
                }
                if !every_orientation_has(&triple_values(&mirror, t)?, false) {
                    neg_ok = false;
                    failures.push(format!(
                        "mirror triple ({i}, {j}, {k}) has an orientation with no negative pair"
                    ));
                }
            }
        }
    }
    Ok(Cor3Report {
        triples,
        assignments: 8 * triples,
        positive_pass: pos_ok,
        mirror_negative_pass: neg_ok,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_check() {
        let v = |a: i64, b: i64, c: i64| [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
        assert!(every_orientation_has(&v(1, 1, 1), true));
        assert!(!every_orientation_has(&v(1, 0, 0), true));
        assert!(every_orientation_has(&v(-1, -1, -1), false));
        assert!(!every_orientation_has(&v(0, 0, 0), true));
    }

    #[test]
    fn seeds_are_stable() {
        assert_eq!(trial_seeds(1, 3), trial_seeds(1, 3));
        assert_ne!(trial_seeds(1, 3), trial_seeds(2, 3));
    }
}
