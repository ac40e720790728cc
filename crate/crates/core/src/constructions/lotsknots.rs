use num_integer::Roots;
use serde::Serialize;
use serde_json::json;

use super::{knot_extract, majority, KnotExtraction, LinkingProvider, Trace};
use crate::cycles::OrientedCycle;
use crate::error::{Error, Result};

/// Which component counts the constructions demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// The closed-form worst-case counts.
    ClosedForm,
    /// Only the inequalities each step actually uses, checked as they arise.
    Relaxed,
}

/// `f(x) = x − 1 + 6x·2^(x−2)`; `None` once it leaves `u128`.
pub fn f_value(x: u128) -> Option<u128> {
    match x {
        0 => None,
        1 => Some(3),
        _ => {
            let e = u32::try_from(x - 2).ok()?;
            let pow = 1u128.checked_shl(e).filter(|_| e < 127)?;
            (6 * x).checked_mul(pow)?.checked_add(x - 1)
        }
    }
}

/// `(6a + 6)·2^(a−1)`, with `a = 0` giving 3.
pub fn b_count(a: u128) -> Option<u128> {
    if a == 0 {
        return Some(3);
    }
    let e = u32::try_from(a - 1).ok().filter(|&e| e < 127)?;
    a.checked_mul(6)?.checked_add(6)?.checked_mul(1u128 << e)
}

/// `max(α, ⌈4√α⌉)`.
pub fn lambda_for_alpha(alpha: u64) -> u64 {
    let s = 16 * alpha as u128;
    let r = s.sqrt();
    let ceil = if r * r == s { r } else { r + 1 };
    alpha.max(ceil as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct StageBudget {
    /// Stage number `k = 1..n`.
    pub stage: usize,
    /// Index `i = n − k + 1` of `m_i`.
    pub i: usize,
    /// Number of A's, `m_i` (closed-form counts) or its relaxed replacement.
    pub a: Option<u128>,
    /// Number of B's, `m_i'`.
    pub b: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Schedule {
    pub n: usize,
    pub alpha: u64,
    pub lambda: u64,
    pub mode: CountMode,
    /// `f^0(n), f^1(n), …, f^n(n)`; `None` past `u128`.
    pub f_values: Vec<Option<u128>>,
    pub stages: Vec<StageBudget>,
    /// Components the first stage consumes.
    pub initial: Option<u128>,
}

impl Schedule {
    pub fn new(n: usize, alpha: u64, mode: CountMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::HypothesisViolation("n must be at least 1".into()));
        }
        let mut f_values = vec![Some(n as u128)];
        for _ in 0..n {
            let next = f_values.last().copied().flatten().and_then(f_value);
            f_values.push(next);
        }
        // by_i[i-1] = (a, b) for m_i, m_i'
        let by_i: Vec<(Option<u128>, Option<u128>)> = match mode {
            CountMode::ClosedForm => (1..=n)
                .map(|i| {
                    let m = f_values[i - 1].map(|v| v - 1);
                    (m, m.and_then(b_count))
                })
                .collect(),
            CountMode::Relaxed => {
                let mut out = Vec::with_capacity(n);
                let mut a = Some((n as u128 - 1).max(1));
                for _ in 0..n {
                    let b = a.and_then(b_count);
                    out.push((a, b));
                    a = a.zip(b).and_then(|(a, b)| (a + b).checked_sub(1));
                }
                out
            }
        };
        let stages: Vec<StageBudget> = (1..=n)
            .map(|k| {
                let i = n - k + 1;
                StageBudget {
                    stage: k,
                    i,
                    a: by_i[i - 1].0,
                    b: by_i[i - 1].1,
                }
            })
            .collect();
        let initial = stages[0]
            .a
            .zip(stages[0].b)
            .and_then(|(a, b)| a.checked_add(b));
        Ok(Self {
            n,
            alpha,
            lambda: lambda_for_alpha(alpha),
            mode,
            f_values,
            stages,
            initial,
        })
    }

    /// First stage whose budget cannot feed the knot extraction, if any.
    pub fn check(&self) -> Result<()> {
        for s in &self.stages {
            let (Some(a), Some(b)) = (s.a, s.b) else {
                return Err(Error::Unsupported(format!(
                    "stage {} budget exceeds 128 bits",
                    s.stage
                )));
            };
            if b < 6 * a + 6 {
                return Err(Error::HypothesisViolation(format!(
                    "stage {}: m_{}' = {b} B's < 6m_{} + 6 = {} needed for knot extraction",
                    s.stage,
                    s.i,
                    s.i,
                    6 * a + 6
                )));
            }
            if (a as usize) < s.stage - 1 {
                return Err(Error::HypothesisViolation(format!(
                    "stage {}: {a} A's cannot hold the {} earlier knots",
                    s.stage,
                    s.stage - 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LotsKnots {
    pub q: Vec<OrientedCycle>,
    pub a2: Vec<Option<i64>>,
    /// The A's of the last stage, in their final orientation.
    pub final_a: Vec<OrientedCycle>,
    /// `lk(Q_i, Q_j)`.
    pub lk_q: Vec<Vec<i64>>,
    /// `lk(final A_h, Q_last)`.
    pub lk_last: Vec<i64>,
    pub extractions: Vec<KnotExtraction>,
    pub trace: Trace,
}

/// Extracts knots `Q_1..Q_n` with pairwise `|lk| ≥ λ` and `|a₂| ≥ ⌈λ²/16⌉`
/// from a link whose components pairwise link at least `λ` times.
pub fn lotsknots(
    p: &mut LinkingProvider,
    link: &[OrientedCycle],
    n: usize,
    lam: u64,
    schedule: &Schedule,
) -> Result<LotsKnots> {
    if schedule.n != n {
        return Err(Error::HypothesisViolation(format!(
            "schedule is for n = {}, not {n}",
            schedule.n
        )));
    }
    schedule.check()?;
    let need = schedule.initial.expect("checked budgets fit");
    if (link.len() as u128) < need {
        return Err(Error::HypothesisViolation(format!(
            "{} components < {need} required",
            link.len()
        )));
    }
    let li = lam as i64;
    let mut trace = Trace::new();
    let mut cur: Vec<OrientedCycle> = link.to_vec();
    let mut q_count = 0usize;
    let mut extractions = Vec::with_capacity(n);
    let mut final_a = Vec::new();
    for st in &schedule.stages {
        let a_n = st.a.expect("checked") as usize;
        let b_n = st.b.expect("checked") as usize;
        // Q's sit at the front of `cur`
        if cur.len() < a_n + 1 {
            return Err(Error::HypothesisViolation(format!(
                "stage {}: {} components < {} A's + B's",
                st.stage,
                cur.len(),
                a_n
            )));
        }
        let mut a: Vec<OrientedCycle> = cur[..a_n].to_vec();
        let rest = &cur[a_n..];
        let b_src = match schedule.mode {
            CountMode::ClosedForm => {
                if rest.len() < b_n {
                    return Err(Error::HypothesisViolation(format!(
                        "stage {}: {} B's < m_{}' = {b_n}",
                        st.stage,
                        rest.len(),
                        st.i
                    )));
                }
                &rest[..b_n]
            }
            CountMode::Relaxed => rest,
        };
        let mut b: Vec<OrientedCycle> = b_src.to_vec();
        let mut reversed_b = 0;
        if let Some(a1) = a.first() {
            for bi in b.iter_mut() {
                let v = p.lk(a1, bi)?;
                if v.abs() < li {
                    return Err(Error::HypothesisViolation(format!(
                        "|lk(A_1, B)| = {} < {lam}",
                        v.abs()
                    )));
                }
                if v < 0 {
                    *bi = bi.reversed();
                    reversed_b += 1;
                }
            }
        }
        trace.push(
            "lotsknots.orient_b",
            json!({ "stage": st.stage, "a": a_n, "b": b.len() }),
            json!({ "reversed": reversed_b }),
            "reverse B's so each links A_1 positively",
        );
        for h in 1..a.len() {
            let vals: Vec<i64> = b.iter().map(|bi| p.lk(&a[h], bi)).collect::<Result<_>>()?;
            if let Some(k) = vals.iter().position(|v| v.abs() < li) {
                return Err(Error::HypothesisViolation(format!(
                    "|lk(A_{h}, B_{k})| = {} < {lam}",
                    vals[k].abs()
                )));
            }
            let signs: Vec<i64> = vals.iter().map(|v| v.signum()).collect();
            let sign = majority(&signs).unwrap_or(1);
            let before = b.len();
            b = b
                .into_iter()
                .zip(&signs)
                .filter(|(_, &s)| s == sign)
                .map(|(c, _)| c)
                .collect();
            if sign < 0 {
                a[h] = a[h].reversed();
            }
            trace.push(
                "lotsknots.filter",
                json!({ "stage": st.stage, "a": h, "candidates": before }),
                json!({ "kept": b.len(), "sign": sign, "reverse_a": sign < 0 }),
                "keep the B's on the majority sign side of A_h; reverse A_h if negative",
            );
        }
        let need_b = 6 * a_n + 6;
        if b.len() < need_b {
            let msg = format!(
                "stage {}: {} B's survive, need 6a+6 = {need_b}",
                st.stage,
                b.len()
            );
            return Err(match schedule.mode {
                CountMode::Relaxed => Error::HypothesisViolation(msg),
                CountMode::ClosedForm => Error::NoWitness(msg),
            });
        }
        b.truncate(need_b);
        let ext = knot_extract(p, &a, &b, lam)?;
        trace.push(
            "lotsknots.extract",
            json!({ "stage": st.stage, "a": a_n, "b": need_b, "earlier_knots": q_count }),
            json!({ "a2": ext.a2, "a2_checked": ext.a2_checked, "lk_a": ext.lk_a }),
            if ext.a2_checked {
                "knot extracted; a2 bound verified"
            } else {
                "knot extracted; a2 skipped by the synthetic provider"
            },
        );
        trace.extend(ext.trace.clone());
        // earlier knots stay first, the new one goes right after them
        let mut next: Vec<OrientedCycle> = a[..q_count].to_vec();
        next.push(ext.k.clone());
        next.extend(a[q_count..].iter().cloned());
        final_a = a;
        cur = next;
        q_count += 1;
        extractions.push(ext);
    }
    let q: Vec<OrientedCycle> = cur[..q_count].to_vec();
    let a2: Vec<Option<i64>> = q.iter().map(|k| p.a2(k)).collect::<Result<_>>()?;
    let lk_q: Vec<Vec<i64>> = q
        .iter()
        .enumerate()
        .map(|(i, u)| {
            q.iter()
                .enumerate()
                .map(|(j, v)| if i == j { Ok(0) } else { p.lk(u, v) })
                .collect()
        })
        .collect::<Result<_>>()?;
    let last = q.last().expect("n >= 1");
    let lk_last: Vec<i64> = final_a
        .iter()
        .map(|c| p.lk(c, last))
        .collect::<Result<_>>()?;
    let bound = super::knots::a2_bound(lam);
    for (i, row) in lk_q.iter().enumerate() {
        if let Some(v) = a2[i] {
            if v.abs() < bound {
                return Err(Error::NoWitness(format!(
                    "|a2(Q_{i})| = {} < {bound}",
                    v.abs()
                )));
            }
        }
        if row.iter().enumerate().any(|(j, v)| j != i && v.abs() < li) {
            return Err(Error::NoWitness(format!(
                "Q_{i} links another knot fewer than {lam} times"
            )));
        }
    }
    Ok(LotsKnots {
        q,
        a2,
        final_a,
        lk_q,
        lk_last,
        extractions,
        trace,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DriverResult {
    pub schedule: Schedule,
    pub result: LotsKnots,
}

/// Picks `λ = max(α, ⌈4√α⌉)` and runs [`lotsknots`]; the knots then pairwise
/// link at least `α` times and have `|a₂| ≥ α`.
pub fn knots_driver(
    p: &mut LinkingProvider,
    link: &[OrientedCycle],
    n: usize,
    alpha: u64,
    mode: CountMode,
) -> Result<DriverResult> {
    let schedule = Schedule::new(n, alpha, mode)?;
    let result = lotsknots(p, link, n, schedule.lambda, &schedule)?;
    let al = alpha as i64;
    for (i, row) in result.lk_q.iter().enumerate() {
        if row.iter().enumerate().any(|(j, v)| j != i && v.abs() < al) {
            return Err(Error::NoWitness(format!(
                "Q_{i} links another knot fewer than {alpha} times"
            )));
        }
        if result.a2[i].is_some_and(|v| v.abs() < al) {
            return Err(Error::NoWitness(format!("|a2(Q_{i})| < {alpha}")));
        }
    }
    Ok(DriverResult { schedule, result })
}
