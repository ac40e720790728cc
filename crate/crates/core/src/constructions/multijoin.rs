use serde::Serialize;
use serde_json::json;

use super::{connecting_cycle, majority, CountMode, LinkingProvider, Trace};
use crate::cycles::{symmetric_difference, OrientedCycle};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct JoinResult {
    pub z: OrientedCycle,
    /// Number of J's merged into `D₀`.
    pub s: usize,
    /// Number of L's merged after `D₀`.
    pub t: usize,
    /// Orientation flips applied to the X's and Y's along the way.
    pub x_reversed: Vec<bool>,
    pub y_reversed: Vec<bool>,
    /// `lk(Z, X_α)` and `lk(Z, Y_β)` for the inputs as given.
    pub lk_x: Vec<i64>,
    pub lk_y: Vec<i64>,
    pub trace: Trace,
}

fn checked_bound(lead: u128, w: u128, pow3: usize, pow2: usize) -> Option<u128> {
    lead.checked_mul(w)?
        .checked_mul(3u128.checked_pow(pow3 as u32)?)?
        .checked_mul(2u128.checked_pow(pow2 as u32)?)
}

fn lk_table(
    p: &LinkingProvider,
    a: &[OrientedCycle],
    b: &[OrientedCycle],
) -> Result<Vec<Vec<i64>>> {
    a.iter()
        .map(|u| b.iter().map(|v| p.lk(u, v)).collect())
        .collect()
}

/// Keeps the majority sign class of `table[i][col]` over `keep`; returns the
/// kept sign.
fn filter_column(keep: &mut Vec<usize>, table: &[Vec<i64>], col: usize) -> i64 {
    let labels: Vec<i64> = keep.iter().map(|&i| table[i][col].signum()).collect();
    let Some(sign) = majority(&labels) else {
        return 1;
    };
    keep.retain(|&i| table[i][col].signum() == sign);
    sign
}

fn negate_column(table: &mut [Vec<i64>], col: usize) {
    for row in table {
        row[col] = -row[col];
    }
}

/// Scans `base △ parts[0] △ … △ parts[k-1]` for `k = 0..=parts.len()`,
/// asserting that the linking with every target strictly increases, and
/// returns the first cycle linking every target more than `lam` times.
fn monotone_scan(
    p: &LinkingProvider,
    base: OrientedCycle,
    parts: &[&OrientedCycle],
    targets: &[OrientedCycle],
    lam: i64,
    label: &str,
    trace: &mut Trace,
) -> Result<(OrientedCycle, usize)> {
    let mut cur = base;
    let mut found: Option<(OrientedCycle, usize)> = None;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(parts.len() + 1);
    for k in 0..=parts.len() {
        if k > 0 {
            cur = symmetric_difference(p.graph(), &cur, parts[k - 1])?;
        }
        let row: Vec<i64> = targets
            .iter()
            .map(|a| p.lk(&cur, a))
            .collect::<Result<_>>()?;
        if let Some(prev) = rows.last() {
            if let Some(a) = (0..row.len()).find(|&a| row[a] <= prev[a]) {
                return Err(Error::NoWitness(format!(
                    "{label} scan: lk with target {a} did not increase at step {k} ({} -> {})",
                    prev[a], row[a]
                )));
            }
        }
        if found.is_none() && row.iter().all(|v| v.abs() > lam) {
            found = Some((cur.clone(), k));
        }
        rows.push(row);
    }
    let chosen = found.as_ref().map(|f| f.1);
    trace.push(
        &format!("multijoin.scan_{label}"),
        json!({ "steps": parts.len(), "targets": targets.len(), "lambda": lam }),
        json!({ "lk": rows, "chosen": chosen }),
        "lk with each target strictly increases along the scan, so at most 2*lambda+1 steps per target are bad",
    );
    found.ok_or_else(|| {
        Error::NoWitness(format!("{label} scan found no step with all |lk| > {lam}"))
    })
}

/// A cycle through some of the J's and L's linking every X and every Y more
/// than `λ` times in absolute value.
#[allow(clippy::too_many_arguments)]
pub fn multijoin(
    p: &mut LinkingProvider,
    j: &[OrientedCycle],
    l: &[OrientedCycle],
    x: &[OrientedCycle],
    y: &[OrientedCycle],
    lam: u64,
    mode: CountMode,
) -> Result<JoinResult> {
    let (m, n) = (x.len(), y.len());
    if m + n == 0 {
        return Err(Error::HypothesisViolation("no X's or Y's to link".into()));
    }
    let w = 2 * lam as u128 + 1;
    let need_j = m * w as usize;
    let need_l = (m + n) * w as usize;
    let mut trace = Trace::new();
    if mode == CountMode::ClosedForm {
        let r_bound = checked_bound(m as u128, w, 0, m);
        let q_bound = checked_bound((m + n) as u128, w, m, n);
        let fmt = |b: Option<u128>| b.map_or("overflow".to_string(), |v| v.to_string());
        if r_bound.is_none_or(|b| (j.len() as u128) < b) {
            return Err(Error::HypothesisViolation(format!(
                "r = {} < m(2λ+1)2^m = {}",
                j.len(),
                fmt(r_bound)
            )));
        }
        if q_bound.is_none_or(|b| (l.len() as u128) < b) {
            return Err(Error::HypothesisViolation(format!(
                "q = {} < (m+n)(2λ+1)3^m 2^n = {}",
                l.len(),
                fmt(q_bound)
            )));
        }
    }
    let mut jx = lk_table(p, j, x)?;
    let mut ly = lk_table(p, l, y)?;
    let mut lx = lk_table(p, l, x)?;
    for (i, row) in jx.iter().enumerate() {
        if let Some(a) = row.iter().position(|&v| v == 0) {
            return Err(Error::HypothesisViolation(format!("lk(J_{i}, X_{a}) = 0")));
        }
    }
    for (i, row) in ly.iter().enumerate() {
        if let Some(b) = row.iter().position(|&v| v == 0) {
            return Err(Error::HypothesisViolation(format!("lk(L_{i}, Y_{b}) = 0")));
        }
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    let mut x_rev = vec![false; m];
    let mut y_rev = vec![false; n];
    let short = |what: &str, have: usize, need: usize| {
        let msg = format!("{have} {what} survive filtering, need {need}");
        match mode {
            CountMode::Relaxed => Error::HypothesisViolation(msg),
            CountMode::ClosedForm => Error::NoWitness(msg),
        }
    };

    let mut keep_j: Vec<usize> = (0..j.len()).collect();
    for a in 0..m {
        let before = keep_j.len();
        let sign = filter_column(&mut keep_j, &jx, a);
        if sign < 0 {
            xs[a] = xs[a].reversed();
            x_rev[a] ^= true;
            negate_column(&mut jx, a);
            negate_column(&mut lx, a);
        }
        trace.push(
            "multijoin.filter_j",
            json!({ "x": a, "candidates": before }),
            json!({ "kept": keep_j.len(), "sign": sign, "reverse_x": sign < 0 }),
            "keep the larger sign class of lk(J_i, X); reverse X if that class is negative",
        );
    }
    if keep_j.len() < need_j {
        return Err(short("J's", keep_j.len(), need_j));
    }
    keep_j.truncate(need_j);

    let mut keep_l: Vec<usize> = (0..l.len()).collect();
    for b in 0..n {
        let before = keep_l.len();
        let sign = filter_column(&mut keep_l, &ly, b);
        if sign < 0 {
            ys[b] = ys[b].reversed();
            y_rev[b] ^= true;
            negate_column(&mut ly, b);
        }
        trace.push(
            "multijoin.filter_l_y",
            json!({ "y": b, "candidates": before }),
            json!({ "kept": keep_l.len(), "sign": sign, "reverse_y": sign < 0 }),
            "keep the larger sign class of lk(L_j, Y); reverse Y if that class is negative",
        );
    }
    let mut x_class = vec![0i64; m];
    for a in 0..m {
        let before = keep_l.len();
        x_class[a] = filter_column(&mut keep_l, &lx, a);
        trace.push(
            "multijoin.filter_l_x",
            json!({ "x": a, "candidates": before }),
            json!({ "kept": keep_l.len(), "class": x_class[a] }),
            "keep the largest of the three classes +, -, 0 of lk(L_j, X)",
        );
    }
    if keep_l.len() < need_l {
        return Err(short("L's", keep_l.len(), need_l));
    }
    keep_l.truncate(need_l);

    let mut comps: Vec<OrientedCycle> = keep_j.iter().map(|&i| j[i].clone()).collect();
    comps.extend(keep_l.iter().map(|&i| l[i].clone()));
    let c0 = connecting_cycle(p, &comps)?;
    trace.push(
        "multijoin.connect",
        json!({ "j": keep_j, "l": keep_l }),
        json!({ "edges": c0.len() }),
        "C_0 runs backwards along the least edge of each kept J and L",
    );

    let j_parts: Vec<&OrientedCycle> = keep_j.iter().map(|&i| &j[i]).collect();
    let (d0, s) = monotone_scan(p, c0, &j_parts, &xs, lam as i64, "j", &mut trace)?;

    for a in 0..m {
        if x_class[a] < 0 {
            xs[a] = xs[a].reversed();
            x_rev[a] ^= true;
            negate_column(&mut lx, a);
            trace.push(
                "multijoin.reorient_x",
                json!({ "x": a }),
                json!({ "reverse_x": true }),
                "make lk(L_j, X) nonnegative for the kept L's",
            );
        }
    }
    let mut targets: Vec<OrientedCycle> = ys.clone();
    targets.extend((0..m).filter(|&a| x_class[a] != 0).map(|a| xs[a].clone()));
    let fixed: Vec<(usize, i64)> = (0..m)
        .filter(|&a| x_class[a] == 0)
        .map(|a| Ok((a, p.lk(&d0, &xs[a])?)))
        .collect::<Result<_>>()?;
    let l_parts: Vec<&OrientedCycle> = keep_l.iter().map(|&i| &l[i]).collect();
    let (z, t) = monotone_scan(p, d0, &l_parts, &targets, lam as i64, "l", &mut trace)?;
    for &(a, before) in &fixed {
        let after = p.lk(&z, &xs[a])?;
        if after != before {
            return Err(Error::NoWitness(format!(
                "lk(D, X_{a}) moved from {before} to {after}"
            )));
        }
    }

    let lk_x: Vec<i64> = x.iter().map(|c| p.lk(&z, c)).collect::<Result<_>>()?;
    let lk_y: Vec<i64> = y.iter().map(|c| p.lk(&z, c)).collect::<Result<_>>()?;
    let lam = lam as i64;
    if lk_x.iter().chain(&lk_y).any(|v| v.abs() <= lam) {
        return Err(Error::NoWitness("output fails |lk| > λ".into()));
    }
    trace.push(
        "multijoin.result",
        json!({ "lambda": lam }),
        json!({ "s": s, "t": t, "lk_x": lk_x, "lk_y": lk_y }),
        "Z = D_t re-verified against every X and Y",
    );
    Ok(JoinResult {
        z,
        s,
        t,
        x_reversed: x_rev,
        y_reversed: y_rev,
        lk_x,
        lk_y,
        trace,
    })
}

/// Components of a link grouped as the complete multipartite graph `H(n, m)`:
/// two classes `P₁`, `P₂` and singletons `Q_1..Q_n`.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionedLink {
    pub p1: Vec<OrientedCycle>,
    pub p2: Vec<OrientedCycle>,
    pub q: Vec<OrientedCycle>,
}

impl PartitionedLink {
    /// Checks every cross-class pair has nonzero lk and every `Q` pair has
    /// `|lk| > lam`.
    pub fn check_pattern(&self, p: &LinkingProvider, lam: u64) -> Result<()> {
        let lam = lam as i64;
        let classes: Vec<(&str, &[OrientedCycle])> = vec![("P1", &self.p1), ("P2", &self.p2)];
        for (ai, (an, a)) in classes.iter().enumerate() {
            for (bn, b) in classes.iter().skip(ai + 1) {
                for (i, u) in a.iter().enumerate() {
                    for (k, v) in b.iter().enumerate() {
                        if p.lk(u, v)? == 0 {
                            return Err(Error::HypothesisViolation(format!(
                                "lk({an}_{i}, {bn}_{k}) = 0"
                            )));
                        }
                    }
                }
            }
            for (i, u) in a.iter().enumerate() {
                for (k, v) in self.q.iter().enumerate() {
                    if p.lk(u, v)? == 0 {
                        return Err(Error::HypothesisViolation(format!(
                            "lk({an}_{i}, Q_{k}) = 0"
                        )));
                    }
                }
            }
        }
        for i in 0..self.q.len() {
            for k in i + 1..self.q.len() {
                let v = p.lk(&self.q[i], &self.q[k])?;
                if v.abs() <= lam {
                    return Err(Error::HypothesisViolation(format!(
                        "|lk(Q_{i}, Q_{k})| = {} <= {lam}",
                        v.abs()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `(2m+n)(2λ+1)3^m 2^(m+n)`, if it fits.
pub fn complete_pattern_budget(n: usize, m: usize, lam: u64) -> Option<u128> {
    checked_bound((2 * m + n) as u128, 2 * lam as u128 + 1, m, m + n)
}

/// One induction step: from `H(n, s)` with `s = m + q` to `H(n+1, m)`, the new
/// singleton being the cycle returned by [`multijoin`].
pub fn complete_pattern_build(
    p: &mut LinkingProvider,
    link: &PartitionedLink,
    n: usize,
    m: usize,
    lam: u64,
    mode: CountMode,
) -> Result<(PartitionedLink, Trace)> {
    if link.q.len() != n {
        return Err(Error::HypothesisViolation(format!(
            "{} Q's given for n = {n}",
            link.q.len()
        )));
    }
    let (s1, s2) = match mode {
        CountMode::ClosedForm => {
            let q = complete_pattern_budget(n, m, lam).ok_or_else(|| {
                Error::HypothesisViolation("q = (2m+n)(2λ+1)3^m 2^(m+n) overflows".into())
            })?;
            let s = q + m as u128;
            if (link.p1.len() as u128) < s || (link.p2.len() as u128) < s {
                return Err(Error::HypothesisViolation(format!(
                    "partitions have {} and {} components, need s = m + q = {s}",
                    link.p1.len(),
                    link.p2.len()
                )));
            }
            (s as usize, s as usize)
        }
        CountMode::Relaxed => {
            if link.p1.len() <= m || link.p2.len() <= m {
                return Err(Error::HypothesisViolation(format!(
                    "partitions have {} and {} components, need more than m = {m}",
                    link.p1.len(),
                    link.p2.len()
                )));
            }
            (link.p1.len(), link.p2.len())
        }
    };
    let used = PartitionedLink {
        p1: link.p1[..s1].to_vec(),
        p2: link.p2[..s2].to_vec(),
        q: link.q.clone(),
    };
    used.check_pattern(p, lam)?;
    let x = &used.p1[..m];
    let mut y = used.p2[..m].to_vec();
    y.extend(used.q.iter().cloned());
    let res = multijoin(p, &used.p2[m..], &used.p1[m..], x, &y, lam, mode)?;
    let mut trace = Trace::new();
    trace.push(
        "complete.step",
        json!({ "n": n, "m": m, "lambda": lam, "p1": s1, "p2": s2 }),
        json!({ "s": res.s, "t": res.t }),
        "X = first m of P1, Y = first m of P2 and the Q's, J = rest of P2, L = rest of P1",
    );
    trace.extend(res.trace);
    let mut q = used.q;
    q.push(res.z);
    let out = PartitionedLink {
        p1: x.to_vec(),
        p2: used.p2[..m].to_vec(),
        q,
    };
    out.check_pattern(p, lam)
        .map_err(|e| Error::NoWitness(format!("output pattern: {e}")))?;
    Ok((out, trace))
}
