//! Second Conway coefficient from the Alexander matrix of a knot diagram.
//!
//! With `A(t) = M0 + t·M1` the reduced Alexander matrix, `det A(t)` equals
//! `±t^k ∇(t^{1/2} - t^{-1/2})`. Differentiating `log det A` twice at `t = 1`
//! gives `tr N = k` and `tr N² = k - 2 a₂` where `N = A(1)⁻¹ M1`. All
//! arithmetic is done modulo a 61-bit prime; `|a₂|` is far below it.

use super::gauss::{gauss_code, GaussCode};
use crate::cycles::OrientedCycle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

const P: u64 = (1 << 61) - 1;

#[inline]
fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
fn mul(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    add(lo, hi)
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn from_i64(x: i64) -> u64 {
    if x >= 0 {
        x as u64 % P
    } else {
        sub(0, (-x) as u64 % P)
    }
}

fn to_i64(x: u64) -> i64 {
    if x > P / 2 {
        -((P - x) as i64)
    } else {
        x as i64
    }
}

/// a₂ of a one-component Gauss code.
pub fn a2_from_gauss(gc: &GaussCode) -> Result<i64> {
    if gc.components.len() != 1 {
        return Err(Error::NotAKnot(format!(
            "{} components",
            gc.components.len()
        )));
    }
    let n = gc.crossing_count();
    if n <= 2 {
        // at most two crossings on one component is always an unknot
        return Ok(0);
    }
    let seq = &gc.components[0];
    // arc k starts just after the k-th under-pass
    let mut unders_before = Vec::with_capacity(seq.len());
    let mut count = 0usize;
    for p in seq {
        unders_before.push(count);
        if !p.over {
            count += 1;
        }
    }
    debug_assert_eq!(count, n);
    let mut over_arc = vec![0usize; n];
    let mut in_arc = vec![0usize; n];
    let mut out_arc = vec![0usize; n];
    for (pos, p) in seq.iter().enumerate() {
        let k = unders_before[pos];
        if p.over {
            over_arc[p.crossing] = (k + n - 1) % n;
        } else {
            in_arc[p.crossing] = (k + n - 1) % n;
            out_arc[p.crossing] = k;
        }
    }
    let m = n - 1;
    // A(1) and the t-coefficient M1, both (n-1)x(n-1) after deleting the
    // last row and column
    let mut a1 = vec![vec![0u64; m]; m];
    let mut m1 = vec![vec![0u64; m]; m];
    for c in 0..m {
        let (k, i, j) = (over_arc[c], in_arc[c], out_arc[c]);
        let mut put = |col: usize, c0: i64, c1: i64| {
            if col < m {
                a1[c][col] = add(a1[c][col], from_i64(c0 + c1));
                m1[c][col] = add(m1[c][col], from_i64(c1));
            }
        };
        put(k, 1, -1);
        if gc.signs[c] > 0 {
            put(i, 0, 1);
            put(j, -1, 0);
        } else {
            put(i, -1, 0);
            put(j, 0, 1);
        }
    }
    let nm = solve(a1, m1)
        .ok_or_else(|| Error::NotAKnot("Alexander matrix is singular at t = 1".into()))?;
    let mut tr = 0u64;
    let mut tr2 = 0u64;
    for i in 0..m {
        tr = add(tr, nm[i][i]);
        for j in 0..m {
            tr2 = add(tr2, mul(nm[i][j], nm[j][i]));
        }
    }
    Ok(to_i64(mul(sub(tr, tr2), inv(2))))
}

/// Returns `A⁻¹ B` by Gauss-Jordan elimination, or `None` if `A` is singular.
fn solve(mut a: Vec<Vec<u64>>, mut b: Vec<Vec<u64>>) -> Option<Vec<Vec<u64>>> {
    let m = a.len();
    for col in 0..m {
        let piv = (col..m).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        b.swap(col, piv);
        let iv = inv(a[col][col]);
        for x in a[col].iter_mut().chain(b[col].iter_mut()) {
            *x = mul(*x, iv);
        }
        let (prow_a, prow_b) = (a[col].clone(), b[col].clone());
        for r in 0..m {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let f = a[r][col];
            for (x, &y) in a[r].iter_mut().zip(&prow_a).skip(col) {
                *x = sub(*x, mul(f, y));
            }
            for (x, &y) in b[r].iter_mut().zip(&prow_b) {
                if y != 0 {
                    *x = sub(*x, mul(f, y));
                }
            }
        }
    }
    Some(b)
}

/// Second coefficient of the Conway polynomial of a cycle's knot diagram.
pub fn conway_a2(d: &Diagram, c: &OrientedCycle) -> Result<i64> {
    let gc = gauss_code(d, std::slice::from_ref(c))?;
    if gc.has_twist_crossings() {
        return Err(Error::Unsupported(
            "a2 through literal twist crossings".into(),
        ));
    }
    a2_from_gauss(&gc)
}
