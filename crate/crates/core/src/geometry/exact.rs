//! Exact integer predicates on points with bounded integer coordinates.
//!
//! Callers keep 2D inputs below 2^59 in magnitude and 3D inputs below 2^31,
//! which keeps every product inside `i128`.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type P2 = [i128; 2];
pub type P3 = [i128; 3];

#[inline]
pub fn sub2(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn cross2(a: P2, b: P2) -> i128 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn dot2(a: P2, b: P2) -> i128 {
    a[0] * b[0] + a[1] * b[1]
}

/// Twice the signed area of (a, b, c).
#[inline]
pub fn orient2d(a: P2, b: P2, c: P2) -> i128 {
    cross2(sub2(b, a), sub2(c, a))
}

/// For `c` collinear with segment ab: does it lie on the closed segment?
#[inline]
pub fn within_bbox(a: P2, b: P2, c: P2) -> bool {
    c[0] >= a[0].min(b[0])
        && c[0] <= a[0].max(b[0])
        && c[1] >= a[1].min(b[1])
        && c[1] <= a[1].max(b[1])
}

#[inline]
pub fn bboxes_overlap(a1: P2, a2: P2, b1: P2, b2: P2) -> bool {
    a1[0].max(a2[0]) >= b1[0].min(b2[0])
        && b1[0].max(b2[0]) >= a1[0].min(a2[0])
        && a1[1].max(a2[1]) >= b1[1].min(b2[1])
        && b1[1].max(b2[1]) >= a1[1].min(a2[1])
}

/// Closed-segment intersection test in the plane.
pub fn segments_meet_2d(p1: P2, p2: P2, q1: P2, q2: P2) -> bool {
    if !bboxes_overlap(p1, p2, q1, q2) {
        return false;
    }
    let o1 = orient2d(p1, p2, q1).signum();
    let o2 = orient2d(p1, p2, q2).signum();
    let o3 = orient2d(q1, q2, p1).signum();
    let o4 = orient2d(q1, q2, p2).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within_bbox(p1, p2, q1))
        || (o2 == 0 && within_bbox(p1, p2, q2))
        || (o3 == 0 && within_bbox(q1, q2, p1))
        || (o4 == 0 && within_bbox(q1, q2, p2))
}

#[inline]
pub fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn cross3(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn dot3(a: P3, b: P3) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn drop_axis(p: P3, axis: usize) -> P2 {
    match axis {
        0 => [p[1], p[2]],
        1 => [p[0], p[2]],
        _ => [p[0], p[1]],
    }
}

/// Closed-segment intersection test in space.
pub fn segments_meet_3d(p1: P3, p2: P3, q1: P3, q2: P3) -> bool {
    let r = sub3(p2, p1);
    let a = sub3(q1, p1);
    let b = sub3(q2, p1);
    // coplanarity via the triple product; magnitudes stay below 2^100
    let n1 = cross3(r, a);
    if dot3(n1, b) != 0 {
        return false;
    }
    let n2 = cross3(r, b);
    let n3 = cross3(sub3(q2, q1), sub3(p1, q1));
    let normal = [n1, n2, n3].into_iter().find(|n| n.iter().any(|&c| c != 0));
    let axis = match normal {
        Some(n) => (0..3).max_by_key(|&i| n[i].abs()).unwrap(),
        None => {
            // all four points collinear: drop an axis along which the line is not constant
            let d = if r.iter().any(|&c| c != 0) {
                r
            } else {
                sub3(q2, q1)
            };
            let keep = (0..3).max_by_key(|&i| d[i].abs()).unwrap();
            (keep + 1) % 3
        }
    };
    segments_meet_2d(
        drop_axis(p1, axis),
        drop_axis(p2, axis),
        drop_axis(q1, axis),
        drop_axis(q2, axis),
    )
}

pub fn ratio(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
