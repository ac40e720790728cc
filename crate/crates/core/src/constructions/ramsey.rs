use serde::Serialize;

use super::LinkingProvider;
use crate::cycles::OrientedCycle;
use crate::error::{Error, Result};

/// A red/blue coloring of the edges of `K_m`; `true` is red.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    m: usize,
    red: Vec<Vec<bool>>,
}

impl Coloring {
    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut red = vec![vec![false; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let c = f(i, j);
                red[i][j] = c;
                red[j][i] = c;
            }
        }
        Self { m, red }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn is_red(&self, i: usize, j: usize) -> bool {
        self.red[i][j]
    }
}

fn extend(c: &Coloring, color: bool, n: usize, clique: &mut Vec<usize>, start: usize) -> bool {
    if clique.len() == n {
        return true;
    }
    for v in start..c.m {
        if c.m - v < n - clique.len() {
            return false;
        }
        if clique.iter().all(|&u| c.red[u][v] == color) {
            clique.push(v);
            if extend(c, color, n, clique, v + 1) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

/// The lexicographically first red `n`-clique, else the first blue one.
/// Returns the vertices and the color (`true` for red).
pub fn find_monochromatic_clique(c: &Coloring, n: usize) -> Option<(Vec<usize>, bool)> {
    if n > c.m {
        return None;
    }
    for color in [true, false] {
        let mut clique = Vec::with_capacity(n);
        if extend(c, color, n, &mut clique, 0) {
            return Some((clique, color));
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct MonochromaticLink {
    pub components: Vec<usize>,
    /// `+1` when every pair links positively, `−1` when negatively.
    pub sign: i64,
    pub lk: Vec<Vec<i64>>,
}

/// `n` components of a link with complete pattern whose pairwise linking
/// numbers share one sign.
pub fn ramsey_monochromatic_link(
    p: &LinkingProvider,
    link: &[OrientedCycle],
    n: usize,
) -> Result<MonochromaticLink> {
    let m = link.len();
    let mut lk = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let v = p.lk(&link[i], &link[j])?;
            if v == 0 {
                return Err(Error::PatternNotComplete(i, j));
            }
            lk[i][j] = v;
            lk[j][i] = v;
        }
    }
    let coloring = Coloring::from_fn(m, |i, j| lk[i][j] > 0);
    let (components, red) = find_monochromatic_clique(&coloring, n).ok_or(Error::NotFound)?;
    Ok(MonochromaticLink {
        components,
        sign: if red { 1 } else { -1 },
        lk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_has_no_monochromatic_triangle() {
        let c = Coloring::from_fn(5, |i, j| {
            let d = (j + 5 - i) % 5;
            d == 1 || d == 4
        });
        assert_eq!(find_monochromatic_clique(&c, 3), None);
        assert_eq!(find_monochromatic_clique(&c, 2), Some((vec![0, 1], true)));
    }

    #[test]
    fn trivial_cases() {
        let c = Coloring::from_fn(4, |_, _| false);
        assert_eq!(
            find_monochromatic_clique(&c, 4),
            Some((vec![0, 1, 2, 3], false))
        );
        assert_eq!(find_monochromatic_clique(&c, 1), Some((vec![0], true)));
        assert_eq!(find_monochromatic_clique(&c, 5), None);
    }
}
