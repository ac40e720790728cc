//! Conway polynomial by the skein relation `∇(L+) - ∇(L-) = z ∇(L0)`,
//! starting from `∇(unknot) = 1` and `∇(split link) = 0`.

use serde::de::Deserializer;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use super::gauss::{gauss_code, GaussCode, Pass};
use crate::cycles::OrientedCycle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Integer polynomial in `z`; `coeffs[i]` multiplies `z^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConwayPolynomial {
    coeffs: Vec<i64>,
}

impl ConwayPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `self + s·z·other`
    fn add_shifted(&self, other: &Self, s: i64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len() + 1);
        let mut out = vec![0; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i + 1] += s * c;
        }
        Self::new(out)
    }
}

impl Serialize for ConwayPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [i64]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let nz: Vec<(usize, i64)> = self
                    .0
                    .iter()
                    .copied()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .collect();
                let mut m = s.serialize_map(Some(nz.len()))?;
                for (i, c) in nz {
                    m.serialize_entry(&i.to_string(), &c)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for ConwayPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: BTreeMap<String, i64>,
        }
        let raw = Raw::deserialize(d)?;
        let mut coeffs = Vec::new();
        for (k, v) in raw.coeffs {
            let i: usize = k.parse().map_err(serde::de::Error::custom)?;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, 0);
            }
            coeffs[i] = v;
        }
        Ok(Self::new(coeffs))
    }
}

type Key = (Vec<Vec<(u32, bool)>>, Vec<i8>);

fn normalize(components: &[Vec<Pass>], signs: &[i8]) -> Key {
    let mut relabel: HashMap<usize, u32> = HashMap::new();
    let mut new_signs = Vec::new();
    let comps = components
        .iter()
        .map(|c| {
            c.iter()
                .map(|p| {
                    let id = *relabel.entry(p.crossing).or_insert_with(|| {
                        new_signs.push(signs[p.crossing]);
                        (new_signs.len() - 1) as u32
                    });
                    (id, p.over)
                })
                .collect()
        })
        .collect();
    (comps, new_signs)
}

struct Skein {
    memo: HashMap<Key, ConwayPolynomial>,
}

impl Skein {
    fn eval(&mut self, key: Key) -> ConwayPolynomial {
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let result = self.compute(&key);
        self.memo.insert(key, result.clone());
        result
    }

    fn compute(&mut self, key: &Key) -> ConwayPolynomial {
        let (comps, signs) = key;
        if comps.len() > 1 && is_split(comps, signs.len()) {
            return ConwayPolynomial::zero();
        }
        if let Some(reduced) = reduce(comps) {
            let passes: Vec<Vec<Pass>> = reduced
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&(id, over)| Pass {
                            crossing: id as usize,
                            over,
                        })
                        .collect()
                })
                .collect();
            return self.eval(normalize(&passes, signs));
        }
        // walk components in order from their base points; a crossing first
        // met from below makes the diagram non-descending
        let mut seen = vec![false; signs.len()];
        let mut bad = None;
        'walk: for c in comps {
            for &(x, over) in c {
                let x = x as usize;
                if !seen[x] {
                    seen[x] = true;
                    if !over {
                        bad = Some(x);
                        break 'walk;
                    }
                }
            }
        }
        let Some(x) = bad else {
            return if comps.len() == 1 {
                ConwayPolynomial::one()
            } else {
                ConwayPolynomial::zero()
            };
        };
        let to_passes = |c: &Vec<(u32, bool)>| -> Vec<Pass> {
            c.iter()
                .map(|&(id, over)| Pass {
                    crossing: id as usize,
                    over,
                })
                .collect()
        };
        let passes: Vec<Vec<Pass>> = comps.iter().map(to_passes).collect();

        let mut switched = passes.clone();
        for p in switched.iter_mut().flatten() {
            if p.crossing == x {
                p.over = !p.over;
            }
        }
        let mut sw_signs = signs.clone();
        sw_signs[x] = -sw_signs[x];
        let p_switched = self.eval(normalize(&switched, &sw_signs));

        let smoothed = smooth(&passes, x);
        let p_smoothed = self.eval(normalize(&smoothed, signs));
        // L+ = L- + z L0, and L- = L+ - z L0
        p_switched.add_shifted(&p_smoothed, signs[x] as i64)
    }
}

/// Whether the crossings leave the components in more than one group.
fn is_split(comps: &[Vec<(u32, bool)>], n: usize) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<usize> = (0..comps.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (ci, c) in comps.iter().enumerate() {
        for &(x, _) in c {
            match owner[x as usize] {
                None => owner[x as usize] = Some(ci),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, ci));
                    parent[a] = b;
                }
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..comps.len()).any(|i| find(&mut parent, i) != root)
}

/// Drops one Reidemeister I kink or one Reidemeister II bigon, if present.
/// A kink is a crossing whose two passes are cyclically adjacent; a bigon is
/// a pair of crossings met consecutively over-over on one strand and
/// under-under on another.
fn reduce(comps: &[Vec<(u32, bool)>]) -> Option<Vec<Vec<(u32, bool)>>> {
    let drop = |ids: &[u32]| -> Vec<Vec<(u32, bool)>> {
        comps
            .iter()
            .map(|c| {
                c.iter()
                    .copied()
                    .filter(|(x, _)| !ids.contains(x))
                    .collect()
            })
            .collect()
    };
    let adjacent = |c: &Vec<(u32, bool)>| -> Vec<((u32, bool), (u32, bool))> {
        (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect()
    };
    let mut over_pairs = std::collections::HashSet::new();
    let mut under_pairs = Vec::new();
    for c in comps.iter().filter(|c| c.len() >= 2) {
        for (a, b) in adjacent(c) {
            if a.0 == b.0 {
                return Some(drop(&[a.0]));
            }
            if a.1 && b.1 {
                over_pairs.insert((a.0.min(b.0), a.0.max(b.0)));
            } else if !a.1 && !b.1 {
                under_pairs.push((a.0.min(b.0), a.0.max(b.0)));
            }
        }
    }
    under_pairs
        .into_iter()
        .find(|p| over_pairs.contains(p))
        .map(|(x, y)| drop(&[x, y]))
}

/// Oriented smoothing of crossing `x`.
fn smooth(comps: &[Vec<Pass>], x: usize) -> Vec<Vec<Pass>> {
    let hits: Vec<(usize, usize)> = comps
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| {
            c.iter()
                .enumerate()
                .filter(|(_, p)| p.crossing == x)
                .map(move |(pi, _)| (ci, pi))
        })
        .collect();
    debug_assert_eq!(hits.len(), 2);
    let (c1, i1) = hits[0];
    let (c2, i2) = hits[1];
    let mut out: Vec<Vec<Pass>> = Vec::with_capacity(comps.len() + 1);
    if c1 == c2 {
        let c = &comps[c1];
        // [p1, A.., p2, B..] splits into A and B
        let a: Vec<Pass> = c[i1 + 1..i2].to_vec();
        let b: Vec<Pass> = c[i2 + 1..].iter().chain(&c[..i1]).copied().collect();
        for (ci, comp) in comps.iter().enumerate() {
            if ci == c1 {
                out.push(a.clone());
                out.push(b.clone());
            } else {
                out.push(comp.clone());
            }
        }
    } else {
        let rot = |c: &Vec<Pass>, i: usize| -> Vec<Pass> {
            c[i + 1..].iter().chain(&c[..i]).copied().collect()
        };
        let merged: Vec<Pass> = rot(&comps[c1], i1)
            .into_iter()
            .chain(rot(&comps[c2], i2))
            .collect();
        for (ci, comp) in comps.iter().enumerate() {
            if ci == c1 {
                out.push(merged.clone());
            } else if ci != c2 {
                out.push(comp.clone());
            }
        }
    }
    out
}

/// Conway polynomial of a Gauss code with at most `cap` crossings.
pub fn conway_from_gauss(gc: &GaussCode, cap: usize) -> Result<ConwayPolynomial> {
    if gc.crossing_count() > cap {
        return Err(Error::OracleCapExceeded {
            crossings: gc.crossing_count(),
            cap,
        });
    }
    gc.validate()?;
    let mut s = Skein {
        memo: HashMap::new(),
    };
    Ok(s.eval(normalize(&gc.components, &gc.signs)))
}

/// Conway polynomial of the sub-diagram formed by one or two cycles.
pub fn conway_skein(d: &Diagram, cycles: &[OrientedCycle], cap: usize) -> Result<ConwayPolynomial> {
    let gc = gauss_code(d, cycles)?;
    conway_from_gauss(&gc, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(comps: &[&[(usize, bool)]], signs: &[i8]) -> GaussCode {
        GaussCode {
            components: comps
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&(crossing, over)| Pass { crossing, over })
                        .collect()
                })
                .collect(),
            signs: signs.to_vec(),
            twisted: Vec::new(),
        }
    }

    #[test]
    fn standard_knots() {
        let trefoil = code(
            &[&[
                (0, true),
                (1, false),
                (2, true),
                (0, false),
                (1, true),
                (2, false),
            ]],
            &[1, 1, 1],
        );
        assert_eq!(
            conway_from_gauss(&trefoil, 16).unwrap(),
            ConwayPolynomial::new(vec![1, 0, 1])
        );
        let fig8 = code(
            &[&[
                (0, true),
                (1, false),
                (2, true),
                (3, false),
                (1, true),
                (0, false),
                (3, true),
                (2, false),
            ]],
            &[-1, -1, 1, 1],
        );
        assert_eq!(
            conway_from_gauss(&fig8, 16).unwrap(),
            ConwayPolynomial::new(vec![1, 0, -1])
        );
        let hopf = code(
            &[&[(0, true), (1, false)], &[(0, false), (1, true)]],
            &[1, 1],
        );
        assert_eq!(
            conway_from_gauss(&hopf, 16).unwrap(),
            ConwayPolynomial::new(vec![0, 1])
        );
        let unlink = code(&[&[], &[]], &[]);
        assert_eq!(
            conway_from_gauss(&unlink, 16).unwrap(),
            ConwayPolynomial::zero()
        );
    }

    #[test]
    fn cap_enforced() {
        let big = code(&[&[]], &[1; 17]);
        assert!(matches!(
            conway_from_gauss(&big, 16),
            Err(Error::OracleCapExceeded {
                crossings: 17,
                cap: 16
            })
        ));
    }

    #[test]
    fn polynomial_json() {
        let p = ConwayPolynomial::new(vec![1, 0, -1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":{"0":1,"2":-1}}"#);
        assert_eq!(serde_json::from_str::<ConwayPolynomial>(&s).unwrap(), p);
    }
}
