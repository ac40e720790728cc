use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram, Over, Position, Strand};
use crate::cycles::{disjoint_cycle_pairs, OrientedCycle, Step};
use crate::error::{Error, Result};
use crate::geometry::{AbstractGraph, EdgeId};
use crate::invariants::linking_number;

/// Largest multiplicity a literal expansion will materialize.
pub const DEFAULT_EXPANSION_CAP: u64 = 4096;

/// A block of full twists between two disjoint edges, kept symbolically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRegion {
    pub k: usize,
    pub e: EdgeId,
    pub f: EdgeId,
    #[serde(with = "crate::io::dec_unsigned")]
    pub multiplicity: BigUint,
    /// +1 for positive twists, -1 after mirroring.
    #[serde(default = "plus_one")]
    pub sign: i8,
    pub anchor_e: Position,
    pub anchor_f: Position,
}

fn plus_one() -> i8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedDiagram {
    pub base: Diagram,
    pub regions: Vec<TwistRegion>,
    pub t: BigInt,
    pub m: BigInt,
}

pub enum TwistOutcome {
    Literal(Diagram),
    Symbolic(TwistedDiagram),
}

#[derive(Serialize, Deserialize)]
struct TwistedFile {
    base: serde_json::Value,
    regions: Vec<TwistRegion>,
    #[serde(with = "crate::io::dec")]
    t: BigInt,
    #[serde(rename = "M", with = "crate::io::dec")]
    m: BigInt,
}

fn check_pair(g: &AbstractGraph, e: EdgeId, f: EdgeId) -> Result<()> {
    for x in [e, f] {
        if x.0 >= g.edge_count() {
            return Err(Error::InvalidGraph(format!("unknown edge {x}")));
        }
    }
    if !g.edges_disjoint(e, f) {
        return Err(Error::SharedEndpoint(e.0, f.0));
    }
    Ok(())
}

/// A fresh anchor on the first segment of `e`, past every crossing and every
/// reserved anchor already there.
fn default_anchor(d: &Diagram, e: EdgeId, reserved: &[&Position]) -> Position {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut last = BigRational::zero();
    let on_e = d.crossings_on(e).iter().map(|&c| d.position(c, e));
    for p in on_e.chain(reserved.iter().copied()) {
        if p.seg == 0 && p.t > last {
            last = p.t.clone();
        }
    }
    Position::on_segment(0, (last + BigRational::one()) * half)
}

impl TwistedDiagram {
    pub fn from_base(base: Diagram) -> Self {
        Self {
            base,
            regions: Vec::new(),
            t: BigInt::zero(),
            m: BigInt::zero(),
        }
    }

    fn reserved(&self, e: EdgeId) -> Vec<&Position> {
        self.regions
            .iter()
            .flat_map(|r| [(r.e, &r.anchor_e), (r.f, &r.anchor_f)])
            .filter(|(x, _)| *x == e)
            .map(|(_, p)| p)
            .collect()
    }

    /// Appends a symbolic region of `k` positive full twists.
    pub fn add_region(&mut self, e: EdgeId, f: EdgeId, k: BigUint) -> Result<()> {
        check_pair(self.base.graph(), e, f)?;
        let anchor_e = default_anchor(&self.base, e, &self.reserved(e));
        let anchor_f = default_anchor(&self.base, f, &self.reserved(f));
        self.regions.push(TwistRegion {
            k: self.regions.len(),
            e,
            f,
            multiplicity: k,
            sign: 1,
            anchor_e,
            anchor_f,
        });
        Ok(())
    }

    /// Materializes every region as crossings.
    pub fn expand(&self, cap: u64) -> Result<Diagram> {
        let mut d = self.base.clone();
        for r in &self.regions {
            d = twist_crossings(&d, r, cap)?;
        }
        Ok(d)
    }

    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        out.base = self.base.mirror();
        for r in &mut out.regions {
            r.sign = -r.sign;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TwistedFile {
            base: self.base.to_json(),
            regions: self.regions.clone(),
            t: self.t.clone(),
            m: self.m.clone(),
        })
        .expect("twisted diagram serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let f: TwistedFile =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let base = Diagram::from_json(&f.base)?;
        for r in &f.regions {
            check_pair(base.graph(), r.e, r.f)?;
        }
        Ok(Self {
            base,
            regions: f.regions,
            t: f.t,
            m: f.m,
        })
    }
}

fn twist_crossings(d: &Diagram, r: &TwistRegion, cap: u64) -> Result<Diagram> {
    check_pair(d.graph(), r.e, r.f)?;
    let k = match r.multiplicity.to_u64() {
        Some(k) if k <= cap => k,
        _ => {
            return Err(Error::ExpansionCapExceeded {
                requested: r.multiplicity.to_string(),
                cap,
            })
        }
    };
    if k == 0 {
        return Ok(d.clone());
    }
    let mut new = Vec::with_capacity(2 * k as usize);
    for i in 1..=2 * k as u32 {
        let at = |p: &Position| Position {
            seg: p.seg,
            t: p.t.clone(),
            sub: i,
        };
        // the two strands swap sides at each half twist
        let e_over = (i % 2 == 1) == (r.sign > 0);
        new.push(Crossing {
            a: Strand {
                edge: r.e,
                pos: at(&r.anchor_e),
            },
            b: Strand {
                edge: r.f,
                pos: at(&r.anchor_f),
            },
            over: if e_over { Over::A } else { Over::B },
            handedness: r.sign,
            twist: Some(r.k),
        });
    }
    let mut crossings = d.crossings().to_vec();
    crossings.extend(new);
    Diagram::new(d.graph().clone(), d.arcs().to_vec(), crossings)
}

/// Adds `k` positive full twists between `e` and `f`: literally as `2k`
/// crossings, or as a symbolic region.
pub fn insert_twists(
    d: &Diagram,
    e: EdgeId,
    f: EdgeId,
    k: &BigUint,
    literal: bool,
    cap: u64,
) -> Result<TwistOutcome> {
    check_pair(d.graph(), e, f)?;
    let mut td = TwistedDiagram::from_base(d.clone());
    if literal {
        if k.is_zero() {
            return Ok(TwistOutcome::Literal(d.clone()));
        }
        td.add_region(e, f, k.clone())?;
        let r = td.regions.pop().expect("region just added");
        Ok(TwistOutcome::Literal(twist_crossings(d, &r, cap)?))
    } else {
        td.add_region(e, f, k.clone())?;
        Ok(TwistOutcome::Symbolic(td))
    }
}

/// Literal insertion at caller-chosen anchors.
pub fn insert_twists_at(
    d: &Diagram,
    e: EdgeId,
    f: EdgeId,
    k: u64,
    anchor_e: Position,
    anchor_f: Position,
    cap: u64,
) -> Result<Diagram> {
    let r = TwistRegion {
        k: 0,
        e,
        f,
        multiplicity: BigUint::from(k),
        sign: 1,
        anchor_e,
        anchor_f,
    };
    twist_crossings(d, &r, cap)
}

/// Linking number in the twisted diagram, without expanding the regions.
pub fn symbolic_linking(
    td: &TwistedDiagram,
    c1: &OrientedCycle,
    c2: &OrientedCycle,
) -> Result<BigInt> {
    let base = linking_number(&td.base, c1, c2)?;
    let (d1, d2) = (c1.direction_map(), c2.direction_map());
    let mut total = BigInt::from(base);
    for r in &td.regions {
        let eps = match (d1.get(&r.e), d2.get(&r.f), d1.get(&r.f), d2.get(&r.e)) {
            (Some(a), Some(b), _, _) => a * b,
            (_, _, Some(a), Some(b)) => a * b,
            _ => 0,
        };
        if eps != 0 {
            total += BigInt::from(eps * r.sign as i64) * BigInt::from(r.multiplicity.clone());
        }
    }
    Ok(total)
}

/// Orients a cycle so that its heaviest edge is traversed in stored direction.
pub fn orient_by_max_weight(g: &AbstractGraph, c: &OrientedCycle) -> Result<OrientedCycle> {
    let top: &Step = c
        .steps()
        .iter()
        .max_by_key(|s| g.edge(s.edge).weight)
        .expect("cycles are nonempty");
    if g.edge(top.edge).weight.is_none() {
        return Err(Error::NonuniqueWeights);
    }
    Ok(if top.forward { c.clone() } else { c.reversed() })
}

/// Twists every disjoint edge pair, the k-th pair in lexicographic weight
/// order receiving `3^k · t` twists with `t = M + lam`. Cycles are then
/// oriented with [`orient_by_max_weight`].
pub fn build_twisted_embedding(base: &Diagram, lam: u64) -> Result<TwistedDiagram> {
    let g = base.graph();
    let w = g.unique_weights().ok_or(Error::NonuniqueWeights)?;
    let mut m = 0i64;
    for (a, b) in disjoint_cycle_pairs(g) {
        m = m.max(linking_number(base, &a, &b)?.abs());
    }
    let t = BigInt::from(m) + BigInt::from(lam);
    let mut pairs = Vec::new();
    for e in g.edge_ids() {
        for f in g.edge_ids() {
            if w[e.0] < w[f.0] && g.edges_disjoint(e, f) {
                pairs.push((w[e.0], w[f.0], e, f));
            }
        }
    }
    pairs.sort_unstable();
    let mut td = TwistedDiagram::from_base(base.clone());
    td.t = t.clone();
    td.m = BigInt::from(m);
    let t = t.to_biguint().expect("t is positive");
    let mut mult = t;
    for (_, _, e, f) in pairs {
        td.add_region(e, f, mult.clone())?;
        mult *= 3u32;
    }
    Ok(td)
}
