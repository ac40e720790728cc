//! Embeddings built to order: links whose linking numbers are known in
//! advance, plus a few standard knots and D₄ configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use super::embedding::{mirror_embedding, PLEmbedding, ProjectionDirection, RESAMPLE_BUDGET};
use super::graph::{AbstractGraph, EdgeId, VertexId};
use super::projection::validate_general_position;
use crate::cycles::{D4Configuration, OrientedCycle, Step};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::linking_number;

/// An embedding together with the cycles it was built around and a
/// projection direction that is generic for it.
#[derive(Clone, Debug)]
pub struct LinkFixture {
    pub embedding: PLEmbedding,
    pub cycles: Vec<OrientedCycle>,
    pub direction: ProjectionDirection,
}

#[derive(Clone, Debug)]
pub struct KeyringFixture {
    pub embedding: PLEmbedding,
    pub rings: Vec<OrientedCycle>,
    /// `keys[i]` hang on `rings[i]`.
    pub keys: Vec<Vec<OrientedCycle>>,
    pub direction: ProjectionDirection,
}

#[derive(Clone, Debug)]
pub struct D4Fixture {
    pub embedding: PLEmbedding,
    pub config: D4Configuration,
    pub direction: ProjectionDirection,
}

impl LinkFixture {
    pub fn diagram(&self) -> Result<Diagram> {
        Diagram::project(&self.embedding, self.direction)
    }

    pub fn graph(&self) -> &AbstractGraph {
        self.embedding.graph()
    }
}

impl KeyringFixture {
    pub fn diagram(&self) -> Result<Diagram> {
        Diagram::project(&self.embedding, self.direction)
    }
}

impl D4Fixture {
    pub fn diagram(&self) -> Result<Diagram> {
        Diagram::project(&self.embedding, self.direction)
    }
}

/// First direction in a fixed candidate stream that projects `emb`
/// generically: `(0,0,1)` and then seeded random directions.
pub fn generic_direction(emb: &PLEmbedding, seed: u64) -> Result<ProjectionDirection> {
    let z = ProjectionDirection::new(0, 0, 1)?;
    if validate_general_position(emb, z).is_ok() {
        return Ok(z);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLE_BUDGET {
        let d = ProjectionDirection::random(&mut rng);
        if validate_general_position(emb, d).is_ok() {
            return Ok(d);
        }
    }
    Err(Error::FixtureDegenerate(
        "no generic projection direction found".into(),
    ))
}

/// Graph made of `sizes.len()` disjoint cycles; returns the cycles traversed
/// in vertex order.
fn cycle_union(sizes: &[usize]) -> Result<(AbstractGraph, Vec<OrientedCycle>)> {
    let total: usize = sizes.iter().sum();
    let mut g = AbstractGraph::new(total);
    let mut starts = Vec::new();
    let mut base = 0;
    for &n in sizes {
        for i in 0..n {
            g.add_edge(VertexId(base + i), VertexId(base + (i + 1) % n))?;
        }
        starts.push(base);
        base += n;
    }
    let cycles = starts
        .iter()
        .zip(sizes)
        .map(|(&b, &n)| {
            let vs: Vec<VertexId> = (b..b + n).map(VertexId).collect();
            OrientedCycle::from_vertices(&g, &vs)
        })
        .collect::<Result<_>>()?;
    Ok((g, cycles))
}

fn round_all(pts: &[[f64; 3]], scale: f64) -> Vec<[i64; 3]> {
    pts.iter()
        .map(|p| p.map(|x| (x * scale).round() as i64))
        .collect()
}

/// `c` curves of type (1, lam) on one torus, each a closed polygon with
/// `segments_per_curve` sides, pairwise linked exactly `lam` times.
pub fn torus_link_fixture(c: usize, lam: u64, segments_per_curve: usize) -> Result<LinkFixture> {
    if c < 2 || lam < 1 {
        return Err(Error::HypothesisViolation(format!(
            "torus fixture needs c >= 2 and lam >= 1, got c = {c}, lam = {lam}"
        )));
    }
    if (segments_per_curve as u64) < 4 * lam + 4 {
        return Err(Error::HypothesisViolation(format!(
            "segments_per_curve = {segments_per_curve} is below 4*lam + 4 = {}",
            4 * lam + 4
        )));
    }
    let (g, cycles) = cycle_union(&vec![segments_per_curve; c])?;
    let (big_r, small_r) = (2.0f64, 1.0f64);
    let lamf = lam as f64;
    let mut rng =
        ChaCha8Rng::seed_from_u64(lam ^ (c as u64) << 16 ^ (segments_per_curve as u64) << 32);
    for attempt in 0..16 {
        let mut pts = Vec::with_capacity(c * segments_per_curve);
        for j in 0..c {
            let delta = 2.0 * PI * j as f64 / (c as f64 * lamf);
            for k in 0..segments_per_curve {
                let theta = 2.0 * PI * k as f64 / segments_per_curve as f64;
                let phi = lamf * theta;
                let rho = big_r + small_r * phi.cos();
                let psi = theta + delta;
                pts.push([rho * psi.cos(), rho * psi.sin(), small_r * phi.sin()]);
            }
        }
        let mut coords = round_all(&pts, (1 << 20) as f64);
        if attempt > 0 {
            for p in coords.iter_mut() {
                for x in p.iter_mut() {
                    *x += rng.random_range(-64..=64);
                }
            }
        }
        let Ok(mut emb) = PLEmbedding::from_integer_coords(g.clone(), &coords) else {
            continue;
        };
        let Ok(mut dir) = generic_direction(&emb, attempt) else {
            continue;
        };
        let Ok(d) = Diagram::project(&emb, dir) else {
            continue;
        };
        if linking_number(&d, &cycles[0], &cycles[1])? < 0 {
            emb = mirror_embedding(&emb);
            dir = dir.mirrored();
        }
        let fx = LinkFixture {
            embedding: emb,
            cycles: cycles.clone(),
            direction: dir,
        };
        if all_pairs_link(&fx, lam as i64)? {
            return Ok(fx);
        }
    }
    Err(Error::FixtureDegenerate(format!(
        "torus fixture ({c}, {lam}, {segments_per_curve})"
    )))
}

fn all_pairs_link(fx: &LinkFixture, lam: i64) -> Result<bool> {
    let d = fx.diagram()?;
    for i in 0..fx.cycles.len() {
        for j in i + 1..fx.cycles.len() {
            if linking_number(&d, &fx.cycles[i], &fx.cycles[j])? != lam {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ring polygon and key squares for one keyring centred at the origin, as
/// float points: ring first, then four corners per key.
fn keyring_points(n_keys: usize) -> (usize, Vec<[f64; 3]>) {
    let ring_n = (3 * n_keys).max(8);
    let radius = 4.0f64;
    let mut pts: Vec<[f64; 3]> = (0..ring_n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / ring_n as f64;
            [radius * a.cos(), radius * a.sin(), 0.0]
        })
        .collect();
    let step = ring_n / n_keys;
    let half = 1.0f64;
    for i in 0..n_keys {
        // key around the midpoint of ring edge (i*step, i*step+1), in the
        // vertical plane through the axis
        let a = 2.0 * PI * (i * step) as f64 / ring_n as f64 + PI / ring_n as f64;
        let m = radius * (PI / ring_n as f64).cos();
        let (cx, cy) = (a.cos(), a.sin());
        for (s, t) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
            let r = m + s * half;
            pts.push([r * cx, r * cy, t * half]);
        }
    }
    (ring_n, pts)
}

/// `m` separated keyrings with `n_keys` keys each. Every key links its own
/// ring once and nothing else.
pub fn keyrings_fixture(m: usize, n_keys: usize) -> Result<KeyringFixture> {
    if m == 0 || n_keys == 0 {
        return Err(Error::HypothesisViolation(
            "keyring fixture needs at least one ring and one key".into(),
        ));
    }
    let (ring_n, local) = keyring_points(n_keys);
    let mut sizes = Vec::new();
    for _ in 0..m {
        sizes.push(ring_n);
        sizes.extend(std::iter::repeat_n(4, n_keys));
    }
    let (g, cycles) = cycle_union(&sizes)?;
    let mut rng = ChaCha8Rng::seed_from_u64((m as u64) << 32 | n_keys as u64);
    for _ in 0..16 {
        let mut coords = Vec::new();
        for r in 0..m {
            // clusters sit on a skew line so connectors between them are generic
            let off = [14.0 * r as f64, 3.0 * r as f64, 5.0 * r as f64];
            let shifted: Vec<[f64; 3]> = local
                .iter()
                .map(|p| [p[0] + off[0], p[1] + off[1], p[2] + off[2]])
                .collect();
            coords.extend(round_all(&shifted, 4096.0));
        }
        for p in coords.iter_mut() {
            for x in p.iter_mut() {
                *x += rng.random_range(-8..=8);
            }
        }
        let Ok(emb) = PLEmbedding::from_integer_coords(g.clone(), &coords) else {
            continue;
        };
        let Ok(dir) = generic_direction(&emb, 7) else {
            continue;
        };
        let d = Diagram::project(&emb, dir)?;
        let mut rings = Vec::new();
        let mut keys = Vec::new();
        let mut it = cycles.iter();
        let mut ok = true;
        for _ in 0..m {
            let ring = it.next().expect("ring").clone();
            let mut ks = Vec::new();
            for _ in 0..n_keys {
                let k = it.next().expect("key").clone();
                match linking_number(&d, &ring, &k)? {
                    1 => ks.push(k),
                    -1 => ks.push(k.reversed()),
                    _ => ok = false,
                }
            }
            rings.push(ring);
            keys.push(ks);
        }
        let all: Vec<&OrientedCycle> = rings.iter().chain(keys.iter().flatten()).collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                let lk = linking_number(&d, a, b)?;
                let linked_pair = rings.iter().zip(&keys).any(|(r, ks)| {
                    (r.same_oriented(a) && ks.iter().any(|k| k.same_oriented(b)))
                        || (r.same_oriented(b) && ks.iter().any(|k| k.same_oriented(a)))
                });
                if lk != if linked_pair { 1 } else { 0 } {
                    ok = false;
                }
            }
        }
        if ok {
            return Ok(KeyringFixture {
                embedding: emb,
                rings,
                keys,
                direction: dir,
            });
        }
    }
    Err(Error::FixtureDegenerate(format!(
        "keyrings ({m}, {n_keys})"
    )))
}

/// One ring with `n_keys` keys.
pub fn keyring_fixture(n_keys: usize) -> Result<KeyringFixture> {
    keyrings_fixture(1, n_keys)
}

/// A ring and one key: a Hopf link with `lk = +1`.
pub fn hopf_fixture() -> Result<LinkFixture> {
    let k = keyring_fixture(1)?;
    Ok(LinkFixture {
        embedding: k.embedding,
        cycles: vec![k.rings[0].clone(), k.keys[0][0].clone()],
        direction: k.direction,
    })
}

fn knot_fixture(pts: &[[f64; 3]], scale: f64) -> Result<LinkFixture> {
    let (g, cycles) = cycle_union(&[pts.len()])?;
    let emb = PLEmbedding::from_integer_coords(g, &round_all(pts, scale))?;
    let direction = generic_direction(&emb, 3)?;
    Ok(LinkFixture {
        embedding: emb,
        cycles,
        direction,
    })
}

/// Polygonal trefoil sampled from `(sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t)`.
pub fn trefoil_fixture() -> Result<LinkFixture> {
    let n = 24;
    let pts: Vec<[f64; 3]> = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            [
                t.sin() + 2.0 * (2.0 * t).sin(),
                t.cos() - 2.0 * (2.0 * t).cos(),
                -(3.0 * t).sin(),
            ]
        })
        .collect();
    knot_fixture(&pts, 1000.0)
}

/// Polygonal figure-eight sampled from
/// `((2 + cos 2t) cos 3t, (2 + cos 2t) sin 3t, sin 4t)`.
pub fn figure_eight_fixture() -> Result<LinkFixture> {
    let n = 48;
    let pts: Vec<[f64; 3]> = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            let r = 2.0 + (2.0 * t).cos();
            [r * (3.0 * t).cos(), r * (3.0 * t).sin(), (4.0 * t).sin()]
        })
        .collect();
    knot_fixture(&pts, 1000.0)
}

/// Graph of four 4-cycles `C_i = (4i, 4i+1, 4i+2, 4i+3)` joined in a ring by
/// edges `4i -- 4(i+1)+1`; `W'` runs `4i+1 -> 4i` against each `C_i`.
pub fn d4_graph() -> Result<(AbstractGraph, D4Configuration)> {
    let mut g = AbstractGraph::new(16);
    let v = VertexId;
    for i in 0..4 {
        for k in 0..4 {
            g.add_edge(v(4 * i + k), v(4 * i + (k + 1) % 4))?;
        }
    }
    for i in 0..4 {
        g.add_edge(v(4 * i), v(4 * ((i + 1) % 4) + 1))?;
    }
    let c: Vec<OrientedCycle> = (0..4)
        .map(|i| {
            OrientedCycle::from_vertices(&g, &[v(4 * i), v(4 * i + 1), v(4 * i + 2), v(4 * i + 3)])
        })
        .collect::<Result<_>>()?;
    let ring: Vec<VertexId> = (0..4).flat_map(|i| [v(4 * i + 1), v(4 * i)]).collect();
    let w = OrientedCycle::from_vertices(&g, &ring)?;
    let cfg = D4Configuration::new(w, c.try_into().expect("four cycles"))?;
    Ok((g, cfg))
}

/// Uniformly random integer coordinates for the D₄ graph.
pub fn d4_random_fixture(seed: u64, coordinate_bits: u32) -> Result<D4Fixture> {
    let (g, config) = d4_graph()?;
    let embedding = super::embedding::random_embedding(&g, seed, coordinate_bits)?;
    let direction = generic_direction(&embedding, seed)?;
    Ok(D4Fixture {
        embedding,
        config,
        direction,
    })
}

/// D₄ in which `C_1, C_3` and `C_2, C_4` are Hopf-linked clasps, both with
/// `lk = +1`, the two clasps far apart.
pub fn double_clasp_fixture() -> Result<D4Fixture> {
    let (g, config) = d4_graph()?;
    const FLAT: [[i64; 3]; 4] = [[0, 0, 0], [4, 0, 0], [4, 4, 0], [0, 4, 0]];
    const UPRIGHT: [[i64; 3]; 4] = [[2, 2, -2], [6, 2, -2], [6, 2, 2], [2, 2, 2]];
    const FAR: [i64; 3] = [30_000, 7_000, 11_000];
    // C_1, C_2, C_3, C_4 in vertex order; C_1, C_3 form the first clasp
    let squares = [
        (&FLAT, false),
        (&FLAT, true),
        (&UPRIGHT, false),
        (&UPRIGHT, true),
    ];
    let coords_for = |flip: [bool; 2], jitter: &[[i64; 3]]| -> Vec<[i64; 3]> {
        let mut out = Vec::with_capacity(16);
        for (sq, far) in squares {
            let f = flip[far as usize];
            for p in sq.iter() {
                let j = jitter[out.len()];
                let off = if far { FAR } else { [0; 3] };
                let z = if f { -p[2] } else { p[2] };
                out.push([
                    p[0] * 1000 + off[0] + j[0],
                    p[1] * 1000 + off[1] + j[1],
                    z * 1000 + off[2] + j[2],
                ]);
            }
        }
        out
    };
    let signs =
        |coords: &[[i64; 3]]| -> Result<Option<(PLEmbedding, ProjectionDirection, i64, i64)>> {
            let Ok(emb) = PLEmbedding::from_integer_coords(g.clone(), coords) else {
                return Ok(None);
            };
            let Ok(dir) = generic_direction(&emb, 11) else {
                return Ok(None);
            };
            let d = Diagram::project(&emb, dir)?;
            let l13 = linking_number(&d, &config.c[0], &config.c[2])?;
            let l24 = linking_number(&d, &config.c[1], &config.c[3])?;
            Ok(Some((emb, dir, l13, l24)))
        };
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..16 {
        let jitter: Vec<[i64; 3]> = (0..16)
            .map(|_| [0; 3].map(|_: i64| rng.random_range(-20..=20)))
            .collect();
        let Some((_, _, l13, l24)) = signs(&coords_for([false, false], &jitter))? else {
            continue;
        };
        if l13.abs() != 1 || l24.abs() != 1 {
            continue;
        }
        // reflecting a clasp in z negates its linking number
        let Some((embedding, direction, 1, 1)) = signs(&coords_for([l13 < 0, l24 < 0], &jitter))?
        else {
            continue;
        };
        return Ok(D4Fixture {
            embedding,
            config,
            direction,
        });
    }
    Err(Error::FixtureDegenerate("double clasp".into()))
}

/// Re-indexes a cycle of one part of a disjoint union into the union.
pub fn shift_cycle(
    g: &AbstractGraph,
    c: &OrientedCycle,
    edge_offset: usize,
) -> Result<OrientedCycle> {
    let steps = c
        .steps()
        .iter()
        .map(|s| Step::new(EdgeId(s.edge.0 + edge_offset), s.forward))
        .collect();
    OrientedCycle::new(g, steps)
}

/// `count` small triangles spread along the x axis, pairwise unlinked, with
/// edge weights `1..=3·count`.
pub fn disjoint_triangles_fixture(count: usize) -> Result<LinkFixture> {
    if count == 0 {
        return Err(Error::HypothesisViolation(
            "need at least one triangle".into(),
        ));
    }
    let mut g = AbstractGraph::new(3 * count);
    let mut coords = Vec::with_capacity(3 * count);
    for t in 0..count {
        let b = 3 * t;
        for (u, v) in [(b, b + 1), (b + 1, b + 2), (b + 2, b)] {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        let (ox, oy) = (20 * t as i64, 3 * t as i64);
        coords.extend([
            [ox, oy, 0],
            [ox + 5, oy + (t % 2) as i64, 1],
            [ox + (t % 3) as i64, oy + 5, 2],
        ]);
    }
    g.set_weights(&(1..=3 * count as u64).collect::<Vec<_>>())?;
    let embedding = PLEmbedding::from_integer_coords(g, &coords)?;
    let cycles = (0..count)
        .map(|t| {
            OrientedCycle::from_vertices(
                embedding.graph(),
                &[VertexId(3 * t), VertexId(3 * t + 1), VertexId(3 * t + 2)],
            )
        })
        .collect::<Result<_>>()?;
    let direction = generic_direction(&embedding, 0)?;
    Ok(LinkFixture {
        embedding,
        cycles,
        direction,
    })
}
