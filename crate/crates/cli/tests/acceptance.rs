//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p linkforge-cli --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use linkforge::constructions::{
    a2_bound, find_monochromatic_clique, knot_extract, knots_driver, multijoin, multimerge,
    ramsey_monochromatic_link, verify_cg6, verify_cg7, verify_cor3, verify_prop2, verify_ty,
    verify_ty_random, Coloring, CountMode, FillRule, LinkingProvider, MergeBranch,
    SyntheticProvider,
};
use linkforge::cycles::{hamiltonian_cycles, ConnectingCycleSpec, Traversal};
use linkforge::diagram::{build_twisted_embedding, Diagram};
use linkforge::geometry::{
    disjoint_triangles_fixture, double_clasp_fixture, figure_eight_fixture, generic_direction,
    keyrings_fixture, random_embedding, torus_link_fixture, trefoil_fixture, AbstractGraph, EdgeId,
};
use linkforge::invariants::{conway_a2, conway_skein, gauss_code, linking_number};
use linkforge_cli::{run, RunConfig, Status};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<String, String> {
    let e = t.elapsed();
    ensure(e < limit, format!("took {e:.1?}, limit {limit:?}"))?;
    Ok(format!("{e:.1?}"))
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// A diagram projected afresh from the provider's current embedding.
fn fresh(p: &LinkingProvider) -> Result<Diagram, String> {
    let LinkingProvider::Geometric(g) = p else {
        return Err("geometric provider expected".into());
    };
    Diagram::project(g.embedding(), g.direction()).map_err(e2s)
}

fn weighted_complete(n: usize) -> AbstractGraph {
    let mut g = AbstractGraph::complete(n);
    g.set_weights(&(1..=g.edge_count() as u64).collect::<Vec<_>>())
        .unwrap();
    g
}

fn c1_cg6() -> Check {
    let t = Instant::now();
    let r = verify_cg6(50, 1, 16);
    ensure(
        r.passes == 50,
        format!("{}/50 passed: {:?}", r.passes, r.failures),
    )?;
    Ok(format!(
        "50/50 odd, {}",
        within(t, Duration::from_secs(60))?
    ))
}

fn c2_cg7() -> Check {
    let t = Instant::now();
    let r = verify_cg7(10, 1, 16);
    ensure(
        r.passes == 10,
        format!("{}/10 passed: {:?}", r.passes, r.failures),
    )?;
    Ok(format!(
        "10/10 odd, {}",
        within(t, Duration::from_secs(600))?
    ))
}

fn c3_ty() -> Check {
    let r = verify_ty_random(100, 1, 16);
    ensure(
        r.passes == 100,
        format!("{}/100 passed: {:?}", r.passes, r.failures),
    )?;
    let fx = double_clasp_fixture().map_err(e2s)?;
    let c = verify_ty(&fx.config, &fx.diagram().map_err(e2s)?).map_err(e2s)?;
    ensure(
        c.bound == 1,
        format!("double clasp right side is {}", c.bound),
    )?;
    ensure(c.sum >= c.bound, format!("double clasp sum {} < 1", c.sum))?;
    Ok(format!("100/100 random, double clasp {} >= 1", c.sum))
}

fn c4_oracle() -> Check {
    let cap = 14;
    let g = AbstractGraph::complete(7);
    let hams = hamiltonian_cycles(&g);
    let (mut compared, mut nontrivial) = (0, 0);
    let mut seed = 0;
    while compared < 200 {
        let emb = random_embedding(&g, seed, 16).map_err(e2s)?;
        let d = Diagram::project(&emb, generic_direction(&emb, seed).map_err(e2s)?).map_err(e2s)?;
        // the ten most crossed cycles within the cap; fewer than 3 crossings
        // is always unknotted
        let mut cands = Vec::new();
        for k in &hams {
            let n = gauss_code(&d, std::slice::from_ref(k))
                .map_err(e2s)?
                .crossing_count();
            if (3..=cap).contains(&n) {
                cands.push((std::cmp::Reverse(n), k));
            }
        }
        cands.sort_by_key(|c| c.0);
        for (_, k) in cands.into_iter().take(10.min(200 - compared)) {
            let a2 = conway_a2(&d, k).map_err(e2s)?;
            let z = conway_skein(&d, std::slice::from_ref(k), cap)
                .map_err(e2s)?
                .coeff(2);
            ensure(
                a2 == z,
                format!("seed {seed}: Alexander route {a2}, skein {z}"),
            )?;
            compared += 1;
            if a2 != 0 {
                nontrivial += 1;
            }
        }
        seed += 1;
    }
    for (name, fx, want) in [
        ("trefoil", trefoil_fixture(), 1),
        ("figure-eight", figure_eight_fixture(), -1),
    ] {
        let fx = fx.map_err(e2s)?;
        let a2 = conway_a2(&fx.diagram().map_err(e2s)?, &fx.cycles[0]).map_err(e2s)?;
        ensure(a2 == want, format!("{name}: a2 = {a2}, expected {want}"))?;
    }
    Ok(format!(
        "200/200 agree ({nontrivial} with a2 != 0, {seed} embeddings), trefoil 1, figure-eight -1"
    ))
}

fn c5_prop2() -> Check {
    let emb = random_embedding(&weighted_complete(6), 1, 16).map_err(e2s)?;
    let d = Diagram::project(&emb, generic_direction(&emb, 1).map_err(e2s)?).map_err(e2s)?;
    let r = verify_prop2(&build_twisted_embedding(&d, 2).map_err(e2s)?, 2, None).map_err(e2s)?;
    ensure(
        r.pairs == 10 && r.pass,
        format!("K6: {} pairs, failures {:?}", r.pairs, r.failures),
    )?;
    let fx = disjoint_triangles_fixture(2).map_err(e2s)?;
    let td = build_twisted_embedding(&fx.diagram().map_err(e2s)?, 1).map_err(e2s)?;
    let l = verify_prop2(&td, 1, Some(1 << 16)).map_err(e2s)?;
    ensure(
        l.literal_checked == 1 && l.pass,
        format!("two triangles: {:?}", l.failures),
    )?;
    Ok(format!(
        "K6 min lk {} over 10 pairs; two triangles symbolic = literal",
        r.min_lk.unwrap_or_default()
    ))
}

fn c6_cor3() -> Check {
    let t = Instant::now();
    let fx = disjoint_triangles_fixture(3).map_err(e2s)?;
    let td = build_twisted_embedding(&fx.diagram().map_err(e2s)?, 1).map_err(e2s)?;
    let r = verify_cor3(&td).map_err(e2s)?;
    ensure(r.triples == 1, format!("{} triples", r.triples))?;
    ensure(
        r.positive_pass && r.mirror_negative_pass,
        format!("{:?}", r.failures),
    )?;
    Ok(format!(
        "{} orientations, mirror negative, {}",
        r.assignments,
        within(t, Duration::from_secs(10))?
    ))
}

fn c7_multimerge() -> Check {
    let k = keyrings_fixture(4, 1).map_err(e2s)?;
    let mut p = LinkingProvider::geometric(k.embedding.clone(), k.direction).map_err(e2s)?;
    let j: Vec<_> = k.keys.iter().map(|ks| ks[0].clone()).collect();
    let res = multimerge(&mut p, &j, &k.rings, 2).map_err(e2s)?;
    ensure(!res.index_set.is_empty(), "empty index set")?;
    let d = fresh(&p)?;
    for &i in &res.index_set {
        let w = linking_number(&d, &res.z, &k.rings[i])
            .map_err(e2s)?
            .rem_euclid(2);
        ensure(w == 1, format!("omega(Z, X_{i}) = {w}"))?;
    }
    let geo = res.index_set.len();

    // X_j = component 4 + j, J_i = component i, fixed mod-2 matrix
    let m = [[1, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 1, 1]];
    let pairs: Vec<_> = (0..4)
        .flat_map(|i| {
            (0..4)
                .filter(move |&t| m[i][t] == 1)
                .map(move |t| (i, 4 + t, 1))
        })
        .collect();
    let mut passed = 0;
    for assignment in 0..16u32 {
        let (sp, cycles) = SyntheticProvider::from_pairs(8, &pairs, FillRule::Zero).map_err(e2s)?;
        let mut p = LinkingProvider::Synthetic(sp);
        let (j, x) = cycles.split_at(4);
        let spec =
            ConnectingCycleSpec::with_default_ends(p.graph(), j.to_vec(), Traversal::Against);
        let conn = p.connect_all(&spec.connector_pairs()).map_err(e2s)?;
        if let LinkingProvider::Synthetic(sp) = &mut p {
            for t in 0..4 {
                sp.set(
                    conn[0],
                    EdgeId(3 * (4 + t) + 2),
                    (assignment >> t & 1) as i64,
                );
            }
        }
        let res =
            multimerge(&mut p, j, x, 2).map_err(|e| format!("assignment {assignment:04b}: {e}"))?;
        let ones = (0..4).filter(|t| assignment >> t & 1 == 1).count();
        let branch_ok = (res.branch == MergeBranch::Direct) == (2 * ones >= 2);
        let omega_ok = res
            .index_set
            .iter()
            .all(|&t| p.omega(&res.z, &x[t]).ok() == Some(1));
        if branch_ok && omega_ok && !res.index_set.is_empty() {
            passed += 1;
        }
    }
    ensure(passed == 16, format!("{passed}/16 adversarial assignments"))?;
    Ok(format!("geometric |I| = {geo}, adversarial 16/16"))
}

fn c8_multijoin() -> Check {
    let fx = torus_link_fixture(44, 1, 16).map_err(e2s)?;
    let c = &fx.cycles;
    let mut p = LinkingProvider::geometric(fx.embedding.clone(), fx.direction).map_err(e2s)?;
    let res = multijoin(
        &mut p,
        &c[0..6],
        &c[6..42],
        &c[42..43],
        &c[43..44],
        1,
        CountMode::ClosedForm,
    )
    .map_err(e2s)?;
    let d = fresh(&p)?;
    let lx = linking_number(&d, &res.z, &c[42]).map_err(e2s)?;
    let ly = linking_number(&d, &res.z, &c[43]).map_err(e2s)?;
    ensure(
        lx.abs() >= 2 && ly.abs() >= 2,
        format!("lk(Z,X) = {lx}, lk(Z,Y) = {ly}"),
    )?;
    let mut scans = 0;
    for st in res
        .trace
        .steps
        .iter()
        .filter(|s| s.op.starts_with("multijoin.scan"))
    {
        let rows: Vec<Vec<i64>> = serde_json::from_value(st.choice["lk"].clone()).map_err(e2s)?;
        for w in rows.windows(2) {
            ensure(
                w[0].iter().zip(&w[1]).all(|(a, b)| b > a),
                format!("{}: {:?} -> {:?}", st.op, w[0], w[1]),
            )?;
        }
        scans += 1;
    }
    ensure(scans == 2, format!("{scans} scans logged"))?;
    Ok(format!(
        "lk(Z,X) = {lx}, lk(Z,Y) = {ly}, both scans strictly increasing"
    ))
}

fn c9_knot() -> Check {
    let t = Instant::now();
    let fx = torus_link_fixture(13, 4, 24).map_err(e2s)?;
    let c = &fx.cycles;
    let mut p = LinkingProvider::geometric(fx.embedding.clone(), fx.direction).map_err(e2s)?;
    let res = knot_extract(&mut p, &c[..1], &c[1..], 4).map_err(e2s)?;
    ensure(a2_bound(4) == 1, "bound for lambda 4 is not 1")?;
    ensure(
        res.candidates.len() == 16 && res.candidates.iter().all(|k| k.a2.is_some()),
        "not all 16 candidates logged",
    )?;
    let d = fresh(&p)?;
    let a2 = conway_a2(&d, &res.k).map_err(e2s)?;
    let lk = linking_number(&d, &c[0], &res.k).map_err(e2s)?;
    ensure(a2.abs() >= 1, format!("a2(K) = {a2}"))?;
    ensure(lk.abs() >= 4, format!("lk(A1, K) = {lk}"))?;
    Ok(format!(
        "a2(K) = {a2}, lk(A1,K) = {lk}, 16 candidates, {}",
        within(t, Duration::from_secs(300))?
    ))
}

fn c10_driver() -> Check {
    let fx = torus_link_fixture(13, 4, 24).map_err(e2s)?;
    let mut p = LinkingProvider::geometric(fx.embedding.clone(), fx.direction).map_err(e2s)?;
    let res = knots_driver(&mut p, &fx.cycles, 1, 1, CountMode::Relaxed).map_err(e2s)?;
    ensure(
        res.schedule.lambda == 4,
        format!("lambda = {}", res.schedule.lambda),
    )?;
    let q = res.result.q.first().ok_or("no knot returned")?;
    let d = fresh(&p)?;
    let a2 = conway_a2(&d, q).map_err(e2s)?;
    ensure(a2.abs() >= 1, format!("a2(Q1) = {a2}"))?;
    for a in &res.result.final_a {
        let lk = linking_number(&d, a, q).map_err(e2s)?;
        ensure(lk.abs() >= 1, format!("lk(A, Q1) = {lk}"))?;
    }
    Ok(format!(
        "lambda = 4, a2(Q1) = {a2}, {} A's linked",
        res.result.final_a.len()
    ))
}

fn c11_ramsey() -> Check {
    let edges: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .collect();
    for mask in 0u32..1 << 15 {
        let col = Coloring::from_fn(6, |i, j| {
            mask >> edges.iter().position(|&e| e == (i, j)).unwrap() & 1 == 1
        });
        let (tri, red) =
            find_monochromatic_clique(&col, 3).ok_or(format!("mask {mask}: none found"))?;
        let mono = (0..3).all(|a| (a + 1..3).all(|b| col.is_red(tri[a], tri[b]) == red));
        ensure(
            tri.len() == 3 && mono,
            format!("mask {mask}: {tri:?} not monochromatic"),
        )?;
    }
    let pentagon = Coloring::from_fn(5, |i, j| matches!((j + 5 - i) % 5, 1 | 4));
    ensure(
        find_monochromatic_clique(&pentagon, 3).is_none(),
        "pentagon coloring has a mono triangle",
    )?;

    let signs = [1, -1, -1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, 1];
    let pairs: Vec<_> = edges
        .iter()
        .zip(signs)
        .enumerate()
        .map(|(k, (&(i, j), s))| (i, j, s * (1 + k as i64 % 3)))
        .collect();
    let (sp, c) = SyntheticProvider::from_pairs(6, &pairs, FillRule::Zero).map_err(e2s)?;
    let r = ramsey_monochromatic_link(&LinkingProvider::Synthetic(sp), &c, 3).map_err(e2s)?;
    let lk = |i: usize, j: usize| {
        pairs
            .iter()
            .find(|e| (e.0, e.1) == (i.min(j), i.max(j)))
            .unwrap()
            .2
    };
    let mut brute = None;
    'outer: for sign in [1, -1] {
        for a in 0..6 {
            for b in a + 1..6 {
                for d in b + 1..6 {
                    if [lk(a, b), lk(a, d), lk(b, d)]
                        .iter()
                        .all(|v| v.signum() == sign)
                    {
                        brute = Some((vec![a, b, d], sign));
                        break 'outer;
                    }
                }
            }
        }
    }
    ensure(
        Some((r.components.clone(), r.sign)) == brute,
        format!("got {:?}, brute force {brute:?}", (r.components, r.sign)),
    )?;
    Ok("2^15/2^15 colorings, pentagon NOT_FOUND, mixed-sign K6 matches brute force".into())
}

fn c12_determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("linkforge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e2s)?;
    let torus = dir.join("torus.json");
    let t = torus.to_str().unwrap();
    let configs: Vec<Vec<&str>> = vec![
        vec!["gen", "torus", "--c", "13", "--lambda", "4"],
        vec!["gen", "random", "--graph", "K6", "--seed", "5"],
        vec!["verify", "cg6", "--trials", "20", "--seed", "1"],
        vec!["verify", "ty", "--trials", "10", "--seed", "3"],
        vec!["construct", "knot-extract", "-i", t, "--lambda", "4"],
        vec!["construct", "driver", "-i", t, "-n", "1", "--alpha", "1"],
        vec!["pattern", "extract", "-i", t, "--vertex-weights"],
    ];
    let first = run(&RunConfig::parse_from([
        "linkforge",
        "gen",
        "torus",
        "--c",
        "13",
        "--lambda",
        "4",
    ]));
    std::fs::write(&torus, first.artifact.as_deref().unwrap_or_default()).map_err(e2s)?;
    for args in &configs {
        let full: Vec<&str> = std::iter::once("linkforge")
            .chain(args.iter().copied())
            .collect();
        let a = run(&RunConfig::parse_from(&full));
        let b = run(&RunConfig::parse_from(&full));
        ensure(a.status == Status::Pass, format!("{args:?}: {}", a.summary))?;
        ensure(
            a.artifact.is_some() && a.artifact == b.artifact,
            format!("{args:?}: artifacts differ"),
        )?;
    }
    Ok(format!(
        "{} commands byte-identical across two runs",
        configs.len()
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Conway-Gordon K6 parity", c1_cg6),
        ("Conway-Gordon K7 parity", c2_cg7),
        ("Taniyama-Yasuhara inequality", c3_ty),
        ("a2 oracle agreement", c4_oracle),
        ("twisted embedding linking bound", c5_prop2),
        ("positive pair in every oriented triple", c6_cor3),
        ("multimerge at desk scale", c7_multimerge),
        ("multijoin at desk scale", c8_multijoin),
        ("knot extraction on 13 torus curves", c9_knot),
        ("knot driver with alpha = 1", c10_driver),
        ("monochromatic cliques and links", c11_ramsey),
        ("artifact determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!(
                "acceptance {:>2} PASS {name}: {detail} [{:.1?}]",
                i + 1,
                t.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "acceptance {:>2} FAIL {name}: {why} [{:.1?}]",
                    i + 1,
                    t.elapsed()
                );
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
