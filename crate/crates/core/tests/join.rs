use linkforge::constructions::{
    complete_pattern_build, multijoin, CountMode, FillRule, LinkingProvider, PartitionedLink,
    SyntheticProvider,
};
use linkforge::cycles::OrientedCycle;
use linkforge::diagram::Diagram;
use linkforge::geometry::torus_link_fixture;
use linkforge::invariants::linking_number;
use linkforge::Error;

#[test]
fn join_on_44_torus_curves() {
    let fx = torus_link_fixture(44, 1, 16).unwrap();
    let c = &fx.cycles;
    let mut p = LinkingProvider::geometric(fx.embedding.clone(), fx.direction).unwrap();
    let res = multijoin(
        &mut p,
        &c[0..6],
        &c[6..42],
        &c[42..43],
        &c[43..44],
        1,
        CountMode::ClosedForm,
    )
    .unwrap();
    let LinkingProvider::Geometric(g) = &p else {
        unreachable!()
    };
    let d = Diagram::project(g.embedding(), g.direction()).unwrap();
    assert!(linking_number(&d, &res.z, &c[42]).unwrap().abs() >= 2);
    assert!(linking_number(&d, &res.z, &c[43]).unwrap().abs() >= 2);
    let scans = res
        .trace
        .steps
        .iter()
        .filter(|s| s.op.starts_with("multijoin.scan"))
        .count();
    assert_eq!(scans, 2);
}

#[test]
fn too_few_ls_is_a_hypothesis_violation() {
    let fx = torus_link_fixture(44, 1, 16).unwrap();
    let c = &fx.cycles;
    let mut p = LinkingProvider::geometric(fx.embedding.clone(), fx.direction).unwrap();
    let r = multijoin(
        &mut p,
        &c[0..6],
        &c[6..41],
        &c[42..43],
        &c[43..44],
        1,
        CountMode::ClosedForm,
    );
    assert!(matches!(r, Err(Error::HypothesisViolation(_))));
}

#[test]
fn adversarial_connectors_sweep() {
    for seed in 0..100 {
        let (sp, c) =
            SyntheticProvider::uniform(44, 1, FillRule::Seeded { seed, bound: 4 }).unwrap();
        let mut p = LinkingProvider::Synthetic(sp);
        let res = multijoin(
            &mut p,
            &c[0..6],
            &c[6..42],
            &c[42..43],
            &c[43..44],
            1,
            CountMode::ClosedForm,
        )
        .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(p.lk(&res.z, &c[42]).unwrap().abs() > 1);
        assert!(p.lk(&res.z, &c[43]).unwrap().abs() > 1);
    }
}

/// `K_{s,s}` between the first `s` and the next `s` triangles, signs from a
/// simple deterministic pattern.
fn bipartite_link(s: usize, mixed: bool, seed: u64) -> (LinkingProvider, PartitionedLink) {
    let mut pairs = Vec::new();
    for i in 0..s {
        for j in 0..s {
            let v = if mixed && (i * 7 + j * 3) % 5 == 0 {
                -1
            } else {
                1
            };
            pairs.push((i, s + j, v));
        }
    }
    let (sp, c) =
        SyntheticProvider::from_pairs(2 * s, &pairs, FillRule::Seeded { seed, bound: 2 }).unwrap();
    let link = PartitionedLink {
        p1: c[..s].to_vec(),
        p2: c[s..].to_vec(),
        q: Vec::new(),
    };
    (LinkingProvider::Synthetic(sp), link)
}

/// Independent check that `link` realizes `H(n, m)` with Q weights above `lam`.
fn audit(p: &LinkingProvider, link: &PartitionedLink, lam: i64) {
    let lk = |a: &OrientedCycle, b: &OrientedCycle| p.lk(a, b).unwrap();
    for a in &link.p1 {
        for b in link.p2.iter().chain(&link.q) {
            assert_ne!(lk(a, b), 0);
        }
    }
    for a in &link.p2 {
        for b in &link.q {
            assert_ne!(lk(a, b), 0);
        }
    }
    for i in 0..link.q.len() {
        for j in i + 1..link.q.len() {
            assert!(lk(&link.q[i], &link.q[j]).abs() > lam);
        }
    }
}

#[test]
fn one_step_from_k37_37() {
    let (mut p, link) = bipartite_link(37, true, 5);
    let (out, trace) =
        complete_pattern_build(&mut p, &link, 0, 1, 1, CountMode::ClosedForm).unwrap();
    assert_eq!((out.p1.len(), out.p2.len(), out.q.len()), (1, 1, 1));
    audit(&p, &out, 1);
    assert!(p.lk(&out.q[0], &out.p1[0]).unwrap().abs() > 1);
    assert!(p.lk(&out.q[0], &out.p2[0]).unwrap().abs() > 1);
    assert!(!trace.is_empty());
}

#[test]
fn missing_budget_is_rejected() {
    let (mut p, link) = bipartite_link(36, false, 1);
    let r = complete_pattern_build(&mut p, &link, 0, 1, 1, CountMode::ClosedForm);
    assert!(matches!(r, Err(Error::HypothesisViolation(_))));
}

#[test]
fn two_relaxed_steps() {
    let (mut p, link) = bipartite_link(133, false, 11);
    let (h1, _) = complete_pattern_build(&mut p, &link, 0, 19, 1, CountMode::Relaxed).unwrap();
    audit(&p, &h1, 1);
    let (h2, _) = complete_pattern_build(&mut p, &h1, 1, 1, 1, CountMode::Relaxed).unwrap();
    assert_eq!(h2.q.len(), 2);
    audit(&p, &h2, 1);
}

#[test]
fn synthetic_copy_makes_the_same_filter_decisions() {
    let fx = torus_link_fixture(44, 1, 16).unwrap();
    let c: Vec<OrientedCycle> = fx
        .cycles
        .iter()
        .enumerate()
        .map(|(i, k)| {
            if i % 3 == 0 || i % 7 == 2 {
                k.reversed()
            } else {
                k.clone()
            }
        })
        .collect();
    let d = fx.diagram().unwrap();
    let m = linkforge::invariants::linking_matrix(&d, &c).unwrap();
    let entries: Vec<Vec<i64>> = (0..44)
        .map(|i| (0..44).map(|j| m.get(i, j)).collect())
        .collect();
    let (sp, s) =
        SyntheticProvider::from_matrix(&entries, FillRule::Seeded { seed: 3, bound: 2 }).unwrap();
    let mut synth = LinkingProvider::Synthetic(sp);
    let mut geo = LinkingProvider::geometric(fx.embedding.clone(), fx.direction).unwrap();
    let run = |p: &mut LinkingProvider, c: &[OrientedCycle]| {
        multijoin(
            p,
            &c[0..6],
            &c[6..42],
            &c[42..43],
            &c[43..44],
            1,
            CountMode::Relaxed,
        )
    };
    let (a, b) = (run(&mut geo, &c), run(&mut synth, &s));
    let filters = |t: &linkforge::constructions::Trace| {
        t.steps
            .iter()
            .filter(|s| s.op.contains("filter"))
            .map(|s| s.choice.clone())
            .collect::<Vec<_>>()
    };
    let (a, b) = (a.unwrap(), b.unwrap());
    assert_eq!(filters(&a.trace), filters(&b.trace));
    assert_eq!((a.x_reversed, a.y_reversed), (b.x_reversed, b.y_reversed));
}
