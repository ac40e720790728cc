use linkforge::constructions::{
    bipartite_pattern_build, multimerge, FillRule, LinkingProvider, MergeBranch, SyntheticProvider,
};
use linkforge::cycles::{ConnectingCycleSpec, OrientedCycle, Traversal};
use linkforge::diagram::Diagram;
use linkforge::geometry::{keyrings_fixture, EdgeId};
use linkforge::invariants::linking_number;
use linkforge::Error;

/// ω computed on a fresh projection of the provider's final embedding.
fn fresh_omega(p: &LinkingProvider, a: &OrientedCycle, b: &OrientedCycle) -> i64 {
    let LinkingProvider::Geometric(g) = p else {
        panic!("geometric provider expected")
    };
    let d = Diagram::project(g.embedding(), g.direction()).unwrap();
    linking_number(&d, a, b).unwrap().rem_euclid(2)
}

#[test]
fn merge_four_hopf_pairs() {
    let k = keyrings_fixture(4, 1).unwrap();
    let mut p = LinkingProvider::geometric(k.embedding.clone(), k.direction).unwrap();
    let j: Vec<_> = k.keys.iter().map(|ks| ks[0].clone()).collect();
    let res = multimerge(&mut p, &j, &k.rings, 2).unwrap();
    assert!(!res.index_set.is_empty());
    for &i in &res.index_set {
        assert_eq!(fresh_omega(&p, &res.z, &k.rings[i]), 1);
    }
    let ops: Vec<&str> = res.trace.ops().collect();
    assert!(ops.contains(&"multimerge.branch"));
}

#[test]
fn single_hopf_pair() {
    let k = keyrings_fixture(1, 1).unwrap();
    let mut p = LinkingProvider::geometric(k.embedding.clone(), k.direction).unwrap();
    let res = multimerge(&mut p, &k.keys[0], &k.rings, 1).unwrap();
    assert_eq!(res.index_set, vec![0]);
    assert_eq!(res.branch, MergeBranch::Direct);
    assert_eq!(fresh_omega(&p, &res.z, &k.rings[0]), 1);
}

#[test]
fn unlinked_pair_is_rejected() {
    let k = keyrings_fixture(2, 1).unwrap();
    let mut p = LinkingProvider::geometric(k.embedding.clone(), k.direction).unwrap();
    // key 0 with ring 1 is unlinked
    let j = vec![k.keys[0][0].clone()];
    let x = vec![k.rings[1].clone()];
    assert!(matches!(
        multimerge(&mut p, &j, &x, 1),
        Err(Error::HypothesisViolation(_))
    ));
}

fn mod2_sum(rows: &[Vec<i64>], which: &[usize], cols: usize) -> Vec<u8> {
    (0..cols)
        .map(|c| (which.iter().map(|&r| rows[r][c]).sum::<i64>().rem_euclid(2)) as u8)
        .collect()
}

#[test]
fn every_adversarial_connecting_cycle_is_handled() {
    // J_i = component i, X_j = component 4 + j
    let m: Vec<Vec<i64>> = vec![
        vec![1, 1, 0, 0],
        vec![0, 1, 0, 1],
        vec![1, 0, 1, 0],
        vec![0, 0, 1, 1],
    ];
    let mut pairs = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if m[i][j] != 0 {
                pairs.push((i, 4 + j, m[i][j]));
            }
        }
    }
    let mut passed = 0;
    for assignment in 0..16u32 {
        let (sp, cycles) = SyntheticProvider::from_pairs(8, &pairs, FillRule::Zero).unwrap();
        let mut p = LinkingProvider::Synthetic(sp);
        let (j, x) = cycles.split_at(4);
        let spec =
            ConnectingCycleSpec::with_default_ends(p.graph(), j.to_vec(), Traversal::Against);
        let conn = p.connect_all(&spec.connector_pairs()).unwrap();
        if let LinkingProvider::Synthetic(sp) = &mut p {
            for t in 0..4 {
                let bit = (assignment >> t & 1) as i64;
                sp.set(conn[0], EdgeId(3 * (4 + t) + 2), bit);
            }
        }
        let res = multimerge(&mut p, j, x, 2).unwrap();
        let ones = (0..4).filter(|t| assignment >> t & 1 == 1).count();
        assert_eq!(
            res.branch == MergeBranch::Direct,
            2 * ones >= 2,
            "assignment {assignment:04b}"
        );
        if let Some(sel) = &res.selection {
            assert_eq!(mod2_sum(&m, &sel.source_rows, 4), sel.v);
            assert!(sel.v.iter().filter(|&&b| b == 1).count() >= 2);
        }
        assert!(!res.index_set.is_empty());
        for &t in &res.index_set {
            assert_eq!(p.omega(&res.z, &x[t]).unwrap(), 1);
        }
        passed += 1;
    }
    assert_eq!(passed, 16);
}

#[test]
fn bipartite_from_four_keyrings() {
    let k = keyrings_fixture(4, 1).unwrap();
    let mut p = LinkingProvider::geometric(k.embedding.clone(), k.direction).unwrap();
    let res = bipartite_pattern_build(&mut p, &k.rings, &k.keys, 1).unwrap();
    assert_eq!(res.z.len(), 1);
    assert!(!res.rings.is_empty());
    for &i in &res.rings {
        assert_eq!(fresh_omega(&p, &res.z[0], &k.rings[i]), 1);
    }
}

#[test]
fn bipartite_rejects_too_few_rings() {
    let k = keyrings_fixture(3, 1).unwrap();
    let mut p = LinkingProvider::geometric(k.embedding.clone(), k.direction).unwrap();
    assert!(matches!(
        bipartite_pattern_build(&mut p, &k.rings, &k.keys, 1),
        Err(Error::HypothesisViolation(_))
    ));
}

#[test]
fn bipartite_two_keys_at_full_count() {
    let rings = 1024;
    // ring i = component 3i, its keys 3i+1 and 3i+2
    let pairs: Vec<(usize, usize, i64)> = (0..rings)
        .flat_map(|i| [(3 * i, 3 * i + 1, 1), (3 * i, 3 * i + 2, 1)])
        .collect();
    for seed in 0..10 {
        let (sp, cycles) =
            SyntheticProvider::from_pairs(3 * rings, &pairs, FillRule::Seeded { seed, bound: 3 })
                .unwrap();
        let mut p = LinkingProvider::Synthetic(sp);
        let ring_cycles: Vec<_> = (0..rings).map(|i| cycles[3 * i].clone()).collect();
        let keys: Vec<Vec<_>> = (0..rings)
            .map(|i| vec![cycles[3 * i + 1].clone(), cycles[3 * i + 2].clone()])
            .collect();
        let res = bipartite_pattern_build(&mut p, &ring_cycles, &keys, 2).unwrap();
        assert!(res.rings.len() >= 2, "seed {seed}: {:?}", res.stage_sizes);
        assert!(res.stage_sizes[1] >= 16);
        for z in &res.z {
            for &i in &res.rings {
                assert_eq!(p.omega(z, &ring_cycles[i]).unwrap(), 1);
            }
        }
    }
}
