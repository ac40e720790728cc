use linkforge::constructions::{
    bipartite_pattern_build, complete_pattern_build, CountMode, FillRule, LinkingProvider,
    PartitionedLink, SyntheticProvider,
};
use linkforge::diagram::Diagram;
use linkforge::geometry::{
    generic_direction, hopf_fixture, keyring_fixture, keyrings_fixture, mirror_embedding,
    torus_link_fixture,
};
use linkforge::invariants::linking_matrix;
use linkforge::patterns::{
    contains_complete, contains_complete_bipartite, contains_complete_odd, contains_multipartite,
    extract_pattern, provider_pattern, PatternGraph, PatternMode,
};
use proptest::prelude::*;

#[test]
fn hopf_is_one_edge() {
    let fx = hopf_fixture().unwrap();
    let p = extract_pattern(
        &fx.diagram().unwrap(),
        &fx.cycles,
        PatternMode::Integer,
        true,
    )
    .unwrap();
    assert_eq!(p.vertex_count(), 2);
    assert_eq!(p.edges().len(), 1);
    assert_eq!(p.weight(0, 1), Some(1));
    assert_eq!(p.vertex_weights(), Some(&[0, 0][..]));
}

#[test]
fn keyring_is_a_star() {
    let k = keyring_fixture(3).unwrap();
    let d = Diagram::project(&k.embedding, k.direction).unwrap();
    let mut link = vec![k.rings[0].clone()];
    link.extend(k.keys[0].iter().cloned());
    let p = extract_pattern(&d, &link, PatternMode::Mod2, false).unwrap();
    let edges: Vec<(usize, usize)> = p.edges().iter().map(|e| (e.u, e.v)).collect();
    assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3)]);
    assert_eq!(contains_complete_bipartite(&p, 2), None);
}

#[test]
fn torus_four_is_weighted_k4() {
    let fx = torus_link_fixture(4, 2, 16).unwrap();
    let d = fx.diagram().unwrap();
    let p = extract_pattern(&d, &fx.cycles, PatternMode::Integer, false).unwrap();
    let m = linking_matrix(&d, &fx.cycles).unwrap();
    for i in 0..4 {
        for j in i + 1..4 {
            assert_eq!(p.weight(i, j), Some(m.get(i, j).unsigned_abs()));
            assert_eq!(p.weight(i, j), Some(2));
        }
    }
    assert_eq!(contains_complete(&p, 3, 2, 0), Some(vec![0, 1, 2]));
    assert_eq!(contains_complete(&p, 3, 3, 0), None);
    assert_eq!(contains_complete(&p, 1, 0, 0), Some(vec![0]));
    assert_eq!(contains_complete_odd(&p, 2, 1), None);
    // mod-2 pattern of even weights is empty
    let p2 = extract_pattern(&d, &fx.cycles, PatternMode::Mod2, false).unwrap();
    assert!(p2.edges().is_empty());
    assert_eq!(p2, p.to_mod2());
}

#[test]
fn mirrored_link_has_the_same_pattern() {
    let fx = torus_link_fixture(5, 1, 12).unwrap();
    let p = extract_pattern(
        &fx.diagram().unwrap(),
        &fx.cycles,
        PatternMode::Integer,
        true,
    )
    .unwrap();
    let m = mirror_embedding(&fx.embedding);
    let dir = generic_direction(&m, 4).unwrap();
    let d = Diagram::project(&m, dir).unwrap();
    let q = extract_pattern(&d, &fx.cycles, PatternMode::Integer, true).unwrap();
    assert_eq!(p, q);
    assert_eq!(
        serde_json::to_string(&p).unwrap(),
        serde_json::to_string(&q).unwrap()
    );
}

#[test]
fn bipartite_build_output_contains_k11() {
    let k = keyrings_fixture(4, 1).unwrap();
    let mut p = LinkingProvider::geometric(k.embedding.clone(), k.direction).unwrap();
    let res = bipartite_pattern_build(&mut p, &k.rings, &k.keys, 1).unwrap();
    let mut link = res.z.clone();
    link.extend(res.rings.iter().map(|&i| k.rings[i].clone()));
    let pat = provider_pattern(&p, &link, PatternMode::Mod2).unwrap();
    assert!(contains_complete_bipartite(&pat, 1).is_some());
}

#[test]
fn complete_build_output_contains_h() {
    let s = 37;
    let pairs: Vec<_> = (0..s)
        .flat_map(|i| (0..s).map(move |j| (i, s + j, 1)))
        .collect();
    let (sp, c) =
        SyntheticProvider::from_pairs(2 * s, &pairs, FillRule::Seeded { seed: 2, bound: 2 })
            .unwrap();
    let mut p = LinkingProvider::Synthetic(sp);
    let link = PartitionedLink {
        p1: c[..s].to_vec(),
        p2: c[s..].to_vec(),
        q: Vec::new(),
    };
    let (out, _) = complete_pattern_build(&mut p, &link, 0, 1, 1, CountMode::ClosedForm).unwrap();
    let all: Vec<_> = out
        .p1
        .iter()
        .chain(&out.p2)
        .chain(&out.q)
        .cloned()
        .collect();
    let pat = provider_pattern(&p, &all, PatternMode::Integer).unwrap();
    let w = contains_multipartite(&pat, 1, 1, 1).expect("H(1, 1) with Q weights above 1");
    // audit the witness directly against the provider
    let lk = |a: usize, b: usize| p.lk(&all[a], &all[b]).unwrap();
    assert_ne!(lk(w.p1[0], w.p2[0]), 0);
    assert!(lk(w.q[0], w.p1[0]).abs() > 0 && lk(w.q[0], w.p2[0]).abs() > 0);
}

// Exhaustive oracles over all vertex subsets.

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn brute_complete(p: &PatternGraph, n: usize, w: u64, vw: u64) -> bool {
    subsets(p.vertex_count(), n).iter().any(|s| {
        s.iter()
            .all(|&v| p.vertex_weights().is_none_or(|x| x[v] >= vw))
            && s.iter().all(|&a| {
                s.iter()
                    .all(|&b| a == b || p.weight(a, b).is_some_and(|x| x >= w))
            })
    })
}

fn brute_bipartite(p: &PatternGraph, n: usize) -> bool {
    let v = p.vertex_count();
    subsets(v, 2 * n).iter().any(|s| {
        subsets(2 * n, n).iter().any(|half| {
            let a: Vec<usize> = half.iter().map(|&i| s[i]).collect();
            let b: Vec<usize> = s.iter().copied().filter(|x| !a.contains(x)).collect();
            a.iter().all(|&x| b.iter().all(|&y| p.has_edge(x, y)))
        })
    })
}

fn brute_multipartite(p: &PatternGraph, n: usize, m: usize, qw: u64) -> bool {
    let v = p.vertex_count();
    if 2 * m + n == 0 {
        return false;
    }
    // label each vertex 0 (unused), 1 (P1), 2 (P2), 3.. (Q_i)
    let mut labels = vec![0usize; v];
    fn go(
        i: usize,
        labels: &mut Vec<usize>,
        p: &PatternGraph,
        n: usize,
        m: usize,
        qw: u64,
    ) -> bool {
        if i == labels.len() {
            let count = |c: usize| labels.iter().filter(|&&l| l == c).count();
            if count(1) != m || count(2) != m || (0..n).any(|q| count(3 + q) != 1) {
                return false;
            }
            for a in 0..labels.len() {
                for b in a + 1..labels.len() {
                    let (la, lb) = (labels[a], labels[b]);
                    if la == 0 || lb == 0 || la == lb {
                        continue;
                    }
                    let ok = if la >= 3 && lb >= 3 {
                        p.weight(a, b).is_some_and(|w| w > qw)
                    } else {
                        p.has_edge(a, b)
                    };
                    if !ok {
                        return false;
                    }
                }
            }
            return true;
        }
        (0..3 + n).any(|l| {
            labels[i] = l;
            go(i + 1, labels, p, n, m, qw)
        })
    }
    go(0, &mut labels, p, n, m, qw)
}

fn random_pattern() -> impl Strategy<Value = PatternGraph> {
    (2usize..=8).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(0i64..4, n * (n - 1) / 2),
            prop::collection::vec(0u64..3, n),
        )
            .prop_map(|(n, ws, vw)| {
                let mut rows = vec![vec![0i64; n]; n];
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        rows[i][j] = ws[k];
                        rows[j][i] = ws[k];
                        k += 1;
                    }
                }
                let mut p = PatternGraph::from_linking(&rows, PatternMode::Integer).unwrap();
                p.set_vertex_weights(vw).unwrap();
                p
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn complete_agrees_with_enumeration(p in random_pattern(), n in 1usize..5, w in 1u64..4, vw in 0u64..3) {
        let got = contains_complete(&p, n, w, vw);
        prop_assert_eq!(got.is_some(), brute_complete(&p, n, w, vw));
        if let Some(s) = got {
            prop_assert_eq!(s.len(), n);
        }
    }

    #[test]
    fn bipartite_agrees_with_enumeration(p in random_pattern(), n in 1usize..4) {
        let got = contains_complete_bipartite(&p, n);
        prop_assert_eq!(got.is_some(), brute_bipartite(&p, n));
        if let Some((a, b)) = got {
            prop_assert!(a.iter().all(|x| !b.contains(x)));
            prop_assert!(a.iter().all(|&x| b.iter().all(|&y| p.has_edge(x, y))));
        }
    }

    #[test]
    fn mod2_agrees_with_enumeration(p in random_pattern(), n in 1usize..3) {
        let q = p.to_mod2();
        prop_assert_eq!(contains_complete_bipartite(&q, n).is_some(), brute_bipartite(&q, n));
        for e in q.edges() {
            prop_assert_eq!(p.weight(e.u, e.v).unwrap() % 2, 1);
        }
    }

    #[test]
    fn multipartite_agrees_with_enumeration(p in random_pattern(), n in 0usize..3, m in 0usize..3, qw in 0u64..3) {
        prop_assume!(p.vertex_count() <= 7);
        let got = contains_multipartite(&p, n, m, qw);
        prop_assert_eq!(got.is_some(), brute_multipartite(&p, n, m, qw));
        if let Some(w) = got {
            prop_assert_eq!((w.p1.len(), w.p2.len(), w.q.len()), (m, m, n));
        }
    }
}
