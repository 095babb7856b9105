use std::collections::BTreeSet;

use rainbow_forest::factorization::{
    assign_triple_vertices, choose_m, decompose_with, edges_meeting, grow_spanning_tree, restrict_to_a,
    spider_decomposition, theorem2_pipeline, theorem2_pipeline_seeded, GrowthParams,
};
use rainbow_forest::generate::{orient_sts, proper_colouring, round_robin_one_factorization, steiner_triple_system};
use rainbow_forest::{verify_certificate, Claims, ColouredGraph, Edge, ForestCertificate, CertTree, Vertex};

fn instance(n: usize, m: usize, seed: u64) -> (ColouredGraph, Vec<Vertex>, rainbow_forest::generate::OrientedSts) {
    let g = proper_colouring(n, seed, 0).unwrap();
    let a: Vec<Vertex> = (0..m).collect();
    (restrict_to_a(&g, &a), a, orient_sts(&steiner_triple_system(m).unwrap(), seed))
}

#[test]
fn decomposition_partitions_edges() {
    for &(n, m) in &[(64, 7), (90, 9), (40, 3), (28, 1)] {
        for seed in 0..3 {
            let (g, a, o) = instance(n, m, seed);
            let spiders = spider_decomposition(&g, &a, &o).unwrap();
            let mut all: Vec<Edge> = spiders.iter().flat_map(|s| s.edges()).collect();
            let total = all.len();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), total, "spiders overlap");
            assert_eq!(all, edges_meeting(&g, &a));
            assert_eq!(total, n * (n - 1) / 2 - (n - m) * (n - m - 1) / 2);
            for s in &spiders {
                assert_eq!(s.t(), (m - 1) / 2);
                assert_eq!(s.order(), n - (m - 1) / 2);
                assert_eq!(s.edge_count(), n - (m + 1) / 2);
                assert!(a.iter().all(|&x| s.contains(x)));
            }
        }
    }
}

#[test]
fn each_other_root_enters_by_leg_or_leaf() {
    let (g, a, o) = instance(64, 7, 5);
    let asg = assign_triple_vertices(&g, &a, &o).unwrap();
    let spiders = decompose_with(&g, &asg, &o).unwrap();
    for (p, s) in spiders.iter().enumerate() {
        let x = a[p];
        for (q, &y) in a.iter().enumerate() {
            if q == p {
                continue;
            }
            let via_leg = o.successor(q, p).map(|z| asg.get([y, x, a[z]]).unwrap());
            match via_leg {
                Some(b) => assert!(s.legs().contains(&(b, y))),
                None => assert!(s.leaves().contains(&y)),
            }
        }
    }
}

#[test]
fn decomposition_passes_verifier_claims() {
    let (g, a, o) = instance(90, 9, 2);
    let spiders = spider_decomposition(&g, &a, &o).unwrap();
    let cert = ForestCertificate {
        host_digest: None,
        trees: spiders.iter().map(CertTree::from_spider).collect(),
        claims: Claims {
            rainbow: true,
            edge_disjoint: true,
            spider_shaped: true,
            ..Claims::default()
        },
    };
    let report = verify_certificate(&g, &cert);
    assert!(report.pass(), "{report}");
    assert!(report.trees.iter().all(|t| t.spider_t == Some(4)));
}

#[test]
fn already_spanning_spider_is_unchanged() {
    let g = round_robin_one_factorization(20).unwrap();
    let star = rainbow_forest::Spider::star(0, (1..20).collect()).unwrap();
    let (tree, trace) = grow_spanning_tree(&g, &star, GrowthParams::FACTORIZATION).unwrap();
    assert_eq!(tree, star.edges());
    assert!(trace.steps.is_empty());
}

#[test]
fn traces_replay_and_keep_properties() {
    let g = proper_colouring(128, 7, 0).unwrap();
    let run = theorem2_pipeline_seeded(&g, 7).unwrap();
    assert!(run.failure.is_none());
    for (trace, tree) in run.traces.iter().zip(&run.certificate.trees) {
        assert_eq!(trace.replay(g.n()).unwrap(), tree.edges);
        assert!(trace.property_violations(&g, 1.0 / 9.0).is_empty());
        for s in &trace.steps {
            assert_ne!(s.x, s.y);
            assert_ne!(s.z, s.x);
            assert_ne!(s.z, s.w);
            assert_eq!(g.colour(s.x, s.y), Some(s.c_i));
            assert_eq!(g.colour(s.i, s.z), Some(s.c));
            assert_eq!(g.colour(s.x, s.w), Some(s.c));
        }
    }
}

#[test]
fn swap_degrees() {
    let g = round_robin_one_factorization(64).unwrap();
    let run = theorem2_pipeline(&g).unwrap();
    let trace = &run.traces[0];
    assert!(!trace.steps.is_empty());
    let degree = |edges: &[Edge], v: Vertex| edges.iter().filter(|e| e.contains(v)).count();
    let mut before = trace.initial.clone();
    for s in &trace.steps {
        let mut after = before.clone();
        after.retain(|e| *e != Edge::new(s.x, s.w));
        after.push(Edge::new(s.x, s.y));
        after.push(Edge::new(s.i, s.z));
        assert_eq!(degree(&after, s.i), 1);
        assert_eq!(degree(&after, s.x), degree(&before, s.x));
        assert_eq!(degree(&after, s.w), degree(&before, s.w) - 1);
        if s.y == s.z {
            assert_eq!(degree(&after, s.y), 3);
        } else {
            assert_eq!(degree(&after, s.y), 2);
            assert_eq!(degree(&after, s.z), degree(&before, s.z) + 1);
        }
        before = after;
    }
}

#[test]
fn desk_scale_replay() {
    for n in [64usize, 90, 128] {
        for seed in 0..3 {
            let g = proper_colouring(n, seed, 0).unwrap();
            let run = theorem2_pipeline(&g).unwrap();
            assert!(run.failure.is_none(), "n={n} seed={seed}: {:?}", run.failure);
            let need = n.div_ceil(9) - 6;
            assert!(run.certificate.trees.len() >= need);
            assert_eq!(Some(run.m), choose_m(n));
            let report = verify_certificate(&g, &run.certificate);
            assert!(report.pass(), "{report}");
            let roots: BTreeSet<Vertex> = run.certificate.trees.iter().map(|t| t.root).collect();
            assert_eq!(roots.len(), run.certificate.trees.len());
        }
    }
}

#[test]
fn sixty_two_uses_three_roots() {
    let g = round_robin_one_factorization(62).unwrap();
    let run = theorem2_pipeline(&g).unwrap();
    assert_eq!(run.m, 3);
}

#[test]
fn too_small_for_the_window() {
    let g = round_robin_one_factorization(16).unwrap();
    assert!(theorem2_pipeline(&g).is_err());
}
