use std::collections::BTreeSet;

use proptest::prelude::*;
use rainbow_forest::generate::{proper_colouring, round_robin_one_factorization, shatter_colour_classes};
use rainbow_forest::proper::{
    cover_bipartite, derived_extend_params, extend_star_many, extend_star_one_vertex, free_graph,
    make_spanning_spiders, multi_shape_pipeline, theorem1_pipeline, ColourCase, ExtendMode, ExtendParams,
    ExtensionCase, PipelineParams, SpiderFamilyState,
};
use rainbow_forest::{CertTree, Claims, ForestCertificate};
use rainbow_forest::{is_rainbow, verify_certificate, Colour, ColouredGraph, Edge, Error, Spider, Vertex};

fn graph(n: usize, edges: &[(Vertex, Vertex, Colour)]) -> ColouredGraph {
    let k = edges.iter().map(|e| e.2 as usize + 1).max().unwrap_or(0);
    ColouredGraph::from_edges(n, k, edges.iter().copied()).unwrap()
}

fn assert_spanning_rainbow(g: &ColouredGraph, s: &Spider) {
    assert_eq!(s.order(), g.order());
    let edges = s.edges();
    assert!(edges.iter().all(|e| g.has_edge(e.u, e.v)));
    assert!(is_rainbow(g, &edges).unwrap());
}

// root 0, vertex 1 missing from the star
fn case_three(with_matching: bool) -> (ColouredGraph, Spider, Vec<Edge>) {
    let g = graph(5, &[(0, 2, 0), (0, 3, 1), (0, 4, 2), (1, 2, 1), (3, 4, 3)]);
    let star = Spider::star(0, vec![2, 3, 4]).unwrap();
    let m = if with_matching { vec![Edge::new(3, 4)] } else { vec![] };
    (g, star, m)
}

// r = 0, v = 1, y = 2, f(v, y) = 3, z = 4, w = 5, y' = 6; vertices from 7 on
// are padding leaves
fn case_four(pad: usize) -> (ColouredGraph, Spider, Vec<Edge>) {
    let mut edges = vec![
        (0, 2, 0),
        (0, 3, 1),
        (0, 4, 2),
        (0, 5, 3),
        (0, 6, 4),
        (1, 2, 1),
        (1, 6, 3),
        (3, 4, 3),
        (5, 6, 5),
    ];
    for i in 0..pad {
        edges.push((0, 7 + i, 6 + i as Colour));
    }
    let g = graph(7 + pad, &edges);
    let mut leaves = vec![2, 3, 4, 5, 6];
    leaves.extend(7..7 + pad);
    (g, Spider::star(0, leaves).unwrap(), vec![Edge::new(5, 6)])
}

#[test]
fn every_extension_case_is_reached() {
    let g1 = graph(4, &[(0, 1, 0), (0, 2, 1), (0, 3, 2)]);
    let s1 = Spider::star(0, vec![1, 2]).unwrap();
    let g2 = graph(4, &[(0, 1, 0), (0, 2, 1), (1, 3, 5)]);
    let (g3, s3, m3) = case_three(true);
    let (g3b, s3b, m3b) = case_three(false);
    let (g4, s4, m4) = case_four(0);
    let (g4p, s4p, m4p) = case_four(5);
    let runs = [
        (&g1, &s1, vec![], ExtensionCase::RootEdge, 0),
        (&g2, &s1, vec![], ExtensionCase::FreshColour, 1),
        (&g3, &s3, m3, ExtensionCase::SingleSwap, 2),
        (&g3b, &s3b, m3b, ExtensionCase::SingleSwap, 2),
        (&g4, &s4, m4, ExtensionCase::DoubleSwap, 3),
        (&g4p, &s4p, m4p, ExtensionCase::DoubleSwap, 3),
    ];
    for (g, s, m, case, t) in runs {
        let ext = extend_star_one_vertex(g, s, &m).unwrap();
        assert_eq!(ext.case, case);
        assert_eq!(ext.spider.t(), t);
        assert_eq!(ext.spider.root(), 0);
        assert_spanning_rainbow(g, &ext.spider);
    }
}

#[test]
fn double_swap_legs() {
    let (g, s, m) = case_four(0);
    let ext = extend_star_one_vertex(&g, &s, &m).unwrap();
    assert_eq!(ext.spider.legs(), &[(2, 1), (4, 3), (6, 5)]);
    assert!(ext.spider.leaves().is_empty());
}

#[test]
fn single_swap_through_the_matching_and_without() {
    let (g, s, m) = case_three(true);
    let a = extend_star_one_vertex(&g, &s, &m).unwrap();
    let (g, s, m) = case_three(false);
    let b = extend_star_one_vertex(&g, &s, &m).unwrap();
    assert_eq!(a.spider, b.spider);
    assert_eq!(a.spider.legs(), &[(2, 1), (4, 3)]);
}

#[test]
fn stuck_extension_is_reported() {
    // v = 1 sees only star colours and f(v, 2) = 3 has nowhere to go
    let g = graph(4, &[(0, 2, 0), (0, 3, 1), (1, 2, 1)]);
    let s = Spider::star(0, vec![2, 3]).unwrap();
    assert!(matches!(extend_star_one_vertex(&g, &s, &[]), Err(Error::Extension(_))));
}

#[test]
fn bad_inputs_rejected() {
    let (g, s, _) = case_four(0);
    // matching with a star colour
    assert!(matches!(extend_star_one_vertex(&g, &s, &[Edge::new(3, 4)]), Err(Error::Input(_))));
    // two missing vertices
    let small = Spider::star(0, vec![2, 3, 4, 5]).unwrap();
    assert!(matches!(extend_star_one_vertex(&g, &small, &[]), Err(Error::Input(_))));
}

fn missing_root_edges(n: usize, seed: u64, missing: &[Vertex]) -> (ColouredGraph, Spider) {
    let mut g = proper_colouring(n, seed, 0).unwrap();
    for &v in missing {
        g.remove_edge(0, v);
    }
    let leaves: Vec<Vertex> = (1..n).filter(|v| !missing.contains(v)).collect();
    (g, Spider::star(0, leaves).unwrap())
}

const LOOSE: ExtendParams = ExtendParams {
    delta: 0.0,
    epsilon: 0.06,
    phi: 0.01,
    strict: false,
};

#[test]
fn many_vertices_heavy_mode() {
    let (g, s) = missing_root_edges(400, 3, &[11, 57, 203, 399]);
    let mut p = ExtendParams {
        delta: 0.02,
        epsilon: 0.12,
        phi: 0.01,
        strict: true,
    };
    // ε >= δ + 19τ needs τ <= 0.0052, but four missing vertices give 0.01
    assert!(matches!(extend_star_many(&g, &s, ExtendMode::HeavyColours, &p), Err(Error::Feasibility(_))));
    p.strict = false;
    let ext = extend_star_many(&g, &s, ExtendMode::HeavyColours, &p).unwrap();
    assert_spanning_rainbow(&g, &ext.spider);
    assert_eq!(ext.spider.root(), 0);
    assert!(ext.spider.t() <= 12);
    assert_eq!(ext.levels.len(), 4);
    let vs: BTreeSet<Vertex> = ext.levels.iter().map(|l| l.vertex).collect();
    assert_eq!(vs, BTreeSet::from([11, 57, 203, 399]));
    // heavy colours are distinct and off the star
    let heavy: BTreeSet<Colour> = ext.levels.iter().filter_map(|l| l.heavy).collect();
    assert_eq!(heavy.len(), 4);
}

#[test]
fn many_vertices_few_heavy_mode() {
    let base = proper_colouring(300, 9, 0).unwrap();
    let mut g = shatter_colour_classes(&base, 40, 20, 9).unwrap();
    for v in [5, 6, 100] {
        g.remove_edge(0, v);
    }
    let leaves: Vec<Vertex> = (1..300).filter(|v| ![5, 6, 100].contains(v)).collect();
    let s = Spider::star(0, leaves).unwrap();
    let ext = extend_star_many(&g, &s, ExtendMode::FewHeavyColours, &LOOSE).unwrap();
    assert_spanning_rainbow(&g, &ext.spider);
    assert!(ext.spider.t() <= 9);
}

#[test]
fn strict_many_extension_reports_parameters() {
    let (g, s) = missing_root_edges(60, 1, &[7, 8]);
    let p = ExtendParams {
        delta: 0.0006,
        epsilon: 0.06,
        phi: 0.0005,
        strict: true,
    };
    match extend_star_many(&g, &s, ExtendMode::HeavyColours, &p) {
        Err(Error::Feasibility(v)) => assert!(!v.is_empty()),
        other => panic!("expected a feasibility error, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // K_n minus one root edge: v sees only star colours, so a swap is needed
    #[test]
    fn one_vertex_extension_in_a_factorization(half in 3usize..20, seed in 0u64..1000, v in 1usize..6) {
        let n = 2 * half;
        let (g, s) = missing_root_edges(n, seed, &[v]);
        let star_colours: BTreeSet<Colour> = g.colours_of(&s.edges()).unwrap().into_iter().collect();
        let m: Vec<Edge> = g.edges().filter(|(_, c)| !star_colours.contains(c)).map(|(e, _)| e).collect();
        let ext = extend_star_one_vertex(&g, &s, &m).unwrap();
        prop_assert!(ext.case.index() >= 3);
        prop_assert!(ext.spider.t() <= 3);
        prop_assert_eq!(ext.spider.order(), n);
        prop_assert!(is_rainbow(&g, &ext.spider.edges()).unwrap());
    }
}

#[test]
fn cover_then_free_graphs() {
    let k = proper_colouring(120, 2, 0).unwrap();
    let roots = vec![0, 1, 2];
    let b: Vec<Vertex> = (3..120).collect();
    let f = vec![BTreeSet::new(); 3];
    let spiders = cover_bipartite(&k, &roots, &b, &f, 0.0).unwrap();
    let fam = SpiderFamilyState::new(spiders);
    fam.check(&k).unwrap();
    for i in 0..3 {
        let g = free_graph(&k, &fam, i);
        let mine: BTreeSet<Vertex> = fam.spiders[i].vertices().into_iter().collect();
        for (j, s) in fam.spiders.iter().enumerate() {
            if j == i {
                continue;
            }
            assert!(s.edges().iter().all(|e| !g.has_edge(e.u, e.v)));
            assert!(!g.contains_vertex(s.root()));
        }
        // the star part of spider i survives
        let (star, _) = fam.split(i);
        assert!(star.edges().iter().all(|e| g.has_edge(e.u, e.v)));
        assert!(g.contains_vertex(fam.spiders[i].root()) && mine.contains(&fam.spiders[i].root()));
        // three spiders of order >= n - 8 remove few edges at a vertex
        assert!(g.min_degree() + 12 >= g.order(), "min degree {} of {}", g.min_degree(), g.order());
    }
}

fn relaxed_instance(classes: usize, seed: u64) -> ColouredGraph {
    let base = proper_colouring(1000, seed, 0).unwrap();
    shatter_colour_classes(&base, classes, 59, seed).unwrap()
}

fn assert_full_run(k: &ColouredGraph, t: usize, case: ColourCase) {
    let p = PipelineParams::relaxed();
    let run = theorem1_pipeline(k, t, &p).unwrap();
    assert!(run.failure.is_none(), "{}", run.report());
    assert_eq!(run.case, Some(case));
    assert_eq!(run.spiders.len(), 2);
    for s in &run.spiders {
        assert_eq!(s.t(), t);
        assert_spanning_rainbow(k, s);
    }
    for stage in &run.stages {
        assert!(stage.ok());
        assert!(stage.checks.iter().filter(|c| c.enforced).all(|c| c.holds()), "{stage}");
    }
    assert!(run.stages.iter().any(|s| s.stage == "spanning"));
    assert!(run.certificate.claims.isomorphic);
    assert!(verify_certificate(k, &run.certificate).pass());
}

#[test]
fn relaxed_pipeline_case_a() {
    assert_full_run(&relaxed_instance(4, 0), 30, ColourCase::A);
}

#[test]
fn relaxed_pipeline_case_b() {
    assert_full_run(&relaxed_instance(20, 0), 30, ColourCase::B);
}

#[test]
fn published_constants_are_out_of_scale() {
    let k = round_robin_one_factorization(1000).unwrap();
    let run = theorem1_pipeline(&k, 30, &PipelineParams::published()).unwrap();
    assert!(matches!(run.failure, Some(Error::Scale(_))));
    assert!(run.certificate.trees.is_empty());
    assert!(run.spiders.is_empty());
}

#[test]
fn leg_count_window() {
    let k = round_robin_one_factorization(100).unwrap();
    let p = PipelineParams::relaxed();
    assert!(matches!(theorem1_pipeline(&k, 21, &p), Err(Error::Input(_))));
    let mut incomplete = k.clone();
    incomplete.remove_edge(0, 1);
    assert!(matches!(theorem1_pipeline(&incomplete, 5, &p), Err(Error::Input(_))));
}

#[test]
fn multi_shape() {
    let k = relaxed_instance(20, 1);
    let p = PipelineParams::relaxed().multi_shape();
    let run = multi_shape_pipeline(&k, &[5, 9], &p).unwrap();
    assert!(run.failure.is_none(), "{}", run.report());
    let ts: Vec<usize> = run.spiders.iter().map(|s| s.t()).collect();
    assert_eq!(ts, vec![5, 9]);
    assert!(!run.certificate.claims.isomorphic);
    assert!(verify_certificate(&k, &run.certificate).pass());

    let empty = multi_shape_pipeline(&k, &[], &p).unwrap();
    assert!(empty.failure.is_none() && empty.certificate.trees.is_empty());
    let many = multi_shape_pipeline(&k, &[5, 5, 5], &p).unwrap();
    assert!(matches!(many.failure, Some(Error::Scale(_))));
    assert!(matches!(multi_shape_pipeline(&k, &[2], &p), Err(Error::Input(_))));
}

#[test]
fn no_missing_vertices_returns_the_star() {
    let g = round_robin_one_factorization(30).unwrap();
    let s = Spider::star(0, (1..30).collect()).unwrap();
    for mode in [ExtendMode::HeavyColours, ExtendMode::FewHeavyColours] {
        let ext = extend_star_many(&g, &s, mode, &LOOSE).unwrap();
        assert_eq!(ext.spider, s);
        assert!(ext.levels.is_empty());
    }
}

#[test]
fn one_missing_vertex_is_one_extension() {
    for seed in 0..10u64 {
        let (g, s) = missing_root_edges(40, seed, &[1 + seed as usize]);
        let many = extend_star_many(&g, &s, ExtendMode::HeavyColours, &LOOSE).unwrap();
        assert_eq!(many.levels.len(), 1);
        let heavy = many.levels[0].heavy.unwrap();
        let class: Vec<Edge> = g.edges().filter(|&(_, c)| c == heavy).map(|(e, _)| e).collect();
        let one = extend_star_one_vertex(&g, &s, &class).unwrap();
        assert_eq!(many.spider, one.spider);
        assert_eq!(many.levels[0].case, one.case);
    }
}

#[test]
fn spanning_family_is_unchanged() {
    let k = round_robin_one_factorization(40).unwrap();
    let fam = SpiderFamilyState::new(vec![Spider::star(0, (1..40).collect()).unwrap()]);
    let run = make_spanning_spiders(&k, fam.clone(), ExtendMode::HeavyColours, &PipelineParams::relaxed()).unwrap();
    assert!(run.failure.is_none());
    assert_eq!(run.family.spiders, fam.spiders);
    assert_eq!(run.levels, vec![Vec::new()]);
}

#[test]
fn derived_epsilon_in_heavy_mode() {
    let p = PipelineParams::relaxed();
    for (gamma, tau) in [(0.0, 0.0), (0.01, 0.002), (0.005, 0.02)] {
        let e = derived_extend_params(ExtendMode::HeavyColours, &p, gamma, tau);
        let expected = 0.06 - 4.0 * 0.002 - 2.0 * gamma - tau;
        assert!((e.epsilon - expected).abs() < 1e-12);
        assert!((e.delta - (5.0 * 0.002 + 4.0 * gamma + 2.0 * tau)).abs() < 1e-12);
    }
}

#[test]
fn two_spiders_made_spanning_at_600() {
    let base = proper_colouring(600, 4, 0).unwrap();
    let k = shatter_colour_classes(&base, 30, 35, 4).unwrap();
    let mut p = PipelineParams::relaxed();
    p.set("alpha", 2.0 / 600.0).unwrap();
    assert_eq!(p.spider_count(600), 2);
    let roots = [0, 1];
    let b: Vec<Vertex> = (2..600).collect();
    let spiders = cover_bipartite(&k, &roots, &b, &[BTreeSet::new(), BTreeSet::new()], 0.0).unwrap();
    assert!(spiders.iter().all(|s| s.order() < 600));

    let run = make_spanning_spiders(&k, SpiderFamilyState::new(spiders), ExtendMode::FewHeavyColours, &p).unwrap();
    assert!(run.failure.is_none());
    assert!(run.levels.iter().all(|l| !l.is_empty()));
    let mut cert = ForestCertificate::new(Claims::spiders());
    for (s, &r) in run.family.spiders.iter().zip(&roots) {
        assert_eq!(s.root(), r);
        assert_spanning_rainbow(&k, s);
        cert.trees.push(CertTree::from_spider(s));
    }
    assert!(verify_certificate(&k, &cert).pass());
}

#[test]
fn free_graph_degree_on_k100() {
    let k = proper_colouring(100, 6, 0).unwrap();
    let b: Vec<Vertex> = (3..100).collect();
    let spiders = cover_bipartite(&k, &[0, 1, 2], &b, &vec![BTreeSet::new(); 3], 0.0).unwrap();
    assert!(spiders.iter().all(|s| s.t() == 2));
    let fam = SpiderFamilyState::new(spiders);
    for i in 0..3 {
        let g = free_graph(&k, &fam, i);
        assert!(g.min_degree() >= 100 - 9 - 8 - 1, "spider {i}: {}", g.min_degree());
        // exactly the colours of the core are gone
        let (_, core) = fam.split(i);
        let core_colours: BTreeSet<Colour> = k.colours_of(&core.edges()).unwrap().into_iter().collect();
        let kept = g.colours_used();
        assert!(core_colours.iter().all(|c| !kept.contains(c)));
        let mut others = k.clone();
        for (j, s) in fam.spiders.iter().enumerate() {
            if j != i {
                for e in s.edges() {
                    others.remove_edge(e.u, e.v);
                }
            }
        }
        let lost: BTreeSet<Colour> = others.colours_used().difference(&kept).copied().collect();
        assert!(lost.is_subset(&core_colours));
    }
}
