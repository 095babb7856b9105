use std::collections::BTreeSet;

use rainbow_forest::generate::{proper_colouring, rng, shatter_colour_classes};
use rainbow_forest::matchings::{
    check_many_matchings, greedy_bound, greedy_rainbow_matching, many_rainbow_matchings, MatchingFamily,
};
use rainbow_forest::oracle::brute_force_max_rainbow_matching;
use rainbow_forest::{ColouredGraph, Error, Vertex};
use rand::Rng;

fn thinned(n: usize, seed: u64, extra: usize, keep: f64) -> ColouredGraph {
    let mut g = proper_colouring(n, seed, extra).unwrap();
    let mut r = rng(seed ^ 0x5eed);
    g.retain_edges(|_, _| r.gen_bool(keep));
    g
}

#[test]
fn greedy_meets_the_bound_on_500_colourings() {
    let mut small = 0;
    for i in 0..500u64 {
        let n = 10 + (i as usize * 37) % 191;
        let extra = (i as usize * 13) % (2 * n);
        // every fifth instance is cut down to a handful of edges
        let keep = if i % 5 == 0 { 20.0 / (n * (n - 1) / 2) as f64 } else { 1.0 - (i % 7) as f64 / 10.0 };
        let g = thinned(n, i, extra, keep);
        let b = g.max_class_size();
        let m = greedy_rainbow_matching(&g, b).unwrap();
        let denom = 2 * g.max_degree() + b;
        let bound = if denom == 0 { 0 } else { g.edge_count().div_ceil(denom) };
        assert_eq!(bound, greedy_bound(&g, b));
        assert!(m.len() >= bound, "instance {i}: {} < {bound}", m.len());

        let mut verts = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for e in &m {
            assert!(verts.insert(e.u) && verts.insert(e.v));
            assert!(cols.insert(g.edge_colour(*e).unwrap()));
        }
        if g.edge_count() <= 30 {
            small += 1;
            let opt = brute_force_max_rainbow_matching(&g).unwrap();
            assert!(m.len() <= opt.len());
        }
    }
    assert!(small >= 50, "only {small} small instances");
}

#[test]
fn class_bound_is_checked() {
    let g = proper_colouring(12, 0, 0).unwrap();
    assert!(matches!(greedy_rainbow_matching(&g, 2), Err(Error::Input(_))));
}

// the four family invariants, written out again
fn assert_family(g: &ColouredGraph, fam: &MatchingFamily, delta: usize, t: usize) {
    assert_eq!(fam.matchings.len(), t);
    assert_eq!(fam.roots.len(), t);
    assert_eq!(fam.roots.iter().collect::<BTreeSet<_>>().len(), t);
    let mut all = BTreeSet::new();
    for (i, m) in fam.matchings.iter().enumerate() {
        assert_eq!(m.len(), delta);
        let mut verts: BTreeSet<Vertex> = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for e in m {
            let c = g.colour(e.u, e.v).expect("edge of the host");
            assert!(cols.insert(c), "M_{i} repeats colour {c}");
            assert!(verts.insert(e.u) && verts.insert(e.v), "M_{i} is not a matching");
            assert!(all.insert(*e), "{e} in two matchings");
        }
        for r in &fam.roots {
            assert!(!verts.contains(r), "root {r} covered by M_{i}");
        }
        let r = fam.roots[i];
        for e in m {
            let ok = [e.u, e.v].iter().any(|&x| g.colour(r, x).is_none_or(|c| !cols.contains(&c)));
            assert!(ok, "root condition fails for {e} in M_{i}");
        }
    }
}

#[test]
fn fifty_feasible_families() {
    let mut done = 0;
    for i in 0..50u64 {
        let n = 300 + (i as usize * 11) % 300;
        let b = 2 + (i as usize % 4);
        let t = 1 + (i as usize % 5);
        let base = proper_colouring(n, i, 0).unwrap();
        let mut g = shatter_colour_classes(&base, base.num_colours(), b, i).unwrap();
        if i % 3 == 0 {
            let mut r = rng(i);
            g.retain_edges(|_, _| r.gen_bool(0.5));
        }
        let delta = (n - 6 * b - 29 * t) / 72;
        assert!(delta >= 1 && g.min_degree() >= delta);
        check_many_matchings(&g, delta, b, t).unwrap();
        let fam = many_rainbow_matchings(&g, delta, b, t).unwrap();
        assert_family(&g, &fam, delta, t);
        assert!(fam.violations(&g).is_empty());
        done += 1;
    }
    assert_eq!(done, 50);
}

#[test]
fn infeasible_parameters_are_reported() {
    let g = proper_colouring(100, 0, 0).unwrap();
    match many_rainbow_matchings(&g, 5, 50, 2) {
        Err(Error::Feasibility(v)) => assert!(v.iter().any(|i| i.slack() < 0.0)),
        other => panic!("expected infeasible, got {other:?}"),
    }
}
