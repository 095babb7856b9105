use std::collections::{BTreeMap, BTreeSet, VecDeque};

use proptest::prelude::*;
use rainbow_forest::generate::proper_colouring;
use rainbow_forest::io::{certificate_to_string, read_certificate};
use rainbow_forest::{verify_certificate, CertTree, Claims, ColouredGraph, Edge, ForestCertificate, Vertex};

struct Naive {
    is_tree: bool,
    spanning: bool,
    rainbow: bool,
    spider_t: Option<usize>,
}

fn naive(g: &ColouredGraph, root: Vertex, edges: &[Edge]) -> Naive {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    adj.entry(root).or_default();
    for e in edges {
        adj.entry(e.u).or_default().push(e.v);
        adj.entry(e.v).or_default().push(e.u);
    }
    let mut dist = BTreeMap::from([(root, 0usize)]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[&x] {
            if !dist.contains_key(&y) {
                dist.insert(y, dist[&x] + 1);
                queue.push_back(y);
            }
        }
    }
    let distinct: BTreeSet<Edge> = edges.iter().copied().collect();
    let is_tree = dist.len() == adj.len() && distinct.len() == edges.len() && edges.len() + 1 == adj.len();
    let spanning = is_tree && adj.len() == g.n();
    let rainbow = edges.iter().all(|e| g.has_edge(e.u, e.v))
        && edges.iter().map(|e| g.colour(e.u, e.v)).collect::<BTreeSet<_>>().len() == edges.len();
    let spider_t = if !is_tree {
        None
    } else {
        let ok = adj.iter().all(|(&v, nb)| match dist[&v] {
            0 => true,
            1 => nb.len() <= 2,
            2 => nb.len() == 1,
            _ => false,
        });
        ok.then(|| adj.iter().filter(|(&v, nb)| dist[&v] == 1 && nb.len() == 2).count())
    };
    Naive {
        is_tree,
        spanning,
        rainbow,
        spider_t,
    }
}

fn arb_instance() -> impl Strategy<Value = (usize, u64, u8, Vec<Vec<(usize, usize)>>)> {
    (2usize..=8, any::<u64>(), 0u8..3).prop_flat_map(|(n, seed, root)| {
        let pair = (0..n, 0..n).prop_filter("loop", |(a, b)| a != b);
        let tree = prop::collection::vec(pair, 0..n + 1);
        (Just(n), Just(seed), Just(root), prop::collection::vec(tree, 1..4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn verifier_matches_naive_checks((n, seed, root, trees) in arb_instance()) {
        let g = proper_colouring(n, seed, 0).unwrap();
        let root = root as usize % n;
        let cert_trees: Vec<CertTree> = trees
            .iter()
            .map(|es| CertTree { root, t: None, edges: es.iter().map(|&(a, b)| Edge::new(a, b)).collect() })
            .collect();
        let cert = ForestCertificate { host_digest: None, trees: cert_trees.clone(), claims: Claims::trees() };
        let report = verify_certificate(&g, &cert);
        let mut expect_pass = true;
        for (tree, rep) in cert_trees.iter().zip(&report.trees) {
            let nv = naive(&g, root, &tree.edges);
            prop_assert_eq!(rep.is_tree, nv.is_tree);
            prop_assert_eq!(rep.spanning, nv.spanning);
            prop_assert_eq!(rep.rainbow, nv.rainbow);
            prop_assert_eq!(rep.spider_t, nv.spider_t);
            expect_pass &= nv.spanning && nv.rainbow;
        }
        let all: Vec<Edge> = cert_trees.iter().flat_map(|t| t.edges.iter().copied()).collect();
        let disjoint = all.iter().collect::<BTreeSet<_>>().len() == all.len();
        prop_assert_eq!(report.edge_disjoint, disjoint);
        prop_assert_eq!(report.pass(), expect_pass && disjoint);

        // the text form round-trips
        let back = read_certificate(&certificate_to_string(&cert)).unwrap();
        prop_assert_eq!(back.trees, cert.trees);
    }
}

#[test]
fn stars_and_isomorphism() {
    let g = proper_colouring(8, 3, 0).unwrap();
    let star: Vec<Edge> = (1..8).map(|v| Edge::new(0, v)).collect();
    let mut cert = ForestCertificate::new(Claims::isomorphic_spiders());
    cert.trees.push(CertTree { root: 0, t: Some(0), edges: star });
    assert!(verify_certificate(&g, &cert).pass());
    // a 1-spider on the same host
    let mut legs: Vec<Edge> = (2..8).map(|v| Edge::new(1, v)).collect();
    legs.push(Edge::new(2, 0));
    cert.trees.push(CertTree { root: 1, t: Some(1), edges: legs });
    let report = verify_certificate(&g, &cert);
    assert!(!report.isomorphic);
    assert!(report.failures.contains(&"isomorphic".to_string()));
    // both trees use the edge 0-2
    assert!(!report.edge_disjoint);
}
