//! Forest certificates and the independent verifier.
//!
//! The verifier recomputes every predicate from the raw edge lists and the
//! host colouring. Nothing a producer records about its own output is
//! trusted.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{ColouredGraph, Edge, Vertex};
use crate::spider::{classify_edges, Spider};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Claims {
    pub spanning: bool,
    pub rainbow: bool,
    pub edge_disjoint: bool,
    pub spider_shaped: bool,
    pub isomorphic: bool,
}

impl Claims {
    pub fn trees() -> Claims {
        Claims {
            spanning: true,
            rainbow: true,
            edge_disjoint: true,
            ..Claims::default()
        }
    }

    pub fn spiders() -> Claims {
        Claims {
            spider_shaped: true,
            ..Claims::trees()
        }
    }

    pub fn isomorphic_spiders() -> Claims {
        Claims {
            isomorphic: true,
            ..Claims::spiders()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTree {
    pub root: Vertex,
    /// Declared leg count, for spider-shaped trees.
    pub t: Option<usize>,
    pub edges: Vec<Edge>,
}

impl CertTree {
    pub fn from_spider(s: &Spider) -> CertTree {
        CertTree {
            root: s.root(),
            t: Some(s.t()),
            edges: s.edges(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForestCertificate {
    /// Digest of the host colouring, when known.
    pub host_digest: Option<String>,
    pub trees: Vec<CertTree>,
    pub claims: Claims,
}

impl ForestCertificate {
    pub fn new(claims: Claims) -> ForestCertificate {
        ForestCertificate {
            host_digest: None,
            trees: Vec::new(),
            claims,
        }
    }

    /// Claims implied by a certificate file: trees are always claimed
    /// spanning, rainbow and edge-disjoint; declaring every `t` claims spider
    /// shape, and equal declared `t` values claim isomorphism.
    pub fn infer_claims(trees: &[CertTree]) -> Claims {
        let spider_shaped = !trees.is_empty() && trees.iter().all(|t| t.t.is_some());
        let isomorphic = spider_shaped && trees.windows(2).all(|w| w[0].t == w[1].t);
        Claims {
            spider_shaped,
            isomorphic,
            ..Claims::trees()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub edges_in_host: bool,
    pub root_in_host: bool,
    pub is_tree: bool,
    pub spanning: bool,
    pub rainbow: bool,
    /// Leg count when the tree is a spider rooted at the declared root.
    pub spider_t: Option<usize>,
    pub declared_t_matches: bool,
    pub max_degree_off_root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub trees: Vec<TreeReport>,
    pub edge_disjoint: bool,
    pub isomorphic: bool,
    pub digest_matches: bool,
    /// One entry per failed claimed predicate, naming it.
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            writeln!(
                f,
                "tree {i}: tree={} spanning={} rainbow={} spider_t={} max_deg_off_root={}",
                t.is_tree,
                t.spanning,
                t.rainbow,
                t.spider_t.map_or("-".to_string(), |t| t.to_string()),
                t.max_degree_off_root
            )?;
        }
        writeln!(f, "edge_disjoint={} isomorphic={}", self.edge_disjoint, self.isomorphic)?;
        if self.pass() {
            writeln!(f, "PASS")
        } else {
            for msg in &self.failures {
                writeln!(f, "FAIL {msg}")?;
            }
            Ok(())
        }
    }
}

fn check_tree(g: &ColouredGraph, tree: &CertTree) -> TreeReport {
    let edges_in_host = tree
        .edges
        .iter()
        .all(|e| e.u < g.n() && e.v < g.n() && g.has_edge(e.u, e.v));
    let root_in_host = g.contains_vertex(tree.root);

    let mut verts: BTreeSet<Vertex> = BTreeSet::new();
    verts.insert(tree.root);
    for e in &tree.edges {
        verts.insert(e.u);
        verts.insert(e.v);
    }
    let is_tree = is_tree_on(&verts, &tree.edges);
    let spanning = is_tree && verts.len() == g.order() && verts.iter().all(|&v| g.contains_vertex(v));

    let rainbow = edges_in_host && {
        let mut seen = BTreeSet::new();
        tree.edges.iter().all(|e| seen.insert(g.colour(e.u, e.v)))
    };

    let spider_t = if is_tree {
        classify_edges(&tree.edges, tree.root).ok().map(|s| s.t())
    } else {
        None
    };
    let declared_t_matches = tree.t.is_none_or(|t| spider_t == Some(t));

    let mut deg = std::collections::BTreeMap::<Vertex, usize>::new();
    for e in &tree.edges {
        *deg.entry(e.u).or_default() += 1;
        *deg.entry(e.v).or_default() += 1;
    }
    let max_degree_off_root = deg
        .iter()
        .filter(|(&v, _)| v != tree.root)
        .map(|(_, &d)| d)
        .max()
        .unwrap_or(0);

    TreeReport {
        edges_in_host,
        root_in_host,
        is_tree,
        spanning,
        rainbow,
        spider_t,
        declared_t_matches,
        max_degree_off_root,
    }
}

/// Plain union-find connectivity plus the edge-count identity.
fn is_tree_on(verts: &BTreeSet<Vertex>, edges: &[Edge]) -> bool {
    if edges.len() + 1 != verts.len() {
        return false;
    }
    let index: std::collections::BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in edges {
        let a = find(&mut parent, index[&e.u]);
        let b = find(&mut parent, index[&e.v]);
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Checks every claimed property of `cert` against `g`.
pub fn verify_certificate(g: &ColouredGraph, cert: &ForestCertificate) -> VerificationReport {
    let trees: Vec<TreeReport> = cert.trees.iter().map(|t| check_tree(g, t)).collect();
    let mut failures = Vec::new();

    let digest_matches = cert.host_digest.as_ref().is_none_or(|d| *d == g.digest());
    if !digest_matches {
        failures.push("host digest does not match the colouring".to_string());
    }

    for (i, r) in trees.iter().enumerate() {
        if !r.edges_in_host {
            failures.push(format!("tree {i}: edge not in host"));
        }
        if !r.root_in_host {
            failures.push(format!("tree {i}: root not in host"));
        }
        if !r.is_tree {
            failures.push(format!("tree {i}: not a tree"));
        }
        if cert.claims.spanning && !r.spanning {
            failures.push(format!("tree {i}: spanning"));
        }
        if cert.claims.rainbow && !r.rainbow {
            failures.push(format!("tree {i}: rainbow"));
        }
        if cert.claims.spider_shaped && r.spider_t.is_none() {
            failures.push(format!("tree {i}: spider_shaped"));
        }
        if !r.declared_t_matches {
            failures.push(format!(
                "tree {i}: declared t = {:?} but found {:?}",
                cert.trees[i].t, r.spider_t
            ));
        }
    }

    let mut used = BTreeSet::new();
    let edge_disjoint = cert.trees.iter().flat_map(|t| t.edges.iter()).all(|e| used.insert(*e));
    if cert.claims.edge_disjoint && !edge_disjoint {
        failures.push("edge_disjoint".to_string());
    }

    // Spanning t-spiders on the same vertex count are isomorphic iff their t agree.
    let isomorphic = trees.iter().all(|r| r.spanning && r.spider_t.is_some())
        && trees.windows(2).all(|w| w[0].spider_t == w[1].spider_t);
    if cert.claims.isomorphic && !isomorphic {
        failures.push("isomorphic".to_string());
    }

    VerificationReport {
        trees,
        edge_disjoint,
        isomorphic,
        digest_matches,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> ColouredGraph {
        ColouredGraph::from_edges(
            4,
            3,
            [(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)],
        )
        .unwrap()
    }

    #[test]
    fn colour_classes_fail_spanning() {
        let g = k4();
        let mut cert = ForestCertificate::new(Claims {
            spanning: true,
            ..Claims::default()
        });
        for c in 0..3 {
            let edges: Vec<Edge> = g.edges().filter(|&(_, col)| col == c).map(|(e, _)| e).collect();
            cert.trees.push(CertTree {
                root: edges[0].u,
                t: None,
                edges,
            });
        }
        let report = verify_certificate(&g, &cert);
        assert!(!report.pass());
        assert!(report.failures.iter().any(|f| f.ends_with("spanning")));
        assert!(report.edge_disjoint);
    }

    #[test]
    fn single_star_passes() {
        let g = crate::generate::round_robin_one_factorization(6).unwrap();
        let star = Spider::star(0, (1..6).collect()).unwrap();
        let mut cert = ForestCertificate::new(Claims {
            spanning: true,
            rainbow: true,
            ..Claims::default()
        });
        cert.trees.push(CertTree::from_spider(&star));
        let report = verify_certificate(&g, &cert);
        assert!(report.pass(), "{report}");
        assert!(report.isomorphic);
    }

    #[test]
    fn shared_edge_breaks_disjointness() {
        let g = k4();
        let star = Spider::star(0, vec![1, 2, 3]).unwrap();
        let mut cert = ForestCertificate::new(Claims::spiders());
        cert.trees.push(CertTree::from_spider(&star));
        cert.trees.push(CertTree::from_spider(&star));
        let report = verify_certificate(&g, &cert);
        assert_eq!(report.failures, vec!["edge_disjoint".to_string()]);
    }

    #[test]
    fn wrong_declared_t_is_reported() {
        let g = k4();
        let mut tree = CertTree::from_spider(&Spider::star(0, vec![1, 2, 3]).unwrap());
        tree.t = Some(1);
        let cert = ForestCertificate {
            host_digest: None,
            trees: vec![tree],
            claims: Claims::spiders(),
        };
        assert!(!verify_certificate(&g, &cert).pass());
    }

    #[test]
    fn inferred_claims() {
        let a = CertTree {
            root: 0,
            t: Some(2),
            edges: vec![],
        };
        let b = CertTree { t: Some(3), ..a.clone() };
        assert!(ForestCertificate::infer_claims(&[a.clone(), a.clone()]).isomorphic);
        assert!(!ForestCertificate::infer_claims(&[a.clone(), b]).isomorphic);
        let c = CertTree { t: None, ..a };
        assert!(!ForestCertificate::infer_claims(&[c]).spider_shaped);
    }
}
