use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{is_rainbow, ColouredGraph, Colour, Edge, Vertex};
use crate::spider::Spider;

/// A family of spiders `D_1, ..., D_k` in one host colouring, processed in
/// index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderFamilyState {
    pub spiders: Vec<Spider>,
    /// Index of the next spider to process.
    pub next: usize,
}

impl SpiderFamilyState {
    pub fn new(spiders: Vec<Spider>) -> SpiderFamilyState {
        SpiderFamilyState { spiders, next: 0 }
    }

    pub fn len(&self) -> usize {
        self.spiders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spiders.is_empty()
    }

    pub fn roots(&self) -> Vec<Vertex> {
        self.spiders.iter().map(|s| s.root()).collect()
    }

    /// `D_i = S_i ∪ D̂_i`: `S_i` holds the ordinary leaves that are not
    /// roots of other spiders, `D̂_i` keeps the legs and the remaining leaves.
    pub fn split(&self, i: usize) -> (Spider, Spider) {
        let others: BTreeSet<Vertex> = self.roots().into_iter().filter(|&r| r != self.spiders[i].root()).collect();
        self.spiders[i].split(|y| !others.contains(&y))
    }

    /// Every broken family invariant, as readable messages.
    pub fn violations(&self, k: &ColouredGraph) -> Vec<String> {
        let mut out = Vec::new();
        let mut used: BTreeSet<Edge> = BTreeSet::new();
        let roots = self.roots();
        for (i, s) in self.spiders.iter().enumerate() {
            let edges = s.edges();
            match is_rainbow(k, &edges) {
                Ok(true) => {}
                Ok(false) => out.push(format!("spider {i} is not rainbow")),
                Err(e) => out.push(format!("spider {i}: {e}")),
            }
            for e in edges {
                if !used.insert(e) {
                    out.push(format!("edge {e} is shared (second use in spider {i})"));
                }
            }
            for &r in &roots {
                if !s.contains(r) {
                    out.push(format!("spider {i} misses root {r}"));
                }
            }
        }
        out
    }

    pub fn check(&self, k: &ColouredGraph) -> Result<()> {
        let v = self.violations(k);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvariantBreach(v.join("; ")))
        }
    }
}

/// The graph in which spider `i` may be rebuilt freely: `K` minus the other
/// roots, the other spiders' edges, every edge sharing a colour with `D̂_i`,
/// and the vertices of `D̂_i` other than its root.
pub fn free_graph(k: &ColouredGraph, family: &SpiderFamilyState, i: usize) -> ColouredGraph {
    let root = family.spiders[i].root();
    let (_, core) = family.split(i);
    let mut g = k.clone();
    for (j, s) in family.spiders.iter().enumerate() {
        if j != i {
            for e in s.edges() {
                g.remove_edge(e.u, e.v);
            }
        }
    }
    let core_colours: BTreeSet<Colour> = core.edges().iter().filter_map(|&e| k.edge_colour(e)).collect();
    g.remove_colours(&core_colours);
    for r in family.roots() {
        if r != root {
            g.remove_vertex(r);
        }
    }
    for v in core.vertices() {
        if v != root {
            g.remove_vertex(v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::round_robin_one_factorization;

    #[test]
    fn single_star_family() {
        let k = round_robin_one_factorization(10).unwrap();
        let fam = SpiderFamilyState::new(vec![Spider::star(0, (1..10).collect()).unwrap()]);
        assert!(fam.violations(&k).is_empty());
        let g = free_graph(&k, &fam, 0);
        assert_eq!(g, k);
        assert!(g.min_degree() + 4 >= 10);
    }

    #[test]
    fn detects_shared_edges_and_missing_roots() {
        let k = round_robin_one_factorization(6).unwrap();
        let a = Spider::star(0, vec![1, 2]).unwrap();
        let b = Spider::star(3, vec![0, 4]).unwrap();
        let fam = SpiderFamilyState::new(vec![a.clone(), b]);
        assert!(fam.violations(&k).iter().any(|m| m.contains("misses root 3")));
        let twice = SpiderFamilyState::new(vec![a.clone(), a]);
        assert!(twice.violations(&k).iter().any(|m| m.contains("shared")));
    }

    #[test]
    fn root_leaves_go_to_the_core() {
        let s0 = Spider::new(0, vec![(4, 1)], vec![2, 3, 5]).unwrap();
        let s1 = Spider::new(1, vec![(6, 5)], vec![0, 2, 3]).unwrap();
        let fam = SpiderFamilyState::new(vec![s0, s1]);
        let (star, core) = fam.split(1);
        assert_eq!(star.leaves(), &[2, 3]);
        assert_eq!(core.leaves(), &[0]);
        assert_eq!(core.legs(), &[(6, 5)]);
    }
}
