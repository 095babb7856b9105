//! Spiders: stars with some edges subdivided once.
//!
//! A `t`-spider has a root `r`, `t` legs `r - j - x` (joint `j`, foot `x`)
//! and ordinary leaves `y` attached straight to the root. A star is a
//! 0-spider.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spider {
    root: Vertex,
    legs: Vec<(Vertex, Vertex)>,
    leaves: Vec<Vertex>,
}

impl Spider {
    /// Builds a spider in normal form (legs sorted by joint, leaves sorted).
    /// All named vertices must be distinct.
    pub fn new(root: Vertex, mut legs: Vec<(Vertex, Vertex)>, mut leaves: Vec<Vertex>) -> Result<Spider> {
        legs.sort_unstable();
        leaves.sort_unstable();
        let mut seen = BTreeSet::new();
        seen.insert(root);
        for &(j, x) in &legs {
            for v in [j, x] {
                if !seen.insert(v) {
                    return Err(Error::NotASpider(format!("vertex {v} named twice")));
                }
            }
        }
        for &y in &leaves {
            if !seen.insert(y) {
                return Err(Error::NotASpider(format!("vertex {y} named twice")));
            }
        }
        Ok(Spider { root, legs, leaves })
    }

    pub fn star(root: Vertex, leaves: Vec<Vertex>) -> Result<Spider> {
        Spider::new(root, Vec::new(), leaves)
    }

    /// Star plus matching: each matching edge has exactly one endpoint among
    /// the star's leaves (which becomes a joint) and avoids the root.
    pub fn star_plus_matching(root: Vertex, leaves: &[Vertex], matching: &[Edge]) -> Result<Spider> {
        let mut leaf_set: BTreeSet<Vertex> = leaves.iter().copied().collect();
        let mut legs = Vec::with_capacity(matching.len());
        for e in matching {
            if e.contains(root) {
                return Err(Error::NotASpider(format!("matching edge {e} touches the root")));
            }
            let (joint, foot) = match (leaf_set.contains(&e.u), leaf_set.contains(&e.v)) {
                (true, false) => (e.u, e.v),
                (false, true) => (e.v, e.u),
                _ => {
                    return Err(Error::NotASpider(format!(
                        "matching edge {e} must meet the star in exactly one vertex"
                    )))
                }
            };
            leaf_set.remove(&joint);
            legs.push((joint, foot));
        }
        Spider::new(root, legs, leaf_set.into_iter().collect())
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    /// `(joint, foot)` pairs.
    pub fn legs(&self) -> &[(Vertex, Vertex)] {
        &self.legs
    }

    pub fn leaves(&self) -> &[Vertex] {
        &self.leaves
    }

    /// Number of legs.
    pub fn t(&self) -> usize {
        self.legs.len()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        1 + 2 * self.legs.len() + self.leaves.len()
    }

    pub fn edge_count(&self) -> usize {
        self.order() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v == self.root || self.leaves.binary_search(&v).is_ok() || self.legs.iter().any(|&(j, x)| j == v || x == v)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs = Vec::with_capacity(self.order());
        vs.push(self.root);
        for &(j, x) in &self.legs {
            vs.push(j);
            vs.push(x);
        }
        vs.extend_from_slice(&self.leaves);
        vs.sort_unstable();
        vs
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut es = self.leg_edges();
        es.extend(self.star_edges());
        es.sort_unstable();
        es
    }

    /// Root-to-leaf edges of the ordinary leaves.
    pub fn star_edges(&self) -> Vec<Edge> {
        self.leaves.iter().map(|&y| Edge::new(self.root, y)).collect()
    }

    /// Edges of the legs: `r j` and `j x` for every leg.
    pub fn leg_edges(&self) -> Vec<Edge> {
        self.legs
            .iter()
            .flat_map(|&(j, x)| [Edge::new(self.root, j), Edge::new(j, x)])
            .collect()
    }

    /// Splits off the ordinary leaves in `keep_in_star`; every other ordinary
    /// leaf stays with the legs in the returned core.
    pub fn split(&self, keep_in_star: impl Fn(Vertex) -> bool) -> (Spider, Spider) {
        let (star, rest): (Vec<Vertex>, Vec<Vertex>) = self.leaves.iter().partition(|&&y| keep_in_star(y));
        let star = Spider {
            root: self.root,
            legs: Vec::new(),
            leaves: star,
        };
        let core = Spider {
            root: self.root,
            legs: self.legs.clone(),
            leaves: rest,
        };
        (star, core)
    }

    /// Union of two spiders with the same root and no other common vertex.
    pub fn merge(&self, other: &Spider) -> Result<Spider> {
        if self.root != other.root {
            return Err(Error::NotASpider(format!(
                "cannot merge spiders rooted at {} and {}",
                self.root, other.root
            )));
        }
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        let mut leaves = self.leaves.clone();
        leaves.extend_from_slice(&other.leaves);
        Spider::new(self.root, legs, leaves)
    }

    /// Drops the given ordinary leaves.
    pub fn without_leaves(&self, drop: &BTreeSet<Vertex>) -> Spider {
        Spider {
            root: self.root,
            legs: self.legs.clone(),
            leaves: self.leaves.iter().copied().filter(|y| !drop.contains(y)).collect(),
        }
    }
}

/// Recovers the spider normal form of a tree given by its edges, rooted at
/// `root`.
pub fn classify_spider(g: &ColouredGraph, edges: &[Edge], root: Vertex) -> Result<Spider> {
    for e in edges {
        if e.u >= g.n() || e.v >= g.n() || !g.has_edge(e.u, e.v) {
            return Err(Error::MissingEdge(e.u, e.v));
        }
    }
    classify_edges(edges, root)
}

/// Same as [`classify_spider`] without the host-graph membership check.
pub fn classify_edges(edges: &[Edge], root: Vertex) -> Result<Spider> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    adj.entry(root).or_default();
    let distinct: BTreeSet<Edge> = edges.iter().copied().collect();
    if distinct.len() != edges.len() {
        return Err(Error::Shape("repeated edge".into()));
    }
    for e in edges {
        adj.entry(e.u).or_default().push(e.v);
        adj.entry(e.v).or_default().push(e.u);
    }
    if edges.len() + 1 != adj.len() {
        return Err(Error::Shape(format!(
            "{} edges on {} vertices cannot form a tree containing the root",
            edges.len(),
            adj.len()
        )));
    }
    let mut dist: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    dist.insert(root, 0);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[&x] {
            if !dist.contains_key(&y) {
                dist.insert(y, dist[&x] + 1);
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    if dist.len() != adj.len() {
        return Err(Error::Shape("edges are not connected".into()));
    }
    let mut children: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for (&v, &d) in &dist {
        match d {
            0 | 1 => {}
            2 => children.entry(parent[&v]).or_default().push(v),
            _ => return Err(Error::NotASpider(format!("vertex {v} is at distance {d} from the root"))),
        }
    }
    let mut legs = Vec::new();
    let mut leaves = Vec::new();
    for (&v, &d) in &dist {
        if d != 1 {
            continue;
        }
        match children.get(&v).map(Vec::as_slice) {
            None | Some([]) => leaves.push(v),
            Some(&[x]) => legs.push((v, x)),
            Some(_) => return Err(Error::NotASpider(format!("joint {v} has more than one foot"))),
        }
    }
    Spider::new(root, legs, leaves)
}
