//! Edge-coloured simple graphs on a fixed id range.
//!
//! Vertices are ids `0..n`. A vertex can be absent (deleted), which keeps ids
//! stable across the many "delete these vertices" subgraphs the constructions
//! need. Colours are dense ids `0..C`. Storage is a dense symmetric `n x n`
//! matrix with [`NO_EDGE`] marking non-edges, so colour lookup is O(1).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Colour = u32;

/// Sentinel stored in the adjacency matrix for a missing edge.
pub const NO_EDGE: Colour = Colour::MAX;

/// An unordered pair `{u, v}` stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// Builds the normalised edge. Panics on a loop.
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        assert_ne!(a, b, "loops are not edges");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((a, b): (Vertex, Vertex)) -> Edge {
        Edge::new(a, b)
    }
}

#[derive(Debug, Clone)]
pub struct ColouredGraph {
    n: usize,
    num_colours: usize,
    matrix: Vec<Colour>,
    present: Vec<bool>,
    degree: Vec<usize>,
    edge_count: usize,
    proper: OnceLock<bool>,
}

impl PartialEq for ColouredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.num_colours == other.num_colours
            && self.present == other.present
            && self.matrix == other.matrix
    }
}

impl Eq for ColouredGraph {}

impl ColouredGraph {
    /// Edgeless graph on `n` vertices with a palette of `num_colours` colours.
    pub fn empty(n: usize, num_colours: usize) -> ColouredGraph {
        ColouredGraph {
            n,
            num_colours,
            matrix: vec![NO_EDGE; n * n],
            present: vec![true; n],
            degree: vec![0; n],
            edge_count: 0,
            proper: OnceLock::new(),
        }
    }

    /// Builds a graph from `(u, v, colour)` triples, rejecting loops,
    /// repeated pairs and out-of-range ids.
    pub fn from_edges<I>(n: usize, num_colours: usize, edges: I) -> Result<ColouredGraph>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Colour)>,
    {
        let mut g = ColouredGraph::empty(n, num_colours);
        for (u, v, c) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("vertex out of range in edge {u}-{v} (n = {n})")));
            }
            if u == v {
                return Err(Error::Input(format!("loop at vertex {u}")));
            }
            if (c as usize) >= num_colours {
                return Err(Error::Input(format!(
                    "colour {c} on edge {u}-{v} out of range (C = {num_colours})"
                )));
            }
            if g.has_edge(u, v) {
                return Err(Error::Input(format!("repeated edge {u}-{v}")));
            }
            g.insert_edge(u, v, c);
        }
        Ok(g)
    }

    /// Vertex id capacity; ids are `0..n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colours(&self) -> usize {
        self.num_colours
    }

    /// Number of present vertices, written `|G|`.
    pub fn order(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v < self.n && self.present[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| self.present[v])
    }

    #[inline]
    pub fn colour(&self, u: Vertex, v: Vertex) -> Option<Colour> {
        let c = self.matrix[u * self.n + v];
        (c != NO_EDGE).then_some(c)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.matrix[u * self.n + v] != NO_EDGE
    }

    pub fn edge_colour(&self, e: Edge) -> Option<Colour> {
        self.colour(e.u, e.v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    /// Neighbours of `v` in increasing id order.
    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let row = &self.matrix[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter(|(_, &c)| c != NO_EDGE)
            .map(|(u, _)| u)
    }

    /// `(neighbour, colour)` pairs at `v`, increasing neighbour id.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = (Vertex, Colour)> + '_ {
        let row = &self.matrix[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter(|(_, &c)| c != NO_EDGE)
            .map(|(u, &c)| (u, c))
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, Colour)> + '_ {
        (0..self.n).flat_map(move |u| {
            ((u + 1)..self.n).filter_map(move |v| self.colour(u, v).map(|c| (Edge { u, v }, c)))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree[v]).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree[v]).max().unwrap_or(0)
    }

    /// Number of edges of each colour, indexed by colour id.
    pub fn colour_class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_colours];
        for (_, c) in self.edges() {
            sizes[c as usize] += 1;
        }
        sizes
    }

    pub fn max_class_size(&self) -> usize {
        self.colour_class_sizes().into_iter().max().unwrap_or(0)
    }

    /// Colours that label at least one edge.
    pub fn colours_used(&self) -> BTreeSet<Colour> {
        self.edges().map(|(_, c)| c).collect()
    }

    /// True iff no two edges at a common vertex share a colour. Cached until
    /// the next mutation.
    pub fn is_proper(&self) -> bool {
        *self.proper.get_or_init(|| {
            let mut seen = vec![usize::MAX; self.num_colours];
            for v in 0..self.n {
                for (_, c) in self.incident(v) {
                    if seen[c as usize] == v {
                        return false;
                    }
                    seen[c as usize] = v;
                }
            }
            true
        })
    }

    /// True iff every pair of present vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let k = self.order();
        self.edge_count == k * k.saturating_sub(1) / 2
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex, c: Colour) {
        assert!(u != v && self.present[u] && self.present[v]);
        assert!((c as usize) < self.num_colours);
        if !self.has_edge(u, v) {
            self.degree[u] += 1;
            self.degree[v] += 1;
            self.edge_count += 1;
        }
        self.matrix[u * self.n + v] = c;
        self.matrix[v * self.n + u] = c;
        self.proper = OnceLock::new();
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Option<Colour> {
        let c = self.colour(u, v)?;
        self.matrix[u * self.n + v] = NO_EDGE;
        self.matrix[v * self.n + u] = NO_EDGE;
        self.degree[u] -= 1;
        self.degree[v] -= 1;
        self.edge_count -= 1;
        self.proper = OnceLock::new();
        Some(c)
    }

    /// Deletes `v` and every edge at it. The id stays reserved.
    pub fn remove_vertex(&mut self, v: Vertex) {
        if !self.present[v] {
            return;
        }
        let nbrs: Vec<Vertex> = self.neighbours(v).collect();
        for u in nbrs {
            self.remove_edge(u, v);
        }
        self.present[v] = false;
    }

    /// Keeps only the edges for which `keep` returns true.
    pub fn retain_edges<F>(&mut self, mut keep: F)
    where
        F: FnMut(Edge, Colour) -> bool,
    {
        let doomed: Vec<Edge> = self
            .edges()
            .filter(|&(e, c)| !keep(e, c))
            .map(|(e, _)| e)
            .collect();
        for e in doomed {
            self.remove_edge(e.u, e.v);
        }
    }

    /// Deletes every edge whose colour is in `colours`.
    pub fn remove_colours(&mut self, colours: &BTreeSet<Colour>) {
        if !colours.is_empty() {
            self.retain_edges(|_, c| !colours.contains(&c));
        }
    }

    /// Induced subgraph on the present vertices in `keep`.
    pub fn induced<I>(&self, keep: I) -> ColouredGraph
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut mask = vec![false; self.n];
        for v in keep {
            if self.contains_vertex(v) {
                mask[v] = true;
            }
        }
        let mut g = self.clone();
        for v in 0..self.n {
            if !mask[v] {
                g.remove_vertex(v);
            }
        }
        g
    }

    /// Stable SHA-256 digest of the colouring file encoding.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(crate::io::colouring_to_string(self).as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Colours of a set of edges; errors if an edge is missing.
    pub fn colours_of<'a, I>(&self, edges: I) -> Result<Vec<Colour>>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        edges
            .into_iter()
            .map(|e| self.edge_colour(*e).ok_or(Error::MissingEdge(e.u, e.v)))
            .collect()
    }
}

/// `at(v, c)` is the neighbour of `v` along its colour-`c` edge, if any.
/// Only meaningful for proper colourings.
#[derive(Debug, Clone)]
pub struct ColourIndex {
    num_colours: usize,
    table: Vec<u32>,
}

impl ColourIndex {
    const NONE: u32 = u32::MAX;

    pub fn new(g: &ColouredGraph) -> ColourIndex {
        let c = g.num_colours();
        let mut table = vec![Self::NONE; g.n() * c];
        for v in g.vertices() {
            for (u, col) in g.incident(v) {
                table[v * c + col as usize] = u as u32;
            }
        }
        ColourIndex {
            num_colours: c,
            table,
        }
    }

    #[inline]
    pub fn at(&self, v: Vertex, c: Colour) -> Option<Vertex> {
        let x = self.table[v * self.num_colours + c as usize];
        (x != Self::NONE).then_some(x as Vertex)
    }
}

/// True iff all edges carry distinct colours. Errors on an edge not in `g`.
pub fn is_rainbow(g: &ColouredGraph, edges: &[Edge]) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for e in edges {
        let c = g.edge_colour(*e).ok_or(Error::MissingEdge(e.u, e.v))?;
        if !seen.insert(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> ColouredGraph {
        // the 1-factorization of K_4
        ColouredGraph::from_edges(
            4,
            3,
            [(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)],
        )
        .unwrap()
    }

    #[test]
    fn star_is_rainbow() {
        let g = k4();
        let star: Vec<Edge> = (1..4).map(|v| Edge::new(0, v)).collect();
        assert!(is_rainbow(&g, &star).unwrap());
    }

    #[test]
    fn empty_edge_list_is_rainbow() {
        assert!(is_rainbow(&k4(), &[]).unwrap());
    }

    #[test]
    fn repeated_colour_is_not_rainbow() {
        assert!(!is_rainbow(&k4(), &[Edge::new(0, 1), Edge::new(2, 3)]).unwrap());
    }

    #[test]
    fn missing_edge_is_an_error() {
        let mut g = k4();
        g.remove_edge(0, 1);
        assert!(matches!(
            is_rainbow(&g, &[Edge::new(0, 1)]),
            Err(Error::MissingEdge(0, 1))
        ));
    }

    #[test]
    fn properness_cache_tracks_mutation() {
        let mut g = k4();
        assert!(g.is_proper());
        g.remove_edge(0, 2);
        g.insert_edge(0, 2, 0);
        assert!(!g.is_proper());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ColouredGraph::from_edges(3, 1, [(0, 0, 0)]).is_err());
        assert!(ColouredGraph::from_edges(3, 1, [(0, 1, 0), (1, 0, 0)]).is_err());
        assert!(ColouredGraph::from_edges(3, 1, [(0, 1, 1)]).is_err());
        assert!(ColouredGraph::from_edges(3, 1, [(0, 3, 0)]).is_err());
    }

    #[test]
    fn vertex_removal_keeps_ids() {
        let mut g = k4();
        g.remove_vertex(2);
        assert_eq!(g.order(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(!g.contains_vertex(2));
        assert!(g.is_complete());
        assert_eq!(g.neighbours(0).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn colour_index_lookup() {
        let g = k4();
        let idx = ColourIndex::new(&g);
        assert_eq!(idx.at(0, 2), Some(3));
        assert_eq!(idx.at(2, 0), Some(3));
    }
}
