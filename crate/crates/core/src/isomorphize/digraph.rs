use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Colour, Vertex};
use crate::spider::Spider;

/// A digraph on `0..N` with a colour on every vertex and every arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotallyColouredDigraph {
    vertex_colour: Vec<usize>,
    out: Vec<BTreeMap<usize, usize>>,
    inn: Vec<BTreeMap<usize, usize>>,
    arcs: usize,
}

impl TotallyColouredDigraph {
    pub fn new(vertex_colour: Vec<usize>) -> TotallyColouredDigraph {
        let n = vertex_colour.len();
        TotallyColouredDigraph {
            vertex_colour,
            out: vec![BTreeMap::new(); n],
            inn: vec![BTreeMap::new(); n],
            arcs: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.vertex_colour.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_colour.is_empty()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn vertex_colour(&self, v: usize) -> usize {
        self.vertex_colour[v]
    }

    pub fn arc_colour(&self, x: usize, y: usize) -> Option<usize> {
        self.out.get(x)?.get(&y).copied()
    }

    /// `(head, colour)` for every arc leaving `v`, by head.
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out[v].iter().map(|(&y, &c)| (y, c))
    }

    /// `(tail, colour)` for every arc entering `v`, by tail.
    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.inn[v].iter().map(|(&x, &c)| (x, c))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn add_arc(&mut self, x: usize, y: usize, colour: usize) -> Result<()> {
        let n = self.len();
        if x >= n || y >= n {
            return Err(Error::Input(format!("arc {x}->{y} out of range (N = {n})")));
        }
        if x == y {
            return Err(Error::Input(format!("loop at {x}")));
        }
        if self.out[x].contains_key(&y) {
            return Err(Error::Input(format!("repeated arc {x}->{y}")));
        }
        self.out[x].insert(y, colour);
        self.inn[y].insert(x, colour);
        self.arcs += 1;
        Ok(())
    }

    /// Broken total-colouring rules: repeated colours among the in-arcs or
    /// the out-arcs of a vertex, an arc coloured like its endpoint, or two
    /// vertices sharing a colour.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            let cv = self.vertex_colour[v];
            for (dir, arcs) in [("out", &self.out[v]), ("in", &self.inn[v])] {
                let mut seen = BTreeSet::new();
                for (&u, &c) in arcs {
                    if !seen.insert(c) {
                        out.push(format!("{dir}-arcs at {v} repeat colour {c}"));
                    }
                    if c == cv {
                        out.push(format!("arc between {v} and {u} has the colour of {v}"));
                    }
                }
            }
        }
        let distinct: BTreeSet<usize> = self.vertex_colour.iter().copied().collect();
        if distinct.len() != self.len() {
            out.push("vertex colours are not distinct".into());
        }
        out
    }

    pub fn is_proper_vertex_rainbow(&self) -> bool {
        self.violations().is_empty()
    }
}

/// The digraph on `j` (indexed in the given order, each vertex coloured by
/// its id in `h`) with an arc `x -> y` of colour `z` whenever `zy` is an edge
/// of `h[j]` whose colour is that of the star edge `r x`.
///
/// `h` must contain the star's edges. Edges of `h[j]` whose colour belongs
/// to a leaf outside `j` give no arcs.
pub fn build_auxiliary_digraph(h: &ColouredGraph, star: &Spider, j: &[Vertex]) -> Result<TotallyColouredDigraph> {
    let r = star.root();
    if star.t() != 0 {
        return Err(Error::Input("expected a star".into()));
    }
    let mut index = vec![usize::MAX; h.n()];
    for (i, &v) in j.iter().enumerate() {
        if v >= h.n() || !h.contains_vertex(v) {
            return Err(Error::Input(format!("vertex {v} of J is not in the graph")));
        }
        if v == r {
            return Err(Error::Input(format!("the root {r} lies in J")));
        }
        if index[v] != usize::MAX {
            return Err(Error::Input(format!("vertex {v} repeated in J")));
        }
        index[v] = i;
    }
    let mut owner: Vec<Option<Vertex>> = vec![None; h.num_colours()];
    for &x in star.leaves() {
        let c: Colour = h.colour(r, x).ok_or(Error::MissingEdge(r, x))?;
        owner[c as usize] = Some(x);
    }
    let mut d = TotallyColouredDigraph::new(j.to_vec());
    for (e, c) in h.edges() {
        let (z, y) = (e.u, e.v);
        if index[z] == usize::MAX || index[y] == usize::MAX {
            continue;
        }
        let x = owner[c as usize].ok_or_else(|| {
            Error::Input(format!("colour {c} of edge {e} inside J does not occur on the star"))
        })?;
        if index[x] == usize::MAX {
            continue;
        }
        d.add_arc(index[x], index[y], z)?;
        d.add_arc(index[x], index[z], y)?;
    }
    Ok(d)
}
