use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Checks, Error, Result};
use crate::generate::OrientedSts;
use crate::graph::{ColourIndex, ColouredGraph, Colour, Edge, Vertex};
use crate::spider::Spider;

/// `b(x,y,z)` for every oriented triple, keyed by the triple of host
/// vertices, with the colour `c` such that `c(x b(x,y,z)) = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleAssignment {
    a: Vec<Vertex>,
    entries: BTreeMap<[Vertex; 3], (Vertex, Colour)>,
}

impl TripleAssignment {
    /// The root set, in point order.
    pub fn a(&self) -> &[Vertex] {
        &self.a
    }

    pub fn get(&self, t: [Vertex; 3]) -> Option<Vertex> {
        self.entries.get(&t).map(|&(b, _)| b)
    }

    pub fn colour(&self, t: [Vertex; 3]) -> Option<Colour> {
        self.entries.get(&t).map(|&(_, c)| c)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ([Vertex; 3], Vertex, Colour)> + '_ {
        self.entries.iter().map(|(&t, &(b, c))| (t, b, c))
    }

    /// Every violated assignment property, recomputed against `g`.
    pub fn violations(&self, g: &ColouredGraph) -> Vec<String> {
        let mut out = Vec::new();
        let in_a: BTreeSet<Vertex> = self.a.iter().copied().collect();
        for (&[x, y, z], &(b, _)) in &self.entries {
            let rot = [y, z, x];
            let rot2 = [z, x, y];
            let cols = [
                g.colour(x, b),
                self.get(rot).and_then(|b2| g.colour(y, b2)),
                self.get(rot2).and_then(|b3| g.colour(z, b3)),
            ];
            if cols[0].is_none() || cols.iter().any(|c| *c != cols[0]) {
                out.push(format!("({x},{y},{z}): orbit colours differ {cols:?}"));
            }
            if in_a.contains(&b) {
                out.push(format!("({x},{y},{z}): b = {b} lies in A"));
            }
            for (&[p, q, _], &(b2, _)) in &self.entries {
                if [p, q] != [x, y] && (p == x || p == y || q == x || q == y) && b2 == b {
                    out.push(format!("({x},{y},{z}): b = {b} shared with ({p},{q},_)"));
                }
            }
        }
        out
    }
}

/// Host-vertex triples of `osts`, with points mapped through `a`.
fn host_orbits(a: &[Vertex], osts: &OrientedSts) -> Vec<[Vertex; 3]> {
    osts.orbits().iter().map(|t| [a[t[0]], a[t[1]], a[t[2]]]).collect()
}

fn check_inputs(g: &ColouredGraph, a: &[Vertex], osts: &OrientedSts) -> Result<()> {
    let m = a.len();
    if osts.base().m() != m {
        return Err(Error::Input(format!("STS has {} points but |A| = {m}", osts.base().m())));
    }
    let set: BTreeSet<Vertex> = a.iter().copied().collect();
    if set.len() != m || a.iter().any(|&x| !g.contains_vertex(x)) {
        return Err(Error::Input("A must be distinct vertices of G".into()));
    }
    if !g.is_proper() {
        return Err(Error::Input("colouring is not proper".into()));
    }
    Checks::new()
        .gt("n > 9m", g.order() as f64, 9.0 * m as f64)
        .finish()?;
    for &x in a {
        if g.degree(x) != g.num_colours() {
            return Err(Error::Input(format!(
                "vertex {x} of A sees {} of the {} colours",
                g.degree(x),
                g.num_colours()
            )));
        }
    }
    Ok(())
}

/// Assigns `b(x,y,z) = v(x,c)` to each orbit, with the least colour `c`
/// putting all three vertices in `B` and clear of every `b` already given to
/// a triple that shares a point with the first two coordinates.
pub fn assign_triple_vertices(g: &ColouredGraph, a: &[Vertex], osts: &OrientedSts) -> Result<TripleAssignment> {
    check_inputs(g, a, osts)?;
    let idx = ColourIndex::new(g);
    let in_a: BTreeSet<Vertex> = a.iter().copied().collect();
    // b values already given to triples with the key vertex among their first two
    let mut blocked: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    let mut entries = BTreeMap::new();

    for [x, y, z] in host_orbits(a, osts) {
        let orbit = [[x, y, z], [y, z, x], [z, x, y]];
        let pick = (0..g.num_colours() as Colour).find_map(|c| {
            let bs: Vec<Vertex> = orbit.iter().map(|t| idx.at(t[0], c)).collect::<Option<_>>()?;
            let ok = orbit.iter().zip(&bs).all(|(t, b)| {
                !in_a.contains(b)
                    && [t[0], t[1]]
                        .iter()
                        .all(|p| blocked.get(p).is_none_or(|s| !s.contains(b)))
            });
            ok.then_some((c, bs))
        });
        let (c, bs) = pick.ok_or_else(|| {
            Error::InvariantBreach(format!("no admissible colour for the triple ({x},{y},{z})"))
        })?;
        for (t, &b) in orbit.iter().zip(&bs) {
            blocked.entry(t[0]).or_default().insert(b);
            blocked.entry(t[1]).or_default().insert(b);
            entries.insert(*t, (b, c));
        }
    }
    Ok(TripleAssignment {
        a: a.to_vec(),
        entries,
    })
}

/// `K_n` with the edges inside `V \ A` deleted.
pub fn restrict_to_a(g: &ColouredGraph, a: &[Vertex]) -> ColouredGraph {
    let mut in_a = vec![false; g.n()];
    for &x in a {
        in_a[x] = true;
    }
    let mut h = g.clone();
    h.retain_edges(|e, _| in_a[e.u] || in_a[e.v]);
    h
}

/// One spider per vertex of `A`, in the order of `a`. The spiders partition
/// the edges of `G` that meet `A`.
pub fn spider_decomposition(g: &ColouredGraph, a: &[Vertex], osts: &OrientedSts) -> Result<Vec<Spider>> {
    let assignment = assign_triple_vertices(g, a, osts)?;
    decompose_with(g, &assignment, osts)
}

pub fn decompose_with(g: &ColouredGraph, asg: &TripleAssignment, osts: &OrientedSts) -> Result<Vec<Spider>> {
    let a = asg.a();
    let in_a: BTreeSet<Vertex> = a.iter().copied().collect();
    let triples: Vec<[Vertex; 3]> = osts.ordered().iter().map(|t| [a[t[0]], a[t[1]], a[t[2]]]).collect();
    let mut out = Vec::with_capacity(a.len());
    for &x in a {
        let legs: Vec<(Vertex, Vertex)> = triples
            .iter()
            .filter(|t| t[1] == x)
            .map(|&t| (asg.get(t).expect("assigned"), t[0]))
            .collect();
        let own: BTreeSet<Vertex> = triples
            .iter()
            .filter(|t| t[0] == x)
            .map(|&t| asg.get(t).expect("assigned"))
            .collect();
        let joints: BTreeSet<Vertex> = legs.iter().map(|&(j, _)| j).collect();
        let mut leaves: Vec<Vertex> = triples.iter().filter(|t| t[0] == x).map(|t| t[1]).collect();
        leaves.extend(
            g.neighbours(x)
                .filter(|b| !in_a.contains(b) && !own.contains(b) && !joints.contains(b)),
        );
        let s = Spider::new(x, legs, leaves)?;
        for e in s.edges() {
            if !g.has_edge(e.u, e.v) {
                return Err(Error::MissingEdge(e.u, e.v));
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// All edges of `G` meeting `A`, for partition checks.
pub fn edges_meeting(g: &ColouredGraph, a: &[Vertex]) -> Vec<Edge> {
    let in_a: BTreeSet<Vertex> = a.iter().copied().collect();
    g.edges()
        .map(|(e, _)| e)
        .filter(|e| in_a.contains(&e.u) || in_a.contains(&e.v))
        .collect()
}
