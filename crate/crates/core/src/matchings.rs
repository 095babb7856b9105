//! Rainbow matchings: the greedy maximal matching and the many-matchings
//! construction with a root set.

use std::collections::BTreeSet;

use crate::error::{Checks, Error, Result};
use crate::graph::{ColouredGraph, Colour, Edge, Vertex};

/// `⌈e / (2Δ + b)⌉`, the guaranteed size of a maximal rainbow matching.
pub fn greedy_bound(g: &ColouredGraph, b: usize) -> usize {
    let denom = 2 * g.max_degree() + b;
    if denom == 0 {
        0
    } else {
        g.edge_count().div_ceil(denom)
    }
}

/// Maximal rainbow matching, scanning edges in lexicographic order.
pub fn greedy_rainbow_matching(g: &ColouredGraph, b: usize) -> Result<Vec<Edge>> {
    let worst = g.max_class_size();
    if worst > b {
        return Err(Error::Input(format!("a colour class has {worst} edges, more than b = {b}")));
    }
    Ok(greedy_unchecked(g, |_, _| true))
}

pub(crate) fn greedy_unchecked(g: &ColouredGraph, mut admit: impl FnMut(Edge, Colour) -> bool) -> Vec<Edge> {
    let mut used_v = vec![false; g.n()];
    let mut used_c = vec![false; g.num_colours()];
    let mut out = Vec::new();
    for (e, c) in g.edges() {
        if !used_v[e.u] && !used_v[e.v] && !used_c[c as usize] && admit(e, c) {
            used_v[e.u] = true;
            used_v[e.v] = true;
            used_c[c as usize] = true;
            out.push(e);
        }
    }
    out
}

/// `t` edge-disjoint rainbow matchings with roots `r_i`, outside every
/// `V(M_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingFamily {
    pub matchings: Vec<Vec<Edge>>,
    pub roots: Vec<Vertex>,
    /// Vertices peeled by the high-degree branch, in removal order.
    pub peeled: Vec<Vertex>,
}

/// Whether `xy` satisfies the root condition against colour set `cols`:
/// one of `r x`, `r y` is a non-edge or has a colour outside `cols`.
fn root_condition(g: &ColouredGraph, r: Vertex, e: Edge, cols: &BTreeSet<Colour>) -> bool {
    [e.u, e.v].iter().any(|&p| match g.colour(r, p) {
        None => true,
        Some(c) => !cols.contains(&c),
    })
}

impl MatchingFamily {
    /// Every violated family invariant, recomputed from scratch against `g`.
    pub fn violations(&self, g: &ColouredGraph) -> Vec<String> {
        let mut out = Vec::new();
        if self.roots.len() != self.matchings.len() {
            out.push(format!("{} roots for {} matchings", self.roots.len(), self.matchings.len()));
        }
        let distinct: BTreeSet<Vertex> = self.roots.iter().copied().collect();
        if distinct.len() != self.roots.len() {
            out.push("roots are not distinct".into());
        }
        let mut seen = BTreeSet::new();
        for (i, m) in self.matchings.iter().enumerate() {
            let mut verts = BTreeSet::new();
            let mut cols = BTreeSet::new();
            for e in m {
                match g.edge_colour(*e) {
                    None => out.push(format!("M_{i}: {e} is not an edge")),
                    Some(c) => {
                        if !cols.insert(c) {
                            out.push(format!("M_{i}: colour {c} repeats"));
                        }
                    }
                }
                if !verts.insert(e.u) || !verts.insert(e.v) {
                    out.push(format!("M_{i}: not a matching at {e}"));
                }
                if !seen.insert(*e) {
                    out.push(format!("M_{i}: {e} shared with another matching"));
                }
            }
            for r in &self.roots {
                if verts.contains(r) {
                    out.push(format!("M_{i}: root {r} is covered"));
                }
            }
            if let Some(&r) = self.roots.get(i) {
                for e in m {
                    if !root_condition(g, r, *e, &cols) {
                        out.push(format!("M_{i}: root condition fails at {e}"));
                    }
                }
            }
        }
        out
    }
}

/// Checks `t <= (|G| - 72δ - 6b) / 29` together with the degree and class
/// bounds.
pub fn check_many_matchings(g: &ColouredGraph, delta: usize, b: usize, t: usize) -> Result<()> {
    let order = g.order() as f64;
    Checks::new()
        .ge("min degree >= delta", g.min_degree() as f64, delta as f64)
        .ge("b >= largest colour class", b as f64, g.max_class_size() as f64)
        .ge(
            "29t <= |G| - 72 delta - 6b",
            order - 72.0 * delta as f64 - 6.0 * b as f64,
            29.0 * t as f64,
        )
        .finish()
}

/// `t` edge-disjoint rainbow matchings of size `delta`, with a root set.
///
/// While a vertex of degree at least `6δ' + 2t` exists (δ' the current
/// target), the lowest-id one is peeled and the target drops by one. The
/// remaining graph has small maximum degree: the `t` lowest-degree vertices
/// become roots and each matching is thinned from a greedy one of size `3δ'`
/// found in the residual graph. Peeled vertices are then put back in reverse
/// order, each extending every matching by one edge.
pub fn many_rainbow_matchings(g: &ColouredGraph, delta: usize, b: usize, t: usize) -> Result<MatchingFamily> {
    if t == 0 {
        return Ok(MatchingFamily::default());
    }
    if g.order() < t {
        return Err(Error::Input(format!("{t} roots requested from {} vertices", g.order())));
    }
    if delta == 0 {
        return Ok(MatchingFamily {
            matchings: vec![Vec::new(); t],
            roots: g.vertices().take(t).collect(),
            peeled: Vec::new(),
        });
    }
    check_many_matchings(g, delta, b, t)?;

    let mut work = g.clone();
    let mut target = delta;
    let mut peeled = Vec::new();
    while target > 0 {
        let bound = 6 * target + 2 * t;
        let heavy = work.vertices().find(|&v| work.degree(v) >= bound);
        match heavy {
            Some(v) => {
                work.remove_vertex(v);
                peeled.push(v);
                target -= 1;
            }
            None => break,
        }
    }

    let (mut matchings, roots) = if target == 0 {
        (vec![Vec::new(); t], work.vertices().take(t).collect::<Vec<_>>())
    } else {
        base_matchings(&work, target, b, t)?
    };

    for (depth, &v) in peeled.iter().enumerate().rev() {
        let mut level_graph = g.clone();
        for &u in &peeled[..depth] {
            level_graph.remove_vertex(u);
        }
        let mut taken: BTreeSet<Vertex> = BTreeSet::new();
        for i in 0..t {
            let y = extension_vertex(&level_graph, v, roots[i], &roots, &matchings[i], &taken).ok_or_else(|| {
                Error::InvariantBreach(format!(
                    "no extension edge at peeled vertex {v} for M_{i} (level {}, size {}, degree {})",
                    depth,
                    matchings[i].len(),
                    level_graph.degree(v)
                ))
            })?;
            taken.insert(y);
            matchings[i].push(Edge::new(v, y));
        }
    }
    for m in matchings.iter_mut() {
        m.sort_unstable();
    }
    Ok(MatchingFamily {
        matchings,
        roots,
        peeled,
    })
}

fn extension_vertex(
    g: &ColouredGraph,
    v: Vertex,
    r: Vertex,
    roots: &[Vertex],
    m: &[Edge],
    taken: &BTreeSet<Vertex>,
) -> Option<Vertex> {
    let covered: BTreeSet<Vertex> = m.iter().flat_map(|e| [e.u, e.v]).collect();
    let cols: BTreeSet<Colour> = m.iter().map(|e| g.edge_colour(*e).expect("matching edge")).collect();
    let root_cols: BTreeSet<Colour> = covered.iter().filter_map(|&u| g.colour(r, u)).collect();
    g.incident(v).find_map(|(y, c)| {
        let ok = !roots.contains(&y)
            && !covered.contains(&y)
            && !taken.contains(&y)
            && !cols.contains(&c)
            && !root_cols.contains(&c)
            && g.colour(r, y).is_none_or(|cy| !cols.contains(&cy));
        ok.then_some(y)
    })
}

fn base_matchings(g: &ColouredGraph, target: usize, b: usize, t: usize) -> Result<(Vec<Vec<Edge>>, Vec<Vertex>)> {
    let mut by_degree: Vec<Vertex> = g.vertices().collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let roots: Vec<Vertex> = by_degree[..t].to_vec();
    let mut residual = g.clone();
    for &r in &roots {
        residual.remove_vertex(r);
    }
    let mut out = Vec::with_capacity(t);
    for (i, &r) in roots.iter().enumerate() {
        let big = greedy_rainbow_matching(&residual, b)?;
        if big.len() < 3 * target {
            return Err(Error::InvariantBreach(format!(
                "greedy matching for M_{i} has {} edges, fewer than 3 x {target}",
                big.len()
            )));
        }
        let thin = thin_matching(g, r, &big, target).ok_or_else(|| {
            Error::InvariantBreach(format!("could not thin M_{i} to {target} edges under the root condition"))
        })?;
        for e in &thin {
            residual.remove_edge(e.u, e.v);
        }
        out.push(thin);
    }
    Ok((out, roots))
}

/// Picks `size` edges of `m` one at a time, keeping the root condition true
/// for every chosen edge.
fn thin_matching(g: &ColouredGraph, r: Vertex, m: &[Edge], size: usize) -> Option<Vec<Edge>> {
    let mut chosen: Vec<Edge> = Vec::with_capacity(size);
    let mut cols = BTreeSet::new();
    for &e in m {
        if chosen.len() == size {
            break;
        }
        let c = g.edge_colour(e)?;
        cols.insert(c);
        chosen.push(e);
        if chosen.iter().all(|&f| root_condition(g, r, f, &cols)) {
            continue;
        }
        chosen.pop();
        cols.remove(&c);
    }
    (chosen.len() == size).then_some(chosen)
}
