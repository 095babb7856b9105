use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Checks, Error, Result};
use crate::graph::{is_rainbow, ColouredGraph, Colour, Edge, Vertex};
use crate::matchings::greedy_unchecked;
use crate::proper::extend::check_spanning_rainbow;
use crate::spider::Spider;

use super::cycle::{find_rainbow_cycle, is_rainbow_cycle};
use super::digraph::build_auxiliary_digraph;

/// How the extra legs were found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReshapeBranch {
    /// No legs were needed.
    Unchanged,
    /// A rainbow matching of colours off the leaf star.
    Matching,
    /// A rainbow cycle in the auxiliary digraph.
    Cycle,
}

impl fmt::Display for ReshapeBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReshapeBranch::Unchanged => "unchanged",
            ReshapeBranch::Matching => "matching",
            ReshapeBranch::Cycle => "cycle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReshapeParams {
    /// Vertices of degree below `(1 - δ)|G|` are kept out of the surgery.
    pub delta: f64,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reshape {
    pub spider: Spider,
    pub branch: ReshapeBranch,
    /// Size of the maximal off-star rainbow matching that decided the branch.
    pub matching: usize,
    /// `(joint, foot)` of the legs added.
    pub added: Vec<(Vertex, Vertex)>,
}

/// Turns the spanning rainbow `t`-spider `d0` of `g` into a spanning rainbow
/// `(t + s)`-spider with the same root.
pub fn change_spider_parameter(g: &ColouredGraph, d0: &Spider, s: usize, p: &ReshapeParams) -> Result<Reshape> {
    check_spanning_rainbow(g, d0).map_err(|e| Error::Input(format!("initial spider: {e}")))?;
    if s == 0 {
        return Ok(Reshape {
            spider: d0.clone(),
            branch: ReshapeBranch::Unchanged,
            matching: 0,
            added: Vec::new(),
        });
    }
    let size = g.order() as f64;
    let threshold = (1.0 - p.delta) * size;
    let low: BTreeSet<Vertex> = g.vertices().filter(|&v| (g.degree(v) as f64) < threshold).collect();
    if p.strict {
        let mut checks = Checks::new();
        checks.ge("(1 - δ)|G| vertices of degree >= (1 - δ)|G|", (g.order() - low.len()) as f64, threshold);
        checks.ge("δ|G| >= t", p.delta * size, d0.t() as f64);
        checks.ge("s >= 3", s as f64, 3.0);
        checks.ge("(0.001 - 8δ)|G| >= s", (0.001 - 8.0 * p.delta) * size, s as f64);
        checks.finish()?;
    }

    let r = d0.root();
    let (star, core) = d0.split(|_| true);
    let star_colours: BTreeSet<Colour> = g.colours_of(&star.edges())?.into_iter().collect();
    let core_colours: BTreeSet<Colour> = g.colours_of(&core.edges())?.into_iter().collect();
    let mut h = g.induced(star.leaves().iter().copied().filter(|v| !low.contains(v)));
    h.remove_colours(&core_colours);
    let m = greedy_unchecked(&h, |_, c| !star_colours.contains(&c));

    let (branch, added) = if m.len() >= s {
        let added: Vec<(Vertex, Vertex)> = m[..s].iter().map(|e| (e.u, e.v)).collect();
        (ReshapeBranch::Matching, added)
    } else if s < 3 {
        return Err(Error::Surgery(format!(
            "matching branch has {} < {s} edges and cycles need s >= 3",
            m.len()
        )));
    } else {
        let covered: BTreeSet<Vertex> = m.iter().flat_map(|e| [e.u, e.v]).collect();
        let m_colours: BTreeSet<Colour> = g.colours_of(&m)?.into_iter().collect();
        let j: Vec<Vertex> = h.vertices().filter(|v| !covered.contains(v)).collect();
        let in_j: BTreeSet<Vertex> = j.iter().copied().collect();
        // star edges for colour lookup, plus the edges of J
        let mut aux = g.clone();
        aux.retain_edges(|e, c| {
            (e.contains(r) && star.leaves().binary_search(&e.other(r)).is_ok())
                || (in_j.contains(&e.u) && in_j.contains(&e.v) && h.has_edge(e.u, e.v) && !m_colours.contains(&c))
        });
        let d = build_auxiliary_digraph(&aux, &star, &j)?;
        let cycle = find_rainbow_cycle(&d, s, p.strict).map_err(|e| {
            Error::Surgery(format!(
                "matching branch has {} < {s} edges; cycle branch on {} vertices and {} arcs: {e}",
                m.len(),
                d.len(),
                d.arc_count()
            ))
        })?;
        if !is_rainbow_cycle(&d, &cycle) {
            return Err(Error::InvariantBreach("returned cycle is not rainbow".into()));
        }
        let mut added = Vec::with_capacity(s);
        for i in 0..s {
            let x = j[cycle[i]];
            let next = j[cycle[(i + 1) % s]];
            let z = d.arc_colour(cycle[i], cycle[(i + 1) % s]).unwrap();
            if g.colour(z, next) != g.colour(r, x) {
                return Err(Error::InvariantBreach(format!(
                    "edge {z}-{next} does not carry the colour of {r}-{x}"
                )));
            }
            added.push((z, next));
        }
        (ReshapeBranch::Cycle, added)
    };

    // the added edges form a rainbow matching; the second coordinate
    // loses its root edge and becomes a foot
    let new_edges: Vec<Edge> = added.iter().map(|&(a, b)| Edge::new(a, b)).collect();
    let touched: BTreeSet<Vertex> = added.iter().flat_map(|&(a, b)| [a, b]).collect();
    if touched.len() != 2 * s || !is_rainbow(g, &new_edges)? {
        return Err(Error::InvariantBreach("added edges are not a rainbow matching".into()));
    }
    let mut legs = core.legs().to_vec();
    legs.extend(added.iter().copied());
    let leaves: Vec<Vertex> = star.leaves().iter().copied().filter(|v| !touched.contains(v)).collect();
    let spider = Spider::new(r, legs, leaves)?;
    check_spanning_rainbow(g, &spider)?;
    if spider.t() != d0.t() + s {
        return Err(Error::InvariantBreach(format!(
            "leg count {} after adding {s} to {}",
            spider.t(),
            d0.t()
        )));
    }
    Ok(Reshape {
        spider,
        branch,
        matching: m.len(),
        added,
    })
}
