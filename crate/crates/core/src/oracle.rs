//! Exhaustive searches for tiny instances. These are test oracles: they
//! share no code with the constructions they check.

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Edge};
use crate::isomorphize::TotallyColouredDigraph;

/// Largest edge count accepted by [`brute_force_max_rainbow_matching`].
pub const MATCHING_EDGE_LIMIT: usize = 30;
/// Largest order accepted by [`brute_force_edge_disjoint_rainbow_spanning_trees`].
pub const TREE_PACKING_ORDER_LIMIT: usize = 6;
/// Largest order accepted by [`brute_force_rainbow_cycle`].
pub const CYCLE_ORDER_LIMIT: usize = 6;

/// Some `s`-cycle of `d` whose `s` vertex colours and `s` arc colours are
/// `2s` distinct colours, by trying every sequence of distinct vertices.
pub fn brute_force_rainbow_cycle(d: &TotallyColouredDigraph, s: usize) -> Result<Option<Vec<usize>>> {
    if d.len() > CYCLE_ORDER_LIMIT {
        return Err(Error::Size(format!(
            "{} vertices exceeds the exhaustive-cycle limit of {CYCLE_ORDER_LIMIT}",
            d.len()
        )));
    }
    let mut seq = Vec::with_capacity(s);
    Ok(sequences(d, s, &mut seq).then_some(seq))
}

fn sequences(d: &TotallyColouredDigraph, s: usize, seq: &mut Vec<usize>) -> bool {
    if seq.len() == s {
        return s >= 2 && jointly_rainbow(d, seq);
    }
    for v in 0..d.len() {
        if seq.contains(&v) {
            continue;
        }
        seq.push(v);
        if sequences(d, s, seq) {
            return true;
        }
        seq.pop();
    }
    false
}

fn jointly_rainbow(d: &TotallyColouredDigraph, seq: &[usize]) -> bool {
    let mut colours: Vec<usize> = seq.iter().map(|&v| d.vertex_colour(v)).collect();
    for i in 0..seq.len() {
        match d.arc_colour(seq[i], seq[(i + 1) % seq.len()]) {
            Some(c) => colours.push(c),
            None => return false,
        }
    }
    colours.sort_unstable();
    colours.windows(2).all(|w| w[0] != w[1])
}

/// A maximum rainbow matching by exhaustive search. Among maximum matchings
/// the lexicographically first (as a sorted edge list) is returned.
pub fn brute_force_max_rainbow_matching(g: &ColouredGraph) -> Result<Vec<Edge>> {
    let edges: Vec<(Edge, u32)> = g.edges().collect();
    if edges.len() > MATCHING_EDGE_LIMIT {
        return Err(Error::Size(format!(
            "{} edges exceeds the exhaustive-matching limit of {MATCHING_EDGE_LIMIT}",
            edges.len()
        )));
    }
    let mut best: Vec<Edge> = Vec::new();
    let mut cur: Vec<Edge> = Vec::new();
    let mut used_v = vec![false; g.n()];
    let mut used_c = vec![false; g.num_colours()];
    search_matching(&edges, 0, &mut cur, &mut used_v, &mut used_c, &mut best);
    Ok(best)
}

fn search_matching(
    edges: &[(Edge, u32)],
    i: usize,
    cur: &mut Vec<Edge>,
    used_v: &mut [bool],
    used_c: &mut [bool],
    best: &mut Vec<Edge>,
) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if i == edges.len() || cur.len() + (edges.len() - i) <= best.len() {
        return;
    }
    let (e, c) = edges[i];
    if !used_v[e.u] && !used_v[e.v] && !used_c[c as usize] {
        used_v[e.u] = true;
        used_v[e.v] = true;
        used_c[c as usize] = true;
        cur.push(e);
        search_matching(edges, i + 1, cur, used_v, used_c, best);
        cur.pop();
        used_v[e.u] = false;
        used_v[e.v] = false;
        used_c[c as usize] = false;
    }
    search_matching(edges, i + 1, cur, used_v, used_c, best);
}

/// Whether `g` holds `k` pairwise edge-disjoint rainbow spanning trees.
pub fn brute_force_edge_disjoint_rainbow_spanning_trees(g: &ColouredGraph, k: usize) -> Result<bool> {
    let order = g.order();
    if order > TREE_PACKING_ORDER_LIMIT {
        return Err(Error::Size(format!(
            "order {order} exceeds the exhaustive-packing limit of {TREE_PACKING_ORDER_LIMIT}"
        )));
    }
    if k == 0 || order <= 1 {
        return Ok(true);
    }
    let need = order - 1;
    let edges: Vec<(Edge, u32)> = g.edges().collect();
    if k * need > edges.len() {
        return Ok(false);
    }
    let verts: Vec<usize> = g.vertices().collect();

    // every rainbow spanning tree, as a bitmask over `edges`
    let mut trees: Vec<u32> = Vec::new();
    let m = edges.len();
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let chosen: Vec<(Edge, u32)> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        let mut colours: Vec<u32> = chosen.iter().map(|&(_, c)| c).collect();
        colours.sort_unstable();
        colours.dedup();
        if colours.len() != need {
            continue;
        }
        // connectivity by repeated relaxation
        let mut reached = vec![false; g.n()];
        reached[verts[0]] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &(e, _) in &chosen {
                if reached[e.u] != reached[e.v] {
                    reached[e.u] = true;
                    reached[e.v] = true;
                    changed = true;
                }
            }
        }
        if verts.iter().all(|&v| reached[v]) {
            trees.push(mask);
        }
    }
    Ok(pack(&trees, 0, 0, k))
}

fn pack(trees: &[u32], from: usize, used: u32, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    (from..trees.len()).any(|i| trees[i] & used == 0 && pack(trees, i + 1, used | trees[i], k - 1))
}
