use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Checks, Error, Result};
use crate::graph::{ColourIndex, ColouredGraph, Colour, Edge, Vertex};
use crate::spider::Spider;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthParams {
    pub delta: f64,
    pub alpha: f64,
}

impl GrowthParams {
    /// The values used for 1-factorizations: `δ = 1/3`, `α = 1/9`.
    pub const FACTORIZATION: GrowthParams = GrowthParams {
        delta: 1.0 / 3.0,
        alpha: 1.0 / 9.0,
    };
}

/// One swap: vertex `i` joins via `i z`, leaf `x` moves from `w` to `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthStep {
    pub i: Vertex,
    pub x: Vertex,
    pub y: Vertex,
    pub z: Vertex,
    pub w: Vertex,
    /// The colour reserved for `i`, carried by `x y`.
    pub c_i: Colour,
    /// The colour shared by the removed `x w` and the added `i z`.
    pub c: Colour,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTrace {
    pub root: Vertex,
    /// The starting tree after trimming.
    pub initial: Vec<Edge>,
    pub steps: Vec<GrowthStep>,
}

impl fmt::Display for GrowthTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root {} initial {} steps {}", self.root, self.initial.len(), self.steps.len())?;
        for e in &self.initial {
            writeln!(f, "{} {}", e.u, e.v)?;
        }
        for s in &self.steps {
            writeln!(f, "{} {} {} {} {} {} {}", s.i, s.x, s.y, s.z, s.w, s.c_i, s.c)?;
        }
        Ok(())
    }
}

/// A tree under mutation, stored as adjacency lists.
#[derive(Debug, Clone)]
struct Tree {
    adj: Vec<Vec<Vertex>>,
    present: Vec<bool>,
}

impl Tree {
    fn new(n: usize, root: Vertex, edges: &[Edge]) -> Tree {
        let mut t = Tree {
            adj: vec![Vec::new(); n],
            present: vec![false; n],
        };
        t.present[root] = true;
        for e in edges {
            t.add(*e);
        }
        t
    }

    fn add(&mut self, e: Edge) {
        self.adj[e.u].push(e.v);
        self.adj[e.v].push(e.u);
        self.present[e.u] = true;
        self.present[e.v] = true;
    }

    fn remove(&mut self, e: Edge) -> bool {
        let before = self.adj[e.u].len();
        self.adj[e.u].retain(|&x| x != e.v);
        self.adj[e.v].retain(|&x| x != e.u);
        before != self.adj[e.u].len()
    }

    fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.adj.len())
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| Edge::new(u, v)))
            .collect();
        out.sort_unstable();
        out
    }
}

impl GrowthTrace {
    /// Reapplies every step to the initial tree, checking that each swap is
    /// legal, and returns the final edge set.
    pub fn replay(&self, n: usize) -> Result<Vec<Edge>> {
        let mut t = Tree::new(n, self.root, &self.initial);
        for (k, s) in self.steps.iter().enumerate() {
            let bad = |what: &str| Error::InvariantBreach(format!("replay step {k}: {what}"));
            if t.present[s.i] {
                return Err(bad("new vertex already in the tree"));
            }
            if t.degree(s.x) != 1 || t.degree(s.y) != 1 {
                return Err(bad("x or y is not a leaf"));
            }
            if t.adj[s.x][0] != s.w {
                return Err(bad("w is not the neighbour of x"));
            }
            if t.degree(s.z) > 2 || s.z == s.x || s.z == s.w {
                return Err(bad("z is not admissible"));
            }
            t.remove(Edge::new(s.x, s.w));
            t.add(Edge::new(s.x, s.y));
            t.add(Edge::new(s.i, s.z));
        }
        Ok(t.edges())
    }

    /// Checks the per-step tree properties against `g`: each intermediate
    /// tree is rainbow, has degree at most 3 off the root, at least
    /// `(1-α)n - i` leaves, and at most `i` vertices of degree 3.
    pub fn property_violations(&self, g: &ColouredGraph, alpha: f64) -> Vec<String> {
        let n = g.order();
        let mut out = Vec::new();
        let mut t = Tree::new(g.n(), self.root, &self.initial);
        let check = |t: &Tree, i: usize, out: &mut Vec<String>| {
            let edges = t.edges();
            let mut cols: Vec<Option<Colour>> = edges.iter().map(|e| g.edge_colour(*e)).collect();
            cols.sort_unstable();
            if cols.iter().any(|c| c.is_none()) || cols.windows(2).any(|w| w[0] == w[1]) {
                out.push(format!("T_{i} is not rainbow"));
            }
            let off_root = (0..t.adj.len()).filter(|&v| v != self.root);
            let mut leaves = 0;
            let mut deg3 = 0;
            for v in off_root {
                match t.degree(v) {
                    1 => leaves += 1,
                    3 => deg3 += 1,
                    d if d > 3 => out.push(format!("T_{i}: vertex {v} has degree {d}")),
                    _ => {}
                }
            }
            if (leaves as f64) < (1.0 - alpha) * n as f64 - i as f64 {
                out.push(format!("T_{i} has only {leaves} leaves"));
            }
            if deg3 > i {
                out.push(format!("T_{i} has {deg3} vertices of degree 3"));
            }
        };
        check(&t, 0, &mut out);
        for (k, s) in self.steps.iter().enumerate() {
            t.remove(Edge::new(s.x, s.w));
            t.add(Edge::new(s.x, s.y));
            t.add(Edge::new(s.i, s.z));
            check(&t, k + 1, &mut out);
        }
        out
    }
}

/// Checks the entry conditions of the growth procedure.
pub fn check_growth(g: &ColouredGraph, d: &Spider, params: GrowthParams) -> Result<()> {
    let n = g.order() as f64;
    let GrowthParams { delta, alpha } = params;
    if g.colours_used().len() + 1 != g.order() {
        return Err(Error::Input(format!(
            "expected n - 1 = {} colours, found {}",
            g.order() - 1,
            g.colours_used().len()
        )));
    }
    let smallest = g.colour_class_sizes().into_iter().filter(|&s| s > 0).min().unwrap_or(0);
    let outside_min = g
        .vertices()
        .filter(|&v| !d.contains(v))
        .map(|v| g.degree(v))
        .min()
        .unwrap_or(usize::MAX);
    let mut checks = Checks::new();
    checks
        .gt("1 > delta + 5.5 alpha", 1.0, delta + 5.5 * alpha)
        .ge("colour class size >= (1-2a)n/2", smallest as f64, (1.0 - 2.0 * alpha) * n / 2.0)
        .ge("t <= a n / 2", alpha * n / 2.0, d.t() as f64)
        .ge("|D| >= (1-a/2)n", d.order() as f64, (1.0 - alpha / 2.0) * n);
    if outside_min != usize::MAX {
        checks.ge("d(v) >= (1-delta)n off D", outside_min as f64, (1.0 - delta) * n);
    }
    checks.finish()
}

/// Grows the spider `d` into a spanning rainbow tree with degree at most 3
/// away from the root, one missing vertex at a time.
pub fn grow_spanning_tree(g: &ColouredGraph, d: &Spider, params: GrowthParams) -> Result<(Vec<Edge>, GrowthTrace)> {
    let edges = d.edges();
    for e in &edges {
        if !g.has_edge(e.u, e.v) {
            return Err(Error::MissingEdge(e.u, e.v));
        }
    }
    if !crate::graph::is_rainbow(g, &edges)? {
        return Err(Error::Input("the starting spider is not rainbow".into()));
    }
    if !g.is_proper() {
        return Err(Error::Input("colouring is not proper".into()));
    }
    check_growth(g, d, params)?;

    let n = g.order();
    let root = d.root();
    if d.order() == n {
        return Ok((
            edges.clone(),
            GrowthTrace {
                root,
                initial: edges,
                steps: Vec::new(),
            },
        ));
    }

    // trim ordinary leaves, highest id first, down to (1 - a/2)n; leaves
    // below the degree threshold stay
    let target = ((1.0 - params.alpha / 2.0) * n as f64).ceil() as usize;
    let threshold = (1.0 - params.delta) * n as f64;
    let mut start = d.clone();
    let mut drop = std::collections::BTreeSet::new();
    for &y in d.leaves().iter().rev() {
        if start.order() - drop.len() <= target {
            break;
        }
        if g.degree(y) as f64 >= threshold {
            drop.insert(y);
        }
    }
    if !drop.is_empty() {
        start = start.without_leaves(&drop);
    }

    let initial = start.edges();
    let mut tree = Tree::new(g.n(), root, &initial);
    let mut used = vec![false; g.num_colours()];
    for e in &initial {
        used[g.edge_colour(*e).unwrap() as usize] = true;
    }
    let missing: Vec<Vertex> = g.vertices().filter(|&v| !tree.present[v]).collect();
    let spare: Vec<Colour> = g
        .colours_used()
        .into_iter()
        .filter(|&c| !used[c as usize])
        .collect();
    if spare.len() < missing.len() {
        return Err(Error::InvariantBreach(format!(
            "{} missing vertices but only {} unused colours",
            missing.len(),
            spare.len()
        )));
    }

    let idx = ColourIndex::new(g);
    let mut steps = Vec::with_capacity(missing.len());
    for (k, (&i, &c_i)) in missing.iter().zip(&spare).enumerate() {
        let leaf = |v: Vertex| tree.present[v] && v != root && tree.degree(v) == 1;
        // colour of x w_x for every x in V(P)
        let mut p_side: BTreeMap<Colour, Vertex> = BTreeMap::new();
        let mut vp = 0;
        for x in g.vertices().filter(|&x| leaf(x)) {
            if let Some(y) = idx.at(x, c_i) {
                if leaf(y) {
                    vp += 1;
                    let w = tree.adj[x][0];
                    p_side.insert(g.colour(x, w).unwrap(), x);
                }
            }
        }
        let mut z_side: BTreeMap<Colour, Vertex> = BTreeMap::new();
        for (z, c) in g.incident(i) {
            if tree.present[z] && tree.degree(z) < 3 {
                z_side.insert(c, z);
            }
        }
        let hit = p_side.iter().find_map(|(c, &x)| z_side.get(c).map(|&z| (*c, x, z)));
        let Some((c, x, z)) = hit else {
            return Err(Error::Growth {
                step: k + 1,
                vertex: i,
                p: vp,
                z: z_side.len(),
            });
        };
        let y = idx.at(x, c_i).unwrap();
        let w = tree.adj[x][0];
        tree.remove(Edge::new(x, w));
        tree.add(Edge::new(x, y));
        tree.add(Edge::new(i, z));
        steps.push(GrowthStep { i, x, y, z, w, c_i, c });
    }

    Ok((tree.edges(), GrowthTrace { root, initial, steps }))
}
