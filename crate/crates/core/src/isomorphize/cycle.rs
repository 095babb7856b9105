use std::collections::BTreeSet;

use crate::error::{Checks, Error, Result};

use super::digraph::TotallyColouredDigraph;

/// Node budget of the exhaustive fallback search.
pub const SEARCH_BUDGET: usize = 2_000_000;

const UNIT: u128 = 1_000_000_000_000;

/// `δ = 1 - e(D)/|D|²`, rounded up to a multiple of `10⁻¹²` and returned in
/// those units.
pub fn inferred_density_gap(d: &TotallyColouredDigraph) -> u128 {
    let n = d.len() as u128;
    if n == 0 {
        return 0;
    }
    let nn = n * n;
    let gap = nn - d.arc_count() as u128;
    (gap * UNIT).div_ceil(nn)
}

/// Whether the inferred gap admits cycles of length `s`:
/// `s < (1 - 9√δ)|D| / 12`, decided in integers.
pub fn strict_length_bound_holds(d: &TotallyColouredDigraph, s: usize) -> bool {
    let n = d.len() as u128;
    let s = s as u128;
    if 12 * s >= n {
        return false;
    }
    let delta = inferred_density_gap(d);
    // 9√δ < 1 - 12s/N  <=>  81 δ N² < (N - 12s)²   (δ in units of 1e-12)
    81 * delta * n * n < UNIT * (n - 12 * s) * (n - 12 * s)
}

/// True iff `cycle` is a closed walk on distinct vertices of `d` whose `s`
/// vertex colours and `s` arc colours are pairwise distinct.
pub fn is_rainbow_cycle(d: &TotallyColouredDigraph, cycle: &[usize]) -> bool {
    let s = cycle.len();
    if s < 2 || cycle.iter().any(|&v| v >= d.len()) {
        return false;
    }
    if cycle.iter().collect::<BTreeSet<_>>().len() != s {
        return false;
    }
    let mut colours = BTreeSet::new();
    for i in 0..s {
        let (x, y) = (cycle[i], cycle[(i + 1) % s]);
        let Some(c) = d.arc_colour(x, y) else { return false };
        if !colours.insert(c) || !colours.insert(d.vertex_colour(x)) {
            return false;
        }
    }
    true
}

/// Degrees high enough to keep a vertex in the core `D'`:
/// `|N⁺(v)|, |N⁻(v)| >= (1 - √δ)|D|`.
fn core_vertices(d: &TotallyColouredDigraph, delta: u128) -> Vec<bool> {
    let n = d.len() as u128;
    let high = |deg: usize| {
        let miss = n - deg as u128;
        miss * miss * UNIT <= delta * n * n
    };
    (0..d.len()).map(|v| high(d.out_degree(v)) && high(d.in_degree(v))).collect()
}

fn greedy(d: &TotallyColouredDigraph, s: usize, core: &[bool]) -> std::result::Result<Vec<usize>, String> {
    let starts: Vec<usize> = (0..d.len()).filter(|&v| core[v]).collect();
    let mut last_failure = format!("|D'| = {}", starts.len());
    for &v1 in &starts {
        let mut path = vec![v1];
        let mut on_path = vec![false; d.len()];
        on_path[v1] = true;
        let mut used: BTreeSet<usize> = BTreeSet::from([d.vertex_colour(v1)]);
        let mut stuck = false;
        while path.len() < s - 2 {
            let last = *path.last().unwrap();
            let next = d.out_arcs(last).find(|&(u, c)| {
                core[u] && !on_path[u] && !used.contains(&c) && !used.contains(&d.vertex_colour(u))
            });
            match next {
                Some((u, c)) => {
                    path.push(u);
                    on_path[u] = true;
                    used.insert(c);
                    used.insert(d.vertex_colour(u));
                }
                None => {
                    last_failure = format!(
                        "path from {v1} stuck at length {} (out-degree of the end {})",
                        path.len(),
                        d.out_degree(last)
                    );
                    stuck = true;
                    break;
                }
            }
        }
        if stuck {
            continue;
        }
        let end = *path.last().unwrap();
        let mut candidates = 0usize;
        for (x, c1) in d.out_arcs(end) {
            if !core[x] || on_path[x] || used.contains(&c1) || used.contains(&d.vertex_colour(x)) {
                continue;
            }
            for (y, c3) in d.in_arcs(v1) {
                if !core[y] || on_path[y] || y == x {
                    continue;
                }
                let Some(c2) = d.arc_colour(x, y) else { continue };
                candidates += 1;
                let fresh = [c1, d.vertex_colour(x), c2, d.vertex_colour(y), c3];
                if fresh.iter().collect::<BTreeSet<_>>().len() == 5 && fresh.iter().all(|c| !used.contains(c)) {
                    path.push(x);
                    path.push(y);
                    return Ok(path);
                }
            }
        }
        last_failure = format!("no closing arc for the path from {v1} ({candidates} arcs tried)");
    }
    Err(last_failure)
}

struct Dfs<'a> {
    d: &'a TotallyColouredDigraph,
    s: usize,
    nodes: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    used: BTreeSet<usize>,
}

impl Dfs<'_> {
    // cycles are listed from their smallest vertex
    fn go(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return None;
        }
        let v1 = self.path[0];
        let last = *self.path.last().unwrap();
        if self.path.len() == self.s {
            return Some(self.d.arc_colour(last, v1).is_some_and(|c| !self.used.contains(&c)));
        }
        let next: Vec<(usize, usize)> = self.d.out_arcs(last).filter(|&(u, _)| u > v1).collect();
        for (u, c) in next {
            let cu = self.d.vertex_colour(u);
            if self.on_path[u] || self.used.contains(&c) || self.used.contains(&cu) || c == cu {
                continue;
            }
            self.path.push(u);
            self.on_path[u] = true;
            self.used.insert(c);
            self.used.insert(cu);
            if self.go()? {
                return Some(true);
            }
            self.path.pop();
            self.on_path[u] = false;
            self.used.remove(&c);
            self.used.remove(&cu);
        }
        Some(false)
    }
}

/// Exhaustive search with a node budget. `Ok(None)` means no cycle exists.
fn exhaustive(d: &TotallyColouredDigraph, s: usize) -> Result<Option<Vec<usize>>> {
    let mut dfs = Dfs {
        d,
        s,
        nodes: 0,
        path: Vec::with_capacity(s),
        on_path: vec![false; d.len()],
        used: BTreeSet::new(),
    };
    for v1 in 0..d.len() {
        dfs.path.clear();
        dfs.path.push(v1);
        dfs.on_path[v1] = true;
        dfs.used.clear();
        dfs.used.insert(d.vertex_colour(v1));
        match dfs.go() {
            None => return Err(Error::Cycle(format!("search budget of {SEARCH_BUDGET} nodes exhausted"))),
            Some(true) => return Ok(Some(dfs.path.clone())),
            Some(false) => dfs.on_path[v1] = false,
        }
    }
    Ok(None)
}

/// A cycle `v_1 ... v_s` of `d` that is rainbow over its vertex and arc
/// colours together.
///
/// The greedy construction runs first (restarting from every core vertex).
/// In strict mode the density bound is enforced and greedy failure is an
/// error; otherwise an exhaustive search settles the remaining cases.
pub fn find_rainbow_cycle(d: &TotallyColouredDigraph, s: usize, strict: bool) -> Result<Vec<usize>> {
    if s < 3 {
        return Err(Error::Input(format!("cycle length {s} is below 3")));
    }
    let bad = d.violations();
    if !bad.is_empty() {
        return Err(Error::Input(format!("digraph is not properly totally coloured: {}", bad[0])));
    }
    if s > d.len() {
        return Err(Error::Cycle(format!("length {s} exceeds the {} vertices", d.len())));
    }
    let delta = inferred_density_gap(d);
    if strict && !strict_length_bound_holds(d, s) {
        let n = d.len() as f64;
        let dd = delta as f64 / UNIT as f64;
        let mut checks = Checks::new();
        checks.gt("(1 - 9√δ)|D|/12 > s", (1.0 - 9.0 * dd.sqrt()) * n / 12.0, s as f64);
        checks.finish()?;
        return Err(Error::Cycle("length bound fails at the inferred density".into()));
    }
    let core = core_vertices(d, delta);
    match greedy(d, s, &core) {
        Ok(c) => Ok(c),
        Err(why) if strict => Err(Error::Cycle(why)),
        Err(why) => exhaustive(d, s)?.ok_or_else(|| Error::Cycle(format!("no rainbow {s}-cycle exists ({why})"))),
    }
}
