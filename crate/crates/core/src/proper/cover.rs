use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Checks, Error, Result};
use crate::graph::{ColouredGraph, Colour, Vertex};
use crate::spider::Spider;

fn bip_colour(k: &ColouredGraph, r: Vertex, b: Vertex) -> Result<Colour> {
    k.colour(r, b).ok_or(Error::MissingEdge(r, b))
}

/// Edge-disjoint rainbow `(a-1)`-spiders `S_i` in `K[A, B]`, `S_i` rooted at
/// `a[i]`, avoiding the colours `f[i]` and containing all of `A`.
///
/// The connector `b_{i,j}` (joint of the leg `r_i - b_{i,j} - r_j`) is the
/// lowest vertex of `B` whose two colours avoid `F_i` and avoid both colours
/// of every connector already chosen for a pair meeting `{i, j}`.
pub fn cover_bipartite(
    k: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    f: &[BTreeSet<Colour>],
    delta: f64,
) -> Result<Vec<Spider>> {
    if f.len() != a.len() {
        return Err(Error::Input(format!("{} colour sets for {} roots", f.len(), a.len())));
    }
    let a_set: BTreeSet<Vertex> = a.iter().copied().collect();
    let b_set: BTreeSet<Vertex> = b.iter().copied().collect();
    if a_set.len() != a.len() || b_set.len() != b.len() || a_set.iter().any(|v| b_set.contains(v)) {
        return Err(Error::Input("A and B must be disjoint sets of distinct vertices".into()));
    }
    if !k.is_proper() {
        return Err(Error::Input("colouring is not proper".into()));
    }
    for &r in a {
        for &x in b {
            bip_colour(k, r, x)?;
        }
    }
    let bn = b.len() as f64;
    let mut checks = Checks::new();
    checks.ge("(1 - 2δ)|B| >= 8|A|", (1.0 - 2.0 * delta) * bn, 8.0 * a.len() as f64);
    for (i, fi) in f.iter().enumerate() {
        checks.ge(&format!("δ|B| >= |F_{i}|"), delta * bn, fi.len() as f64);
    }
    checks.finish()?;

    let mut conn: BTreeMap<(usize, usize), Vertex> = BTreeMap::new();
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i == j {
                continue;
            }
            let earlier: Vec<(Vertex, [Colour; 2])> = conn
                .iter()
                .filter(|(&(p, q), _)| p == i || p == j || q == i || q == j)
                .map(|(&(p, q), &x)| Ok((x, [bip_colour(k, a[p], x)?, bip_colour(k, a[q], x)?])))
                .collect::<Result<_>>()?;
            let mut pick = None;
            for &x in b {
                let ci = bip_colour(k, a[i], x)?;
                let cj = bip_colour(k, a[j], x)?;
                if f[i].contains(&ci) || f[i].contains(&cj) {
                    continue;
                }
                if earlier
                    .iter()
                    .any(|&(y, cols)| y == x || cols.contains(&ci) || cols.contains(&cj))
                {
                    continue;
                }
                pick = Some(x);
                break;
            }
            match pick {
                Some(x) => {
                    conn.insert((i, j), x);
                }
                None => {
                    return Err(Error::InvariantBreach(format!(
                        "no admissible connector for roots {} and {}",
                        a[i], a[j]
                    )))
                }
            }
        }
    }

    let mut out = Vec::with_capacity(a.len());
    for (i, &r) in a.iter().enumerate() {
        let legs: Vec<(Vertex, Vertex)> = (0..a.len())
            .filter(|&j| j != i)
            .map(|j| (conn[&(i, j)], a[j]))
            .collect();
        let leg_colours: BTreeSet<Colour> = legs
            .iter()
            .map(|&(x, foot)| bip_colour(k, foot, x))
            .collect::<Result<_>>()?;
        let own: BTreeSet<Vertex> = (0..a.len())
            .filter(|&j| j != i)
            .flat_map(|j| [conn[&(i, j)], conn[&(j, i)]])
            .collect();
        let mut leaves = Vec::new();
        for &x in b {
            if own.contains(&x) {
                continue;
            }
            let c = bip_colour(k, r, x)?;
            if f[i].contains(&c) || leg_colours.contains(&c) {
                continue;
            }
            leaves.push(x);
        }
        out.push(Spider::new(r, legs, leaves)?);
    }

    let bound = (1.0 - delta) * bn - a.len() as f64 + 1.0;
    for (i, s) in out.iter().enumerate() {
        if (s.order() as f64) < bound - 1e-9 {
            return Err(Error::InvariantBreach(format!(
                "cover spider {i} has order {} < {bound:.3}",
                s.order()
            )));
        }
    }
    Ok(out)
}
