use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Checks, Error, Result};
use crate::graph::{is_rainbow, ColouredGraph, Colour, Edge, Vertex};
use crate::matchings::greedy_unchecked;
use crate::spider::Spider;

/// Which branch of the one-vertex extension produced the spider.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtensionCase {
    /// `v` is adjacent to the root.
    RootEdge = 1,
    /// `v` has an edge of a colour missing from the star.
    FreshColour = 2,
    /// One leaf is re-hung, giving two legs.
    SingleSwap = 3,
    /// Two leaves are re-hung, giving three legs.
    DoubleSwap = 4,
}

impl ExtensionCase {
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ExtensionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub spider: Spider,
    pub case: ExtensionCase,
}

/// Errors unless `s` is a spanning rainbow spider of `g`.
pub(crate) fn check_spanning_rainbow(g: &ColouredGraph, s: &Spider) -> Result<()> {
    let edges = s.edges();
    if !is_rainbow(g, &edges)? {
        return Err(Error::InvariantBreach(format!("spider at {} is not rainbow", s.root())));
    }
    let verts = s.vertices();
    if verts.len() != g.order() || verts.iter().any(|&v| !g.contains_vertex(v)) {
        return Err(Error::InvariantBreach(format!(
            "spider at {} has {} vertices, host has {}",
            s.root(),
            verts.len(),
            g.order()
        )));
    }
    Ok(())
}

fn check_star(g: &ColouredGraph, s: &Spider) -> Result<()> {
    if s.t() != 0 {
        return Err(Error::Input(format!("expected a star, got a {}-spider", s.t())));
    }
    if !g.contains_vertex(s.root()) {
        return Err(Error::Input(format!("root {} not in the graph", s.root())));
    }
    if !is_rainbow(g, &s.edges())? {
        return Err(Error::Input("star is not rainbow".into()));
    }
    Ok(())
}

/// Spans the single vertex of `g` missing from the star `s`, using the
/// matching `m` (colours off the star) for the swap cases. Cases are tried in
/// order with the lowest-id witness at every step.
pub fn extend_star_one_vertex(g: &ColouredGraph, s: &Spider, m: &[Edge]) -> Result<Extension> {
    check_star(g, s)?;
    if !g.is_proper() {
        return Err(Error::Input("colouring is not proper".into()));
    }
    let r = s.root();
    let mut in_star = vec![false; g.n()];
    for v in s.vertices() {
        in_star[v] = true;
    }
    let missing: Vec<Vertex> = g.vertices().filter(|&v| !in_star[v]).collect();
    if missing.len() != 1 {
        return Err(Error::Input(format!(
            "star must miss exactly one vertex of the graph, misses {}",
            missing.len()
        )));
    }
    let v = missing[0];

    // owner[c] = the leaf s with c(rs) = c
    let mut owner: Vec<Option<Vertex>> = vec![None; g.num_colours()];
    for &y in s.leaves() {
        owner[g.colour(r, y).unwrap() as usize] = Some(y);
    }
    let on_star = |c: Colour| owner[c as usize].is_some();

    let mut partner: Vec<Option<Vertex>> = vec![None; g.n()];
    for e in m {
        let c = g.edge_colour(*e).ok_or(Error::MissingEdge(e.u, e.v))?;
        if on_star(c) {
            return Err(Error::Input(format!("matching edge {e} has a star colour")));
        }
        if partner[e.u].is_some() || partner[e.v].is_some() {
            return Err(Error::Input(format!("edge {e} breaks the matching")));
        }
        partner[e.u] = Some(e.v);
        partner[e.v] = Some(e.u);
    }

    let leaves_without = |drop: &[Vertex]| -> Vec<Vertex> {
        s.leaves().iter().copied().filter(|y| !drop.contains(y)).collect()
    };
    let finish = |spider: Spider, case: ExtensionCase| -> Result<Extension> {
        check_spanning_rainbow(g, &spider)?;
        Ok(Extension { spider, case })
    };

    if g.has_edge(r, v) {
        let mut leaves = s.leaves().to_vec();
        leaves.push(v);
        return finish(Spider::star(r, leaves)?, ExtensionCase::RootEdge);
    }
    let nv: Vec<(Vertex, Colour)> = g.incident(v).collect();
    if let Some(&(x, _)) = nv.iter().find(|&&(_, c)| !on_star(c)) {
        let spider = Spider::new(r, vec![(x, v)], leaves_without(&[x]))?;
        return finish(spider, ExtensionCase::FreshColour);
    }
    let f = |c: Colour| owner[c as usize].expect("colour on the star");

    let single = |y: Vertex, fy: Vertex, z: Vertex| -> Result<Extension> {
        let (c1, c2) = (g.colour(v, y).unwrap(), g.colour(z, fy).unwrap());
        let distinct = [v, y, z, fy].iter().collect::<BTreeSet<_>>().len() == 4;
        if !distinct || c1 == c2 || on_star(c2) {
            return Err(Error::InvariantBreach(format!(
                "swap edges {v}-{y} and {z}-{fy} are not disjoint with distinct colours"
            )));
        }
        let spider = Spider::new(r, vec![(y, v), (z, fy)], leaves_without(&[y, z, fy]))?;
        finish(spider, ExtensionCase::SingleSwap)
    };

    for &(y, c) in &nv {
        let fy = f(c);
        if let Some(z) = partner[fy] {
            if z != y {
                return single(y, fy, z);
            }
        }
    }
    for &(y, c) in &nv {
        let fy = f(c);
        for (z, cz) in g.incident(fy) {
            if ![y, v, r, fy].contains(&z) && !on_star(cz) {
                return single(y, fy, z);
            }
        }
    }

    // inverse of y -> f(v, y)
    let mut pre: Vec<Option<Vertex>> = vec![None; g.n()];
    for &(y, c) in &nv {
        pre[f(c)] = Some(y);
    }
    let in_m = |x: Vertex| partner[x].is_some();
    let mut tried = 0;
    for &(y, c) in &nv {
        let fy = f(c);
        if in_m(y) || in_m(fy) {
            continue;
        }
        tried += 1;
        for (z, cz) in g.incident(fy) {
            if [v, r, y].contains(&z) || !on_star(cz) {
                continue;
            }
            let w = f(cz);
            let Some(y2) = pre[w] else { continue };
            if !in_m(w) {
                continue;
            }
            if partner[w] != Some(y2) {
                return Err(Error::InvariantBreach(format!(
                    "{w} is matched but not to {y2}; the single swap should have applied"
                )));
            }
            let verts: BTreeSet<Vertex> = [v, y, fy, z, w, y2].into_iter().collect();
            let cols: BTreeSet<Colour> = [c, cz, g.colour(w, y2).unwrap()].into_iter().collect();
            if verts.len() != 6 || cols.len() != 3 {
                return Err(Error::InvariantBreach(format!(
                    "double swap {v}-{y}, {fy}-{z}, {w}-{y2} is not disjoint and rainbow"
                )));
            }
            let spider = Spider::new(r, vec![(y, v), (z, fy), (y2, w)], leaves_without(&[y, fy, z, w, y2]))?;
            return finish(spider, ExtensionCase::DoubleSwap);
        }
    }
    if tried == 0 {
        return Err(Error::Extension(format!(
            "no y in N(v) with y and f(v,y) outside V(M) (v = {v}, |N(v)| = {}, |V(M)| = {})",
            nv.len(),
            2 * m.len()
        )));
    }
    let t_in_m = nv.iter().filter(|&&(_, c)| in_m(f(c))).count();
    Err(Error::Extension(format!(
        "no z in N_S(f(v,y)) with f(f(v,y),z) in V(M) ∩ T for any of {tried} candidates y \
         (v = {v}, |V(M) ∩ T| = {t_in_m})"
    )))
}

/// Source of the matching at each level of the iterated extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendMode {
    /// Plenty of heavy colours missing from the star: use the class of the
    /// heaviest one.
    HeavyColours,
    /// Few heavy colours overall: take a greedy rainbow matching of the
    /// colours missing from the star.
    FewHeavyColours,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendParams {
    pub delta: f64,
    pub epsilon: f64,
    pub phi: f64,
    pub strict: bool,
}

/// One level of the iterated extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRecord {
    pub level: usize,
    pub vertex: Vertex,
    /// The heaviest colour off the star, removed below this level.
    pub heavy: Option<Colour>,
    pub matching: usize,
    pub case: ExtensionCase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManyExtension {
    pub spider: Spider,
    pub levels: Vec<LevelRecord>,
}

fn heaviest_outside(g: &ColouredGraph, star_colours: &BTreeSet<Colour>) -> Option<Colour> {
    let sizes = g.colour_class_sizes();
    (0..sizes.len())
        .filter(|&c| sizes[c] > 0 && !star_colours.contains(&(c as Colour)))
        .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
        .map(|c| c as Colour)
}

fn check_many(g: &ColouredGraph, t: usize, star_colours: &BTreeSet<Colour>, mode: ExtendMode, p: &ExtendParams) -> Result<()> {
    let size = g.order() as f64;
    let tf = t as f64;
    let tau = tf / size;
    let sizes = g.colour_class_sizes();
    let mut checks = Checks::new();
    checks.ge("δ(G) >= (1 - δ)|G| + 2t", g.min_degree() as f64, (1.0 - p.delta) * size + 2.0 * tf);
    match mode {
        ExtendMode::HeavyColours => {
            let heavy = (0..sizes.len())
                .filter(|&c| !star_colours.contains(&(c as Colour)) && sizes[c] as f64 >= p.epsilon * size + tf)
                .count();
            checks.ge("colours off S with >= ε|G| + t edges", heavy as f64, tf);
            checks.ge("ε >= δ + 19τ", p.epsilon, p.delta + 19.0 * tau);
        }
        ExtendMode::FewHeavyColours => {
            let heavy = sizes.iter().filter(|&&s| s as f64 >= p.epsilon * (size - tf)).count();
            checks.ge("(1 - φ)(|G| - t) >= heavy colours", (1.0 - p.phi) * (size - tf), heavy as f64);
            checks.ge("0.1 >= ε", 0.1, p.epsilon);
            checks.ge("ε >= φ", p.epsilon, p.phi);
            checks.ge("φ >= 13δ + 200τ", p.phi, 13.0 * p.delta + 200.0 * tau);
        }
    }
    checks.finish()
}

/// A spanning rainbow `(<= 3t)`-spider of `g` rooted at the star's root,
/// where `t` vertices of `g` are missing from the star `s`.
pub fn extend_star_many(g: &ColouredGraph, s: &Spider, mode: ExtendMode, p: &ExtendParams) -> Result<ManyExtension> {
    check_star(g, s)?;
    let r = s.root();
    let in_star: BTreeSet<Vertex> = s.vertices().into_iter().collect();
    let star_colours: BTreeSet<Colour> = g.colours_of(&s.edges())?.into_iter().collect();
    let missing: Vec<Vertex> = g.vertices().filter(|v| !in_star.contains(v)).collect();
    let t = missing.len();
    if p.strict {
        check_many(g, t, &star_colours, mode, p)?;
    }

    // peel: level k removes missing[k] and the heaviest off-star colour
    let mut heavy = Vec::with_capacity(t);
    let mut cur = g.clone();
    for &v in &missing {
        let c = heaviest_outside(&cur, &star_colours);
        cur.remove_vertex(v);
        if let Some(c) = c {
            cur.remove_colours(&BTreeSet::from([c]));
        }
        heavy.push(c);
    }

    let mut d = s.clone();
    let mut levels = Vec::with_capacity(t);
    let size = g.order() as f64;
    let tau = t as f64 / size;
    for k in (0..t).rev() {
        let mut gk = g.clone();
        for j in 0..k {
            gk.remove_vertex(missing[j]);
            if let Some(c) = heavy[j] {
                gk.remove_colours(&BTreeSet::from([c]));
            }
        }
        let v = missing[k];
        let (leaf_star, core) = d.split(|_| true);
        let core_colours: BTreeSet<Colour> = g.colours_of(&core.edges())?.into_iter().collect();
        let mut keep: Vec<Vertex> = leaf_star.vertices();
        keep.push(v);
        let mut gp = gk.induced(keep);
        gp.remove_colours(&core_colours);

        let m: Vec<Edge> = match mode {
            ExtendMode::HeavyColours => match heavy[k] {
                Some(c) => gp.edges().filter(|&(_, col)| col == c).map(|(e, _)| e).collect(),
                None => Vec::new(),
            },
            ExtendMode::FewHeavyColours => {
                let leaf_colours: BTreeSet<Colour> = gp.colours_of(&leaf_star.edges())?.into_iter().collect();
                greedy_unchecked(&gp, |_, c| !leaf_colours.contains(&c))
            }
        };
        if p.strict {
            let dp = p.delta + 12.0 * tau;
            let mu = p.delta + 13.0 * tau;
            let mut checks = Checks::new();
            checks.ge(&format!("level {k}: |M| >= μ|G'|"), m.len() as f64, mu * gp.order() as f64);
            checks.gt(&format!("level {k}: 2μ|G| > 2δ'|G| + 5"), 2.0 * mu * size, 2.0 * dp * size + 5.0);
            checks.gt(&format!("level {k}: 1 - δ' > 4μ"), 1.0 - dp, 4.0 * mu);
            checks.finish()?;
        }
        let ext = extend_star_one_vertex(&gp, &leaf_star, &m).map_err(|e| match e {
            Error::Extension(msg) => Error::Extension(format!("level {k}: {msg}")),
            other => other,
        })?;
        levels.push(LevelRecord {
            level: k,
            vertex: v,
            heavy: heavy[k],
            matching: m.len(),
            case: ext.case,
        });
        d = core.merge(&ext.spider)?;
        check_spanning_rainbow(&gk, &d)?;
    }
    if d.root() != r {
        return Err(Error::InvariantBreach("root changed during extension".into()));
    }
    levels.reverse();
    Ok(ManyExtension { spider: d, levels })
}
