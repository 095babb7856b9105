use std::collections::BTreeSet;
use std::fmt;

use crate::certificate::{verify_certificate, CertTree, Claims, ForestCertificate};
use crate::error::{Error, Inequality, Result};
use crate::graph::{ColouredGraph, Colour, Edge, Vertex};
use crate::isomorphize::{change_spider_parameter, ReshapeBranch, ReshapeParams};
use crate::matchings::many_rainbow_matchings;
use crate::spider::Spider;

use super::cover::cover_bipartite;
use super::extend::ExtendMode;
use super::family::SpiderFamilyState;
use super::params::PipelineParams;
use super::spanning::{make_spanning_spiders, spanning_conditions};

/// Which of the two colour regimes the host falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColourCase {
    /// At most `φn` colours are thin (fewer than `εn` edges).
    A,
    /// At most `(1 - φ)n` colours are fat.
    B,
}

impl fmt::Display for ColourCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColourCase::A => "a",
            ColourCase::B => "b",
        })
    }
}

/// One recorded inequality. Enforced checks stop the stage when they fail;
/// the rest are reported only.
#[derive(Debug, Clone, PartialEq)]
pub struct StageCheck {
    pub inequality: Inequality,
    pub enforced: bool,
}

impl StageCheck {
    pub fn holds(&self) -> bool {
        self.inequality.slack() >= 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageReport {
    pub stage: &'static str,
    pub checks: Vec<StageCheck>,
    /// Exit invariants that were re-verified.
    pub invariants: Vec<String>,
    pub notes: Vec<String>,
    pub error: Option<String>,
}

impl StageReport {
    fn new(stage: &'static str) -> StageReport {
        StageReport {
            stage,
            checks: Vec::new(),
            invariants: Vec::new(),
            notes: Vec::new(),
            error: None,
        }
    }

    pub fn ok(&self) -> bool {
        self.error.is_none()
    }

    fn check(&mut self, name: &str, lhs: f64, rhs: f64, enforced: bool) {
        self.checks.push(StageCheck {
            inequality: Inequality::new(name, lhs, rhs),
            enforced,
        });
    }

    fn enforce(&self) -> Result<()> {
        let failed: Vec<Inequality> = self
            .checks
            .iter()
            .filter(|c| c.enforced && !c.holds())
            .map(|c| c.inequality.clone())
            .collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Feasibility(failed))
        }
    }
}

impl fmt::Display for StageReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            None => writeln!(f, "stage {}: ok", self.stage)?,
            Some(e) => writeln!(f, "stage {}: FAILED: {e}", self.stage)?,
        }
        for c in &self.checks {
            let mark = match (c.holds(), c.enforced) {
                (true, _) => "holds",
                (false, true) => "FAILS",
                (false, false) => "fails (not enforced)",
            };
            writeln!(f, "  check {}: {mark}", c.inequality)?;
        }
        for inv in &self.invariants {
            writeln!(f, "  invariant {inv}: verified")?;
        }
        for note in &self.notes {
            writeln!(f, "  {note}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct ProperRun {
    pub case: Option<ColourCase>,
    pub roots: Vec<Vertex>,
    pub stages: Vec<StageReport>,
    /// The spiders at the point the run stopped.
    pub spiders: Vec<Spider>,
    pub reshapes: Vec<ReshapeBranch>,
    pub certificate: ForestCertificate,
    pub failure: Option<Error>,
}

impl ProperRun {
    fn new() -> ProperRun {
        ProperRun {
            case: None,
            roots: Vec::new(),
            stages: Vec::new(),
            spiders: Vec::new(),
            reshapes: Vec::new(),
            certificate: ForestCertificate::new(Claims::spiders()),
            failure: None,
        }
    }

    /// Stage reports joined for printing.
    pub fn report(&self) -> String {
        self.stages.iter().map(|s| s.to_string()).collect()
    }

    fn fail(mut self, mut stage: StageReport, err: Error) -> ProperRun {
        stage.error = Some(err.to_string());
        self.stages.push(stage);
        self.failure = Some(err);
        self
    }
}

fn validate_host(k: &ColouredGraph) -> Result<()> {
    if !k.is_complete() {
        return Err(Error::Input("colouring is not of a complete graph".into()));
    }
    if !k.is_proper() {
        return Err(Error::Input("colouring is not proper".into()));
    }
    Ok(())
}

fn check_window(n: usize, ts: &[usize], p: &PipelineParams) -> Result<()> {
    let (lo, hi) = (p.t_min * n as f64, p.t_max * n as f64);
    for &t in ts {
        if (t as f64) < lo || (t as f64) > hi {
            return Err(Error::Input(format!(
                "leg count {t} outside the window [{lo:.3}, {hi:.3}] (t_min = {}, t_max = {})",
                p.t_min, p.t_max
            )));
        }
    }
    Ok(())
}

fn scale_failure(n: usize, want: usize, p: &PipelineParams) -> ProperRun {
    let have = p.spider_count(n);
    let mut stage = StageReport::new("scale");
    stage.check("⌊αn⌋ >= spiders requested", have as f64, want.max(1) as f64, true);
    let need = (want.max(1) as f64 / p.alpha).ceil();
    let err = Error::Scale(format!(
        "⌊αn⌋ = {have} at n = {n} with α = {}; {} spider(s) need n >= {need}",
        p.alpha,
        want.max(1)
    ));
    ProperRun::new().fail(stage, err)
}

/// `⌊αn⌋` edge-disjoint spanning rainbow `t`-spiders.
pub fn theorem1_pipeline(k: &ColouredGraph, t: usize, p: &PipelineParams) -> Result<ProperRun> {
    validate_host(k)?;
    let n = k.order();
    check_window(n, &[t], p)?;
    let count = p.spider_count(n);
    if count == 0 {
        return Ok(scale_failure(n, 1, p));
    }
    run(k, &vec![t; count], p)
}

/// Edge-disjoint spanning rainbow spiders with the given leg counts, at most
/// `⌊αn⌋` of them.
pub fn multi_shape_pipeline(k: &ColouredGraph, ts: &[usize], p: &PipelineParams) -> Result<ProperRun> {
    validate_host(k)?;
    let n = k.order();
    check_window(n, ts, p)?;
    if ts.is_empty() {
        return Ok(ProperRun::new());
    }
    if ts.len() > p.spider_count(n) {
        return Ok(scale_failure(n, ts.len(), p));
    }
    run(k, ts, p)
}

fn certificate(k: &ColouredGraph, spiders: &[Spider], claims: Claims) -> ForestCertificate {
    ForestCertificate {
        host_digest: Some(k.digest()),
        trees: spiders.iter().map(CertTree::from_spider).collect(),
        claims,
    }
}

fn run(k: &ColouredGraph, targets: &[usize], p: &PipelineParams) -> Result<ProperRun> {
    let n = k.order();
    let nf = n as f64;
    let count = targets.len();
    let mut out = ProperRun::new();

    // classify
    let mut stage = StageReport::new("classify");
    let sizes = k.colour_class_sizes();
    let fat: BTreeSet<Colour> = (0..sizes.len())
        .filter(|&c| sizes[c] >= p.fat_threshold(n))
        .map(|c| c as Colour)
        .collect();
    let thin = n.saturating_sub(fat.len());
    let case = if thin as f64 <= p.phi * nf { ColourCase::A } else { ColourCase::B };
    stage.notes.push(format!(
        "|C_F| = {} colours with >= {} edges; case ({case})",
        fat.len(),
        p.fat_threshold(n)
    ));
    match case {
        ColourCase::A => stage.check("φn >= n - |C_F|", p.phi * nf, thin as f64, false),
        ColourCase::B => stage.check("(1 - φ)n >= |C_F|", (1.0 - p.phi) * nf, fat.len() as f64, false),
    }
    out.case = Some(case);
    out.stages.push(stage);

    // roots, matchings and forbidden colours
    let mut matchings: Vec<Vec<Edge>> = vec![Vec::new(); count];
    let roots: Vec<Vertex> = match case {
        ColourCase::A => {
            let mut stage = StageReport::new("matchings");
            let mut h = k.clone();
            h.remove_colours(&fat);
            let delta = n.saturating_sub(fat.len() + 1);
            let b = h.max_class_size();
            stage.check(
                "(|G| - 72δ - 6b)/29 >= t",
                (nf - 72.0 * delta as f64 - 6.0 * b as f64) / 29.0,
                count as f64,
                true,
            );
            stage.notes.push(format!("δ = {delta}, b = {b}, {count} matchings"));
            if let Err(e) = stage.enforce() {
                return Ok(out.fail(stage, e));
            }
            let fam = match many_rainbow_matchings(&h, delta, b, count) {
                Ok(f) => f,
                Err(e) => return Ok(out.fail(stage, e)),
            };
            let bad = fam.violations(&h);
            if !bad.is_empty() {
                return Ok(out.fail(stage, Error::InvariantBreach(bad.join("; "))));
            }
            stage
                .invariants
                .push("rainbow, disjoint, root-avoiding matchings with the root condition".into());
            out.stages.push(stage);
            matchings = fam.matchings;
            fam.roots
        }
        ColourCase::B => k.vertices().take(count).collect(),
    };
    out.roots = roots.clone();
    let root_set: BTreeSet<Vertex> = roots.iter().copied().collect();
    let b_side: Vec<Vertex> = k.vertices().filter(|v| !root_set.contains(v)).collect();
    let forbidden: Vec<BTreeSet<Colour>> = roots
        .iter()
        .zip(&matchings)
        .map(|(&r, m)| {
            m.iter()
                .flat_map(|e| [k.edge_colour(*e), k.colour(r, e.u), k.colour(r, e.v)])
                .flatten()
                .collect()
        })
        .collect();

    // bipartite cover
    let mut stage = StageReport::new("cover");
    let cover_delta = match case {
        ColourCase::A => 4.0 * p.phi,
        ColourCase::B => 0.0,
    };
    let bn = b_side.len() as f64;
    stage.check("(1 - 2δ)|B| >= 8|A|", (1.0 - 2.0 * cover_delta) * bn, 8.0 * count as f64, true);
    for (i, f) in forbidden.iter().enumerate() {
        stage.check(&format!("δ|B| >= |F_{i}|"), cover_delta * bn, f.len() as f64, true);
    }
    if let Err(e) = stage.enforce() {
        return Ok(out.fail(stage, e));
    }
    let cover = match cover_bipartite(k, &roots, &b_side, &forbidden, cover_delta) {
        Ok(c) => c,
        Err(e) => return Ok(out.fail(stage, e)),
    };
    let family = SpiderFamilyState::new(cover);
    if let Err(e) = family.check(k) {
        return Ok(out.fail(stage, e));
    }
    for (i, s) in family.spiders.iter().enumerate() {
        let cols: Vec<Colour> = k.colours_of(&s.edges())?;
        if cols.iter().any(|c| forbidden[i].contains(c)) {
            return Ok(out.fail(stage, Error::InvariantBreach(format!("cover spider {i} uses a colour of F_{i}"))));
        }
    }
    stage
        .invariants
        .push("edge-disjoint, rainbow, root-covering, F_i-avoiding, order bound".into());
    out.spiders = family.spiders.clone();
    out.stages.push(stage);

    // attach the matchings
    let family = match case {
        ColourCase::B => family,
        ColourCase::A => {
            let mut stage = StageReport::new("attach");
            match attach_matchings(k, &family, &matchings) {
                Ok(f) => {
                    stage
                        .invariants
                        .push("matchings hang off their roots; family edge-disjoint, rainbow, root-covering".into());
                    out.spiders = f.spiders.clone();
                    out.stages.push(stage);
                    f
                }
                Err(e) => return Ok(out.fail(stage, e)),
            }
        }
    };

    // spanning
    let mut stage = StageReport::new("spanning");
    let (mode, gamma, tau) = match case {
        ColourCase::A => (ExtendMode::HeavyColours, p.alpha + p.phi, 4.0 * p.phi + 2.0 * p.alpha),
        ColourCase::B => (ExtendMode::FewHeavyColours, p.alpha, 2.0 * p.alpha),
    };
    let p2 = PipelineParams {
        gamma: Some(p.gamma.unwrap_or(gamma)),
        tau: Some(p.tau.unwrap_or(tau)),
        ..*p
    };
    let (gamma, tau) = (p2.gamma.unwrap(), p2.tau.unwrap());
    for (ineq, _) in spanning_conditions(mode, &p2, gamma, tau) {
        stage.check(&ineq.name, ineq.lhs, ineq.rhs, p.strict);
    }
    for (i, s) in family.spiders.iter().enumerate() {
        stage.check(&format!("|D_{i}| >= (1 - τ)n"), s.order() as f64, (1.0 - tau) * nf, p.strict);
        stage.check(&format!("γn >= t(D_{i})"), gamma * nf, s.t() as f64, p.strict);
    }
    if let Err(e) = stage.enforce() {
        return Ok(out.fail(stage, e));
    }
    let spanning = match make_spanning_spiders(k, family, mode, &p2) {
        Ok(r) => r,
        Err(e) => return Ok(out.fail(stage, e)),
    };
    for (i, lv) in spanning.levels.iter().enumerate() {
        let cases: Vec<String> = lv.iter().map(|l| l.case.index().to_string()).collect();
        stage
            .notes
            .push(format!("spider {i}: {} vertices added, cases [{}]", lv.len(), cases.join(",")));
    }
    if let Some(e) = spanning.failure {
        let done = spanning.family.next;
        out.spiders = spanning.family.spiders.clone();
        out.certificate = certificate(k, &spanning.family.spiders[..done], Claims::spiders());
        stage.notes.push(format!("spiders 0..{done} are spanning"));
        return Ok(out.fail(stage, e));
    }
    stage.invariants.push("spanning, edge-disjoint, rainbow, same roots".into());
    let mut spiders = spanning.family.spiders;
    out.spiders = spiders.clone();
    out.stages.push(stage);

    // reshape
    let mut stage = StageReport::new("reshape");
    let rp = ReshapeParams {
        delta: p.delta,
        strict: p.strict,
    };
    for i in 0..count {
        let have = spiders[i].t();
        let want = targets[i];
        if have > want {
            let err = Error::Surgery(format!("spider {i} already has {have} legs, more than the target {want}"));
            out.spiders = spiders.clone();
            out.certificate = certificate(k, &spiders, Claims::spiders());
            return Ok(out.fail(stage, err));
        }
        let mut g = k.clone();
        for (j, s) in spiders.iter().enumerate() {
            if j != i {
                for e in s.edges() {
                    g.remove_edge(e.u, e.v);
                }
            }
        }
        match change_spider_parameter(&g, &spiders[i], want - have, &rp) {
            Ok(r) => {
                stage
                    .notes
                    .push(format!("spider {i}: {have} -> {want} legs via {}", r.branch));
                out.reshapes.push(r.branch);
                spiders[i] = r.spider;
            }
            Err(e) => {
                out.spiders = spiders.clone();
                out.certificate = certificate(k, &spiders, Claims::spiders());
                return Ok(out.fail(stage, e));
            }
        }
    }
    let family = SpiderFamilyState::new(spiders.clone());
    if let Err(e) = family.check(k) {
        return Ok(out.fail(stage, e));
    }
    stage.invariants.push("exact leg counts; family edge-disjoint, rainbow, spanning".into());
    out.spiders = spiders.clone();
    out.stages.push(stage);

    // verify
    let mut stage = StageReport::new("verify");
    let same = targets.windows(2).all(|w| w[0] == w[1]);
    let claims = if same { Claims::isomorphic_spiders() } else { Claims::spiders() };
    let cert = certificate(k, &spiders, claims);
    let report = verify_certificate(k, &cert);
    if !report.pass() {
        return Ok(out.fail(stage, Error::InvariantBreach(report.failures.join("; "))));
    }
    stage.invariants.push("certificate verified independently".into());
    out.certificate = cert;
    out.stages.push(stage);
    Ok(out)
}

/// `D_i ∪ M_i ∪ {r_i x_m}`: each matching edge hangs off the root through
/// its first endpoint `x_m` with `c(r_i x_m)` off `M_i` and `r_i x_m` unused
/// by the other spiders.
fn attach_matchings(k: &ColouredGraph, family: &SpiderFamilyState, matchings: &[Vec<Edge>]) -> Result<SpiderFamilyState> {
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    for s in &family.spiders {
        used.extend(s.edges());
    }
    let mut out = Vec::with_capacity(family.len());
    for (i, s) in family.spiders.iter().enumerate() {
        let r = s.root();
        let m_colours: BTreeSet<Colour> = k.colours_of(&matchings[i])?.into_iter().collect();
        let mut legs = s.legs().to_vec();
        for e in &matchings[i] {
            if s.contains(e.u) || s.contains(e.v) {
                return Err(Error::InvariantBreach(format!("matching edge {e} meets spider {i}")));
            }
            let pick = [e.u, e.v].into_iter().find(|&x| {
                k.colour(r, x).is_some_and(|c| !m_colours.contains(&c)) && !used.contains(&Edge::new(r, x))
            });
            let Some(x) = pick else {
                return Err(Error::InvariantBreach(format!(
                    "no endpoint of {e} can hang off root {r}"
                )));
            };
            used.insert(Edge::new(r, x));
            legs.push((x, e.other(x)));
        }
        out.push(Spider::new(r, legs, s.leaves().to_vec())?);
    }
    let fam = SpiderFamilyState::new(out);
    fam.check(k)?;
    Ok(fam)
}
