use crate::error::{Checks, Error, Inequality, Result};
use crate::graph::ColouredGraph;

use super::extend::{extend_star_many, ExtendMode, ExtendParams, LevelRecord};
use super::family::{free_graph, SpiderFamilyState};
use super::params::PipelineParams;

/// `γ` and `τ`: the override when set, otherwise the measured
/// `max t_i / n` and `max (n - |D_i|) / n`.
pub fn resolve_gamma_tau(k: &ColouredGraph, family: &SpiderFamilyState, p: &PipelineParams) -> (f64, f64) {
    let n = k.order() as f64;
    let gamma = p
        .gamma
        .unwrap_or_else(|| family.spiders.iter().map(|s| s.t()).max().unwrap_or(0) as f64 / n);
    let tau = p.tau.unwrap_or_else(|| {
        family
            .spiders
            .iter()
            .map(|s| k.order().saturating_sub(s.order()))
            .max()
            .unwrap_or(0) as f64
            / n
    });
    (gamma, tau)
}

/// Parameters handed to each spider's extension: `δ = 5α + 4γ + 2τ` and the
/// adjusted `ε'` (and `φ'`) for the working graph.
pub fn derived_extend_params(mode: ExtendMode, p: &PipelineParams, gamma: f64, tau: f64) -> ExtendParams {
    let (alpha, eps, phi) = (p.alpha, p.epsilon, p.phi);
    let delta = 5.0 * alpha + 4.0 * gamma + 2.0 * tau;
    match mode {
        ExtendMode::HeavyColours => ExtendParams {
            delta,
            epsilon: eps - 4.0 * alpha - 2.0 * gamma - tau,
            phi,
            strict: p.strict,
        },
        ExtendMode::FewHeavyColours => ExtendParams {
            delta,
            epsilon: eps / (1.0 - 2.0 * gamma) + tau,
            phi: 1.0 - (1.0 - phi) / ((1.0 - tau) * (1.0 - 2.0 * gamma - alpha)),
            strict: p.strict,
        },
    }
}

/// The parameter inequalities for `mode`, each with whether it holds.
pub fn spanning_conditions(mode: ExtendMode, p: &PipelineParams, gamma: f64, tau: f64) -> Vec<(Inequality, bool)> {
    conditions(mode, p, gamma, tau).records().to_vec()
}

fn conditions(mode: ExtendMode, p: &PipelineParams, gamma: f64, tau: f64) -> Checks {
    let (alpha, eps, phi) = (p.alpha, p.epsilon, p.phi);
    let mut checks = Checks::new();
    match mode {
        ExtendMode::HeavyColours => {
            checks.ge("ε >= 9α + 8γ + 25τ", eps, 9.0 * alpha + 8.0 * gamma + 25.0 * tau);
        }
        ExtendMode::FewHeavyColours => {
            checks.ge("0.03 >= ε/2 - 0.001", 0.03, eps / 2.0 - 0.001);
            checks.ge("ε/2 - 0.001 >= φ", eps / 2.0 - 0.001, phi);
            checks.ge("φ >= 80α + 50γ + 340τ", phi, 80.0 * alpha + 50.0 * gamma + 340.0 * tau);
        }
    }
    checks
}

#[derive(Debug)]
pub struct SpanningRun {
    pub family: SpiderFamilyState,
    /// Extension levels, one list per processed spider.
    pub levels: Vec<Vec<LevelRecord>>,
    /// Set when a spider could not be extended; `family.next` is its index.
    pub failure: Option<Error>,
}

/// Makes every spider of a root-covering family spanning, one at a time,
/// inside its free graph.
pub fn make_spanning_spiders(
    k: &ColouredGraph,
    family: SpiderFamilyState,
    mode: ExtendMode,
    p: &PipelineParams,
) -> Result<SpanningRun> {
    family.check(k)?;
    let (gamma, tau) = resolve_gamma_tau(k, &family, p);
    if p.strict {
        conditions(mode, p, gamma, tau).finish()?;
    }
    let ext = derived_extend_params(mode, p, gamma, tau);
    let mut family = SpiderFamilyState { next: 0, ..family };
    let mut levels = Vec::with_capacity(family.len());
    while family.next < family.len() {
        let i = family.next;
        let g = free_graph(k, &family, i);
        let (star, core) = family.split(i);
        let grown = match extend_star_many(&g, &star, mode, &ext) {
            Ok(x) => x,
            Err(e) => {
                return Ok(SpanningRun {
                    family,
                    levels,
                    failure: Some(e),
                })
            }
        };
        family.spiders[i] = grown.spider.merge(&core)?;
        levels.push(grown.levels);
        family.check(k)?;
        if family.spiders[i].order() != k.order() {
            return Err(Error::InvariantBreach(format!("spider {i} is not spanning after extension")));
        }
        family.next += 1;
    }
    Ok(SpanningRun {
        family,
        levels,
        failure: None,
    })
}
