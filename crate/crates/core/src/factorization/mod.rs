//! Spanning rainbow trees in 1-factorized complete graphs.
//!
//! A Steiner triple system on a small root set `A` splits the edges at `A`
//! into large rainbow spiders ([`spider_decomposition`]). Each spider is then
//! grown into a spanning tree by leaf swaps ([`grow_spanning_tree`]).

mod assign;
mod grow;

pub use assign::{
    assign_triple_vertices, decompose_with, edges_meeting, restrict_to_a, spider_decomposition, TripleAssignment,
};
pub use grow::{check_growth, grow_spanning_tree, GrowthParams, GrowthStep, GrowthTrace};

use crate::certificate::{CertTree, Claims, ForestCertificate};
use crate::error::{Error, Result};
use crate::generate::{orient_sts, steiner_triple_system};
use crate::graph::{ColouredGraph, Edge, Vertex};
use crate::spider::Spider;

/// The largest `m = 1, 3 (mod 6)` with `n/9 - 6 <= m <= n/9 - 1`.
pub fn choose_m(n: usize) -> Option<usize> {
    // 9m <= n - 9 and 9m >= n - 54
    let hi = n.checked_sub(9)? / 9;
    let lo = n.saturating_sub(54).div_ceil(9).max(1);
    (lo..=hi).rev().find(|m| m % 6 == 1 || m % 6 == 3)
}

/// Output of [`theorem2_pipeline`]. When a growth step fails the
/// certificate holds the trees finished so far and `failure` says why.
#[derive(Debug)]
pub struct FactorizationRun {
    pub m: usize,
    pub a: Vec<Vertex>,
    pub spiders: Vec<Spider>,
    pub traces: Vec<GrowthTrace>,
    pub certificate: ForestCertificate,
    pub failure: Option<Error>,
}

/// Edge-disjoint spanning rainbow trees in a 1-factorized `K_n`, with the
/// triple orientation drawn from seed 0.
pub fn theorem2_pipeline(g: &ColouredGraph) -> Result<FactorizationRun> {
    theorem2_pipeline_seeded(g, 0)
}

pub fn theorem2_pipeline_seeded(g: &ColouredGraph, orientation_seed: u64) -> Result<FactorizationRun> {
    let n = g.order();
    if n % 2 == 1 {
        return Err(Error::Input(format!("K_{n} has odd order and no 1-factorization")));
    }
    if !g.is_complete() || !g.is_proper() || g.colours_used().len() + 1 != n {
        return Err(Error::Input("expected a properly (n-1)-coloured complete graph".into()));
    }
    let m = choose_m(n).ok_or_else(|| {
        Error::Input(format!("no m = 1 or 3 (mod 6) in [n/9 - 6, n/9 - 1] for n = {n}"))
    })?;
    let a: Vec<Vertex> = g.vertices().take(m).collect();
    let osts = orient_sts(&steiner_triple_system(m)?, orientation_seed);
    let spiders = spider_decomposition(&restrict_to_a(g, &a), &a, &osts)?;

    let mut trees: Vec<Vec<Edge>> = Vec::with_capacity(m);
    let mut traces = Vec::with_capacity(m);
    let mut failure = None;
    for i in 0..m {
        let mut residual = g.clone();
        let later: Vec<Edge> = spiders[i + 1..].iter().flat_map(|s| s.edges()).collect();
        for e in trees.iter().flatten().chain(&later) {
            residual.remove_edge(e.u, e.v);
        }
        match grow_spanning_tree(&residual, &spiders[i], GrowthParams::FACTORIZATION) {
            Ok((tree, trace)) => {
                trees.push(tree);
                traces.push(trace);
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }

    let mut certificate = ForestCertificate::new(Claims::trees());
    certificate.host_digest = Some(g.digest());
    certificate.trees = trees
        .into_iter()
        .zip(&a)
        .map(|(edges, &root)| CertTree { root, t: None, edges })
        .collect();
    Ok(FactorizationRun {
        m,
        a,
        spiders,
        traces,
        certificate,
        failure,
    })
}
