use std::fmt;

use crate::graph::Vertex;

/// One numeric precondition that was checked and failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl Inequality {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Inequality {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// `lhs - rhs`; negative when the inequality `lhs >= rhs` is violated.
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (lhs {:.6}, rhs {:.6}, slack {:.6})",
            self.name,
            self.lhs,
            self.rhs,
            self.slack()
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge {0}-{1} is not in the host graph")]
    MissingEdge(Vertex, Vertex),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a spider: {0}")]
    NotASpider(String),

    #[error("size guard exceeded: {0}")]
    Size(String),

    #[error("no Steiner triple system on {0} points (requires m = 1 or 3 mod 6)")]
    Existence(usize),

    #[error("infeasible: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Feasibility(Vec<Inequality>),

    #[error("invariant breach: {0}")]
    InvariantBreach(String),

    #[error("growth failed at step {step} (vertex {vertex}): |V(P)| = {p}, |Z| = {z}, no shared colour")]
    Growth {
        step: usize,
        vertex: Vertex,
        p: usize,
        z: usize,
    },

    #[error("extension failed: {0}")]
    Extension(String),

    #[error("cycle search failed: {0}")]
    Cycle(String),

    #[error("scale: {0}")]
    Scale(String),

    #[error("spider surgery failed: {0}")]
    Surgery(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Collects every failed inequality, then reports them together.
#[derive(Debug, Default)]
pub(crate) struct Checks {
    failed: Vec<Inequality>,
    all: Vec<(Inequality, bool)>,
}

impl Checks {
    pub fn new() -> Self {
        Checks::default()
    }

    /// Records `lhs >= rhs`.
    pub fn ge(&mut self, name: &str, lhs: f64, rhs: f64) -> &mut Self {
        self.record(Inequality::new(name, lhs, rhs), lhs >= rhs)
    }

    /// Records `lhs > rhs`.
    pub fn gt(&mut self, name: &str, lhs: f64, rhs: f64) -> &mut Self {
        self.record(Inequality::new(name, lhs, rhs), lhs > rhs)
    }

    fn record(&mut self, ineq: Inequality, holds: bool) -> &mut Self {
        if !holds {
            self.failed.push(ineq.clone());
        }
        self.all.push((ineq, holds));
        self
    }

    /// Every recorded inequality with whether it held.
    pub fn records(&self) -> &[(Inequality, bool)] {
        &self.all
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Feasibility(std::mem::take(&mut self.failed)))
        }
    }
}
