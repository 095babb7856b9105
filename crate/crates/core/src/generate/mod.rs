//! Input generators: 1-factorizations, proper colourings of `K_n`, and
//! Steiner triple systems.
//!
//! Every seeded generator draws from [`rng`], a ChaCha8 stream seeded from a
//! `u64`, so a seed fully determines the output.

mod sts;

pub use sts::{orient_sts, steiner_triple_system, OrientedSts, SteinerTripleSystem};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Colour, Edge, Vertex};

/// The seeded generator used throughout the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Circle-method 1-factorization of `K_n` (`n` even): vertex `n - 1` is
/// fixed and round `r` pairs it with `r`, then `r + k` with `r - k` modulo
/// `n - 1`. Round `r` is colour `r`.
pub fn round_robin_one_factorization(n: usize) -> Result<ColouredGraph> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Input(format!(
            "a 1-factorization of K_n needs n even and at least 2, got {n}"
        )));
    }
    let m = n - 1;
    let mut g = ColouredGraph::empty(n, m);
    for r in 0..m {
        g.insert_edge(n - 1, r, r as Colour);
        for k in 1..n / 2 {
            g.insert_edge((r + k) % m, (r + m - k) % m, r as Colour);
        }
    }
    Ok(g)
}

/// Relabels vertices by `vperm` and colours by `cperm`.
pub fn relabel(g: &ColouredGraph, vperm: &[Vertex], cperm: &[Colour]) -> ColouredGraph {
    let mut h = ColouredGraph::empty(g.n(), g.num_colours());
    for (e, c) in g.edges() {
        h.insert_edge(vperm[e.u], vperm[e.v], cperm[c as usize]);
    }
    h
}

/// A proper colouring of `K_n`. The base is a round-robin 1-factorization
/// (for odd `n`, that of `K_{n+1}` restricted to `K_n`) under a seeded
/// vertex and colour permutation. Each of the `extra_colours` rounds then
/// moves a random nonempty proper subset of a random class of size at least
/// two into a fresh colour.
pub fn proper_colouring(n: usize, seed: u64, extra_colours: usize) -> Result<ColouredGraph> {
    if n < 2 {
        return Err(Error::Input(format!("proper colouring needs n >= 2, got {n}")));
    }
    let base = if n.is_multiple_of(2) {
        round_robin_one_factorization(n)?
    } else {
        round_robin_one_factorization(n + 1)?.induced(0..n)
    };
    let base_colours = base.num_colours();
    let edges = n * (n - 1) / 2;
    if extra_colours > edges - base_colours {
        return Err(Error::Input(format!(
            "{extra_colours} extra colours requested but K_{n} admits at most {}",
            edges - base_colours
        )));
    }
    let mut rng = rng(seed);
    let mut vperm: Vec<Vertex> = (0..n).collect();
    vperm.shuffle(&mut rng);
    let mut cperm: Vec<Colour> = (0..base_colours as Colour).collect();
    cperm.shuffle(&mut rng);

    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); base_colours];
    for (e, c) in base.edges() {
        if e.v < n {
            classes[cperm[c as usize] as usize].push(Edge::new(vperm[e.u], vperm[e.v]));
        }
    }
    for class in classes.iter_mut() {
        class.sort_unstable();
    }
    for _ in 0..extra_colours {
        let splittable: Vec<usize> = (0..classes.len()).filter(|&c| classes[c].len() >= 2).collect();
        let pick = splittable[rng.gen_range(0..splittable.len())];
        let class = &mut classes[pick];
        class.shuffle(&mut rng);
        let k = rng.gen_range(1..class.len());
        let mut moved = class.split_off(class.len() - k);
        class.sort_unstable();
        moved.sort_unstable();
        classes.push(moved);
    }
    Ok(from_classes(n, &classes))
}

fn from_classes(n: usize, classes: &[Vec<Edge>]) -> ColouredGraph {
    let mut g = ColouredGraph::empty(n, classes.len());
    for (c, class) in classes.iter().enumerate() {
        for e in class {
            g.insert_edge(e.u, e.v, c as Colour);
        }
    }
    g
}

/// Splits `count` colour classes (chosen by seed among the largest) into
/// fresh colours of at most `piece` edges each. Properness is preserved.
pub fn shatter_colour_classes(g: &ColouredGraph, count: usize, piece: usize, seed: u64) -> Result<ColouredGraph> {
    if piece == 0 {
        return Err(Error::Input("piece size must be positive".into()));
    }
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); g.num_colours()];
    for (e, c) in g.edges() {
        classes[c as usize].push(e);
    }
    if count > classes.len() {
        return Err(Error::Input(format!(
            "cannot shatter {count} of {} colour classes",
            classes.len()
        )));
    }
    let mut rng = rng(seed);
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.shuffle(&mut rng);
    order.sort_by_key(|&c| std::cmp::Reverse(classes[c].len()));
    let mut targets: Vec<usize> = order[..count].to_vec();
    targets.sort_unstable();
    for c in targets {
        let mut class = std::mem::take(&mut classes[c]);
        class.shuffle(&mut rng);
        let mut chunks = class.chunks(piece).map(|ch| {
            let mut ch = ch.to_vec();
            ch.sort_unstable();
            ch
        });
        classes[c] = chunks.next().unwrap_or_default();
        classes.extend(chunks);
    }
    Ok(from_classes(g.n(), &classes))
}
