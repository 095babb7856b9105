use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};

/// A Steiner triple system on points `0..m`. Triples are stored sorted,
/// each as an increasing array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerTripleSystem {
    m: usize,
    triples: Vec<[usize; 3]>,
}

impl SteinerTripleSystem {
    /// Validates pair coverage and builds the system.
    pub fn new(m: usize, triples: Vec<[usize; 3]>) -> Result<SteinerTripleSystem> {
        let mut normal: Vec<[usize; 3]> = triples
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        normal.sort_unstable();
        let mut seen = vec![false; m * m];
        for t in &normal {
            if t[2] >= m || t[0] == t[1] || t[1] == t[2] {
                return Err(Error::Input(format!("bad triple {t:?} on {m} points")));
            }
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if seen[a * m + b] {
                    return Err(Error::Input(format!("pair {{{a},{b}}} lies in two triples")));
                }
                seen[a * m + b] = true;
            }
        }
        if normal.len() * 6 != m * m.saturating_sub(1) {
            return Err(Error::Input(format!(
                "{} triples cannot cover every pair of {m} points",
                normal.len()
            )));
        }
        Ok(SteinerTripleSystem { m, triples: normal })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// The third point of the triple through `x` and `y`.
    pub fn third(&self, x: usize, y: usize) -> Option<usize> {
        self.triples.iter().find_map(|t| {
            if t.contains(&x) && t.contains(&y) && x != y {
                t.iter().copied().find(|&p| p != x && p != y)
            } else {
                None
            }
        })
    }
}

/// Bose construction for `m = 3 mod 6`, Skolem construction for
/// `m = 1 mod 6`.
pub fn steiner_triple_system(m: usize) -> Result<SteinerTripleSystem> {
    let triples = match m % 6 {
        3 => bose((m - 3) / 6),
        1 => skolem((m - 1) / 6),
        _ => return Err(Error::Existence(m)),
    };
    SteinerTripleSystem::new(m, triples)
}

// Points (x, i) for x in Z_{2k+1}, i in Z_3, numbered x + q*i.
fn bose(k: usize) -> Vec<[usize; 3]> {
    let q = 2 * k + 1;
    let half = q.div_ceil(2);
    let p = |x: usize, i: usize| x + q * (i % 3);
    let mut out = Vec::new();
    for x in 0..q {
        out.push([p(x, 0), p(x, 1), p(x, 2)]);
    }
    for x in 0..q {
        for y in x + 1..q {
            let prod = (x + y) * half % q;
            for i in 0..3 {
                out.push([p(x, i), p(y, i), p(prod, i + 1)]);
            }
        }
    }
    out
}

// Points (x, i) for x in 0..2k, i in Z_3, numbered x + 2k*i, plus the
// point at infinity 6k. Uses the half-idempotent commutative quasigroup of
// order 2k.
fn skolem(k: usize) -> Vec<[usize; 3]> {
    let q = 2 * k;
    let inf = 3 * q;
    let p = |x: usize, i: usize| x + q * (i % 3);
    let op = |x: usize, y: usize| {
        let s = (x + y) % q;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            k + (s - 1) / 2
        }
    };
    let mut out = Vec::new();
    for x in 0..k {
        out.push([p(x, 0), p(x, 1), p(x, 2)]);
        for i in 0..3 {
            out.push([inf, p(x + k, i), p(x, i + 1)]);
        }
    }
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                out.push([p(x, i), p(y, i), p(op(x, y), i + 1)]);
            }
        }
    }
    out
}

/// A Steiner triple system with one cyclic orbit of ordered triples per
/// base triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedSts {
    base: SteinerTripleSystem,
    ordered: Vec<[usize; 3]>,
    next: BTreeMap<(usize, usize), usize>,
}

impl OrientedSts {
    /// Orients each base triple `{a<b<c}` forwards, as the orbit of
    /// `(a,b,c)`, exactly when `forward[i]` is set.
    pub fn from_choices(base: SteinerTripleSystem, forward: &[bool]) -> Result<OrientedSts> {
        if forward.len() != base.triples().len() {
            return Err(Error::Input("one orientation per triple is required".into()));
        }
        let mut ordered = Vec::with_capacity(3 * forward.len());
        for (t, &fwd) in base.triples().iter().zip(forward) {
            let [a, b, c] = *t;
            let (x, y, z) = if fwd { (a, b, c) } else { (c, b, a) };
            ordered.push([x, y, z]);
            ordered.push([y, z, x]);
            ordered.push([z, x, y]);
        }
        ordered.sort_unstable();
        let next = ordered.iter().map(|t| ((t[0], t[1]), t[2])).collect();
        Ok(OrientedSts { base, ordered, next })
    }

    pub fn base(&self) -> &SteinerTripleSystem {
        &self.base
    }

    /// All ordered triples, lexicographically sorted.
    pub fn ordered(&self) -> &[[usize; 3]] {
        &self.ordered
    }

    /// The `z` with `(x, y, z)` in the orientation.
    pub fn successor(&self, x: usize, y: usize) -> Option<usize> {
        self.next.get(&(x, y)).copied()
    }

    pub fn contains(&self, t: [usize; 3]) -> bool {
        self.successor(t[0], t[1]) == Some(t[2])
    }

    /// Base triples in order, each as the representative of its orbit that
    /// starts at its smallest point.
    pub fn orbits(&self) -> Vec<[usize; 3]> {
        self.ordered.iter().copied().filter(|t| t[0] < t[1] && t[0] < t[2]).collect()
    }
}

/// Orients every triple by a seeded coin.
pub fn orient_sts(sts: &SteinerTripleSystem, seed: u64) -> OrientedSts {
    let mut rng = super::rng(seed);
    let forward: Vec<bool> = sts.triples().iter().map(|_| rng.gen_bool(0.5)).collect();
    OrientedSts::from_choices(sts.clone(), &forward).expect("one choice per triple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_points() {
        let s = steiner_triple_system(3).unwrap();
        assert_eq!(s.triples(), &[[0, 1, 2]]);
    }

    #[test]
    fn fano() {
        let s = steiner_triple_system(7).unwrap();
        assert_eq!(s.triples().len(), 7);
        assert_eq!(s.third(0, 1).map(|z| s.third(0, z)), Some(Some(1)));
    }

    #[test]
    fn one_point_is_empty() {
        assert!(steiner_triple_system(1).unwrap().triples().is_empty());
    }

    #[test]
    fn nonexistence() {
        for m in [0, 2, 4, 5, 6, 8, 11] {
            assert!(matches!(steiner_triple_system(m), Err(Error::Existence(_))), "m={m}");
        }
    }

    #[test]
    fn orientation_orbits() {
        let s = steiner_triple_system(3).unwrap();
        let o = orient_sts(&s, 0);
        assert_eq!(o.ordered().len(), 3);
        let fwd = o.contains([0, 1, 2]);
        assert_eq!(fwd, o.contains([1, 2, 0]));
        assert_eq!(fwd, o.contains([2, 0, 1]));
        assert_ne!(fwd, o.contains([2, 1, 0]));
    }

    #[test]
    fn orientation_is_seeded() {
        let s = steiner_triple_system(15).unwrap();
        assert_eq!(orient_sts(&s, 4), orient_sts(&s, 4));
        let flips: Vec<bool> = (0..8).map(|seed| orient_sts(&s, seed).contains([0, 1, s.third(0, 1).unwrap()])).collect();
        assert!(flips.iter().any(|&f| f) && flips.iter().any(|&f| !f));
    }

    #[test]
    fn rejects_double_cover() {
        assert!(SteinerTripleSystem::new(3, vec![[0, 1, 2], [2, 1, 0]]).is_err());
    }
}
