//! Plain-text file formats.
//!
//! Colouring: `n C`, then one `u v c` line per edge.
//! Certificate: `k`, then per tree `root t m` and `m` lines `u v`; `t` is
//! `-` for a tree that is not declared to be a spider.
//! Steiner triple system: `m`, then one `a b c` line per triple.
//!
//! Readers skip blank lines and lines starting with `#`.

use std::fmt::Write;

use crate::certificate::{CertTree, ForestCertificate};
use crate::error::{Error, Result};
use crate::generate::SteinerTripleSystem;
use crate::graph::{ColouredGraph, Edge};
use crate::matchings::MatchingFamily;

pub fn colouring_to_string(g: &ColouredGraph) -> String {
    let mut s = String::with_capacity(12 * g.edge_count() + 16);
    writeln!(s, "{} {}", g.n(), g.num_colours()).unwrap();
    for (e, c) in g.edges() {
        writeln!(s, "{} {} {}", e.u, e.v, c).unwrap();
    }
    s
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next meaningful line as (1-based number, numeric fields).
    fn next_fields(&mut self) -> Result<Option<(usize, Vec<&'a str>)>> {
        for (i, line) in self.inner.by_ref() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Ok(Some((i + 1, line.split_whitespace().collect())));
        }
        Ok(None)
    }

    fn expect(&mut self, what: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
        match self.next_fields()? {
            Some((line, f)) if f.len() == arity => Ok((line, f)),
            Some((line, f)) => Err(Error::Parse {
                line,
                msg: format!("expected {arity} fields for {what}, found {}", f.len()),
            }),
            None => Err(Error::Parse {
                line: 0,
                msg: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_fields()? {
            None => Ok(()),
            Some((line, _)) => Err(Error::Parse {
                line,
                msg: "trailing content".into(),
            }),
        }
    }
}

fn num(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{s}` is not a non-negative integer"),
    })
}

pub fn read_colouring(text: &str) -> Result<ColouredGraph> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.expect("header `n C`", 2)?;
    let n = num(line, head[0])?;
    let colours = num(line, head[1])?;
    let mut g = ColouredGraph::empty(n, colours);
    while let Some((line, f)) = lines.next_fields()? {
        if f.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: format!("expected `u v c`, found {} fields", f.len()),
            });
        }
        let (u, v, c) = (num(line, f[0])?, num(line, f[1])?, num(line, f[2])?);
        if u >= n || v >= n || u == v || c >= colours {
            return Err(Error::Parse {
                line,
                msg: format!("edge {u} {v} {c} out of range"),
            });
        }
        if g.has_edge(u, v) {
            return Err(Error::Parse {
                line,
                msg: format!("repeated edge {u}-{v}"),
            });
        }
        g.insert_edge(u, v, c as u32);
    }
    Ok(g)
}

pub fn certificate_to_string(cert: &ForestCertificate) -> String {
    let mut s = String::new();
    writeln!(s, "{}", cert.trees.len()).unwrap();
    for tree in &cert.trees {
        let t = tree.t.map_or("-".to_string(), |t| t.to_string());
        writeln!(s, "{} {} {}", tree.root, t, tree.edges.len()).unwrap();
        for e in &tree.edges {
            writeln!(s, "{} {}", e.u, e.v).unwrap();
        }
    }
    s
}

/// Reads a certificate; claims are inferred from the declared `t` values.
pub fn read_certificate(text: &str) -> Result<ForestCertificate> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.expect("tree count", 1)?;
    let k = num(line, head[0])?;
    let mut trees = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, f) = lines.expect("tree header `root t m`", 3)?;
        let root = num(line, f[0])?;
        let t = if f[1] == "-" { None } else { Some(num(line, f[1])?) };
        let m = num(line, f[2])?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, f) = lines.expect("edge `u v`", 2)?;
            let (u, v) = (num(line, f[0])?, num(line, f[1])?);
            if u == v {
                return Err(Error::Parse {
                    line,
                    msg: format!("loop at {u}"),
                });
            }
            edges.push(Edge::new(u, v));
        }
        trees.push(CertTree { root, t, edges });
    }
    lines.finish()?;
    let claims = ForestCertificate::infer_claims(&trees);
    Ok(ForestCertificate {
        host_digest: None,
        trees,
        claims,
    })
}

pub fn sts_to_string(sts: &SteinerTripleSystem) -> String {
    let mut s = String::new();
    writeln!(s, "{}", sts.m()).unwrap();
    for t in sts.triples() {
        writeln!(s, "{} {} {}", t[0], t[1], t[2]).unwrap();
    }
    s
}

pub fn read_sts(text: &str) -> Result<SteinerTripleSystem> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.expect("point count", 1)?;
    let m = num(line, head[0])?;
    let mut triples = Vec::new();
    while let Some((line, f)) = lines.next_fields()? {
        if f.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: "expected `a b c`".into(),
            });
        }
        triples.push([num(line, f[0])?, num(line, f[1])?, num(line, f[2])?]);
    }
    SteinerTripleSystem::new(m, triples)
}

/// Matching family: `t`, the roots on one line, then per matching its size
/// followed by `u v` lines.
pub fn matching_family_to_string(fam: &MatchingFamily) -> String {
    let mut s = String::new();
    writeln!(s, "{}", fam.roots.len()).unwrap();
    let roots: Vec<String> = fam.roots.iter().map(|r| r.to_string()).collect();
    writeln!(s, "{}", roots.join(" ")).unwrap();
    for m in &fam.matchings {
        writeln!(s, "{}", m.len()).unwrap();
        for e in m {
            writeln!(s, "{} {}", e.u, e.v).unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{proper_colouring, steiner_triple_system};
    use crate::spider::Spider;

    #[test]
    fn colouring_round_trip() {
        let g = proper_colouring(9, 2, 4).unwrap();
        let text = colouring_to_string(&g);
        assert!(text.starts_with("9 13\n"));
        assert_eq!(read_colouring(&text).unwrap(), g);
    }

    #[test]
    fn colouring_errors_carry_lines() {
        let err = read_colouring("3 2\n0 1 0\n1 2 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(read_colouring("3 2\n0 1 0\n1 0 1\n").is_err());
        assert!(read_colouring("").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        let g = read_colouring("# seed 4\n2 1\n\n0 1 0\n").unwrap();
        assert_eq!(g.colour(0, 1), Some(0));
    }

    #[test]
    fn certificate_round_trip() {
        let s = Spider::new(0, vec![(1, 2)], vec![3]).unwrap();
        let mut cert = ForestCertificate::new(Default::default());
        cert.trees.push(CertTree::from_spider(&s));
        cert.trees.push(CertTree {
            root: 3,
            t: None,
            edges: vec![Edge::new(3, 0)],
        });
        let text = certificate_to_string(&cert);
        assert_eq!(text, "2\n0 1 3\n0 1\n0 3\n1 2\n3 - 1\n0 3\n");
        let back = read_certificate(&text).unwrap();
        assert_eq!(back.trees, cert.trees);
        assert!(!back.claims.spider_shaped);
    }

    #[test]
    fn certificate_truncated() {
        assert!(read_certificate("1\n0 0 2\n0 1\n").is_err());
        assert!(read_certificate("1\n0 0 1\n0 1\n5 6\n").is_err());
    }

    #[test]
    fn sts_round_trip() {
        let s = steiner_triple_system(13).unwrap();
        assert_eq!(read_sts(&sts_to_string(&s)).unwrap(), s);
        assert!(read_sts("7\n0 1 2\n").is_err());
    }
}
