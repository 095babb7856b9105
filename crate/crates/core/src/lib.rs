//! Edge-disjoint rainbow spanning trees and spiders in properly edge-coloured
//! complete graphs.
//!
//! The crate turns two constructive existence proofs into algorithms:
//!
//! * [`factorization`] finds about `n/9` edge-disjoint spanning rainbow trees
//!   in a 1-factorized `K_n`, via Steiner triple systems and leaf swaps;
//! * [`proper`] and [`isomorphize`] find edge-disjoint spanning rainbow
//!   `t`-spiders in any proper colouring of `K_n`.
//!
//! Every producer emits a [`ForestCertificate`] that
//! [`verify_certificate`] checks from scratch.
//!
//! ```
//! use rainbow_forest::{generate, factorization, verify_certificate};
//!
//! let g = generate::round_robin_one_factorization(64)?;
//! let run = factorization::theorem2_pipeline(&g)?;
//! assert!(run.certificate.trees.len() >= 3);
//! assert!(verify_certificate(&g, &run.certificate).pass());
//! # Ok::<(), rainbow_forest::Error>(())
//! ```

pub mod certificate;
pub mod error;
pub mod factorization;
pub mod generate;
pub mod graph;
pub mod io;
pub mod isomorphize;
pub mod matchings;
pub mod oracle;
pub mod proper;
pub mod spider;

pub use certificate::{verify_certificate, CertTree, Claims, ForestCertificate, TreeReport, VerificationReport};
pub use error::{Error, Inequality, Result};
pub use graph::{is_rainbow, ColourIndex, ColouredGraph, Colour, Edge, Vertex};
pub use spider::{classify_spider, Spider};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/colourings.md")]
    mod colourings {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/factorization.md")]
    mod factorization {}
    #[doc = include_str!("../../../book/src/matchings.md")]
    mod matchings {}
    #[doc = include_str!("../../../book/src/proper.md")]
    mod proper {}
    #[doc = include_str!("../../../book/src/isomorphize.md")]
    mod isomorphize {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
}
