//! Edge-disjoint spanning rainbow `t`-spiders in an arbitrary proper
//! colouring of `K_n`.
//!
//! The pipeline builds a root-covering family of large spiders in the
//! bipartite graph between a root set and the rest, makes each one spanning
//! by repeated one-vertex extensions inside its free graph, and finally
//! adjusts every spider's leg count with [`crate::isomorphize`].

mod cover;
pub(crate) mod extend;
mod family;
mod params;
mod pipeline;
mod spanning;

pub use cover::cover_bipartite;
pub use extend::{
    extend_star_many, extend_star_one_vertex, ExtendMode, ExtendParams, Extension, ExtensionCase, LevelRecord,
    ManyExtension,
};
pub use family::{free_graph, SpiderFamilyState};
pub use params::PipelineParams;
pub use pipeline::{multi_shape_pipeline, theorem1_pipeline, ColourCase, ProperRun, StageCheck, StageReport};
pub use spanning::{
    derived_extend_params, make_spanning_spiders, resolve_gamma_tau, spanning_conditions, SpanningRun,
};
