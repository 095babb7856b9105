//! Changing the leg count of a spanning rainbow spider: the auxiliary
//! totally coloured digraph, rainbow cycles in it, and the surgery itself.

mod cycle;
mod digraph;
mod reshape;

pub use cycle::{find_rainbow_cycle, inferred_density_gap, is_rainbow_cycle, strict_length_bound_holds, SEARCH_BUDGET};
pub use digraph::{build_auxiliary_digraph, TotallyColouredDigraph};
pub use reshape::{change_spider_parameter, Reshape, ReshapeBranch, ReshapeParams};
