//! Graph representations: explicit adjacency-list graphs, rooted balls, the
//! neighbor-query oracle protocol, and the desk-scale edit-distance oracle.

mod editdist;
mod explicit;
mod oracle;

pub use editdist::{edit_distance, EDIT_VERTEX_CAP};
pub use explicit::{ExplicitGraph, Membership, RootedBall};
pub use oracle::{
    component_of, explore_ball, read_full, ComponentResult, ExplicitOracle, NeighborOracle,
};
