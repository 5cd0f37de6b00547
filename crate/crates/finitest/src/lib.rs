//! Compile component-counting logic sentences over bounded-degree graphs
//! with bounded component size into constant-query property testers, and
//! run those testers against neighbor-query oracles.
//!
//! The pipeline goes: Hanf-normal-form sentence -> uniform radius ->
//! disjunctive normal form -> uniform cap -> component-count templates
//! (capped histogram vectors with congruence entries) -> executable
//! sampling testers whose accept step is a divisibility check.

pub mod catalog;
pub mod compiler;
pub mod error;
pub mod graph;
pub mod harness;
pub mod logic;
pub mod numtheory;
pub mod tester;

pub use error::{Error, Result};
