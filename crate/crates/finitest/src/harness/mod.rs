//! Graph generators, certified far fixtures, and the experiment driver.

pub mod experiment;
pub mod family;
pub mod far;

pub use experiment::{run_experiment, CellReport, ExperimentConfig, ExperimentReport, FamilyCell};
pub use family::{gen_family, Family, FamilySpec};
pub use far::{certify_far, FarCertificate, FarMethod, FarResult};
