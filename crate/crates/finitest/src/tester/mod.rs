//! Executable testers: per-template compiled units, the sampling runner
//! with its exact small-graph regime, union amplification, and the
//! constructive member builder behind the patchability decisions.

pub mod estimate;
pub mod member;
pub mod run;
pub mod unit;

pub use estimate::{estimate_frequencies, FrequencyEstimate};
pub use member::{construct_member, member_counts, member_exists, realize_counts};
pub use run::{
    derive_seed, exact_decide, run_single, run_union, trials_per_unit, Decision, TrialRecord,
    Verdict, AMPLIFY,
};
pub use unit::{compile_tester, sample_size, CompiledUnit, FrequentType};
