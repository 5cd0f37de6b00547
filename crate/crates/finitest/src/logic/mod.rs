//! Sentence AST, textual parser, the exact (exponential, desk-scale) model
//! checker used as ground truth, and Hanf sentences with their counting
//! semantics.

pub mod ast;
pub mod eval;
pub mod hanf;
pub mod parse;

pub use ast::{Formula, Sentence};
pub use eval::{eval_at, eval_exact, EVAL_VERTEX_CAP};
pub use hanf::{
    ball_type_count, eval_hanf_atom, eval_hnf, to_json_node, AtomKind, BallLabel, HanfAtom,
    HnfFile, HnfSentence,
};
pub use parse::parse_sentence;
