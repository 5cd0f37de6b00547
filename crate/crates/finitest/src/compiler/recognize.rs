//! Conversion of a restricted sentence fragment into Hanf normal form.
//!
//! The fragment: a Boolean combination of counting units, where each unit
//! quantifies one variable over a body whose inner quantifiers are all
//! edge-guarded (an existential body must conjoin E(t, y) for an already
//! connected t; a universal body must disjoin !E(t, y)). Guarded bodies
//! only ever see the component of the counted vertex, so their truth at a
//! vertex is decided by the component type and root orbit alone. That
//! makes the unit equivalent to a counting assertion over the set of ball
//! types whose representative satisfies the body at the root, which is
//! Hanf-expressible. Sentences outside the fragment are rejected with a
//! pointer at the JSON input path.

use crate::catalog::TypeCatalog;
use crate::compiler::radius::{expand_eq_over_set, expand_geq_over_set, expand_mod_over_set};
use crate::compiler::CompileOptions;
use crate::error::{Error, Result};
use crate::logic::ast::{Formula, Sentence};
use crate::logic::eval::eval_at;
use crate::logic::hanf::HnfSentence;

/// Convert a sentence in the guarded counting fragment to Hanf normal
/// form over the catalog's ball types.
pub fn sentence_to_hnf(
    sentence: &Sentence,
    catalog: &TypeCatalog,
    opts: &CompileOptions,
) -> Result<HnfSentence> {
    convert(sentence.formula(), catalog, opts)
}

fn convert(f: &Formula, catalog: &TypeCatalog, opts: &CompileOptions) -> Result<HnfSentence> {
    match f {
        Formula::Not(inner) => Ok(HnfSentence::Not(Box::new(convert(inner, catalog, opts)?))),
        Formula::And(l, r) => Ok(HnfSentence::And(vec![
            convert(l, catalog, opts)?,
            convert(r, catalog, opts)?,
        ])),
        Formula::Or(l, r) => Ok(HnfSentence::Or(vec![
            convert(l, catalog, opts)?,
            convert(r, catalog, opts)?,
        ])),
        Formula::Exists(v, body) => unit(catalog, opts, v, body, Count::Geq(1)),
        Formula::Forall(v, body) => {
            // forall x B == not exists x (not B)
            let negated = Formula::Not(body.clone());
            Ok(HnfSentence::Not(Box::new(unit(catalog, opts, v, &negated, Count::Geq(1))?)))
        }
        Formula::CountGeq(m, v, body) => unit(catalog, opts, v, body, Count::Geq(*m)),
        Formula::CountEq(m, v, body) => unit(catalog, opts, v, body, Count::Eq(*m)),
        Formula::CountMod { j, l, var, body } => {
            unit(catalog, opts, var, body, Count::Mod { j: *j, l: *l })
        }
        Formula::Edge(..) | Formula::Eq(..) => Err(Error::Internal(
            "closed sentences cannot have bare atoms at the top level".into(),
        )),
    }
}

enum Count {
    Geq(u64),
    Eq(u64),
    Mod { j: u64, l: u64 },
}

fn unit(
    catalog: &TypeCatalog,
    opts: &CompileOptions,
    var: &str,
    body: &Formula,
    count: Count,
) -> Result<HnfSentence> {
    let normal = nnf(body, false)?;
    let mut connected = vec![var.to_string()];
    check_guarded(&normal, &mut connected)?;

    // Satisfying ball types: evaluate the body at the root of each
    // component representative in isolation; guardedness makes that equal
    // to evaluation inside any host graph.
    let mut types = Vec::new();
    for bt in catalog.ball_types() {
        let rep = &bt.representative;
        if eval_at(&rep.graph, body, var, rep.root)? {
            types.push(bt.index);
        }
    }

    match count {
        Count::Geq(m) => expand_geq_over_set(catalog, &types, m, opts),
        Count::Eq(m) => expand_eq_over_set(catalog, &types, m, opts),
        Count::Mod { j, l } => expand_mod_over_set(catalog, &types, j, l, opts),
    }
}

fn outside(msg: impl Into<String>) -> Error {
    Error::Argument(format!(
        "sentence outside the guarded counting fragment ({}); supply Hanf normal form directly",
        msg.into()
    ))
}

/// Negation normal form at the formula level. Counting quantifiers inside
/// unit bodies are not supported.
fn nnf(f: &Formula, negated: bool) -> Result<Formula> {
    Ok(match f {
        Formula::Edge(..) | Formula::Eq(..) => {
            if negated {
                Formula::Not(Box::new(f.clone()))
            } else {
                f.clone()
            }
        }
        Formula::Not(inner) => nnf(inner, !negated)?,
        Formula::And(l, r) => {
            let (l, r) = (Box::new(nnf(l, negated)?), Box::new(nnf(r, negated)?));
            if negated {
                Formula::Or(l, r)
            } else {
                Formula::And(l, r)
            }
        }
        Formula::Or(l, r) => {
            let (l, r) = (Box::new(nnf(l, negated)?), Box::new(nnf(r, negated)?));
            if negated {
                Formula::And(l, r)
            } else {
                Formula::Or(l, r)
            }
        }
        Formula::Exists(v, b) => {
            let b = Box::new(nnf(b, negated)?);
            if negated {
                Formula::Forall(v.clone(), b)
            } else {
                Formula::Exists(v.clone(), b)
            }
        }
        Formula::Forall(v, b) => {
            let b = Box::new(nnf(b, negated)?);
            if negated {
                Formula::Exists(v.clone(), b)
            } else {
                Formula::Forall(v.clone(), b)
            }
        }
        Formula::CountGeq(..) | Formula::CountEq(..) | Formula::CountMod { .. } => {
            return Err(outside("counting quantifier nested inside a unit body"))
        }
    })
}

fn and_conjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(l, r) => {
            let mut v = and_conjuncts(l);
            v.extend(and_conjuncts(r));
            v
        }
        other => vec![other],
    }
}

fn or_disjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::Or(l, r) => {
            let mut v = or_disjuncts(l);
            v.extend(or_disjuncts(r));
            v
        }
        other => vec![other],
    }
}

fn is_connected(v: &str, connected: &[String]) -> bool {
    connected.iter().any(|c| c == v)
}

fn edge_guard_hits(a: &str, b: &str, y: &str, connected: &[String]) -> bool {
    (b == y && a != y && is_connected(a, connected))
        || (a == y && b != y && is_connected(b, connected))
}

/// Guardedness check on a body in negation normal form. `connected` holds
/// variables known to lie in the counted vertex's component.
fn check_guarded(f: &Formula, connected: &mut Vec<String>) -> Result<()> {
    match f {
        Formula::Edge(..) | Formula::Eq(..) => Ok(()),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Edge(..) | Formula::Eq(..) => Ok(()),
            _ => Err(Error::Internal("negation above atoms after nnf".into())),
        },
        Formula::And(l, r) | Formula::Or(l, r) => {
            check_guarded(l, connected)?;
            check_guarded(r, connected)
        }
        Formula::Exists(y, body) => {
            if is_connected(y, connected) {
                return Err(outside(format!("variable {y} is rebound")));
            }
            // Witnesses must be edge-guarded along every disjunctive
            // branch, so each one lies in the connected component.
            let guarded = or_disjuncts(body).into_iter().all(|branch| {
                and_conjuncts(branch).into_iter().any(|c| match c {
                    Formula::Edge(a, b) => edge_guard_hits(a, b, y, connected),
                    _ => false,
                })
            });
            if !guarded {
                return Err(outside(format!(
                    "existential {y} lacks an E-guard to a connected variable"
                )));
            }
            connected.push(y.clone());
            let r = check_guarded(body, connected);
            connected.pop();
            r
        }
        Formula::Forall(y, body) => {
            if is_connected(y, connected) {
                return Err(outside(format!("variable {y} is rebound")));
            }
            // Vertices outside the component must satisfy the body
            // vacuously: every conjunct needs a !E escape hatch.
            let guarded = and_conjuncts(body).into_iter().all(|part| {
                or_disjuncts(part).into_iter().any(|c| match c {
                    Formula::Not(inner) => match inner.as_ref() {
                        Formula::Edge(a, b) => edge_guard_hits(a, b, y, connected),
                        _ => false,
                    },
                    _ => false,
                })
            });
            if !guarded {
                return Err(outside(format!(
                    "universal {y} lacks a !E-guard to a connected variable"
                )));
            }
            connected.push(y.clone());
            let r = check_guarded(body, connected);
            connected.pop();
            r
        }
        Formula::CountGeq(..) | Formula::CountEq(..) | Formula::CountMod { .. } => {
            Err(outside("counting quantifier nested inside a unit body"))
        }
    }
}
