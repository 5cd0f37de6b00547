//! Component-radius reduction. After cap unification all atoms count
//! vertices by ball type at the catalog radius, where every ball spans its
//! whole component. Two finishing steps remain:
//!
//! * atoms whose type is not realizable in the class collapse to truth
//!   constants (a threshold can never be met; an exact count holds only
//!   for zero; a residue check holds only for residue zero), and
//! * capped thresholds on types with repetition above 1 are rewritten so
//!   the vertex threshold k becomes the component threshold k: "at least
//!   k vertices" splits into exact counts k..k*rep-1 or "at least k*rep".

use crate::catalog::TypeCatalog;
use crate::compiler::dnf::{Clause, DnfSentence, Literal};
use crate::compiler::CompileOptions;
use crate::error::{Error, Result};
use crate::logic::hanf::{AtomKind, HanfAtom};

enum Sentinel {
    Keep,
    AlwaysTrue,
    AlwaysFalse,
}

fn sentinel_for(lit: &Literal, catalog: &TypeCatalog) -> Sentinel {
    if catalog.ball_index(&lit.atom.ball.code).is_some() {
        return Sentinel::Keep;
    }
    // Unrealizable type: its count is zero in every class member.
    match lit.atom.kind {
        AtomKind::Geq(0) => Sentinel::AlwaysTrue,
        AtomKind::Geq(_) => Sentinel::AlwaysFalse,
        AtomKind::Eq(0) => Sentinel::AlwaysTrue,
        AtomKind::Eq(_) => Sentinel::AlwaysFalse,
        AtomKind::Mod { j: 0, .. } => Sentinel::AlwaysTrue,
        AtomKind::Mod { .. } => Sentinel::AlwaysFalse,
    }
}

/// Rewrite a cap-unified DNF into the component-count normal form.
pub fn reduce_to_component_radius(
    dnf: &DnfSentence,
    catalog: &TypeCatalog,
    k: u64,
    opts: &CompileOptions,
) -> Result<DnfSentence> {
    let mut out: Vec<Clause> = Vec::new();
    'clauses: for clause in &dnf.0 {
        // Expand multiplicatively: each literal contributes one or more
        // variants to every partial clause built so far.
        let mut partials: Vec<Clause> = vec![Clause::default()];
        for lit in &clause.0 {
            debug_assert!(!lit.negated, "reduce expects positive literals");
            match sentinel_for(lit, catalog) {
                Sentinel::AlwaysTrue => continue,
                Sentinel::AlwaysFalse => continue 'clauses,
                Sentinel::Keep => {}
            }
            let rep = catalog.ball_types()
                [catalog.ball_index(&lit.atom.ball.code).unwrap()]
            .repetition as u64;
            let variants: Vec<Literal> = match lit.atom.kind {
                AtomKind::Geq(m) if m == k && rep > 1 => {
                    let mut v: Vec<Literal> = (k..k * rep)
                        .map(|i| Literal {
                            negated: false,
                            atom: HanfAtom {
                                kind: AtomKind::Eq(i),
                                radius: lit.atom.radius,
                                ball: lit.atom.ball.clone(),
                            },
                        })
                        .collect();
                    v.push(Literal {
                        negated: false,
                        atom: HanfAtom {
                            kind: AtomKind::Geq(k * rep),
                            radius: lit.atom.radius,
                            ball: lit.atom.ball.clone(),
                        },
                    });
                    v
                }
                _ => vec![lit.clone()],
            };
            let mut next = Vec::with_capacity(partials.len() * variants.len());
            for p in &partials {
                for v in &variants {
                    let mut c = p.clone();
                    c.0.push(v.clone());
                    next.push(c);
                    if next.len() + out.len() > opts.clause_guard {
                        return Err(Error::Resource(format!(
                            "component reduction clause guard {} exceeded",
                            opts.clause_guard
                        )));
                    }
                }
            }
            partials = next;
        }
        out.extend(partials);
    }
    let mut result = DnfSentence(out);
    result.dedup_clauses();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ExplicitGraph;
    use crate::logic::hanf::BallLabel;

    fn cat() -> TypeCatalog {
        TypeCatalog::new(2, 1).unwrap()
    }

    fn edge_lit(kind: AtomKind) -> Literal {
        let e = ExplicitGraph::from_edges(2, &[(1, 2)]).unwrap();
        Literal {
            negated: false,
            atom: HanfAtom { kind, radius: 1, ball: BallLabel::from_rooted(&e, 1).unwrap() },
        }
    }

    fn p3_lit(kind: AtomKind) -> Literal {
        let p3 = ExplicitGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        Literal {
            negated: false,
            atom: HanfAtom { kind, radius: 1, ball: BallLabel::from_rooted(&p3, 1).unwrap() },
        }
    }

    #[test]
    fn threshold_on_repeated_type_expands() {
        // "at least 1 vertex of rooted-edge type" (rep 2, k 1) becomes
        // "=1 or >=2" in vertex counts.
        let catalog = cat();
        let dnf = DnfSentence(vec![Clause(vec![edge_lit(AtomKind::Geq(1))])]);
        let out =
            reduce_to_component_radius(&dnf, &catalog, 1, &CompileOptions::default()).unwrap();
        let kinds: Vec<AtomKind> = out.0.iter().map(|c| c.0[0].atom.kind).collect();
        assert_eq!(out.0.len(), 2);
        assert!(kinds.contains(&AtomKind::Eq(1)));
        assert!(kinds.contains(&AtomKind::Geq(2)));
    }

    #[test]
    fn unrealizable_threshold_kills_clause() {
        let catalog = cat();
        let dnf = DnfSentence(vec![Clause(vec![
            p3_lit(AtomKind::Geq(1)),
            edge_lit(AtomKind::Geq(1)),
        ])]);
        let out =
            reduce_to_component_radius(&dnf, &catalog, 1, &CompileOptions::default()).unwrap();
        assert!(out.0.is_empty());
    }

    #[test]
    fn unrealizable_exact_zero_drops_out() {
        let catalog = cat();
        let dnf = DnfSentence(vec![Clause(vec![
            p3_lit(AtomKind::Eq(0)),
            edge_lit(AtomKind::Geq(1)),
        ])]);
        let out =
            reduce_to_component_radius(&dnf, &catalog, 1, &CompileOptions::default()).unwrap();
        // The impossible-type literal vanishes; the edge literal expands.
        assert_eq!(out.0.len(), 2);
        for clause in &out.0 {
            assert_eq!(clause.0.len(), 1);
        }
    }
}
