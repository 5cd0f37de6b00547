//! Cap unification: bring every clause to literals of the three normal
//! forms "at least k", "exactly m" with m < k, and "congruent j mod l",
//! with a single cap k shared by the whole sentence and no negations left.
//!
//! k is the largest threshold appearing in any (possibly negated)
//! threshold literal. A positive threshold below k splits into the exact
//! counts up to k-1 plus the capped threshold; a negated threshold m
//! becomes the exact counts 0..m-1; a negated modular literal becomes the
//! disjunction of the other residues.

use crate::compiler::dnf::{Clause, DnfSentence, Literal};
use crate::compiler::CompileOptions;
use crate::error::{Error, Result};
use crate::logic::hanf::AtomKind;

/// Result of cap unification: the cap and the rewritten DNF.
pub fn unify_cap(dnf: &DnfSentence, opts: &CompileOptions) -> Result<(u64, DnfSentence)> {
    // Drop trivial threshold-0 literals up front: a positive "at least 0"
    // is always true, a negated one always false. Negated exact counts
    // were already split during dnf conversion.
    let mut pruned = Vec::new();
    'clauses: for clause in &dnf.0 {
        let mut lits = Vec::with_capacity(clause.0.len());
        for lit in &clause.0 {
            match lit.atom.kind {
                AtomKind::Geq(0) if !lit.negated => continue,
                AtomKind::Geq(0) if lit.negated => continue 'clauses,
                AtomKind::Eq(_) if lit.negated => {
                    return Err(Error::Internal(
                        "negated exact-count literals must be split before cap unification"
                            .into(),
                    ))
                }
                _ => {}
            }
            lits.push(lit.clone());
        }
        pruned.push(Clause(lits));
    }

    // The cap dominates every threshold; exact counts demand m < k.
    let k = pruned
        .iter()
        .flat_map(|c| c.0.iter())
        .filter_map(|l| match l.atom.kind {
            AtomKind::Geq(m) => Some(m),
            AtomKind::Eq(m) => Some(m + 1),
            AtomKind::Mod { .. } => None,
        })
        .max()
        .unwrap_or(1)
        .max(1);

    let mut done: Vec<Clause> = Vec::new();
    let mut work: Vec<Clause> = pruned;
    while let Some(clause) = work.pop() {
        // Find the first literal needing a rewrite. Positive exact-count
        // literals are already in the normal form (m < k by the cap).
        let target = clause.0.iter().position(|l| match l.atom.kind {
            AtomKind::Geq(m) => l.negated || m < k,
            AtomKind::Mod { .. } => l.negated,
            AtomKind::Eq(m) => {
                debug_assert!(m < k);
                false
            }
        });
        let Some(idx) = target else {
            done.push(clause);
            if done.len() > opts.clause_guard {
                return Err(Error::Resource(format!(
                    "cap unification clause guard {} exceeded",
                    opts.clause_guard
                )));
            }
            continue;
        };
        let lit = clause.0[idx].clone();
        let rest = |replacement: AtomKind| {
            let mut c = clause.clone();
            c.0[idx] = Literal {
                negated: false,
                atom: crate::logic::hanf::HanfAtom {
                    kind: replacement,
                    radius: lit.atom.radius,
                    ball: lit.atom.ball.clone(),
                },
            };
            c
        };
        match (lit.negated, lit.atom.kind) {
            (false, AtomKind::Geq(m)) => {
                debug_assert!(m < k);
                // Exact counts m..k-1 or the capped threshold.
                for i in m..k {
                    work.push(rest(AtomKind::Eq(i)));
                }
                work.push(rest(AtomKind::Geq(k)));
            }
            (true, AtomKind::Geq(m)) => {
                // "fewer than m": exact counts 0..m-1, including zero.
                for i in 0..m {
                    work.push(rest(AtomKind::Eq(i)));
                }
            }
            (true, AtomKind::Mod { j, l }) => {
                for i in (0..l).filter(|&i| i != j) {
                    work.push(rest(AtomKind::Mod { j: i, l }));
                }
            }
            (false, AtomKind::Mod { .. }) | (_, AtomKind::Eq(_)) => unreachable!(),
        }
        if work.len() + done.len() > opts.clause_guard {
            return Err(Error::Resource(format!(
                "cap unification clause guard {} exceeded",
                opts.clause_guard
            )));
        }
    }

    let mut out = DnfSentence(done);
    out.dedup_clauses();
    Ok((k, out))
}
