//! From normal-form clauses to component-count templates.
//!
//! A clause constrains, for each component type independently, the number
//! z of components of that type: exact counts come from "=m" atoms (vertex
//! count m divided by the orbit repetition), "at least" atoms force z >= k,
//! and modular atoms translate to congruences on z by combining the vertex
//! residue with the repetition through the Chinese remainder theorem.
//! Contradictions surface as an unsatisfiable clause, which is a normal
//! result, not an error.

use crate::catalog::TypeCatalog;
use crate::catalog::Chv;
use crate::compiler::dnf::Clause;
use crate::error::{Error, Result};
use crate::logic::hanf::AtomKind;
use crate::numtheory::{crt_solve, Congruence};
use serde::{Deserialize, Serialize};

/// One admissible entry for a template position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CchvEntry {
    /// The component count equals this value (below the cap).
    Exact { exact: u64 },
    /// The component count is >= the cap and congruent to j mod l,
    /// encoded as cong = [j, l].
    Cong { cong: (u64, u64) },
}

impl CchvEntry {
    pub fn matches(&self, count: u64, k: u64) -> bool {
        match *self {
            CchvEntry::Exact { exact } => count == exact,
            CchvEntry::Cong { cong: (j, l) } => count >= k && count % l == j,
        }
    }
}

/// Per-type admissible entries; a graph satisfies the position when its
/// count matches at least one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySet(pub Vec<CchvEntry>);

/// A capped component histogram template: one entry set per component
/// type, all sharing the cap k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CchvTemplate {
    pub entries: Vec<EntrySet>,
}

impl CchvTemplate {
    pub fn satisfied_by(&self, chv: &Chv, k: u64) -> bool {
        debug_assert_eq!(self.entries.len(), chv.0.len());
        self.entries
            .iter()
            .zip(&chv.0)
            .all(|(set, &count)| set.0.iter().any(|e| e.matches(count, k)))
    }
}

/// Decide whether a graph's component census satisfies a template.
pub fn template_satisfied(
    chv: &Chv,
    template: &CchvTemplate,
    k: u64,
    catalog: &TypeCatalog,
) -> Result<bool> {
    if chv.0.len() != catalog.component_types().len()
        || template.entries.len() != catalog.component_types().len()
    {
        return Err(Error::CatalogMismatch(format!(
            "chv has {} entries, template {}, catalog {}",
            chv.0.len(),
            template.entries.len(),
            catalog.component_types().len()
        )));
    }
    Ok(template.satisfied_by(chv, k))
}

struct TypeConstraints {
    exact: Option<u64>,
    geq: bool,
    congruence: Option<Congruence>,
}

/// Group a clause's atoms by underlying component type and solve each
/// group. Returns None when the clause is unsatisfiable on the class.
pub fn clause_entry_sets(
    clause: &Clause,
    catalog: &TypeCatalog,
    k: u64,
) -> Result<Option<CchvTemplate>> {
    let m_types = catalog.component_types().len();
    let mut groups: Vec<Vec<(AtomKind, u64)>> = vec![Vec::new(); m_types];
    for lit in &clause.0 {
        debug_assert!(!lit.negated);
        let Some(ball_idx) = catalog.ball_index(&lit.atom.ball.code) else {
            return Err(Error::Internal(
                "entry-set extraction saw a non-catalog type; run the reduction stage first"
                    .into(),
            ));
        };
        let bt = &catalog.ball_types()[ball_idx];
        groups[bt.underlying].push((lit.atom.kind, bt.repetition as u64));
    }

    let mut entries = Vec::with_capacity(m_types);
    for group in &groups {
        let mut cons = TypeConstraints { exact: None, geq: false, congruence: None };
        let mut z_congruences: Vec<Congruence> = Vec::new();
        for &(kind, rep) in group {
            match kind {
                AtomKind::Eq(m) => {
                    if m % rep != 0 {
                        return Ok(None); // vertex count must fill whole orbits
                    }
                    let z = m / rep;
                    match cons.exact {
                        None => cons.exact = Some(z),
                        Some(prev) if prev != z => return Ok(None),
                        _ => {}
                    }
                }
                AtomKind::Geq(m) => {
                    if m != k * rep {
                        return Err(Error::Internal(format!(
                            "threshold {m} is not cap {k} times repetition {rep}"
                        )));
                    }
                    cons.geq = true;
                }
                AtomKind::Mod { j, l } => {
                    // Vertex count p obeys p = j (mod l) and p = 0 (mod rep);
                    // with p = z * rep this pins z modulo lcm(l, rep) / rep.
                    let system =
                        [Congruence::new(j, l)?, Congruence::new(0, rep)?];
                    let Some(p_cong) = crt_solve(&system)? else {
                        return Ok(None);
                    };
                    debug_assert_eq!(p_cong.residue % rep, 0);
                    debug_assert_eq!(p_cong.modulus % rep, 0);
                    z_congruences.push(Congruence::new(
                        p_cong.residue / rep,
                        p_cong.modulus / rep,
                    )?);
                }
            }
        }
        if !z_congruences.is_empty() {
            match crt_solve(&z_congruences)? {
                Some(c) => cons.congruence = Some(c),
                None => return Ok(None),
            }
        }

        let set = match (cons.exact, cons.geq, cons.congruence) {
            // No constraints: anything goes.
            (None, false, None) => {
                let mut v: Vec<CchvEntry> =
                    (0..k).map(|exact| CchvEntry::Exact { exact }).collect();
                v.push(CchvEntry::Cong { cong: (0, 1) });
                v
            }
            // Exact count, possibly with congruence consistency.
            (Some(p), false, cong) => {
                if let Some(c) = cong {
                    if !c.holds(p) {
                        return Ok(None);
                    }
                }
                if p >= k {
                    return Err(Error::Internal(format!(
                        "exact component count {p} at or above cap {k}"
                    )));
                }
                vec![CchvEntry::Exact { exact: p }]
            }
            // Exact and threshold constraints cannot coexist.
            (Some(_), true, _) => return Ok(None),
            // Threshold only.
            (None, true, None) => vec![CchvEntry::Cong { cong: (0, 1) }],
            // Threshold plus congruence.
            (None, true, Some(c)) => vec![CchvEntry::Cong { cong: (c.residue, c.modulus) }],
            // Congruence only: large counts by congruence, small counts
            // explicitly (zero included when consistent).
            (None, false, Some(c)) => {
                let mut v = vec![CchvEntry::Cong { cong: (c.residue, c.modulus) }];
                v.extend(
                    (0..k).filter(|&z| c.holds(z)).map(|exact| CchvEntry::Exact { exact }),
                );
                v.sort();
                v
            }
        };
        entries.push(EntrySet(set));
    }
    Ok(Some(CchvTemplate { entries }))
}
