//! The normalization pipeline: uniform radius, disjunctive normal form,
//! uniform cap, component-radius reduction, and template extraction.

pub mod cap;
pub mod dnf;
pub mod entries;
pub mod radius;
pub mod recognize;
pub mod reduce;

pub use cap::unify_cap;
pub use dnf::{to_dnf, Clause, DnfSentence, Literal};
pub use entries::{clause_entry_sets, template_satisfied, CchvEntry, CchvTemplate, EntrySet};
pub use radius::{expand_geq_over_set, expand_mod_over_set, unify_radius};
pub use recognize::sentence_to_hnf;
pub use reduce::reduce_to_component_radius;

use crate::catalog::TypeCatalog;
use crate::error::{Error, Result};
use crate::logic::hanf::HnfSentence;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone)]
pub struct CompileOptions {
    /// Cap on tuple expansions during radius unification.
    pub tuple_guard: usize,
    /// Cap on clause counts through DNF conversion and rewriting.
    pub clause_guard: usize,
    /// Cap on single-vector units expanded from one template set.
    pub unit_guard: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { tuple_guard: 200_000, clause_guard: 100_000, unit_guard: 4096 }
    }
}

/// Output of the compilation pipeline: the cap and one template per
/// satisfiable clause. An unsatisfiable sentence compiles to no templates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompiledProperty {
    pub c: u32,
    pub d: u32,
    pub k: u64,
    pub catalog_hash: String,
    pub templates: Vec<CchvTemplate>,
}

impl CompiledProperty {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: CompiledProperty = serde_json::from_str(text)?;
        for t in &parsed.templates {
            for set in &t.entries {
                if set.0.is_empty() {
                    return Err(Error::Parse { pos: 0, msg: "empty entry set".into() });
                }
                for e in &set.0 {
                    match e {
                        CchvEntry::Exact { exact } => {
                            if *exact >= parsed.k {
                                return Err(Error::Parse {
                                    pos: 0,
                                    msg: format!("exact entry {exact} not below cap {}", parsed.k),
                                });
                            }
                        }
                        CchvEntry::Cong { cong: (j, l) } => {
                            if *l == 0 || j >= l {
                                return Err(Error::Parse {
                                    pos: 0,
                                    msg: format!("bad congruence entry ({j},{l})"),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(parsed)
    }

    /// Check the stored fingerprint against a rebuilt catalog.
    pub fn check_catalog(&self, catalog: &TypeCatalog) -> Result<()> {
        let expected = format!("{:016x}", catalog.fingerprint());
        if catalog.c() != self.c || catalog.d() != self.d || expected != self.catalog_hash {
            return Err(Error::CatalogMismatch(format!(
                "templates were compiled against catalog {} (c={}, d={}), current is {expected}",
                self.catalog_hash, self.c, self.d
            )));
        }
        Ok(())
    }

    /// Does any template accept this component census?
    pub fn satisfied_by(&self, chv: &crate::catalog::Chv) -> bool {
        self.templates.iter().any(|t| t.satisfied_by(chv, self.k))
    }
}

/// Extract one template per satisfiable clause, deduplicated.
pub fn extract_templates(
    dnf: &DnfSentence,
    catalog: &TypeCatalog,
    k: u64,
) -> Result<Vec<CchvTemplate>> {
    let mut out: Vec<CchvTemplate> = Vec::new();
    for clause in &dnf.0 {
        if let Some(template) = clause_entry_sets(clause, catalog, k)? {
            if !out.contains(&template) {
                out.push(template);
            }
        }
    }
    Ok(out)
}

/// Run the whole pipeline on a Hanf-normal-form sentence.
pub fn compile_hnf(
    sentence: &HnfSentence,
    catalog: &TypeCatalog,
    opts: &CompileOptions,
) -> Result<CompiledProperty> {
    let uniform = unify_radius(sentence, catalog, opts)?;
    let dnf = to_dnf(&uniform, opts)?;
    let (k, capped) = unify_cap(&dnf, opts)?;
    let reduced = reduce_to_component_radius(&capped, catalog, k, opts)?;
    let templates = extract_templates(&reduced, catalog, k)?;
    Ok(CompiledProperty {
        c: catalog.c(),
        d: catalog.d(),
        k,
        catalog_hash: format!("{:016x}", catalog.fingerprint()),
        templates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::chv;
    use crate::graph::ExplicitGraph;
    use crate::logic::hanf::{AtomKind, BallLabel, HanfAtom};

    fn cat() -> TypeCatalog {
        TypeCatalog::new(2, 1).unwrap()
    }

    fn psi_hnf() -> HnfSentence {
        let vertex = BallLabel::from_rooted(&ExplicitGraph::empty(1), 1).unwrap();
        let e = ExplicitGraph::from_edges(2, &[(1, 2)]).unwrap();
        let edge = BallLabel::from_rooted(&e, 1).unwrap();
        HnfSentence::Not(Box::new(HnfSentence::And(vec![
            HnfSentence::Atom(HanfAtom { kind: AtomKind::Geq(1), radius: 1, ball: vertex }),
            HnfSentence::Atom(HanfAtom { kind: AtomKind::Geq(1), radius: 1, ball: edge }),
        ])))
    }

    #[test]
    fn psi_compiles_to_three_known_vectors() {
        let catalog = cat();
        let compiled = compile_hnf(&psi_hnf(), &catalog, &CompileOptions::default()).unwrap();
        assert_eq!(compiled.k, 1);
        assert_eq!(compiled.templates.len(), 2);

        // Extensional check against the three expected capped vectors:
        // (0,0), (0,>=1 components), (>=1 components,0).
        for z1 in 0..=10u64 {
            for z2 in 0..=5u64 {
                if z1 + 2 * z2 > 10 {
                    continue;
                }
                let expected = (z1 == 0 && z2 == 0)
                    || (z1 == 0 && z2 >= 1)
                    || (z2 == 0 && z1 >= 1);
                let census = crate::catalog::Chv(vec![z1, z2]);
                assert_eq!(compiled.satisfied_by(&census), expected, "({z1},{z2})");
            }
        }
    }

    #[test]
    fn contradiction_compiles_to_nothing() {
        let vertex = BallLabel::from_rooted(&ExplicitGraph::empty(1), 1).unwrap();
        let a = HnfSentence::Atom(HanfAtom {
            kind: AtomKind::Geq(1),
            radius: 1,
            ball: vertex,
        });
        let contradiction = HnfSentence::And(vec![a.clone(), HnfSentence::Not(Box::new(a))]);
        let compiled =
            compile_hnf(&contradiction, &cat(), &CompileOptions::default()).unwrap();
        assert!(compiled.templates.is_empty());
    }

    #[test]
    fn tautology_compiles_to_unconstrained_template() {
        let compiled =
            compile_hnf(&HnfSentence::True, &cat(), &CompileOptions::default()).unwrap();
        assert_eq!(compiled.templates.len(), 1);
        for g in [ExplicitGraph::empty(0), ExplicitGraph::empty(3)] {
            let census = chv(&g, &cat()).unwrap();
            assert!(compiled.satisfied_by(&census));
        }
    }

    #[test]
    fn json_roundtrip() {
        let compiled = compile_hnf(&psi_hnf(), &cat(), &CompileOptions::default()).unwrap();
        let text = compiled.to_json();
        let back = CompiledProperty::from_json(&text).unwrap();
        assert_eq!(back.k, compiled.k);
        assert_eq!(back.templates, compiled.templates);
        back.check_catalog(&cat()).unwrap();
    }
}
