use crate::catalog::TypeCatalog;
use crate::compiler::CompiledProperty;
use crate::error::{Error, Result};
use crate::graph::NeighborOracle;
use crate::harness::family::{gen_family, FamilySpec};
use crate::tester::{compile_tester, derive_seed, run_union, Decision};
use serde::{Deserialize, Serialize};

/// Experiment configuration, normally loaded from JSON.
#[derive(Debug, Clone, Deserialize)]
pub struct ExperimentConfig {
    /// Path to a compiled templates file; relative paths resolve against
    /// the config file's directory.
    pub templates: String,
    pub epsilon: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
    pub families: Vec<FamilyCell>,
    #[serde(default)]
    pub assume_type_count: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilyCell {
    pub name: String,
    #[serde(default)]
    pub ns: Vec<u64>,
    #[serde(default)]
    pub chv: Option<Vec<u64>>,
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    #[serde(default)]
    pub seed: u64,
}

impl FamilyCell {
    fn specs(&self) -> Result<Vec<FamilySpec>> {
        match self.name.as_str() {
            "EDGES" => Ok(self.ns.iter().map(|&n| FamilySpec::Edges { n }).collect()),
            "EDGES_PLUS_VERTEX" => {
                Ok(self.ns.iter().map(|&n| FamilySpec::EdgesPlusVertex { n }).collect())
            }
            "FROM_CHV" => {
                let counts = self.chv.clone().ok_or_else(|| {
                    Error::Parse { pos: 0, msg: "FROM_CHV cell needs chv".into() }
                })?;
                Ok(vec![FamilySpec::FromChv { counts }])
            }
            "RANDOM_MIX" => {
                let weights = self.weights.clone().ok_or_else(|| {
                    Error::Parse { pos: 0, msg: "RANDOM_MIX cell needs weights".into() }
                })?;
                Ok(self
                    .ns
                    .iter()
                    .map(|&n| FamilySpec::RandomMix { n, weights: weights.clone(), seed: self.seed })
                    .collect())
            }
            other => Err(Error::Parse { pos: 0, msg: format!("unknown family: {other}") }),
        }
    }
}

/// One (family, n, epsilon) measurement. Wall time is intentionally not
/// part of the report so byte-identical reruns stay byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub family: String,
    pub n: u64,
    pub epsilon: f64,
    pub trials: u64,
    pub accepts: u64,
    pub rejects: u64,
    pub not_in_class: u64,
    pub accept_rate: f64,
    pub queries_mean: f64,
    pub queries_max: u64,
    pub padded: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub master_seed: u64,
    pub trials: u64,
    pub cells: Vec<CellReport>,
}

/// Sweep all (family, n, epsilon) cells. Deterministic given the master
/// seed: cell seeds derive from the cell index, trial seeds from the
/// union runner's own stream.
pub fn run_experiment(
    config: &ExperimentConfig,
    property: &CompiledProperty,
    catalog: &TypeCatalog,
) -> Result<ExperimentReport> {
    let mut cells = Vec::new();
    let mut cell_index = 0usize;
    for family_cell in &config.families {
        for spec in family_cell.specs()? {
            let family = gen_family(&spec, catalog)?;
            for &epsilon in &config.epsilon {
                let units = compile_tester(
                    property,
                    catalog,
                    epsilon,
                    config.assume_type_count,
                    crate::compiler::CompileOptions::default().unit_guard,
                )?;
                let mut accepts = 0u64;
                let mut rejects = 0u64;
                let mut not_in_class = 0u64;
                let mut total_queries = 0u64;
                let mut max_queries = 0u64;
                for trial in 0..config.trials {
                    let seed = derive_seed(config.master_seed, cell_index, trial);
                    let before = family.queries();
                    let verdict = run_union(&units, &family, catalog, seed)?;
                    let used = family.queries() - before;
                    total_queries += used;
                    max_queries = max_queries.max(used);
                    match verdict.decision {
                        Decision::Accept => accepts += 1,
                        Decision::Reject => rejects += 1,
                        Decision::NotInClass => not_in_class += 1,
                    }
                }
                cells.push(CellReport {
                    family: format!("{}:n={}", spec.name(), family.n()),
                    n: family.n(),
                    epsilon,
                    trials: config.trials,
                    accepts,
                    rejects,
                    not_in_class,
                    accept_rate: accepts as f64 / config.trials.max(1) as f64,
                    queries_mean: total_queries as f64 / config.trials.max(1) as f64,
                    queries_max: max_queries,
                    padded: family.padded,
                });
                cell_index += 1;
            }
        }
    }
    cells.sort_by(|a, b| {
        a.family
            .cmp(&b.family)
            .then(a.n.cmp(&b.n))
            .then(a.epsilon.total_cmp(&b.epsilon))
    });
    Ok(ExperimentReport { master_seed: config.master_seed, trials: config.trials, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{compile_hnf, CompileOptions};
    use crate::graph::ExplicitGraph;
    use crate::logic::hanf::{AtomKind, BallLabel, HanfAtom, HnfSentence};

    fn property() -> (CompiledProperty, TypeCatalog) {
        let catalog = TypeCatalog::new(2, 1).unwrap();
        let vertex = BallLabel::from_rooted(&ExplicitGraph::empty(1), 1).unwrap();
        let e = ExplicitGraph::from_edges(2, &[(1, 2)]).unwrap();
        let edge = BallLabel::from_rooted(&e, 1).unwrap();
        let hnf = HnfSentence::Not(Box::new(HnfSentence::And(vec![
            HnfSentence::Atom(HanfAtom { kind: AtomKind::Geq(1), radius: 1, ball: vertex }),
            HnfSentence::Atom(HanfAtom { kind: AtomKind::Geq(1), radius: 1, ball: edge }),
        ])));
        (compile_hnf(&hnf, &catalog, &CompileOptions::default()).unwrap(), catalog)
    }

    #[test]
    fn reports_are_deterministic() {
        let (property, catalog) = property();
        let config = ExperimentConfig {
            templates: String::new(),
            epsilon: vec![0.2],
            trials: 5,
            master_seed: 77,
            families: vec![FamilyCell {
                name: "EDGES".into(),
                ns: vec![20_000],
                chv: None,
                weights: None,
                seed: 0,
            }],
            assume_type_count: None,
        };
        let a = run_experiment(&config, &property, &catalog).unwrap();
        let b = run_experiment(&config, &property, &catalog).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.cells.len(), 1);
        assert_eq!(a.cells[0].accepts, 5);
    }

    #[test]
    fn rejecting_family_reports_zero_rate() {
        let (property, catalog) = property();
        let config = ExperimentConfig {
            templates: String::new(),
            epsilon: vec![0.2],
            trials: 4,
            master_seed: 3,
            families: vec![FamilyCell {
                name: "EDGES_PLUS_VERTEX".into(),
                ns: vec![20_001],
                chv: None,
                weights: None,
                seed: 0,
            }],
            assume_type_count: None,
        };
        let report = run_experiment(&config, &property, &catalog).unwrap();
        assert_eq!(report.cells[0].rejects, 4);
        assert_eq!(report.cells[0].accept_rate, 0.0);
    }
}
