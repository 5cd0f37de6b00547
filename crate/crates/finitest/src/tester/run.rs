use crate::catalog::{canonical_code, chv, Chv, TypeCatalog};
use crate::compiler::CompiledProperty;
use crate::error::{Error, Result};
use crate::graph::{component_of, read_full, ComponentResult, NeighborOracle};
use crate::tester::unit::CompiledUnit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Amplification constant: majority over ceil(AMPLIFY * ln(3 * units))
/// trials pushes the per-unit error from 1/3 below 1/(3 * units).
pub const AMPLIFY: f64 = 18.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    Accept,
    Reject,
    /// The input failed a class check mid-run; distinguished from both
    /// verdicts.
    NotInClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub unit: usize,
    pub trial: u64,
    pub seed: u64,
    pub queries: u64,
    /// Whole-graph regime used instead of sampling.
    pub exact: bool,
    /// Component type index of the first rare sighting, if any.
    pub rare_seen: Option<usize>,
    /// Outcome of the divisibility check, when it ran.
    pub arithmetic: Option<bool>,
    pub decision: Decision,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
}

/// Stable per-trial seed stream (splitmix64 over the inputs).
pub fn derive_seed(master: u64, unit: usize, trial: u64) -> u64 {
    let mut x = master
        .wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(unit as u64 + 1))
        .wrapping_add(0x94d049bb133111ebu64.wrapping_mul(trial + 1));
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Read the whole graph and compute its component census.
fn exact_census(g: &dyn NeighborOracle, catalog: &TypeCatalog) -> Result<Chv> {
    let explicit = read_full(g)?;
    chv(&explicit, catalog)
}

/// Exact decision for the whole property: reads the graph and checks the
/// census against every template.
pub fn exact_decide(
    g: &dyn NeighborOracle,
    property: &CompiledProperty,
    catalog: &TypeCatalog,
) -> Result<bool> {
    Ok(property.satisfied_by(&exact_census(g, catalog)?))
}

/// One tester execution for one unit: exact below the threshold, sampling
/// plus the divisibility check above it.
pub fn run_single(
    unit: &CompiledUnit,
    g: &dyn NeighborOracle,
    catalog: &TypeCatalog,
    seed: u64,
) -> Result<Verdict> {
    let record = run_trial(unit, g, catalog, seed, 0)?;
    Ok(Verdict { decision: record.decision, seed, trials: vec![record] })
}

fn run_trial(
    unit: &CompiledUnit,
    g: &dyn NeighborOracle,
    catalog: &TypeCatalog,
    seed: u64,
    trial: u64,
) -> Result<TrialRecord> {
    let n = g.vertex_count();
    let before = g.queries();
    let mut record = TrialRecord {
        unit: unit.index,
        trial,
        seed,
        queries: 0,
        exact: false,
        rare_seen: None,
        arithmetic: None,
        decision: Decision::Reject,
    };

    if n <= unit.n0 {
        record.exact = true;
        match exact_census(g, catalog) {
            Ok(census) => {
                record.decision = if unit.satisfied_by(&census) {
                    Decision::Accept
                } else {
                    Decision::Reject
                };
            }
            Err(Error::NotInClass(_)) => record.decision = Decision::NotInClass,
            Err(e) => return Err(e),
        }
        record.queries = g.queries() - before;
        return Ok(record);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Components come back labeled in discovery order, so equal shapes
    // repeat exactly; a per-trial cache skips most canonicalizations.
    let mut shape_cache: std::collections::HashMap<crate::graph::ExplicitGraph, Option<usize>> =
        std::collections::HashMap::new();
    for _ in 0..unit.q {
        let v = rng.gen_range(1..=n);
        let comp = match component_of(g, v, catalog.c())? {
            ComponentResult::Component(c) => c,
            ComponentResult::Overflow => {
                record.decision = Decision::NotInClass;
                record.queries = g.queries() - before;
                return Ok(record);
            }
        };
        let comp_index = match shape_cache.get(&comp) {
            Some(&idx) => idx,
            None => {
                let idx = catalog.comp_index(&canonical_code(&comp, None)?);
                shape_cache.insert(comp, idx);
                idx
            }
        };
        let Some(comp_index) = comp_index else {
            record.decision = Decision::NotInClass;
            record.queries = g.queries() - before;
            return Ok(record);
        };
        if unit.is_rare(comp_index) {
            record.rare_seen = Some(comp_index);
            record.decision = Decision::Reject;
            record.queries = g.queries() - before;
            return Ok(record);
        }
    }

    // Arithmetic: after removing rare components and the mandatory k_i
    // frequent components, the leftover must tile by blocks of b_i copies,
    // which is exactly divisibility by the weight gcd at this scale.
    let leftover = n as i128 - unit.rare_budget as i128 - unit.fixed_budget as i128;
    let pass = match unit.divisor {
        Some(gcd) => leftover >= 0 && leftover % gcd as i128 == 0,
        // No frequent types: every satisfying graph fits below n0, and we
        // are above it.
        None => false,
    };
    record.arithmetic = Some(pass);
    record.decision = if pass { Decision::Accept } else { Decision::Reject };
    record.queries = g.queries() - before;
    Ok(record)
}

/// Number of majority trials per unit for a union of `units` testers.
pub fn trials_per_unit(units: usize) -> u64 {
    (AMPLIFY * ((3 * units.max(1)) as f64).ln()).ceil() as u64
}

/// Union tester with per-unit majority amplification: accept when some
/// unit's majority accepts. Units stop early once their majority is
/// decided, and the union short-circuits on the first accepting unit.
pub fn run_union(
    units: &[CompiledUnit],
    g: &dyn NeighborOracle,
    catalog: &TypeCatalog,
    master_seed: u64,
) -> Result<Verdict> {
    if units.is_empty() {
        // An unsatisfiable property rejects everything.
        return Ok(Verdict { decision: Decision::Reject, seed: master_seed, trials: Vec::new() });
    }
    let t = trials_per_unit(units.len());
    let accepts_needed = t / 2 + 1;
    let rejects_needed = t - accepts_needed + 1;
    let mut trials = Vec::new();
    let mut any_accept = false;
    for unit in units {
        let mut accepts = 0u64;
        let mut rejects = 0u64;
        for trial in 0..t {
            let seed = derive_seed(master_seed, unit.index, trial);
            let record = run_trial(unit, g, catalog, seed, trial)?;
            let decision = record.decision;
            trials.push(record);
            match decision {
                Decision::Accept => accepts += 1,
                Decision::Reject => rejects += 1,
                Decision::NotInClass => {
                    return Ok(Verdict {
                        decision: Decision::NotInClass,
                        seed: master_seed,
                        trials,
                    })
                }
            }
            if accepts >= accepts_needed || rejects >= rejects_needed {
                break;
            }
        }
        if accepts >= accepts_needed {
            any_accept = true;
            break;
        }
    }
    Ok(Verdict {
        decision: if any_accept { Decision::Accept } else { Decision::Reject },
        seed: master_seed,
        trials,
    })
}
