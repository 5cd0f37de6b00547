use crate::catalog::{canonical_code, Bdv, TypeCatalog};
use crate::error::{Error, Result};
use crate::graph::{explore_ball, NeighborOracle};
use rand::Rng;

/// Result of sampling-based frequency estimation.
#[derive(Debug, Clone)]
pub struct FrequencyEstimate {
    /// Empirical ball distribution over the catalog types; entries sum
    /// to 1 over all samples, including unknown ones.
    pub bdv: Bdv,
    pub samples: u64,
    /// Samples whose ball had no catalog type; nonzero means the input is
    /// outside the class.
    pub unknown: u64,
    pub queries: u64,
}

impl FrequencyEstimate {
    pub fn in_class(&self) -> bool {
        self.unknown == 0
    }
}

/// Sample `s` vertices uniformly, explore the radius-`r` ball at each, and
/// tally the empirical type distribution.
pub fn estimate_frequencies(
    g: &dyn NeighborOracle,
    catalog: &TypeCatalog,
    r: u32,
    s: u64,
    rng: &mut impl Rng,
) -> Result<FrequencyEstimate> {
    if s == 0 {
        return Err(Error::Argument("sample count must be >= 1".into()));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Argument("cannot sample an empty graph".into()));
    }
    let before = g.queries();
    let mut counts = vec![0u64; catalog.ball_type_count()];
    let mut unknown = 0u64;
    // Exploration labels balls in discovery order, so repeated shapes hit
    // this cache instead of re-canonicalizing.
    let mut shape_cache: std::collections::HashMap<
        (crate::graph::ExplicitGraph, usize),
        Option<usize>,
    > = std::collections::HashMap::new();
    for _ in 0..s {
        let v = rng.gen_range(1..=n);
        let ball = explore_ball(g, v, r)?;
        if ball.graph.vertex_count() > catalog.c() as usize {
            unknown += 1;
            continue;
        }
        let key = (ball.graph, ball.root);
        let index = match shape_cache.get(&key) {
            Some(&idx) => idx,
            None => {
                let idx = catalog.ball_index(&canonical_code(&key.0, Some(key.1))?);
                shape_cache.insert(key, idx);
                idx
            }
        };
        match index {
            Some(i) => counts[i] += 1,
            None => unknown += 1,
        }
    }
    let bdv = Bdv(counts.iter().map(|&x| x as f64 / s as f64).collect());
    Ok(FrequencyEstimate { bdv, samples: s, unknown, queries: g.queries() - before })
}
