use crate::catalog::{canonical_code, TypeCatalog};
use crate::error::{Error, Result};
use crate::graph::{ExplicitGraph, RootedBall};

/// Ball histogram vector: per ball type, the number of vertices whose
/// radius-(c-1) ball has that type. Entries sum to n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bhv(pub Vec<u64>);

/// Component histogram vector: per component type, the number of
/// components of that type. Satisfies sum(chv[t] * |t|) = n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chv(pub Vec<u64>);

/// Ball distribution vector: bhv normalized by n.
#[derive(Debug, Clone, PartialEq)]
pub struct Bdv(pub Vec<f64>);

impl Bhv {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn to_bdv(&self) -> Bdv {
        let n = self.total() as f64;
        Bdv(self.0.iter().map(|&x| x as f64 / n).collect())
    }
}

impl Chv {
    pub fn vertex_total(&self, catalog: &TypeCatalog) -> u64 {
        self.0
            .iter()
            .zip(catalog.component_types())
            .map(|(&z, t)| z * t.size as u64)
            .sum()
    }
}

impl Bdv {
    pub fn l1_distance(&self, other: &Bdv) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum()
    }
}

/// Exact ball census of an explicit graph at the catalog radius.
pub fn bhv(g: &ExplicitGraph, catalog: &TypeCatalog) -> Result<Bhv> {
    let mut counts = vec![0u64; catalog.ball_type_count()];
    for v in 1..=g.vertex_count() {
        let ball = RootedBall::around(g, v, catalog.radius());
        if ball.graph.vertex_count() > catalog.c() as usize {
            return Err(Error::NotInClass(format!(
                "ball around vertex {v} has {} vertices, exceeding c = {}",
                ball.graph.vertex_count(),
                catalog.c()
            )));
        }
        let code = canonical_code(&ball.graph, Some(ball.root))?;
        match catalog.ball_index(&code) {
            Some(i) => counts[i] += 1,
            None => {
                return Err(Error::NotInClass(format!(
                    "ball around vertex {v} has no catalog type"
                )))
            }
        }
    }
    Ok(Bhv(counts))
}

/// Exact component census of an explicit graph.
pub fn chv(g: &ExplicitGraph, catalog: &TypeCatalog) -> Result<Chv> {
    let membership = g.validate_membership(catalog.c(), catalog.d());
    if !membership.pass() {
        return Err(Error::NotInClass(format!(
            "membership failure: {} degree and {} component violations",
            membership.degree_violations.len(),
            membership.component_violations.len()
        )));
    }
    let mut counts = vec![0u64; catalog.component_types().len()];
    for comp in g.components() {
        let sub = g.induced(&comp);
        let code = canonical_code(&sub, None)?;
        match catalog.comp_index(&code) {
            Some(i) => counts[i] += 1,
            None => {
                return Err(Error::NotInClass(format!(
                    "component at vertex {} has no catalog type",
                    comp[0]
                )))
            }
        }
    }
    Ok(Chv(counts))
}

/// Convert an exact ball census into a component census. For each
/// component type, pick a ball type realized in its representative and
/// divide the vertex count by the repetition of that orbit; the division
/// must be exact for a census that came from a real graph.
pub fn bhv_to_chv(bhv: &Bhv, catalog: &TypeCatalog) -> Result<Chv> {
    if bhv.0.len() != catalog.ball_type_count() {
        return Err(Error::CatalogMismatch(format!(
            "bhv has {} entries, catalog has {} ball types",
            bhv.0.len(),
            catalog.ball_type_count()
        )));
    }
    let mut counts = vec![0u64; catalog.component_types().len()];
    for t in catalog.component_types() {
        let orbits: Vec<_> =
            catalog.ball_types().iter().filter(|b| b.underlying == t.index).collect();
        debug_assert!(!orbits.is_empty());
        let mut value: Option<u64> = None;
        for orbit in orbits {
            let seen = bhv.0[orbit.index];
            if !seen.is_multiple_of(orbit.repetition as u64) {
                return Err(Error::Inconsistent(format!(
                    "ball count {seen} for type {} is not divisible by repetition {}",
                    orbit.index, orbit.repetition
                )));
            }
            let z = seen / orbit.repetition as u64;
            match value {
                None => value = Some(z),
                Some(prev) if prev != z => {
                    return Err(Error::Inconsistent(format!(
                        "orbits of component type {} disagree: {prev} vs {z}",
                        t.index
                    )))
                }
                _ => {}
            }
        }
        counts[t.index] = value.unwrap_or(0);
    }
    Ok(Chv(counts))
}
