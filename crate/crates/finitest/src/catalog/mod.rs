//! Exhaustive catalogs of component types and rooted ball types realizable
//! in the class `C^c_d` (component size <= c, degree <= d), with canonical
//! codes, root orbits and repetition counts.

mod canon;
mod hist;

pub use canon::{canonical_code, canonical_code_capped, CanonicalCode, CANON_VERTEX_CAP};
pub use hist::{bhv, bhv_to_chv, chv, Bdv, Bhv, Chv};

use crate::error::{Error, Result};
use crate::graph::{ExplicitGraph, RootedBall};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Guard on the number of enumerated types.
pub const ENUMERATION_GUARD: usize = 10_000;

/// A connected-component isomorphism type.
#[derive(Debug, Clone)]
pub struct CompType {
    pub index: usize,
    pub code: CanonicalCode,
    pub size: u32,
    pub representative: ExplicitGraph,
}

/// A rooted ball type at radius c-1. At that radius every ball spans its
/// whole component, so ball types are exactly (component type, root orbit)
/// pairs.
#[derive(Debug, Clone)]
pub struct BallType {
    pub index: usize,
    pub code: CanonicalCode,
    pub radius: u32,
    pub representative: RootedBall,
    /// Index of the underlying component type.
    pub underlying: usize,
    /// Number of root positions in the underlying component realizing this
    /// ball type. Converts vertex counts into component counts.
    pub repetition: u32,
}

#[derive(Debug)]
pub struct TypeCatalog {
    c: u32,
    d: u32,
    comp: Vec<CompType>,
    ball: Vec<BallType>,
    comp_by_code: HashMap<CanonicalCode, usize>,
    ball_by_code: HashMap<CanonicalCode, usize>,
}

impl TypeCatalog {
    /// Enumerate all component and ball types of `C^c_d`.
    pub fn new(c: u32, d: u32) -> Result<Self> {
        Self::with_guard(c, d, ENUMERATION_GUARD)
    }

    pub fn with_guard(c: u32, d: u32, guard: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::Argument("component size bound c must be >= 1".into()));
        }
        if c as usize > CANON_VERTEX_CAP {
            return Err(Error::Resource(format!(
                "catalog enumeration capped at c = {CANON_VERTEX_CAP}"
            )));
        }
        let comp = enumerate_component_types(c, d, guard)?;
        let ball = enumerate_ball_types(&comp, c)?;
        let comp_by_code = comp.iter().map(|t| (t.code.clone(), t.index)).collect();
        let ball_by_code = ball.iter().map(|t| (t.code.clone(), t.index)).collect();
        Ok(TypeCatalog { c, d, comp, ball, comp_by_code, ball_by_code })
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The uniform radius of the ball catalog.
    pub fn radius(&self) -> u32 {
        self.c - 1
    }

    pub fn component_types(&self) -> &[CompType] {
        &self.comp
    }

    pub fn ball_types(&self) -> &[BallType] {
        &self.ball
    }

    /// Operational count of ball types; drives the sample-size formula.
    pub fn ball_type_count(&self) -> usize {
        self.ball.len()
    }

    pub fn comp_index(&self, code: &CanonicalCode) -> Option<usize> {
        self.comp_by_code.get(code).copied()
    }

    pub fn ball_index(&self, code: &CanonicalCode) -> Option<usize> {
        self.ball_by_code.get(code).copied()
    }

    pub fn comp_index_of(&self, g: &ExplicitGraph) -> Result<Option<usize>> {
        if g.vertex_count() > self.c as usize {
            return Ok(None);
        }
        Ok(self.comp_index(&canonical_code(g, None)?))
    }

    /// Ball types at the catalog radius whose radius-`r` ball around the
    /// root matches `code_at_r`. An empty result means the rooted type is
    /// not realizable in `C^c_d` at radius r.
    pub fn supertypes_of(&self, code_at_r: &CanonicalCode, r: u32) -> Result<Vec<usize>> {
        if r >= self.radius() {
            return Ok(self.ball_index(code_at_r).into_iter().collect());
        }
        let mut out = Vec::new();
        for bt in &self.ball {
            let restricted = RootedBall::around(&bt.representative.graph, bt.representative.root, r);
            let code = canonical_code(&restricted.graph, Some(restricted.root))?;
            if &code == code_at_r {
                out.push(bt.index);
            }
        }
        Ok(out)
    }

    /// Distinct rooted types arising as radius-`target` balls around the
    /// roots of catalog representatives whose radius-`r` restriction is
    /// `code_at_r`. With `target = r` this is the identity on realizable
    /// types.
    pub fn supertypes_between(
        &self,
        code_at_r: &CanonicalCode,
        r: u32,
        target: u32,
    ) -> Result<Vec<CanonicalCode>> {
        if r > target || target > self.radius() {
            return Err(Error::Argument(format!(
                "supertype radii must satisfy r <= target <= {}",
                self.radius()
            )));
        }
        let mut seen = BTreeMap::new();
        for bt in &self.ball {
            let rep = &bt.representative;
            let small = RootedBall::around(&rep.graph, rep.root, r);
            let small_code = canonical_code(&small.graph, Some(small.root))?;
            if &small_code != code_at_r {
                continue;
            }
            let big = RootedBall::around(&rep.graph, rep.root, target);
            let big_code = canonical_code(&big.graph, Some(big.root))?;
            seen.insert(big_code, ());
        }
        Ok(seen.into_keys().collect())
    }

    /// Realizable radius-`r` rooted types, as (code, representative) pairs.
    pub fn ball_types_at_radius(&self, r: u32) -> Result<Vec<(CanonicalCode, RootedBall)>> {
        let mut seen = BTreeMap::new();
        for bt in &self.ball {
            let rep = &bt.representative;
            let small = RootedBall::around(&rep.graph, rep.root, r);
            let code = canonical_code(&small.graph, Some(small.root))?;
            seen.entry(code).or_insert(small);
        }
        Ok(seen.into_iter().collect())
    }

    /// Stable fingerprint of the catalog contents (FNV-1a over the codes).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(&self.c.to_le_bytes());
        eat(&self.d.to_le_bytes());
        for t in &self.comp {
            eat(t.code.as_bytes());
        }
        for t in &self.ball {
            eat(t.code.as_bytes());
        }
        h
    }

    pub fn export(&self) -> CatalogExport {
        CatalogExport {
            c: self.c,
            d: self.d,
            fingerprint: format!("{:016x}", self.fingerprint()),
            component_types: self
                .comp
                .iter()
                .map(|t| CompTypeExport {
                    index: t.index,
                    size: t.size,
                    edges: t.representative.edges(),
                    code: t.code.to_hex(),
                })
                .collect(),
            ball_types: self
                .ball
                .iter()
                .map(|t| BallTypeExport {
                    index: t.index,
                    size: t.representative.graph.vertex_count() as u32,
                    edges: t.representative.graph.edges(),
                    root: t.representative.root as u32,
                    radius: t.radius,
                    rep: t.repetition,
                    underlying: t.underlying,
                    code: t.code.to_hex(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CatalogExport {
    pub c: u32,
    pub d: u32,
    pub fingerprint: String,
    pub component_types: Vec<CompTypeExport>,
    pub ball_types: Vec<BallTypeExport>,
}

#[derive(Debug, Serialize)]
pub struct CompTypeExport {
    pub index: usize,
    pub size: u32,
    pub edges: Vec<(u32, u32)>,
    pub code: String,
}

#[derive(Debug, Serialize)]
pub struct BallTypeExport {
    pub index: usize,
    pub size: u32,
    pub edges: Vec<(u32, u32)>,
    pub root: u32,
    pub radius: u32,
    pub rep: u32,
    pub underlying: usize,
    pub code: String,
}

/// All connected graphs on <= c vertices with degree <= d, one per
/// isomorphism class, sorted by (size, code). Grown by attaching a fresh
/// vertex to a nonempty subset of an existing representative; every
/// connected graph has a removable leaf-of-spanning-tree vertex, so every
/// class is reached.
fn enumerate_component_types(c: u32, d: u32, guard: usize) -> Result<Vec<CompType>> {
    let mut by_code: BTreeMap<CanonicalCode, ExplicitGraph> = BTreeMap::new();
    let k1 = ExplicitGraph::empty(1);
    let mut frontier = vec![k1.clone()];
    by_code.insert(canonical_code(&k1, None)?, k1);

    for size in 2..=c {
        let mut next = Vec::new();
        for g in &frontier {
            let base = g.vertex_count();
            let new_v = (base + 1) as u32;
            // Candidate attachment sets: nonempty subsets of existing
            // vertices with room left under the degree bound.
            let attachable: Vec<u32> =
                (1..=base as u32).filter(|&u| g.degree(u as usize) < d as usize).collect();
            let max_pick = (d as usize).min(attachable.len());
            for mask in 1u32..(1 << attachable.len()) {
                if mask.count_ones() as usize > max_pick {
                    continue;
                }
                let mut edges = g.edges();
                for (i, &u) in attachable.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        edges.push((u, new_v));
                    }
                }
                let h = ExplicitGraph::from_edges(base + 1, &edges)?;
                let code = canonical_code(&h, None)?;
                if !by_code.contains_key(&code) {
                    if by_code.len() >= guard {
                        return Err(Error::Resource(format!(
                            "component enumeration guard {guard} exceeded at c={size}, d={d}"
                        )));
                    }
                    by_code.insert(code, h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
        let _ = size;
    }

    let mut entries: Vec<(u32, CanonicalCode, ExplicitGraph)> =
        by_code.into_iter().map(|(code, g)| (g.vertex_count() as u32, code, g)).collect();
    entries.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(entries
        .into_iter()
        .enumerate()
        .map(|(index, (size, code, representative))| CompType { index, code, size, representative })
        .collect())
}

/// One ball type per root orbit of each component type, sorted by
/// (size, rooted code); repetition = orbit size.
fn enumerate_ball_types(comp: &[CompType], c: u32) -> Result<Vec<BallType>> {
    let radius = c - 1;
    let mut entries: Vec<(u32, CanonicalCode, RootedBall, usize, u32)> = Vec::new();
    for t in comp {
        let mut orbits: BTreeMap<CanonicalCode, (RootedBall, u32)> = BTreeMap::new();
        for v in 1..=t.representative.vertex_count() {
            let ball = RootedBall::around(&t.representative, v, radius);
            debug_assert_eq!(ball.graph.vertex_count(), t.representative.vertex_count());
            let code = canonical_code(&ball.graph, Some(ball.root))?;
            orbits.entry(code).and_modify(|e| e.1 += 1).or_insert((ball, 1));
        }
        for (code, (ball, rep)) in orbits {
            entries.push((t.size, code, ball, t.index, rep));
        }
    }
    entries.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(entries
        .into_iter()
        .enumerate()
        .map(|(index, (_, code, representative, underlying, repetition))| BallType {
            index,
            code,
            radius,
            representative,
            underlying,
            repetition,
        })
        .collect())
}
