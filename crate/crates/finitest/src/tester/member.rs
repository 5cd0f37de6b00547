use crate::catalog::TypeCatalog;
use crate::error::Result;
use crate::graph::ExplicitGraph;
use crate::numtheory::conical_decompose;
use crate::tester::unit::CompiledUnit;

/// Does any graph on exactly `n` vertices satisfy the unit's vector?
/// Decided exactly at any scale: leftovers beyond the Frobenius threshold
/// only need the divisibility check, smaller ones go through the
/// decomposition DP.
pub fn member_exists(unit: &CompiledUnit, n: u64) -> Result<bool> {
    let fixed = unit.rare_budget + unit.fixed_budget;
    if n < fixed {
        return Ok(false);
    }
    let leftover = n - fixed;
    let Some(divisor) = unit.divisor else {
        return Ok(leftover == 0);
    };
    let frobenius = unit.frobenius.expect("frequent units carry a frobenius value");
    if (leftover as i128) > frobenius as i128 {
        return Ok(leftover.is_multiple_of(divisor));
    }
    let weights: Vec<u64> = unit.frequent.iter().map(|f| f.weight).collect();
    Ok(conical_decompose(leftover, &weights)?.is_some())
}

/// Component counts of a graph on exactly `n` vertices satisfying the
/// unit's vector, or None when no such graph exists. Rare counts are
/// fixed, each frequent type gets its mandatory k_i components, and the
/// leftover vertices are tiled by blocks of b_i copies found by the
/// decomposition DP, which decides existence exactly (including leftovers
/// below the Frobenius threshold).
pub fn member_counts(
    unit: &CompiledUnit,
    n: u64,
    catalog: &TypeCatalog,
) -> Result<Option<Vec<u64>>> {
    let fixed = unit.rare_budget + unit.fixed_budget;
    if n < fixed {
        return Ok(None);
    }
    let leftover = n - fixed;
    let weights: Vec<u64> = unit.frequent.iter().map(|f| f.weight).collect();
    let Some(coeffs) = conical_decompose(leftover, &weights)? else {
        return Ok(None);
    };
    let mut counts = vec![0u64; catalog.component_types().len()];
    for &(t, z) in &unit.rare {
        counts[t] = z;
    }
    for (f, &p) in unit.frequent.iter().zip(&coeffs) {
        counts[f.comp] = f.k_i + p * f.modulus;
    }
    Ok(Some(counts))
}

/// Materialize a graph with the given per-type component counts, vertices
/// numbered consecutively block by block in catalog order.
pub fn realize_counts(counts: &[u64], catalog: &TypeCatalog) -> Result<ExplicitGraph> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut offset: u64 = 0;
    for (t, &z) in counts.iter().enumerate() {
        let rep = &catalog.component_types()[t].representative;
        let size = rep.vertex_count() as u64;
        for _ in 0..z {
            for (u, v) in rep.edges() {
                edges.push(((offset + u as u64) as u32, (offset + v as u64) as u32));
            }
            offset += size;
        }
    }
    ExplicitGraph::from_edges(offset as usize, &edges)
}

/// Build a graph on exactly `n` vertices satisfying the unit, or None.
pub fn construct_member(
    unit: &CompiledUnit,
    n: u64,
    catalog: &TypeCatalog,
) -> Result<Option<ExplicitGraph>> {
    match member_counts(unit, n, catalog)? {
        Some(counts) => Ok(Some(realize_counts(&counts, catalog)?)),
        None => Ok(None),
    }
}
