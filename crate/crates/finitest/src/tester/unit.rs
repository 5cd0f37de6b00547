use crate::catalog::TypeCatalog;
use crate::compiler::{CchvEntry, CompiledProperty};
use crate::error::{Error, Result};
use crate::numtheory::{frobenius_multiple, gcd_many, lcm_many};
use serde::Serialize;

/// A frequent component type: required count is >= k and congruent to
/// `residue` mod `modulus`.
#[derive(Debug, Clone, Serialize)]
pub struct FrequentType {
    pub comp: usize,
    pub residue: u64,
    pub modulus: u64,
    /// Smallest admissible count: min { p >= k | p = residue (mod modulus) }.
    pub k_i: u64,
    /// Component size times modulus; the patching weight.
    pub weight: u64,
}

/// One single-vector tester unit: per component type either an exact
/// required count (rare) or a congruence-above-cap requirement (frequent),
/// with all the arithmetic of the sampling tester precomputed.
#[derive(Debug, Clone, Serialize)]
pub struct CompiledUnit {
    pub index: usize,
    pub k: u64,
    pub epsilon: f64,
    /// Entry per component type, in catalog order.
    pub vector: Vec<CchvEntry>,
    /// (component type, exact required count); includes required-zero types.
    pub rare: Vec<(usize, u64)>,
    pub frequent: Vec<FrequentType>,
    /// gcd of the frequent weights; None when there are no frequent types.
    pub divisor: Option<u64>,
    /// Largest multiple of the divisor not expressible over the weights;
    /// negative sentinel when everything is expressible.
    pub frobenius: Option<i64>,
    pub lcm_moduli: Option<u64>,
    /// Vertices consumed by rare components.
    pub rare_budget: u64,
    /// Vertices consumed by the k_i mandatory frequent components.
    pub fixed_budget: u64,
    /// Below or at this size the tester reads the whole graph.
    pub n0: u64,
    /// Sample count per trial in the sampling regime.
    pub q: u64,
}

impl CompiledUnit {
    /// Does a component census satisfy this unit's vector?
    pub fn satisfied_by(&self, chv: &crate::catalog::Chv) -> bool {
        debug_assert_eq!(self.vector.len(), chv.0.len());
        self.vector.iter().zip(&chv.0).all(|(e, &z)| e.matches(z, self.k))
    }

    pub fn is_rare(&self, comp: usize) -> bool {
        self.rare.iter().any(|&(t, _)| t == comp)
    }
}

/// Sample size from the frequency-estimation bound at accuracy eps/2.
pub fn sample_size(type_count: u64, epsilon: f64) -> u64 {
    let n = type_count as f64;
    let lambda = epsilon / 2.0;
    ((n * n) / (lambda * lambda) * (n + 40.0).ln()).ceil() as u64
}

/// Expand entry-set templates into single-vector units and precompute the
/// tester arithmetic for each.
pub fn compile_tester(
    property: &CompiledProperty,
    catalog: &TypeCatalog,
    epsilon: f64,
    assumed_type_count: Option<u64>,
    unit_guard: usize,
) -> Result<Vec<CompiledUnit>> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Argument(format!("epsilon must be in (0,1], got {epsilon}")));
    }
    property.check_catalog(catalog)?;
    let m_types = catalog.component_types().len();
    let type_count = match assumed_type_count {
        Some(n) => {
            if n < catalog.ball_type_count() as u64 {
                return Err(Error::Argument(format!(
                    "assumed type count {n} is below the catalog's {}",
                    catalog.ball_type_count()
                )));
            }
            n
        }
        None => catalog.ball_type_count() as u64,
    };
    let q = sample_size(type_count, epsilon);

    // Cartesian expansion of every template into single vectors.
    let mut vectors: Vec<Vec<CchvEntry>> = Vec::new();
    for template in &property.templates {
        debug_assert_eq!(template.entries.len(), m_types);
        let mut partial: Vec<Vec<CchvEntry>> = vec![Vec::with_capacity(m_types)];
        for set in &template.entries {
            let mut next = Vec::with_capacity(partial.len() * set.0.len());
            for p in &partial {
                for &entry in &set.0 {
                    let mut v = p.clone();
                    v.push(entry);
                    next.push(v);
                    if next.len() + vectors.len() > unit_guard {
                        return Err(Error::Resource(format!(
                            "unit expansion guard {unit_guard} exceeded"
                        )));
                    }
                }
            }
            partial = next;
        }
        for v in partial {
            if !vectors.contains(&v) {
                vectors.push(v);
            }
        }
    }

    let d = catalog.d() as u64;
    let c = catalog.c();
    let ball_bound = 1 + d.checked_pow(c).ok_or_else(|| {
        Error::Resource(format!("ball-size bound overflow for d={d}, c={c}"))
    })?;

    let mut units = Vec::with_capacity(vectors.len());
    for (index, vector) in vectors.into_iter().enumerate() {
        let mut rare = Vec::new();
        let mut frequent = Vec::new();
        for (comp, entry) in vector.iter().enumerate() {
            let size = catalog.component_types()[comp].size as u64;
            match *entry {
                CchvEntry::Exact { exact } => rare.push((comp, exact)),
                CchvEntry::Cong { cong: (a, b) } => {
                    let k = property.k;
                    let k_i = if k % b == a % b { k } else { k + (a + b - k % b) % b };
                    debug_assert!(k_i >= k && k_i % b == a % b);
                    frequent.push(FrequentType {
                        comp,
                        residue: a,
                        modulus: b,
                        k_i,
                        weight: b * size,
                    });
                }
            }
        }
        let rare_budget: u64 = rare
            .iter()
            .map(|&(t, z)| z * catalog.component_types()[t].size as u64)
            .sum();
        let fixed_budget: u64 = frequent
            .iter()
            .map(|f| f.k_i * catalog.component_types()[f.comp].size as u64)
            .sum();

        let (divisor, frobenius, lcm_moduli, n0) = if frequent.is_empty() {
            // Any satisfying graph fits in the rare budget, so the exact
            // regime must cover at least that many vertices.
            let n0 = ((4.0 / epsilon) * rare_budget as f64).ceil() as u64;
            (None, None, None, n0.max(3 * q * rare_budget))
        } else {
            let weights: Vec<u64> = frequent.iter().map(|f| f.weight).collect();
            let moduli: Vec<u64> = frequent.iter().map(|f| f.modulus).collect();
            let g = gcd_many(&weights)?;
            let f = frobenius_multiple(&weights)?;
            let lcm = lcm_many(&moduli)?;
            // The closeness argument needs room for the mandatory
            // components, the largest non-tileable leftover, and whole
            // sample-sized fill blocks; the 3*q*rare_budget floor keeps
            // the chance of sampling a rare vertex of a member below 1/3.
            let sum = rare_budget as i128
                + fixed_budget as i128
                + f as i128
                + (lcm as i128) * (ball_bound as i128) * (q as i128);
            let threshold = ((4.0 / epsilon) * sum as f64).ceil();
            if !threshold.is_finite() || threshold > u64::MAX as f64 / 2.0 {
                return Err(Error::Resource(format!(
                    "exact-regime threshold overflows for unit {index}"
                )));
            }
            let n0 = (threshold.max(0.0) as u64).max(3 * q * rare_budget);
            (Some(g), Some(f), Some(lcm), n0)
        };

        units.push(CompiledUnit {
            index,
            k: property.k,
            epsilon,
            vector,
            rare,
            frequent,
            divisor,
            frobenius,
            lcm_moduli,
            rare_budget,
            fixed_budget,
            n0,
            q,
        });
    }
    Ok(units)
}
