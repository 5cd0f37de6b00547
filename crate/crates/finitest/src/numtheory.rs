//! Integer arithmetic used by the compiler and tester: gcd/lcm, Chinese
//! remainder solving over non-coprime moduli, Frobenius numbers of weight
//! sets, and conical (nonnegative integer) decompositions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A congruence `x ≡ residue (mod modulus)` with `residue < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub residue: u64,
    pub modulus: u64,
}

impl Congruence {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Argument("congruence modulus must be positive".into()));
        }
        Ok(Congruence { residue: residue % modulus, modulus })
    }

    pub fn holds(&self, x: u64) -> bool {
        x % self.modulus == self.residue
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub fn gcd_many(weights: &[u64]) -> Result<u64> {
    if weights.is_empty() {
        return Err(Error::Argument("gcd of an empty weight set".into()));
    }
    Ok(weights.iter().copied().fold(0, gcd))
}

pub fn lcm_many(weights: &[u64]) -> Result<u64> {
    if weights.is_empty() {
        return Err(Error::Argument("lcm of an empty weight set".into()));
    }
    let mut acc: u64 = 1;
    for &w in weights {
        if w == 0 {
            return Err(Error::Argument("lcm of a zero weight".into()));
        }
        let g = gcd(acc, w);
        acc = (acc / g).checked_mul(w).ok_or_else(|| {
            Error::Resource(format!("lcm overflow combining {acc} and {w}"))
        })?;
    }
    Ok(acc)
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g.
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Merge two congruences. Moduli need not be coprime; `None` means the
/// residues conflict on a shared factor.
fn crt_pair(a: Congruence, b: Congruence) -> Result<Option<Congruence>> {
    let (m1, m2) = (a.modulus as i128, b.modulus as i128);
    let (r1, r2) = (a.residue as i128, b.residue as i128);
    let (g, p, _) = egcd(m1, m2);
    if (r2 - r1) % g != 0 {
        return Ok(None);
    }
    let lcm = m1 / g * m2;
    if lcm > u64::MAX as i128 {
        return Err(Error::Resource("crt modulus overflow".into()));
    }
    let diff = (r2 - r1) / g;
    let mut x = r1 + m1 * ((diff * p).rem_euclid(m2 / g));
    x = x.rem_euclid(lcm);
    Ok(Some(Congruence { residue: x as u64, modulus: lcm as u64 }))
}

/// Solve a system of congruences. Returns the combined congruence whose
/// modulus is the lcm of the inputs, or `None` when the system is
/// inconsistent.
pub fn crt_solve(system: &[Congruence]) -> Result<Option<Congruence>> {
    let mut iter = system.iter();
    let Some(first) = iter.next() else {
        return Err(Error::Argument("crt of an empty system".into()));
    };
    let mut acc = *first;
    for c in iter {
        match crt_pair(acc, *c)? {
            Some(next) => acc = next,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// Guard on the size of the Frobenius / decomposition DP tables.
const DP_GUARD: u64 = 100_000_000;
/// Guard on individual weights after division by the gcd.
const WEIGHT_GUARD: u64 = 1_000_000;

/// Largest multiple of `g = gcd(weights)` that is not a conical combination
/// of the weights. Returns `-g` as a sentinel when every nonnegative
/// multiple of `g` is expressible (the reduced weights contain 1).
pub fn frobenius_multiple(weights: &[u64]) -> Result<i64> {
    if weights.is_empty() {
        return Err(Error::Argument("frobenius of an empty weight set".into()));
    }
    if weights.contains(&0) {
        return Err(Error::Argument("frobenius weights must be positive".into()));
    }
    let g = gcd_many(weights)?;
    let reduced: Vec<u64> = weights.iter().map(|&w| w / g).collect();
    let max = *reduced.iter().max().unwrap();
    if max > WEIGHT_GUARD {
        return Err(Error::Resource(format!(
            "frobenius weight {max} exceeds guard {WEIGHT_GUARD}"
        )));
    }
    if reduced.contains(&1) {
        return Ok(-(g as i64));
    }
    // Setwise-coprime weights all >= 2: the Frobenius number is below
    // (min-1)*(max-1), the classical two-weight bound.
    let min = *reduced.iter().min().unwrap();
    let bound = (min - 1) * (max - 1);
    if bound > DP_GUARD {
        return Err(Error::Resource(format!(
            "frobenius dp bound {bound} exceeds guard {DP_GUARD}"
        )));
    }
    let mut reachable = vec![false; bound as usize + 1];
    reachable[0] = true;
    for &w in &reduced {
        for v in w..=bound {
            if reachable[(v - w) as usize] {
                reachable[v as usize] = true;
            }
        }
    }
    let largest_gap = (0..=bound).rev().find(|&v| !reachable[v as usize]);
    match largest_gap {
        Some(v) => Ok((v * g) as i64),
        // No gap below the bound and none above it either.
        None => Ok(-(g as i64)),
    }
}

/// Nonnegative coefficients b with sum(b[i] * weights[i]) == target, found by
/// dynamic programming, or `None` when target is not expressible.
pub fn conical_decompose(target: u64, weights: &[u64]) -> Result<Option<Vec<u64>>> {
    if weights.is_empty() {
        return if target == 0 { Ok(Some(Vec::new())) } else { Ok(None) };
    }
    if weights.contains(&0) {
        return Err(Error::Argument("decomposition weights must be positive".into()));
    }
    if target > DP_GUARD {
        return Err(Error::Resource(format!(
            "decomposition target {target} exceeds guard {DP_GUARD}"
        )));
    }
    // used[v] = index of a weight that reaches v, or usize::MAX.
    let mut used = vec![usize::MAX; target as usize + 1];
    used[0] = weights.len(); // marker for "reached with nothing"
    for v in 1..=target {
        for (i, &w) in weights.iter().enumerate() {
            if w <= v && used[(v - w) as usize] != usize::MAX {
                used[v as usize] = i;
                break;
            }
        }
    }
    if used[target as usize] == usize::MAX {
        return Ok(None);
    }
    let mut coeffs = vec![0u64; weights.len()];
    let mut v = target;
    while v > 0 {
        let i = used[v as usize];
        coeffs[i] += 1;
        v -= weights[i];
    }
    Ok(Some(coeffs))
}
