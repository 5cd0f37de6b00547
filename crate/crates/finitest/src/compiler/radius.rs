//! Radius unification: rewrite every atom to speak about balls at the
//! catalog radius c-1. An atom about a smaller-radius type is expanded
//! over the set S of catalog types whose restriction matches it, using
//! tuple sets that case over how the original count decomposes across S.
//!
//! Threshold atoms enumerate per-supertype entries from {0..m-1, ">=m"}
//! and keep tuples whose numeric sum reaches m or that contain a ">=m"
//! marker; modular atoms enumerate residue tuples summing to the target
//! residue. Types with an empty supertype set cannot occur in the class,
//! which collapses thresholds to falsity and modular atoms to a zero-count
//! residue check.

use crate::catalog::TypeCatalog;
use crate::compiler::CompileOptions;
use crate::error::{Error, Result};
use crate::logic::hanf::{AtomKind, BallLabel, HanfAtom, HnfSentence};

fn or_of(mut parts: Vec<HnfSentence>) -> HnfSentence {
    match parts.len() {
        0 => HnfSentence::False,
        1 => parts.pop().unwrap(),
        _ => HnfSentence::Or(parts),
    }
}

fn and_of(mut parts: Vec<HnfSentence>) -> HnfSentence {
    match parts.len() {
        0 => HnfSentence::True,
        1 => parts.pop().unwrap(),
        _ => HnfSentence::And(parts),
    }
}

fn catalog_atom(catalog: &TypeCatalog, type_index: usize, kind: AtomKind) -> Result<HnfSentence> {
    let bt = &catalog.ball_types()[type_index];
    Ok(HnfSentence::Atom(HanfAtom {
        kind,
        radius: catalog.radius(),
        ball: BallLabel::from_code(bt.code.clone())?,
    }))
}

/// "At least m vertices across the catalog types in `types`" as a Boolean
/// combination of per-type atoms at the catalog radius.
pub fn expand_geq_over_set(
    catalog: &TypeCatalog,
    types: &[usize],
    m: u64,
    opts: &CompileOptions,
) -> Result<HnfSentence> {
    if m == 0 {
        return Ok(HnfSentence::True);
    }
    let s = types.len();
    if s == 0 {
        return Ok(HnfSentence::False);
    }
    if s == 1 {
        // Numeric entries stay below m, so the only valid tuple is the
        // marker: the atom carries over unchanged.
        return catalog_atom(catalog, types[0], AtomKind::Geq(m));
    }
    // Entry space per coordinate: exact counts 0..m-1 plus the ">= m"
    // marker, encoded as value m.
    let options = m + 1;
    let total = (options as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    if total > opts.tuple_guard as u128 {
        return Err(Error::Resource(format!(
            "radius unification tuple guard {} exceeded ({total} tuples)",
            opts.tuple_guard
        )));
    }
    let mut disjuncts = Vec::new();
    let mut tuple = vec![0u64; s];
    loop {
        let has_marker = tuple.contains(&m);
        let sum: u64 = tuple.iter().filter(|&&b| b < m).sum();
        if has_marker || sum >= m {
            let mut conj = Vec::with_capacity(s);
            for (i, &b) in tuple.iter().enumerate() {
                let kind = if b == m { AtomKind::Geq(m) } else { AtomKind::Eq(b) };
                conj.push(catalog_atom(catalog, types[i], kind)?);
            }
            disjuncts.push(and_of(conj));
        }
        // Advance odometer.
        let mut i = 0;
        loop {
            if i == s {
                return Ok(or_of(disjuncts));
            }
            tuple[i] += 1;
            if tuple[i] < options {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// "Exactly m vertices across `types`" as the disjunction over all ways
/// of splitting m into per-type exact counts.
pub fn expand_eq_over_set(
    catalog: &TypeCatalog,
    types: &[usize],
    m: u64,
    opts: &CompileOptions,
) -> Result<HnfSentence> {
    let s = types.len();
    if s == 0 {
        return Ok(if m == 0 { HnfSentence::True } else { HnfSentence::False });
    }
    if s == 1 {
        return catalog_atom(catalog, types[0], AtomKind::Eq(m));
    }
    let mut disjuncts = Vec::new();
    let mut split = vec![0u64; s];
    fn compositions(
        catalog: &TypeCatalog,
        types: &[usize],
        split: &mut Vec<u64>,
        idx: usize,
        remaining: u64,
        out: &mut Vec<HnfSentence>,
        guard: usize,
    ) -> Result<()> {
        if idx + 1 == split.len() {
            split[idx] = remaining;
            let mut conj = Vec::with_capacity(split.len());
            for (i, &b) in split.iter().enumerate() {
                conj.push(catalog_atom(catalog, types[i], AtomKind::Eq(b))?);
            }
            out.push(and_of(conj));
            if out.len() > guard {
                return Err(Error::Resource(format!(
                    "radius unification tuple guard {guard} exceeded"
                )));
            }
            return Ok(());
        }
        for b in 0..=remaining {
            split[idx] = b;
            compositions(catalog, types, split, idx + 1, remaining - b, out, guard)?;
        }
        Ok(())
    }
    compositions(catalog, types, &mut split, 0, m, &mut disjuncts, opts.tuple_guard)?;
    Ok(or_of(disjuncts))
}

/// "Vertex count across `types` congruent to j mod l" via residue tuples.
pub fn expand_mod_over_set(
    catalog: &TypeCatalog,
    types: &[usize],
    j: u64,
    l: u64,
    opts: &CompileOptions,
) -> Result<HnfSentence> {
    debug_assert!(l >= 1 && j < l);
    if l == 1 {
        return Ok(HnfSentence::True);
    }
    let s = types.len();
    if s == 0 {
        return Ok(if j == 0 { HnfSentence::True } else { HnfSentence::False });
    }
    if s == 1 {
        return catalog_atom(catalog, types[0], AtomKind::Mod { j, l });
    }
    let total = (l as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    if total > opts.tuple_guard as u128 {
        return Err(Error::Resource(format!(
            "radius unification tuple guard {} exceeded ({total} tuples)",
            opts.tuple_guard
        )));
    }
    let mut disjuncts = Vec::new();
    let mut tuple = vec![0u64; s];
    loop {
        if tuple.iter().sum::<u64>() % l == j {
            let mut conj = Vec::with_capacity(s);
            for (i, &b) in tuple.iter().enumerate() {
                conj.push(catalog_atom(catalog, types[i], AtomKind::Mod { j: b, l })?);
            }
            disjuncts.push(and_of(conj));
        }
        let mut i = 0;
        loop {
            if i == s {
                return Ok(or_of(disjuncts));
            }
            tuple[i] += 1;
            if tuple[i] < l {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

fn unify_atom(
    atom: &HanfAtom,
    catalog: &TypeCatalog,
    opts: &CompileOptions,
) -> Result<HnfSentence> {
    let supertypes = catalog.supertypes_of(&atom.ball.code, atom.radius)?;
    match atom.kind {
        AtomKind::Geq(m) => expand_geq_over_set(catalog, &supertypes, m, opts),
        AtomKind::Mod { j, l } => expand_mod_over_set(catalog, &supertypes, j, l, opts),
        AtomKind::Eq(m) => expand_eq_over_set(catalog, &supertypes, m, opts),
    }
}

/// Rewrite all atoms to the catalog radius. The output references only
/// catalog types; unrealizable input types collapse to truth constants.
pub fn unify_radius(
    s: &HnfSentence,
    catalog: &TypeCatalog,
    opts: &CompileOptions,
) -> Result<HnfSentence> {
    Ok(match s {
        HnfSentence::True => HnfSentence::True,
        HnfSentence::False => HnfSentence::False,
        HnfSentence::Not(x) => HnfSentence::Not(Box::new(unify_radius(x, catalog, opts)?)),
        HnfSentence::And(xs) => HnfSentence::And(
            xs.iter().map(|x| unify_radius(x, catalog, opts)).collect::<Result<_>>()?,
        ),
        HnfSentence::Or(xs) => HnfSentence::Or(
            xs.iter().map(|x| unify_radius(x, catalog, opts)).collect::<Result<_>>()?,
        ),
        HnfSentence::Atom(a) => unify_atom(a, catalog, opts)?,
    })
}
