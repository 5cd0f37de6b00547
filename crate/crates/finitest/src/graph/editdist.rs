use crate::error::{Error, Result};
use crate::graph::ExplicitGraph;

/// Hard vertex cap for the exponential edit-distance search. This is a test
/// oracle for certifying fixtures, never on the tester's execution path.
pub const EDIT_VERTEX_CAP: usize = 10;

/// Cap on the modification-set size the search will enumerate.
const EDIT_MOD_CAP: usize = 8;

fn degree_profile(g: &ExplicitGraph) -> Vec<usize> {
    let mut d: Vec<usize> = (1..=g.vertex_count()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

fn component_profile(g: &ExplicitGraph) -> Vec<(usize, usize)> {
    let mut p: Vec<(usize, usize)> = g
        .components()
        .iter()
        .map(|c| {
            let sub = g.induced(c);
            (c.len(), sub.edge_count())
        })
        .collect();
    p.sort_unstable();
    p
}

fn extend_mapping(
    g1: &ExplicitGraph,
    g2: &ExplicitGraph,
    order: &[usize],
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let k = mapping.len();
    if k == order.len() {
        return true;
    }
    let v = order[k];
    for w in 1..=g2.vertex_count() {
        if used[w - 1] || g1.degree(v) != g2.degree(w) {
            continue;
        }
        let consistent = order[..k].iter().enumerate().all(|(i, &u)| {
            g1.has_edge(v, u) == g2.has_edge(w, mapping[i])
        });
        if consistent {
            mapping.push(w);
            used[w - 1] = true;
            if extend_mapping(g1, g2, order, mapping, used) {
                return true;
            }
            mapping.pop();
            used[w - 1] = false;
        }
    }
    false
}

/// Backtracking isomorphism test with degree pruning.
pub(crate) fn isomorphic(g1: &ExplicitGraph, g2: &ExplicitGraph) -> bool {
    if g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || degree_profile(g1) != degree_profile(g2)
        || component_profile(g1) != component_profile(g2)
    {
        return false;
    }
    let n = g1.vertex_count();
    if n == 0 {
        return true;
    }
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g1.degree(v)));
    let mut mapping = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_mapping(g1, g2, &order, &mut mapping, &mut used)
}

fn toggle(g: &ExplicitGraph, pairs: &[(u32, u32)]) -> ExplicitGraph {
    let mut edges: std::collections::BTreeSet<(u32, u32)> = g.edges().into_iter().collect();
    for &p in pairs {
        if !edges.remove(&p) {
            edges.insert(p);
        }
    }
    let edges: Vec<(u32, u32)> = edges.into_iter().collect();
    ExplicitGraph::from_edges(g.vertex_count(), &edges).unwrap()
}

fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Minimum number of edge toggles turning `g1` into a graph isomorphic to
/// `g2`. Exponential search over modification sets, so both the vertex
/// count and the answer are capped.
pub fn edit_distance(g1: &ExplicitGraph, g2: &ExplicitGraph) -> Result<usize> {
    if g1.vertex_count() != g2.vertex_count() {
        return Err(Error::SizeMismatch(format!(
            "edit distance needs equal vertex counts, got {} and {}",
            g1.vertex_count(),
            g2.vertex_count()
        )));
    }
    let n = g1.vertex_count();
    if n > EDIT_VERTEX_CAP {
        return Err(Error::Resource(format!(
            "edit distance capped at {EDIT_VERTEX_CAP} vertices, got {n}"
        )));
    }
    if isomorphic(g1, g2) {
        return Ok(0);
    }
    // Deleting every edge of both graphs always works, so the distance is
    // at most |E1| + |E2|.
    let upper = g1.edge_count() + g2.edge_count();
    let mut slots = Vec::new();
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            slots.push((u, v));
        }
    }
    for k in 1..=upper.min(EDIT_MOD_CAP) {
        for mods in combinations(&slots, k) {
            if isomorphic(&toggle(g1, &mods), g2) {
                return Ok(k);
            }
        }
    }
    if upper <= EDIT_MOD_CAP {
        // Unreachable: the all-edges-deleted modification set has size
        // <= upper and always succeeds.
        return Err(Error::Internal("edit distance search exhausted".into()));
    }
    Err(Error::Resource(format!(
        "edit distance exceeds search cap {EDIT_MOD_CAP}"
    )))
}
