use crate::error::{Error, Result};
use crate::graph::ExplicitGraph;

/// Default cap on the vertex count accepted by canonicalization.
pub const CANON_VERTEX_CAP: usize = 8;
/// Absolute ceiling: the packed bitstring must fit in a u64.
const CANON_HARD_CAP: usize = 11;

/// A byte string identifying a graph (or rooted graph) up to isomorphism.
///
/// Layout: `[kind, n, packed bits...]` where kind is 0 for unrooted and 1
/// for rooted codes, and the bits are the minimum upper-triangle adjacency
/// bitstring (column-major, MSB first) over all vertex orderings. Rooted
/// codes only range over orderings that place the root first. Equal codes
/// mean isomorphic graphs (root-preserving for rooted codes), and the graph
/// can be decoded back from its code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn is_rooted(&self) -> bool {
        self.0[0] == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.0[1] as usize
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if !s.len().is_multiple_of(2) || s.len() < 4 {
            return Err(Error::Parse { pos: 0, msg: format!("bad code hex: {s}") });
        }
        let bytes: Result<Vec<u8>> = (0..s.len() / 2)
            .map(|i| {
                u8::from_str_radix(&s[2 * i..2 * i + 2], 16)
                    .map_err(|_| Error::Parse { pos: 2 * i, msg: format!("bad code hex: {s}") })
            })
            .collect();
        let bytes = bytes?;
        if bytes[0] > 1 {
            return Err(Error::Parse { pos: 0, msg: "bad code kind byte".into() });
        }
        let n = bytes[1] as usize;
        let expected = 2 + (n * n.saturating_sub(1) / 2).div_ceil(8);
        if bytes.len() != expected {
            return Err(Error::Parse { pos: 0, msg: format!("code length mismatch: {s}") });
        }
        Ok(CanonicalCode(bytes))
    }

    /// Decode into the representative graph. Rooted codes return root 1.
    pub fn decode(&self) -> Result<(ExplicitGraph, Option<usize>)> {
        let n = self.vertex_count();
        let nbits = n * n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut bit = 0usize;
        for k in 1..n {
            for i in 0..k {
                let byte = self.0[2 + bit / 8];
                let set = byte & (0x80 >> (bit % 8)) != 0;
                if set {
                    edges.push((i as u32 + 1, k as u32 + 1));
                }
                bit += 1;
            }
        }
        debug_assert_eq!(bit, nbits);
        let g = ExplicitGraph::from_edges(n, &edges)?;
        Ok((g, if self.is_rooted() { Some(1) } else { None }))
    }
}

/// Branch-and-bound search for the minimum adjacency bitstring. Positions
/// are filled one vertex at a time; placing position k appends the bits
/// (0,k),..,(k-1,k), so prefixes compare lexicographically as integers.
struct Minimizer<'a> {
    g: &'a ExplicitGraph,
    n: usize,
    placed: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl<'a> Minimizer<'a> {
    fn block_bits(&self, v: usize) -> u64 {
        let mut block = 0u64;
        for &u in &self.placed {
            block = (block << 1) | u64::from(self.g.has_edge(u, v));
        }
        block
    }

    fn descend(&mut self, prefix: u64, candidates_root_only: Option<usize>) {
        let k = self.placed.len();
        if k == self.n {
            match self.best {
                Some(b) if prefix >= b => {}
                _ => self.best = Some(prefix),
            }
            return;
        }
        let remaining_bits: u32 = (k + 1..self.n).map(|j| j as u32).sum();
        for v in 1..=self.n {
            if self.used[v - 1] {
                continue;
            }
            if let Some(root) = candidates_root_only {
                if v != root {
                    continue;
                }
            }
            let block = self.block_bits(v);
            let new_prefix = (prefix << k) | block;
            // Compare against best: pad both to full length.
            if let Some(b) = self.best {
                let here_padded = new_prefix << remaining_bits;
                if here_padded > b {
                    continue;
                }
                // Equal-prefix branches can still win only by being
                // strictly smaller later; keep exploring on <=.
            }
            self.placed.push(v);
            self.used[v - 1] = true;
            self.descend(new_prefix, None);
            self.placed.pop();
            self.used[v - 1] = false;
        }
    }
}

/// Canonical code of `g`, optionally rooted at a vertex. Inputs above the
/// cap are a resource error.
pub fn canonical_code(g: &ExplicitGraph, root: Option<usize>) -> Result<CanonicalCode> {
    canonical_code_capped(g, root, CANON_VERTEX_CAP)
}

pub fn canonical_code_capped(
    g: &ExplicitGraph,
    root: Option<usize>,
    cap: usize,
) -> Result<CanonicalCode> {
    let n = g.vertex_count();
    if n > cap.min(CANON_HARD_CAP) {
        return Err(Error::Resource(format!(
            "canonical code capped at {} vertices, got {n}",
            cap.min(CANON_HARD_CAP)
        )));
    }
    if let Some(r) = root {
        if r == 0 || r > n {
            return Err(Error::Argument(format!("root {r} out of range")));
        }
    }
    let mut m = Minimizer { g, n, placed: Vec::with_capacity(n), used: vec![false; n], best: None };
    m.descend(0, root);
    let bits = m.best.unwrap_or(0);
    let nbits = n * n.saturating_sub(1) / 2;
    let mut bytes = vec![u8::from(root.is_some()), n as u8];
    let nbytes = nbits.div_ceil(8);
    // MSB-first packing: bit 0 of the string is the top bit of byte 0.
    for byte_idx in 0..nbytes {
        let mut b = 0u8;
        for j in 0..8 {
            let bit_idx = byte_idx * 8 + j;
            if bit_idx < nbits {
                let shift = nbits - 1 - bit_idx;
                if (bits >> shift) & 1 == 1 {
                    b |= 0x80 >> j;
                }
            }
        }
        bytes.push(b);
    }
    Ok(CanonicalCode(bytes))
}
