use crate::error::{Error, Result};
use crate::graph::{ExplicitGraph, RootedBall};
use std::sync::atomic::{AtomicU64, Ordering};

/// Neighbor-query access to a graph on vertices `1..=n` of degree at most
/// `d`. A query `(v, j)` returns the j-th neighbor of `v` in ascending
/// vertex-id order, or `None` when `v` has fewer than `j` neighbors.
/// Implementations may be procedural, so `n` can be far larger than
/// anything materialized. Queries are counted; the counter uses atomic
/// increments so read-only concurrent use is safe.
pub trait NeighborOracle: Sync {
    fn vertex_count(&self) -> u64;
    fn degree_bound(&self) -> u32;

    /// Answer a neighbor query without counting it.
    fn neighbor_uncounted(&self, v: u64, port: u32) -> Option<u64>;

    fn query_counter(&self) -> &AtomicU64;

    /// The counted query entry point. Out-of-range arguments are an error,
    /// distinct from the in-protocol `None` answer.
    fn neighbor(&self, v: u64, port: u32) -> Result<Option<u64>> {
        if v == 0 || v > self.vertex_count() {
            return Err(Error::Argument(format!(
                "vertex {v} out of range 1..={}",
                self.vertex_count()
            )));
        }
        if port == 0 || port > self.degree_bound() {
            return Err(Error::Argument(format!(
                "port {port} out of range 1..={}",
                self.degree_bound()
            )));
        }
        self.query_counter().fetch_add(1, Ordering::Relaxed);
        Ok(self.neighbor_uncounted(v, port))
    }

    fn queries(&self) -> u64 {
        self.query_counter().load(Ordering::Relaxed)
    }
}

/// Oracle view of a materialized graph.
pub struct ExplicitOracle<'a> {
    graph: &'a ExplicitGraph,
    d: u32,
    counter: AtomicU64,
}

impl<'a> ExplicitOracle<'a> {
    pub fn new(graph: &'a ExplicitGraph, d: u32) -> Self {
        ExplicitOracle { graph, d, counter: AtomicU64::new(0) }
    }
}

impl NeighborOracle for ExplicitOracle<'_> {
    fn vertex_count(&self) -> u64 {
        self.graph.vertex_count() as u64
    }

    fn degree_bound(&self) -> u32 {
        self.d
    }

    fn neighbor_uncounted(&self, v: u64, port: u32) -> Option<u64> {
        self.graph.neighbors(v as usize).get(port as usize - 1).map(|&w| w as u64)
    }

    fn query_counter(&self) -> &AtomicU64 {
        &self.counter
    }
}

/// All counted neighbors of `v`, stopping at the first `None` (ports
/// enumerate neighbors in ascending order, so the remainder is `None` too).
fn neighbor_list(g: &dyn NeighborOracle, v: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for port in 1..=g.degree_bound() {
        match g.neighbor(v, port)? {
            Some(w) => out.push(w),
            None => break,
        }
    }
    Ok(out)
}

/// Breadth-first exploration of the radius-`r` ball around `v`, returning
/// the induced rooted subgraph relabeled with the root at 1 and discovery
/// order after it. Issues at most `d * |ball|` queries.
pub fn explore_ball(g: &dyn NeighborOracle, v: u64, r: u32) -> Result<RootedBall> {
    if v == 0 || v > g.vertex_count() {
        return Err(Error::Argument(format!("vertex {v} out of range")));
    }
    let mut order: Vec<u64> = vec![v];
    let mut index = std::collections::HashMap::from([(v, 0usize)]);
    let mut dist = vec![0u32];
    let mut neighbor_lists: Vec<Vec<u64>> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        let du = dist[head];
        let adj = neighbor_list(g, u)?;
        if du < r {
            for &w in &adj {
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(w) {
                    e.insert(order.len());
                    order.push(w);
                    dist.push(du + 1);
                }
            }
        }
        neighbor_lists.push(adj);
        head += 1;
    }
    let mut edges = Vec::new();
    for (i, adj) in neighbor_lists.iter().enumerate() {
        let ui = (i + 1) as u32;
        for w in adj {
            if let Some(&j) = index.get(w) {
                let wi = (j + 1) as u32;
                if ui < wi {
                    edges.push((ui, wi));
                }
            }
        }
    }
    let graph = ExplicitGraph::from_edges(order.len(), &edges)?;
    Ok(RootedBall { graph, root: 1, radius: r })
}

/// Result of bounded component exploration.
pub enum ComponentResult {
    /// The full component, relabeled in discovery order.
    Component(ExplicitGraph),
    /// Exploration found more than `cap` vertices and stopped.
    Overflow,
}

/// Explore the connected component of `v`, giving up as soon as more than
/// `cap` vertices are discovered. For graphs of component size <= cap this
/// equals full exploration; on anything else the query cost stays bounded
/// by a function of cap and d.
pub fn component_of(g: &dyn NeighborOracle, v: u64, cap: u32) -> Result<ComponentResult> {
    if cap == 0 {
        return Err(Error::Argument("component cap must be >= 1".into()));
    }
    if v == 0 || v > g.vertex_count() {
        return Err(Error::Argument(format!("vertex {v} out of range")));
    }
    let cap = cap as usize;
    let mut order: Vec<u64> = vec![v];
    let mut neighbor_lists: Vec<Vec<u64>> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        let adj = neighbor_list(g, u)?;
        for &w in &adj {
            if !order.contains(&w) {
                order.push(w);
                if order.len() > cap {
                    return Ok(ComponentResult::Overflow);
                }
            }
        }
        neighbor_lists.push(adj);
        head += 1;
    }
    let mut edges = Vec::new();
    for (i, adj) in neighbor_lists.iter().enumerate() {
        let ui = (i + 1) as u32;
        for w in adj {
            let j = order.iter().position(|x| x == w).unwrap();
            let wi = (j + 1) as u32;
            if ui < wi {
                edges.push((ui, wi));
            }
        }
    }
    Ok(ComponentResult::Component(ExplicitGraph::from_edges(order.len(), &edges)?))
}

/// Materialize the whole graph behind an oracle with at most `n * d`
/// queries. Desk-scale / exact-regime use only.
pub fn read_full(g: &dyn NeighborOracle) -> Result<ExplicitGraph> {
    let n = g.vertex_count();
    if n > 50_000_000 {
        return Err(Error::Resource(format!("refusing to materialize n = {n}")));
    }
    let mut edges = Vec::new();
    for v in 1..=n {
        for w in neighbor_list(g, v)? {
            if v < w {
                edges.push((v as u32, w as u32));
            }
        }
    }
    ExplicitGraph::from_edges(n as usize, &edges)
}
