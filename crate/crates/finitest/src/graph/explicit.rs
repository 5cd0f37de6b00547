use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An undirected graph on vertices `1..=n` with ascending-sorted adjacency
/// lists. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExplicitGraph {
    n: usize,
    adjacency: Vec<Vec<u32>>,
}

/// Serialized JSON form: `{"n": .., "d": .., "edges": [[u, v], ..]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    d: u32,
    edges: Vec<(u32, u32)>,
}

impl ExplicitGraph {
    /// Build from an edge list over vertices `1..=n`. Rejects self-loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Argument(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u as usize > n || v as usize > n {
                return Err(Error::Argument(format!("edge ({u},{v}) out of range 1..={n}")));
            }
            adjacency[u as usize - 1].push(v);
            adjacency[v as usize - 1].push(u);
        }
        for (i, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Argument(format!("duplicate edge at vertex {}", i + 1)));
            }
        }
        Ok(ExplicitGraph { n, adjacency })
    }

    pub fn empty(n: usize) -> Self {
        ExplicitGraph { n, adjacency: vec![Vec::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adjacency.iter().enumerate() {
            let u = (i + 1) as u32;
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Ascending neighbor list of vertex `v` (1-based).
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u - 1].binary_search(&(v as u32)).is_ok()
    }

    /// Breadth-first distances from `v`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, v: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        dist[v - 1] = Some(0);
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u - 1].unwrap();
            for &w in self.neighbors(u) {
                if dist[w as usize - 1].is_none() {
                    dist[w as usize - 1] = Some(du + 1);
                    queue.push_back(w as usize);
                }
            }
        }
        dist
    }

    /// Vertex sets of the connected components, each ascending, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start - 1] {
                continue;
            }
            let mut comp = vec![start];
            seen[start - 1] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    let w = w as usize;
                    if !seen[w - 1] {
                        seen[w - 1] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `vertices` (deduplicated, ascending), relabeled
    /// to `1..=k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> ExplicitGraph {
        let mut index = std::collections::HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, (i + 1) as u32);
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                if let Some(&wi) = index.get(&(w as usize)) {
                    adjacency[i].push(wi);
                }
            }
            adjacency[i].sort_unstable();
        }
        ExplicitGraph { n: vertices.len(), adjacency }
    }

    /// Check degree bound `d` and component-size bound `c`.
    pub fn validate_membership(&self, c: u32, d: u32) -> Membership {
        let mut degree_violations = Vec::new();
        for v in 1..=self.n {
            if self.degree(v) > d as usize {
                degree_violations.push((v, self.degree(v)));
            }
        }
        let mut component_violations = Vec::new();
        for comp in self.components() {
            if comp.len() > c as usize {
                component_violations.push((comp[0], comp.len()));
            }
        }
        Membership { n: self.n, c, d, degree_violations, component_violations }
    }

    /// Textual format: first line `n d`, then one `u v` line per edge with
    /// `u < v`.
    pub fn to_text(&self, d: u32) -> String {
        let mut out = format!("{} {}\n", self.n, d);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<(Self, u32)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse { pos: 0, msg: "empty graph file".into() })?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse { pos: 0, msg: "bad vertex count".into() })?;
        let d: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse { pos: 0, msg: "bad degree bound".into() })?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad edge line: {line}") })?;
            let v: u32 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad edge line: {line}") })?;
            if u >= v {
                return Err(Error::Parse { pos: 0, msg: format!("edge must have u < v: {line}") });
            }
            edges.push((u, v));
        }
        Ok((Self::from_edges(n, &edges)?, d))
    }

    pub fn to_json(&self, d: u32) -> String {
        serde_json::to_string(&GraphJson { n: self.n, d, edges: self.edges() }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<(Self, u32)> {
        let parsed: GraphJson = serde_json::from_str(text)?;
        Ok((Self::from_edges(parsed.n, &parsed.edges)?, parsed.d))
    }

    /// Sniff text vs JSON by the first non-space byte.
    pub fn from_str_any(text: &str) -> Result<(Self, u32)> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }

    /// Disjoint union, relabeling `other` after `self`.
    pub fn disjoint_union(&self, other: &ExplicitGraph) -> ExplicitGraph {
        let offset = self.n as u32;
        let mut adjacency = self.adjacency.clone();
        for list in &other.adjacency {
            adjacency.push(list.iter().map(|&v| v + offset).collect());
        }
        ExplicitGraph { n: self.n + other.n, adjacency }
    }
}

/// Outcome of a membership check against `C^c_d`.
#[derive(Debug, Clone, Serialize)]
pub struct Membership {
    pub n: usize,
    pub c: u32,
    pub d: u32,
    /// (vertex, degree) pairs exceeding the bound.
    pub degree_violations: Vec<(usize, usize)>,
    /// (smallest vertex of component, size) pairs exceeding the bound.
    pub component_violations: Vec<(usize, usize)>,
}

impl Membership {
    pub fn pass(&self) -> bool {
        self.degree_violations.is_empty() && self.component_violations.is_empty()
    }
}

/// A graph rooted at a vertex, covering everything within distance
/// `radius` of the root. The underlying graph is relabeled `1..=k` with the
/// root at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedBall {
    pub graph: ExplicitGraph,
    pub root: usize,
    pub radius: u32,
}

impl RootedBall {
    /// Ball of radius `r` around `v` inside an explicit graph.
    pub fn around(g: &ExplicitGraph, v: usize, r: u32) -> RootedBall {
        let dist = g.bfs_distances(v);
        let mut vertices: Vec<usize> = (1..=g.vertex_count())
            .filter(|&u| matches!(dist[u - 1], Some(du) if du <= r))
            .collect();
        vertices.sort_unstable();
        let pos = vertices.iter().position(|&u| u == v).unwrap();
        vertices.swap(0, pos);
        RootedBall { graph: g.induced(&vertices), root: 1, radius: r }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_and_ordering() {
        let g = ExplicitGraph::from_edges(3, &[(2, 3), (1, 2)]).unwrap();
        assert_eq!(g.neighbors(2), &[1, 3]);
        assert_eq!(g.neighbors(1), &[2]);
        assert_eq!(g.neighbors(3), &[2]);
        assert!(g.has_edge(3, 2));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(ExplicitGraph::from_edges(2, &[(1, 1)]).is_err());
        assert!(ExplicitGraph::from_edges(2, &[(1, 3)]).is_err());
        assert!(ExplicitGraph::from_edges(2, &[(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn membership_checks() {
        let edge = ExplicitGraph::from_edges(2, &[(1, 2)]).unwrap();
        assert!(edge.validate_membership(2, 1).pass());

        let path3 = ExplicitGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let m = path3.validate_membership(2, 1);
        assert!(!m.pass());
        assert_eq!(m.degree_violations, vec![(2, 2)]);
        assert_eq!(m.component_violations, vec![(1, 3)]);

        // Disjoint edges plus an isolated vertex stay inside C^2_1.
        let g7 = ExplicitGraph::from_edges(7, &[(1, 2), (3, 4), (5, 6)]).unwrap();
        assert!(g7.validate_membership(2, 1).pass());
    }

    #[test]
    fn text_roundtrip() {
        let g = ExplicitGraph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        let text = g.to_text(1);
        let (back, d) = ExplicitGraph::from_text(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(d, 1);
        let (from_json, dj) = ExplicitGraph::from_str_any(&g.to_json(1)).unwrap();
        assert_eq!(from_json, g);
        assert_eq!(dj, 1);
    }

    #[test]
    fn ball_extraction() {
        let path4 = ExplicitGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let ball = RootedBall::around(&path4, 1, 2);
        assert_eq!(ball.graph.vertex_count(), 3);
        assert_eq!(ball.graph.edge_count(), 2);
        assert_eq!(ball.root, 1);
    }
}
