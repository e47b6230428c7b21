//! The immutable simple-graph value and its elementary operations.

mod canon;
mod distance;
pub mod io;
mod ops;
pub(crate) mod paths;
pub mod planarity;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::GraphError;

pub use canon::{canonical_code, CANON_LIMIT};
pub use distance::{bfs_distances, diameter, distance_table, Distance, DistanceTable};
pub use ops::{complement, disjoint_union, join, subdivide};
pub use paths::{
    longest_induced_path, longest_path, PathKind, PathSearch, PathWitness, LONGEST_PATH_EXACT_LIMIT,
};

/// Simple undirected graph on dense ids `0..n`.
///
/// Built once through [`GraphBuilder`] (or [`Graph::from_edges`]) and never mutated afterwards.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<VertexSet>,
    m: usize,
    labels: BTreeMap<usize, String>,
}

impl PartialEq for Graph {
    /// Equality of labelled adjacency; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}
impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// Id of the vertex carrying `label`, if any.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&v, _)| v)
    }

    /// Same adjacency, replaced labels (ids out of range are dropped).
    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Graph {
        let n = self.n();
        self.labels = labels.into_iter().filter(|(v, _)| *v < n).collect();
        self
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels.clear();
        self
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Subgraph induced by `vertices`; new id `i` is `vertices[i]`. Labels follow their vertices.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    b.push_unchecked(i, j);
                }
            }
            if let Some(l) = self.labels.get(&v) {
                b.set_label(i, l.clone());
            }
        }
        b.build()
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(self.n());
        for (u, v) in self.edges() {
            b.push_unchecked(perm[u], perm[v]);
        }
        for (&v, l) in &self.labels {
            b.set_label(perm[v], l.clone());
        }
        b.build()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// A proper 2-colouring (`false` for the side of the smallest vertex of each component).
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|a| a.len() + 1 == n)
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    /// Cyclomatic number `m - n + c`.
    pub fn cycle_rank(&self) -> usize {
        self.m + self.components().len() - self.n()
    }

    pub fn has_triangle(&self) -> bool {
        for (u, v) in self.edges() {
            if self.rows[u].intersects(&self.rows[v]) {
                return true;
            }
        }
        false
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Structural sanity: symmetric, loop-free, handshake identity.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        let mut deg_sum = 0;
        for u in 0..n {
            deg_sum += self.adj[u].len();
            if self.rows[u].len() != self.adj[u].len() || self.rows[u].contains(u) {
                return false;
            }
            for &v in &self.adj[u] {
                if v >= n || !self.rows[v].contains(u) {
                    return false;
                }
            }
        }
        deg_sum == 2 * self.m
    }
}

/// Accumulates edges; duplicates are merged, loops rejected.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            ..Default::default()
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> usize {
        let v = self.add_vertex();
        self.labels.insert(v, label.into());
        v
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { v: x, n: self.n });
            }
        }
        self.push_unchecked(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn push_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.edges.insert((u.min(v), u.max(v)));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn build(self) -> Graph {
        let n = self.n;
        let mut adj = vec![Vec::new(); n];
        let mut rows = vec![VertexSet::new(n); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
            rows[u].insert(v);
            rows[v].insert(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph {
            adj,
            rows,
            m: self.edges.len(),
            labels: self.labels,
        }
    }
}

/// Serializable plain form: vertex count and edge list.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeListForm {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for EdgeListForm {
    fn from(g: &Graph) -> Self {
        EdgeListForm {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<EdgeListForm> for Graph {
    type Error = GraphError;
    fn try_from(f: EdgeListForm) -> Result<Self, GraphError> {
        Graph::from_edges(f.n, &f.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn builder_rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        ));
        let g = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.check_invariants());
    }

    #[test]
    fn girth_and_bipartite() {
        assert_eq!(cycle(7).girth(), Some(7));
        assert!(!cycle(7).is_bipartite());
        assert!(cycle(8).is_bipartite());
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().girth(),
            None
        );
        assert_eq!(cycle(5).cycle_rank(), 1);
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let mut b = GraphBuilder::new(3);
        b.add_edge(0, 1).unwrap();
        b.add_edge(1, 2).unwrap();
        b.set_label(2, "tail");
        let g = b.build();
        let h = g.induced_subgraph(&[2, 1]);
        assert_eq!(h.label(0), Some("tail"));
        assert!(h.has_edge(0, 1));
    }
}
