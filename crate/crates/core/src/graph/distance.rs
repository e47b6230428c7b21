use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::GraphError;

/// A hop count, or the marker for "no path".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// `self <= d` for a finite bound.
    pub fn at_most(self, d: u32) -> bool {
        matches!(self, Distance::Finite(x) if x <= d)
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

const INF: u32 = u32::MAX;

/// All-pairs hop distances.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n: usize,
    d: Vec<u32>,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        match self.d[u * self.n + v] {
            INF => Distance::Infinite,
            x => Distance::Finite(x),
        }
    }

    pub fn row(&self, u: usize) -> impl Iterator<Item = Distance> + '_ {
        (0..self.n).map(move |v| self.get(u, v))
    }

    pub fn max(&self) -> Distance {
        match self.d.iter().copied().max() {
            None | Some(INF) => Distance::Infinite,
            Some(x) => Distance::Finite(x),
        }
    }
}

/// Hop distances from `s`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, s: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    let mut queue = vec![s];
    dist[s] = Some(0);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push(w);
            }
        }
    }
    dist
}

pub fn distance_table(g: &Graph) -> DistanceTable {
    let n = g.n();
    let mut d = vec![INF; n * n];
    for s in 0..n {
        for (v, x) in bfs_distances(g, s).into_iter().enumerate() {
            if let Some(x) = x {
                d[s * n + v] = x;
            }
        }
    }
    DistanceTable { n, d }
}

/// Largest pairwise distance. Errors on the empty graph; K_1 has diameter 0.
pub fn diameter(g: &Graph) -> Result<Distance, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut best = 0;
    for s in 0..g.n() {
        for x in bfs_distances(g, s) {
            match x {
                None => return Ok(Distance::Infinite),
                Some(x) => best = best.max(x),
            }
        }
    }
    Ok(Distance::Finite(best))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_disconnected() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(diameter(&p4), Ok(Distance::Finite(3)));
        assert_eq!(diameter(&Graph::empty(2)), Ok(Distance::Infinite));
        assert_eq!(diameter(&Graph::empty(1)), Ok(Distance::Finite(0)));
        assert_eq!(diameter(&Graph::empty(0)), Err(GraphError::EmptyGraph));
        let t = distance_table(&p4);
        assert_eq!(t.get(0, 3), Distance::Finite(3));
        assert_eq!(t.max(), Distance::Finite(3));
    }
}
