use serde::{Deserialize, Serialize};

use super::Graph;
use crate::bitset::VertexSet;

/// Graphs up to this size get an exact longest (plain) path.
pub const LONGEST_PATH_EXACT_LIMIT: usize = 18;

/// Node budget for the searches run above their exact limits.
const HEURISTIC_NODES: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Plain,
    Induced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
    pub kind: PathKind,
}

impl PathWitness {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn verify(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        let mut seen = VertexSet::new(g.n());
        for &v in vs {
            if v >= g.n() || !seen.insert(v) {
                return false;
            }
        }
        for w in vs.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return false;
            }
        }
        if self.kind == PathKind::Induced {
            for i in 0..vs.len() {
                for j in i + 2..vs.len() {
                    if g.has_edge(vs[i], vs[j]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Result of a path search; `exact == false` means the path is only a lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSearch {
    pub path: PathWitness,
    pub exact: bool,
}

/// A longest path. Exact by subset DP up to [`LONGEST_PATH_EXACT_LIMIT`] vertices,
/// otherwise a budgeted DFS (exact only if it finished).
pub fn longest_path(g: &Graph) -> PathSearch {
    if g.n() == 0 {
        return PathSearch {
            path: PathWitness {
                vertices: vec![],
                kind: PathKind::Plain,
            },
            exact: true,
        };
    }
    if g.n() <= LONGEST_PATH_EXACT_LIMIT {
        longest_path_dp(g)
    } else {
        longest_path_dfs(g, HEURISTIC_NODES)
    }
}

fn longest_path_dp(g: &Graph) -> PathSearch {
    let n = g.n();
    let nb: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    // ends[mask]: vertices at which some path covering exactly `mask` can end.
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best_mask = 1u32;
    for mask in 1u32..(1 << n) {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        if mask.count_ones() > best_mask.count_ones() {
            best_mask = mask;
        }
        for v in crate::bitset::bits(e as u64) {
            let mut ext = nb[v] & !mask;
            while ext != 0 {
                let u = ext.trailing_zeros();
                ext &= ext - 1;
                ends[(mask | (1 << u)) as usize] |= 1 << u;
            }
        }
    }
    let mut mask = best_mask;
    let mut v = ends[mask as usize].trailing_zeros() as usize;
    let mut verts = vec![v];
    while mask.count_ones() > 1 {
        let rest = mask & !(1 << v);
        let cand = ends[rest as usize] & nb[v];
        let u = cand.trailing_zeros() as usize;
        verts.push(u);
        mask = rest;
        v = u;
    }
    PathSearch {
        path: PathWitness {
            vertices: verts,
            kind: PathKind::Plain,
        },
        exact: true,
    }
}

fn longest_path_dfs(g: &Graph, budget: u64) -> PathSearch {
    struct St<'a> {
        g: &'a Graph,
        on: VertexSet,
        path: Vec<usize>,
        best: Vec<usize>,
        nodes: u64,
        budget: u64,
        aborted: bool,
    }
    fn go(s: &mut St<'_>) {
        if s.path.len() > s.best.len() {
            s.best = s.path.clone();
        }
        if s.best.len() == s.g.n() {
            return;
        }
        s.nodes += 1;
        if s.nodes > s.budget {
            s.aborted = true;
            return;
        }
        let last = *s.path.last().unwrap();
        let mut next: Vec<usize> =
            s.g.neighbors(last)
                .iter()
                .copied()
                .filter(|&w| !s.on.contains(w))
                .collect();
        // fewest onward options first
        next.sort_by_key(|&w| {
            s.g.neighbors(w)
                .iter()
                .filter(|&&x| !s.on.contains(x))
                .count()
        });
        for w in next {
            s.on.insert(w);
            s.path.push(w);
            go(s);
            s.path.pop();
            s.on.remove(w);
            if s.aborted || s.best.len() == s.g.n() {
                return;
            }
        }
    }
    let mut starts: Vec<usize> = (0..g.n()).collect();
    starts.sort_by_key(|&v| g.degree(v));
    let mut st = St {
        g,
        on: VertexSet::new(g.n()),
        path: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    for s in starts {
        st.on.insert(s);
        st.path.push(s);
        go(&mut st);
        st.path.pop();
        st.on.remove(s);
        if st.aborted || st.best.len() == g.n() {
            break;
        }
    }
    let exact = !st.aborted || st.best.len() == g.n();
    PathSearch {
        path: PathWitness {
            vertices: st.best,
            kind: PathKind::Plain,
        },
        exact,
    }
}

/// A maximum induced path when `|V| <= exact_limit`; above that a budgeted search whose
/// answer is flagged as a lower bound unless the search happened to finish.
pub fn longest_induced_path(g: &Graph, exact_limit: usize) -> PathSearch {
    let budget = if g.n() <= exact_limit {
        u64::MAX
    } else {
        HEURISTIC_NODES
    };
    longest_induced_path_budgeted(g, budget)
}

pub(crate) fn longest_induced_path_budgeted(g: &Graph, budget: u64) -> PathSearch {
    induced_path_with_target(g, usize::MAX, budget)
}

/// Stops as soon as an induced path on `target` vertices is found. `exact` then means the
/// returned path is either that long or a proven maximum.
pub(crate) fn induced_path_with_target(g: &Graph, target: usize, budget: u64) -> PathSearch {
    let n = g.n();
    let mut st = Induced {
        g,
        path: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
        target,
        aborted: false,
    };
    let closed: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut s = g.neighbor_set(v).clone();
            s.insert(v);
            s
        })
        .collect();
    for s in 0..n {
        let mut allowed = VertexSet::full(n);
        allowed.remove(s);
        st.path.push(s);
        st.go(&allowed, &closed);
        st.path.pop();
        if st.aborted || st.best.len() >= target {
            break;
        }
    }
    PathSearch {
        path: PathWitness {
            vertices: st.best,
            kind: PathKind::Induced,
        },
        exact: !st.aborted,
    }
}

struct Induced<'a> {
    g: &'a Graph,
    path: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    target: usize,
    aborted: bool,
}

impl Induced<'_> {
    fn go(&mut self, allowed: &VertexSet, closed: &[VertexSet]) {
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let last = *self.path.last().unwrap();
        if self.path.len() + reach(self.g, last, allowed) <= self.best.len() {
            return;
        }
        let next = self.g.neighbor_set(last).intersection(allowed);
        let rest = allowed.difference(&closed[last]);
        for v in next.iter() {
            self.path.push(v);
            self.go(&rest, closed);
            self.path.pop();
            if self.aborted || self.best.len() >= self.target {
                return;
            }
        }
    }
}

/// Number of `allowed` vertices reachable from `s` through `allowed`.
fn reach(g: &Graph, s: usize, allowed: &VertexSet) -> usize {
    let mut seen = VertexSet::new(g.n());
    let mut frontier = g.neighbor_set(s).intersection(allowed);
    let mut count = 0;
    while !frontier.is_empty() {
        seen.union_with(&frontier);
        count += frontier.len();
        let mut next = VertexSet::new(g.n());
        for v in frontier.iter() {
            next.union_with(g.neighbor_set(v));
        }
        next.intersect_with(allowed);
        next.difference_with(&seen);
        frontier = next;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = vec![];
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn induced_paths() {
        let r = longest_induced_path(&cycle(6), 64);
        assert!(r.exact && r.path.verify(&cycle(6)));
        assert_eq!(r.path.vertices.len(), 5);
        assert_eq!(
            longest_induced_path(&complete(5), 64).path.vertices.len(),
            2
        );
    }

    #[test]
    fn plain_paths() {
        let r = longest_path(&cycle(9));
        assert!(r.exact && r.path.verify(&cycle(9)));
        assert_eq!(r.path.length(), 8);
        let big = cycle(30);
        let r = longest_path(&big);
        assert_eq!(r.path.length(), 29);
        assert!(r.exact);
    }
}
