//! Backtracking (sub)graph isomorphism over bitset adjacency.

use super::{Embedding, Mode, Outcome};
use crate::bitset::VertexSet;
use crate::graph::Graph;

pub fn has_subgraph(host: &Graph, pattern: &Graph, budget: u64) -> Outcome<Embedding> {
    search(host, pattern, false, budget)
}

pub fn has_induced_subgraph(host: &Graph, pattern: &Graph, budget: u64) -> Outcome<Embedding> {
    search(host, pattern, true, budget)
}

/// Cheap necessary conditions: sizes and sorted degree sequences.
fn feasible(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let mut hd = host.degree_sequence();
    let mut pd = pattern.degree_sequence();
    hd.sort_unstable_by(|a, b| b.cmp(a));
    pd.sort_unstable_by(|a, b| b.cmp(a));
    pd.iter().zip(&hd).all(|(p, h)| p <= h)
}

/// Pattern order: highest degree first, then always the vertex with most ordered
/// neighbours (ties by degree), so candidates come from neighbourhood intersections.
fn pattern_order(p: &Graph) -> Vec<usize> {
    let k = p.n();
    let mut placed = vec![false; k];
    let mut links = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let v = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], p.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &w in p.neighbors(v) {
            links[w] += 1;
        }
    }
    order
}

struct St<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    induced: bool,
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent / non-adjacent in the pattern.
    back_adj: Vec<Vec<usize>>,
    back_non: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: VertexSet,
    nodes: u64,
    budget: u64,
}

fn search(host: &Graph, pattern: &Graph, induced: bool, budget: u64) -> Outcome<Embedding> {
    let mode = if induced {
        Mode::Induced
    } else {
        Mode::Subgraph
    };
    if pattern.n() == 0 {
        return Outcome::Found(Embedding::from_map(mode, &[]));
    }
    if !feasible(host, pattern) {
        return Outcome::Absent;
    }
    let order = pattern_order(pattern);
    let mut back_adj = vec![Vec::new(); order.len()];
    let mut back_non = vec![Vec::new(); order.len()];
    for (i, &v) in order.iter().enumerate() {
        for (j, &w) in order[..i].iter().enumerate() {
            if pattern.has_edge(v, w) {
                back_adj[i].push(j);
            } else {
                back_non[i].push(j);
            }
        }
    }
    let mut st = St {
        host,
        pattern,
        induced,
        order,
        back_adj,
        back_non,
        map: Vec::with_capacity(pattern.n()),
        used: VertexSet::new(host.n()),
        nodes: 0,
        budget,
    };
    match st.go() {
        Some(true) => {
            let mut m = vec![0; pattern.n()];
            for (i, &v) in st.order.iter().enumerate() {
                m[v] = st.map[i];
            }
            Outcome::Found(Embedding::from_map(mode, &m))
        }
        Some(false) => Outcome::Absent,
        None => Outcome::Budget,
    }
}

impl St<'_> {
    /// `Some(found)` on completion, `None` when the budget ran out.
    fn go(&mut self) -> Option<bool> {
        let i = self.map.len();
        if i == self.order.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let pv = self.order[i];
        let need = self.pattern.degree(pv);
        let mut cand = match self.back_adj[i].first() {
            Some(&j) => self.host.neighbor_set(self.map[j]).clone(),
            None => VertexSet::full(self.host.n()),
        };
        for &j in self.back_adj[i].iter().skip(1) {
            cand.intersect_with(self.host.neighbor_set(self.map[j]));
        }
        cand.difference_with(&self.used);
        if self.induced {
            for &j in &self.back_non[i] {
                cand.difference_with(self.host.neighbor_set(self.map[j]));
            }
        }
        let mut list: Vec<usize> = cand
            .iter()
            .filter(|&h| self.host.degree(h) >= need)
            .collect();
        list.sort_by_key(|&h| self.host.degree(h));
        for h in list {
            self.map.push(h);
            self.used.insert(h);
            let r = self.go();
            if r == Some(true) {
                return r;
            }
            self.used.remove(h);
            self.map.pop();
            match r {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::containment::UNLIMITED;
    use crate::graph::{complement, join};

    #[test]
    fn examples() {
        let c4 = cycle(4).unwrap();
        let e = has_subgraph(&complete_bipartite(2, 2).unwrap(), &c4, UNLIMITED)
            .found()
            .unwrap();
        assert!(e.verify(&complete_bipartite(2, 2).unwrap(), &c4));
        let claw = complete_bipartite(1, 3).unwrap();
        assert!(has_subgraph(&cycle(7).unwrap(), &claw, UNLIMITED).is_absent());
        let host = join(&path(20).unwrap(), &complete(1).unwrap());
        assert!(has_subgraph(&host, &h_graph(3, 1).unwrap(), UNLIMITED).is_absent());
    }

    #[test]
    fn induced_examples() {
        let p4 = path(4).unwrap();
        let c5 = cycle(5).unwrap();
        let e = has_induced_subgraph(&c5, &p4, UNLIMITED).found().unwrap();
        assert!(e.verify(&c5, &p4));
        assert!(
            has_induced_subgraph(&complete(4).unwrap(), &path(3).unwrap(), UNLIMITED).is_absent()
        );
        let co_wall = complement(&wall(2, 0).unwrap());
        let two_p2 = crate::graph::disjoint_union(&path(2).unwrap(), &path(2).unwrap());
        assert!(has_induced_subgraph(&co_wall, &two_p2, UNLIMITED).is_absent());
    }

    #[test]
    fn budget_is_reported() {
        let host = complete_bipartite(8, 8).unwrap();
        assert_eq!(
            has_subgraph(&host, &complete(3).unwrap(), 3),
            Outcome::Budget
        );
    }
}
