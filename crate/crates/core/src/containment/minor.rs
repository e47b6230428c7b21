//! Minor testing by contraction search: `H` is a minor of `G` iff `H` is a subgraph of `G`
//! or of `G/e` for some edge `e`. Failed hosts are memoised by canonical code.

use std::collections::HashSet;

use super::iso::has_subgraph;
use super::{Embedding, Mode, Outcome};
use crate::graph::{canonical_code, Graph, GraphBuilder, CANON_LIMIT};

/// Host with every vertex carrying the original vertices contracted into it.
#[derive(Clone)]
struct Contracted {
    g: Graph,
    sets: Vec<Vec<usize>>,
}

impl Contracted {
    fn contract(&self, u: usize, v: usize) -> Contracted {
        // v merges into u; ids above v shift down by one
        let n = self.g.n();
        let new_id = |x: usize| -> usize {
            let x = if x == v { u } else { x };
            if x > v {
                x - 1
            } else {
                x
            }
        };
        let mut b = GraphBuilder::new(n - 1);
        for (a, c) in self.g.edges() {
            let (a, c) = (new_id(a), new_id(c));
            if a != c {
                b.push_unchecked(a, c);
            }
        }
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(n - 1);
        for x in 0..n {
            if x == v {
                continue;
            }
            sets.push(self.sets[x].clone());
        }
        let target = new_id(u);
        sets[target].extend(&self.sets[v]);
        Contracted { g: b.build(), sets }
    }

    /// Keep only `keep` (sorted).
    fn restrict(&self, keep: &[usize]) -> Contracted {
        Contracted {
            g: self.g.induced_subgraph(keep).without_labels(),
            sets: keep.iter().map(|&v| self.sets[v].clone()).collect(),
        }
    }
}

struct St<'a> {
    pattern: &'a Graph,
    pattern_rank: usize,
    min_deg: usize,
    failed: HashSet<Vec<u8>>,
    nodes: u64,
    budget: u64,
}

pub fn has_minor(host: &Graph, pattern: &Graph, budget: u64) -> Outcome<Embedding> {
    if pattern.n() == 0 {
        return Outcome::Found(Embedding {
            mode: Mode::Minor,
            branch_sets: vec![],
        });
    }
    let mut st = St {
        pattern,
        pattern_rank: pattern.cycle_rank(),
        min_deg: pattern.min_degree(),
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    let start = Contracted {
        g: host.clone().without_labels(),
        sets: (0..host.n()).map(|v| vec![v]).collect(),
    };
    match st.go(start) {
        Some(Some(branch_sets)) => Outcome::Found(Embedding {
            mode: Mode::Minor,
            branch_sets,
        }),
        Some(None) => Outcome::Absent,
        None => Outcome::Budget,
    }
}

impl St<'_> {
    /// `None` on budget exhaustion, `Some(None)` if no model exists.
    fn go(&mut self, mut h: Contracted) -> Option<Option<Vec<Vec<usize>>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        // Vertices of degree < min pattern degree can never be a whole branch set, and as a
        // leaf of a larger branch set they are removable; only safe to strip when min degree >= 2.
        if self.min_deg >= 2 {
            loop {
                let keep: Vec<usize> = (0..h.g.n()).filter(|&v| h.g.degree(v) >= 2).collect();
                if keep.len() == h.g.n() {
                    break;
                }
                h = h.restrict(&keep);
            }
        }
        let p = self.pattern;
        if h.g.n() < p.n()
            || h.g.edge_count() < p.edge_count()
            || h.g.cycle_rank() < self.pattern_rank
        {
            return Some(None);
        }
        if p.is_connected() {
            let comps = h.g.components();
            if comps.len() > 1 {
                for c in comps {
                    if c.len() < p.n() {
                        continue;
                    }
                    if let Some(m) = self.go(h.restrict(&c))? {
                        return Some(Some(m));
                    }
                }
                return Some(None);
            }
        }
        let code = if h.g.n() <= CANON_LIMIT {
            let c = canonical_code(&h.g).expect("within limit");
            if self.failed.contains(&c) {
                return Some(None);
            }
            Some(c)
        } else {
            None
        };
        let left = self.budget.saturating_sub(self.nodes);
        match has_subgraph(&h.g, p, left) {
            Outcome::Found(e) => {
                let sets = e
                    .vertex_map()
                    .expect("subgraph maps are singletons")
                    .into_iter()
                    .map(|v| {
                        let mut s = h.sets[v].clone();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                return Some(Some(sets));
            }
            Outcome::Budget => return None,
            Outcome::Absent => {}
        }
        if h.g.n() > p.n() {
            for (u, v) in h.g.edges() {
                if let Some(m) = self.go(h.contract(u, v))? {
                    return Some(Some(m));
                }
            }
        }
        if let Some(c) = code {
            self.failed.insert(c);
        }
        Some(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::containment::UNLIMITED;
    use crate::graph::join;

    #[test]
    fn examples() {
        let c3 = complete(3).unwrap();
        let c4 = cycle(4).unwrap();
        let e = has_minor(&c4, &c3, UNLIMITED).found().unwrap();
        assert!(e.verify(&c4, &c3));
        assert!(has_minor(&spider(&[3, 3, 2]).unwrap(), &c3, UNLIMITED).is_absent());
        let host = join(&path(5).unwrap(), &complete(1).unwrap());
        assert!(has_minor(&host, &c3, UNLIMITED).is_found());
    }

    #[test]
    fn kuratowski_minors() {
        let k5 = complete(5).unwrap();
        let pet = {
            let mut e = vec![];
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edges(10, &e).unwrap()
        };
        let m = has_minor(&pet, &k5, UNLIMITED).found().unwrap();
        assert!(m.verify(&pet, &k5));
        let k33 = complete_bipartite(3, 3).unwrap();
        assert!(has_minor(&wall(2, 0).unwrap(), &k33, UNLIMITED).is_absent());
        assert!(has_minor(&wall(2, 0).unwrap(), &complete(4).unwrap(), UNLIMITED).is_found());
    }
}
