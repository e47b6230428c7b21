//! Canonical form by colour refinement plus individualisation, with automorphism pruning.

use super::Graph;
use crate::error::GraphError;

/// Largest graph accepted by [`canonical_code`].
pub const CANON_LIMIT: usize = 64;

/// Byte string equal for two graphs iff they are isomorphic.
///
/// Layout: vertex count, then the upper triangle of the adjacency matrix in the canonical
/// order, row-major, packed MSB first. Labels are ignored.
pub fn canonical_code(g: &Graph) -> Result<Vec<u8>, GraphError> {
    let n = g.n();
    if n > CANON_LIMIT {
        return Err(GraphError::TooLarge {
            n,
            limit: CANON_LIMIT,
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let mut s = Search {
        n,
        adj,
        best: None,
        first: None,
        gens: Vec::new(),
    };
    let root = refine(&s.adj, vec![(0..n).collect()]);
    s.search(root, &mut Vec::new());
    Ok(s.best.map(|(c, _)| c).unwrap_or_else(|| vec![0]))
}

type Partition = Vec<Vec<usize>>;

struct Search {
    n: usize,
    adj: Vec<u64>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    first: Option<(Vec<u8>, Vec<usize>)>,
    gens: Vec<Vec<usize>>,
}

impl Search {
    fn search(&mut self, part: Partition, prefix: &mut Vec<usize>) {
        let Some(ti) = part.iter().position(|c| c.len() > 1) else {
            self.leaf(part.into_iter().map(|c| c[0]).collect());
            return;
        };
        let target = part[ti].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            if !explored.is_empty() {
                let orbit_rep = self.orbits(prefix);
                if explored.iter().any(|&w| orbit_rep[w] == orbit_rep[v]) {
                    continue;
                }
            }
            let mut child = part.clone();
            let rest: Vec<usize> = target.iter().copied().filter(|&x| x != v).collect();
            child.splice(ti..=ti, [vec![v], rest]);
            let child = refine(&self.adj, child);
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let code = self.code(&order);
        match &self.first {
            None => self.first = Some((code.clone(), order.clone())),
            Some((c, o)) if *c == code => {
                let g = automorphism(o, &order, self.n);
                self.gens.push(g);
            }
            _ => {}
        }
        match &self.best {
            Some((c, o)) if *c == code => {
                let g = automorphism(o, &order, self.n);
                self.gens.push(g);
            }
            Some((c, _)) if *c >= code => {}
            _ => self.best = Some((code, order)),
        }
    }

    fn code(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut out = Vec::with_capacity(1 + n * n / 16);
        out.push(n as u8);
        let mut acc = 0u8;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                acc <<= 1;
                if self.adj[order[i]] >> order[j] & 1 == 1 {
                    acc |= 1;
                }
                k += 1;
                if k == 8 {
                    out.push(acc);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            out.push(acc << (8 - k));
        }
        out
    }

    /// Orbit representatives under the stored automorphisms that fix `prefix` pointwise.
    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.gens {
            if prefix.iter().any(|&v| g[v] != v) {
                continue;
            }
            for (v, &w) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }
}

fn automorphism(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut g = vec![0; n];
    for (a, b) in from.iter().zip(to) {
        g[*a] = *b;
    }
    g
}

/// Equitable refinement. Cells split by neighbour counts into every cell; the new cells keep
/// the parent's position and are ordered by their count vectors, so the result depends only
/// on structure (it commutes with relabelling).
fn refine(adj: &[u64], mut part: Partition) -> Partition {
    loop {
        let masks: Vec<u64> = part
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let mut next: Partition = Vec::with_capacity(part.len());
        let mut changed = false;
        for cell in &part {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut sub: Vec<usize> = keyed[start..i].iter().map(|x| x.1).collect();
                    sub.sort_unstable();
                    next.push(sub);
                    start = i;
                }
            }
        }
        if next.len() != part.len() {
            changed = true;
        }
        part = next;
        if !changed {
            return part;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .collect();
        let mut codes = std::collections::BTreeSet::new();
        for mask in 0..(1u32 << pairs.len()) {
            let e: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            codes.insert(canonical_code(&Graph::from_edges(4, &e).unwrap()).unwrap());
        }
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn relabel_invariant() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let q3 = Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(canonical_code(&p3), canonical_code(&q3));
        assert_ne!(canonical_code(&p3), canonical_code(&k3));
    }
}
