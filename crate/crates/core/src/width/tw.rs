//! Treewidth by the elimination-ordering subset DP:
//! `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is the set of
//! vertices outside `S + v` reachable from `v` through `S`.

use super::TreeDecomposition;
use crate::graph::Graph;

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn q(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    let mut reach = 0u32;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[u];
        }
        reach |= next;
        next &= s & !comp;
        comp |= next;
        frontier = next;
    }
    reach & !s & !(1 << v)
}

/// `(tw, elimination ordering)` for `n <= 24`.
pub(super) fn solve(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (0, vec![]);
    }
    let adj = masks(g);
    let full: u32 = (1u32 << n) - 1;
    let mut t = vec![u8::MAX; 1usize << n];
    t[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = t[(s & !(1 << v)) as usize];
            if prev >= best {
                continue;
            }
            let val = prev.max(q(&adj, s & !(1 << v), v).count_ones() as u8);
            best = best.min(val);
        }
        t[s as usize] = best;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = t[s as usize];
        let v = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .find(|&v| {
                let r = s & !(1 << v);
                t[r as usize].max(q(&adj, r, v).count_ones() as u8) == target
            })
            .unwrap();
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    (t[full as usize] as usize, order)
}

/// Tree decomposition of an elimination ordering: bag of `v` is `v` plus its later
/// neighbours in the fill-in graph, attached to the bag of the earliest of those.
pub fn ordering_to_tree_decomposition(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nb: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut later_of = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<usize> = nb[v].iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                nb[a].insert(b);
                nb[b].insert(a);
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        later_of.push(later);
    }
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, later) in later_of.iter().enumerate() {
        match later.iter().map(|&w| pos[w]).min() {
            Some(j) => edges.push((i, j)),
            None => roots.push(i),
        }
    }
    // one tree per component; chain the roots so the result is a single tree
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }
}

/// Minimum-degree elimination for graphs beyond the exact limit.
pub(super) fn min_degree_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut nb: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !gone[v])
            .min_by_key(|&v| (nb[v].len(), v))
            .unwrap();
        let ns: Vec<usize> = nb[v].iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            nb[a].remove(&v);
            for &b in &ns[i + 1..] {
                nb[a].insert(b);
                nb[b].insert(a);
            }
        }
        gone[v] = true;
        order.push(v);
    }
    order
}
