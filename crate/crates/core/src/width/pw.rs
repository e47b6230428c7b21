//! Pathwidth as vertex separation number, by dynamic programming over vertex subsets.

use crate::graph::Graph;

/// `(pw, ordering)` for `n <= 24`.
pub(super) fn solve(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (0, vec![]);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    // f[S] = max(|boundary(S)|, min_v f[S - v]), boundary = vertices of S with a neighbour outside
    let mut f = vec![u8::MAX; 1usize << n];
    f[0] = 0;
    for s in 1..=full {
        let mut boundary = 0u8;
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & !s & full != 0 {
                boundary += 1;
            }
            best = best.min(f[(s & !(1 << v)) as usize]);
        }
        f[s as usize] = best.max(boundary);
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = f[s as usize];
        let v = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .min_by_key(|&v| (f[(s & !(1 << v)) as usize], v))
            .unwrap();
        debug_assert!(f[(s & !(1 << v)) as usize] <= target);
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    (f[full as usize] as usize, order)
}

/// Vertex separation of an ordering: the largest number of placed vertices that still have
/// an unplaced neighbour.
pub fn vertex_separation(g: &Graph, order: &[usize]) -> usize {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (0..order.len())
        .map(|i| {
            order[..=i]
                .iter()
                .filter(|&&u| g.neighbors(u).iter().any(|&w| pos[w] > i))
                .count()
        })
        .max()
        .unwrap_or(0)
}

/// Bags `{v_i}` plus the boundary before `v_i`; width equals the vertex separation.
pub fn ordering_to_path_decomposition(g: &Graph, order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (0..order.len())
        .map(|i| {
            let mut bag: Vec<usize> = order[..i]
                .iter()
                .copied()
                .filter(|&u| g.neighbors(u).iter().any(|&w| pos[w] >= i))
                .collect();
            bag.push(order[i]);
            bag.sort_unstable();
            bag
        })
        .collect()
}

/// Greedy ordering for graphs beyond the exact limit: repeatedly place the vertex that
/// adds the fewest new boundary vertices.
pub(super) fn greedy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let fresh = g.neighbors(v).iter().filter(|&&w| !placed[w]).count();
                let touches = g.neighbors(v).iter().any(|&w| placed[w]);
                (!touches && !order.is_empty(), fresh, v)
            })
            .unwrap();
        placed[v] = true;
        order.push(v);
    }
    order
}
