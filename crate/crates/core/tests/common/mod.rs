//! Brute-force oracles shared by the integration tests. Nothing here calls the solvers
//! under test; graphs are handled as adjacency bitmasks.
#![allow(dead_code)]

use std::collections::HashMap;

use diamwidth::Graph;

pub fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn components(adj: &[u32], set: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut left = set;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let mut grow = comp;
            let mut c = comp;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                grow |= adj[v] & set;
            }
            if grow == comp {
                break;
            }
            comp = grow;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Treedepth from its recursive definition: 1 + min over roots for a connected set,
/// max over components otherwise.
pub fn treedepth(g: &Graph) -> usize {
    fn td(adj: &[u32], set: u32, memo: &mut HashMap<u32, usize>) -> usize {
        if set == 0 {
            return 0;
        }
        if let Some(&x) = memo.get(&set) {
            return x;
        }
        let comps = components(adj, set);
        let val = if comps.len() > 1 {
            comps.iter().map(|&c| td(adj, c, memo)).max().unwrap()
        } else {
            let mut best = usize::MAX;
            let mut s = set;
            while s != 0 {
                let v = s.trailing_zeros();
                s &= s - 1;
                best = best.min(1 + td(adj, set & !(1 << v), memo));
            }
            best
        };
        memo.insert(set, val);
        val
    }
    let adj = masks(g);
    td(&adj, (1u32 << g.n()) - 1, &mut HashMap::new())
}

fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, f);
            p.swap(k, i);
        }
    }
    rec(&mut (0..n).collect(), 0, f);
}

/// Pathwidth as the least vertex separation number over all orderings.
pub fn pathwidth(g: &Graph) -> usize {
    let adj = masks(g);
    let mut best = g.n().saturating_sub(1);
    permutations(g.n(), &mut |order| {
        let mut prefix = 0u32;
        let mut worst = 0;
        for &v in order {
            prefix |= 1 << v;
            let border = (0..g.n())
                .filter(|&u| prefix >> u & 1 == 1 && adj[u] & !prefix != 0)
                .count();
            worst = worst.max(border);
        }
        best = best.min(worst);
    });
    best
}

/// Treewidth as the least elimination-ordering width over all orderings.
pub fn treewidth(g: &Graph) -> usize {
    let base = masks(g);
    let mut best = g.n().saturating_sub(1);
    permutations(g.n(), &mut |order| {
        let mut adj = base.clone();
        let mut gone = 0u32;
        let mut worst = 0;
        for &v in order {
            let nb = adj[v] & !gone;
            worst = worst.max(nb.count_ones() as usize);
            let mut s = nb;
            while s != 0 {
                let u = s.trailing_zeros() as usize;
                s &= s - 1;
                adj[u] |= nb & !(1 << u);
            }
            gone |= 1 << v;
        }
        best = best.min(worst);
    });
    best
}

/// Injective maps from pattern to host preserving edges (and non-edges when `induced`).
pub fn embeds(host: &Graph, pattern: &Graph, induced: bool) -> bool {
    fn rec(h: &[u32], p: &[u32], map: &mut Vec<usize>, used: u32, induced: bool) -> bool {
        let k = map.len();
        if k == p.len() {
            return true;
        }
        for x in 0..h.len() {
            if used >> x & 1 == 1 {
                continue;
            }
            let ok = (0..k).all(|i| {
                let pe = p[k] >> i & 1 == 1;
                let he = h[x] >> map[i] & 1 == 1;
                if induced {
                    pe == he
                } else {
                    !pe || he
                }
            });
            if ok {
                map.push(x);
                if rec(h, p, map, used | 1 << x, induced) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    if pattern.n() > host.n() {
        return false;
    }
    rec(&masks(host), &masks(pattern), &mut Vec::new(), 0, induced)
}
