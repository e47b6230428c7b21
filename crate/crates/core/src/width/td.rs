//! Exact treedepth by memoised branch and bound over vertex subsets (bitmasks).

use std::num::NonZeroUsize;

use lru::LruCache;

use super::EliminationForest;
use crate::bitset::bits;
use crate::graph::Graph;

/// Cache entries kept by the solver.
const CACHE_CAPACITY: usize = 1 << 22;

#[derive(Clone, Copy)]
struct Entry {
    /// Exact when `exact`, otherwise a lower bound.
    value: u32,
    exact: bool,
}

pub(super) struct Solver {
    adj: Vec<u64>,
    memo: LruCache<u64, Entry>,
}

impl Solver {
    pub(super) fn new(g: &Graph) -> Solver {
        assert!(g.n() <= 64, "mask solver handles at most 64 vertices");
        Solver {
            adj: (0..g.n())
                .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
                .collect(),
            memo: LruCache::new(NonZeroUsize::new(CACHE_CAPACITY).unwrap()),
        }
    }

    pub(super) fn full(&self) -> u64 {
        if self.adj.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.adj.len()) - 1
        }
    }

    fn components(&self, s: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rest = s;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= s & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    /// Degeneracy of `G[s]`; `td >= degeneracy + 1`.
    fn degeneracy(&self, s: u64) -> u32 {
        let mut rest = s;
        let mut best = 0;
        while rest != 0 {
            let (v, d) = bits(rest)
                .map(|v| (v, (self.adj[v] & rest).count_ones()))
                .min_by_key(|&(_, d)| d)
                .unwrap();
            best = best.max(d);
            rest &= !(1 << v);
        }
        best
    }

    /// Exact `td(G[s])` if it is below `ub`, otherwise some lower bound that is `>= ub`.
    pub(super) fn td(&mut self, s: u64, ub: u32) -> u32 {
        if s == 0 {
            return 0;
        }
        let comps = self.components(s);
        if comps.len() > 1 {
            let mut worst = 0;
            for c in comps {
                let t = self.td_connected(c, ub);
                if t >= ub {
                    return t;
                }
                worst = worst.max(t);
            }
            return worst;
        }
        self.td_connected(s, ub)
    }

    fn td_connected(&mut self, s: u64, ub: u32) -> u32 {
        let size = s.count_ones();
        if size <= 2 {
            return size;
        }
        let mut lb = 1;
        if let Some(e) = self.memo.get(&s) {
            if e.exact || e.value >= ub {
                return e.value;
            }
            lb = e.value;
        }
        let verts: Vec<(usize, u32)> = bits(s)
            .map(|v| (v, (self.adj[v] & s).count_ones()))
            .collect();
        if verts.iter().all(|&(_, d)| d == size - 1) {
            self.memo.put(
                s,
                Entry {
                    value: size,
                    exact: true,
                },
            );
            return size;
        }
        lb = lb.max(self.degeneracy(s) + 1);
        if lb >= ub {
            self.memo.put(
                s,
                Entry {
                    value: lb,
                    exact: false,
                },
            );
            return lb;
        }
        let mut order = verts;
        order.sort_by_key(|&(v, d)| (std::cmp::Reverse(d), v));
        let mut best = ub.min(size + 1);
        for (v, _) in order {
            let t = 1 + self.td(s & !(1 << v), best - 1);
            if t < best {
                best = t;
                if best <= lb {
                    break;
                }
            }
        }
        if best < ub {
            self.memo.put(
                s,
                Entry {
                    value: best,
                    exact: true,
                },
            );
            best
        } else {
            let bound = lb.max(ub);
            self.memo.put(
                s,
                Entry {
                    value: bound,
                    exact: false,
                },
            );
            bound
        }
    }

    /// Elimination forest of height `td(G[s])` with roots attached to `parent`.
    pub(super) fn build(&mut self, s: u64, parent: Option<usize>, out: &mut [Option<usize>]) {
        for c in self.components(s) {
            let t = self.td(c, u32::MAX);
            let root = if c.count_ones() == 1 {
                c.trailing_zeros() as usize
            } else {
                bits(c)
                    .find(|&v| 1 + self.td(c & !(1 << v), t) == t)
                    .expect("an optimal root exists")
            };
            out[root] = parent;
            self.build(c & !(1 << root), Some(root), out);
        }
    }
}

pub(super) fn solve(g: &Graph) -> (usize, EliminationForest) {
    let mut s = Solver::new(g);
    let full = s.full();
    let t = s.td(full, u32::MAX);
    let mut parent = vec![None; g.n()];
    s.build(full, None, &mut parent);
    (t as usize, EliminationForest { parent })
}
