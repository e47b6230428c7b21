//! Cycles through an anchor vertex or edge, and packings of them that pairwise meet only in
//! the anchor. A packing with quota `{(l_i, 1)}` is exactly a `C^V_{l_1..l_k}` (vertex
//! anchor) or `C^E_{l_1..l_k}` (edge anchor) subgraph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::bitset::VertexSet;
use crate::constructions::BouquetMode;
use crate::graph::{bfs_distances, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Anchor {
    Vertex(usize),
    Edge(usize, usize),
}

impl Anchor {
    fn ends(&self) -> (usize, usize) {
        match *self {
            Anchor::Vertex(a) => (a, a),
            Anchor::Edge(u, v) => (u, v),
        }
    }

    fn valid(&self, g: &Graph) -> bool {
        match *self {
            Anchor::Vertex(a) => a < g.n(),
            Anchor::Edge(u, v) => u < g.n() && v < g.n() && g.has_edge(u, v),
        }
    }
}

/// Cycles are listed from the anchor: `a, x_1, .., x_{l-1}` for a vertex anchor and
/// `u, .., v` for an edge anchor `uv`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePacking {
    pub anchor: Anchor,
    pub cycles: Vec<Vec<usize>>,
    pub quota_satisfied: bool,
}

impl CyclePacking {
    pub fn verify(&self, host: &Graph) -> bool {
        if !self.anchor.valid(host) {
            return false;
        }
        let (u, v) = self.anchor.ends();
        let mut used = VertexSet::new(host.n());
        for c in &self.cycles {
            if c.len() < 3 || c[0] != u || *c.last().unwrap() != v && u != v {
                return false;
            }
            if u == v && !host.has_edge(*c.last().unwrap(), u) {
                return false;
            }
            for w in c.windows(2) {
                if !host.has_edge(w[0], w[1]) {
                    return false;
                }
            }
            let inner = if u == v { &c[1..] } else { &c[1..c.len() - 1] };
            for &x in inner {
                if x >= host.n() || x == u || x == v || !used.insert(x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }
}

struct Walker<'a> {
    g: &'a Graph,
    anchor: Anchor,
    len: usize,
    blocked: VertexSet,
    dist: Vec<u32>,
    path: Vec<usize>,
    /// Only cycles whose first inner vertex exceeds this.
    first_min: Option<usize>,
    nodes: u64,
    budget: u64,
}

impl Walker<'_> {
    fn new<'a>(
        g: &'a Graph,
        anchor: Anchor,
        len: usize,
        blocked: &VertexSet,
        budget: u64,
    ) -> Walker<'a> {
        let (u, v) = anchor.ends();
        let dist = bfs_distances(g, v)
            .into_iter()
            .map(|d| d.unwrap_or(u32::MAX))
            .collect();
        let mut blocked = blocked.clone();
        blocked.insert(u);
        blocked.insert(v);
        Walker {
            g,
            anchor,
            len,
            blocked,
            dist,
            path: vec![u],
            first_min: None,
            nodes: 0,
            budget,
        }
    }

    /// Calls `emit` on every canonical cycle; stops early when it returns false.
    /// Returns false if the budget ran out.
    fn run(&mut self, emit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let mut stop = false;
        self.go(emit, &mut stop)
    }

    fn go(&mut self, emit: &mut dyn FnMut(&[usize]) -> bool, stop: &mut bool) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let (u, v) = self.anchor.ends();
        let last = *self.path.last().unwrap();
        let closing = match self.anchor {
            Anchor::Vertex(_) => self.len,
            Anchor::Edge(..) => self.len - 1,
        };
        let used_edges = self.path.len() - 1;
        if used_edges + 1 == closing {
            if self.g.has_edge(last, v) && last != v {
                let ok = match self.anchor {
                    // each cycle through a vertex appears in two orientations
                    Anchor::Vertex(_) => self.path.len() >= 3 && self.path[1] < last,
                    Anchor::Edge(..) => true,
                };
                if ok {
                    let mut c = self.path.clone();
                    if u != v {
                        c.push(v);
                    }
                    if !emit(&c) {
                        *stop = true;
                    }
                }
            }
            return true;
        }
        let remaining = (closing - used_edges - 1) as u32;
        for &w in self.g.neighbors(last) {
            if self.blocked.contains(w) || self.dist[w] > remaining {
                continue;
            }
            if self.path.len() == 1 && self.first_min.is_some_and(|m| w <= m) {
                continue;
            }
            self.blocked.insert(w);
            self.path.push(w);
            let ok = self.go(emit, stop);
            self.path.pop();
            self.blocked.remove(w);
            if !ok {
                return false;
            }
            if *stop {
                return true;
            }
        }
        true
    }
}

/// All cycles of length `len` through `anchor`, each once. `None` if the budget ran out.
pub fn enumerate_cycles(
    g: &Graph,
    anchor: Anchor,
    len: usize,
    budget: u64,
) -> Option<Vec<Vec<usize>>> {
    if len < 3 || !anchor.valid(g) {
        return Some(vec![]);
    }
    let mut out = Vec::new();
    let mut w = Walker::new(g, anchor, len, &VertexSet::new(g.n()), budget);
    w.run(&mut |c| {
        out.push(c.to_vec());
        true
    })
    .then_some(out)
}

pub fn first_cycle(g: &Graph, anchor: Anchor, len: usize, budget: u64) -> Outcome<Vec<usize>> {
    if len < 3 || !anchor.valid(g) {
        return Outcome::Absent;
    }
    let mut found = None;
    let mut w = Walker::new(g, anchor, len, &VertexSet::new(g.n()), budget);
    let done = w.run(&mut |c| {
        found = Some(c.to_vec());
        false
    });
    match (found, done) {
        (Some(c), _) => Outcome::Found(c),
        (None, true) => Outcome::Absent,
        (None, false) => Outcome::Budget,
    }
}

/// Set of non-anchor vertices meeting every cycle of the given lengths through the anchor,
/// grown by taking the highest-degree inner vertex of some cycle it still misses. Disjoint
/// cycles need distinct hitters, so its size bounds any packing.
fn greedy_hitting_set_avoiding(
    g: &Graph,
    anchor: Anchor,
    lens: &[usize],
    avoid: &VertexSet,
    budget: &mut u64,
) -> Option<VertexSet> {
    let (u, v) = anchor.ends();
    let mut hit = VertexSet::new(g.n());
    'grow: loop {
        for &len in lens {
            let mut found: Option<Vec<usize>> = None;
            let mut w = Walker::new(g, anchor, len, &hit.union(avoid), *budget);
            let ok = w.run(&mut |c| {
                found = Some(c.to_vec());
                false
            });
            *budget = budget.saturating_sub(w.nodes);
            if let Some(c) = found {
                let best = c
                    .into_iter()
                    .filter(|&x| x != u && x != v)
                    .max_by_key(|&x| (g.degree(x), std::cmp::Reverse(x)))
                    .expect("cycles have inner vertices");
                hit.insert(best);
                continue 'grow;
            }
            if !ok {
                return None;
            }
        }
        return Some(hit);
    }
}

/// A set of cycles through `anchor`, pairwise meeting only in the anchor, with `count`
/// cycles of each requested `length`.
pub fn cycle_packing(
    g: &Graph,
    anchor: Anchor,
    quotas: &[(usize, usize)],
    budget: u64,
) -> Outcome<CyclePacking> {
    let mut left = budget;
    packing_charged(g, anchor, quotas, &mut left)
}

/// As [`cycle_packing`], spending from a shared budget.
fn packing_charged(
    g: &Graph,
    anchor: Anchor,
    quotas: &[(usize, usize)],
    left: &mut u64,
) -> Outcome<CyclePacking> {
    let mut need: BTreeMap<usize, usize> = BTreeMap::new();
    for &(l, c) in quotas {
        *need.entry(l).or_default() += c;
    }
    need.retain(|_, c| *c > 0);
    if need.keys().any(|&l| l < 3) || !anchor.valid(g) {
        return Outcome::Absent;
    }
    // longest cycles first: they are the hardest to place
    let mut groups: Vec<(usize, usize)> = need.into_iter().collect();
    groups.reverse();
    let mut p = Packer {
        g,
        anchor,
        lens: groups.iter().map(|x| x.0).collect(),
        need: groups.iter().map(|x| x.1).collect(),
        last_first: vec![None; groups.len()],
        used: VertexSet::new(g.n()),
        chosen: Vec::new(),
        left: *left,
    };
    let r = p.go();
    *left = p.left;
    match r {
        Some(true) => Outcome::Found(CyclePacking {
            anchor,
            cycles: p.chosen,
            quota_satisfied: true,
        }),
        Some(false) => Outcome::Absent,
        None => Outcome::Budget,
    }
}

/// Backtracking over cycles found lazily in the graph minus the vertices already used.
/// Within a length group the first inner vertex strictly increases, so each packing is
/// met once per group order.
struct Packer<'a> {
    g: &'a Graph,
    anchor: Anchor,
    lens: Vec<usize>,
    need: Vec<usize>,
    last_first: Vec<Option<usize>>,
    used: VertexSet,
    chosen: Vec<Vec<usize>>,
    left: u64,
}

impl Packer<'_> {
    /// `None` on budget exhaustion.
    fn go(&mut self) -> Option<bool> {
        let open: Vec<usize> = (0..self.lens.len()).filter(|&i| self.need[i] > 0).collect();
        if open.is_empty() {
            return Some(true);
        }
        let total: usize = open.iter().map(|&i| self.need[i]).sum();
        let lens: Vec<usize> = open.iter().map(|&i| self.lens[i]).collect();
        let mut left = self.left;
        let bound = greedy_hitting_set_avoiding(self.g, self.anchor, &lens, &self.used, &mut left);
        self.left = left;
        match bound {
            None => return None,
            Some(h) if h.len() < total => return Some(false),
            _ => {}
        }
        if open.len() > 1 {
            for &i in &open {
                let mut left = self.left;
                let b = greedy_hitting_set_avoiding(
                    self.g,
                    self.anchor,
                    &[self.lens[i]],
                    &self.used,
                    &mut left,
                );
                self.left = left;
                match b {
                    None => return None,
                    Some(h) if h.len() < self.need[i] => return Some(false),
                    _ => {}
                }
            }
        }
        let gi = open[0];
        let (u, v) = self.anchor.ends();
        let g = self.g;
        let mut w = Walker::new(g, self.anchor, self.lens[gi], &self.used, self.left);
        w.first_min = self.last_first[gi];
        let mut result = Some(false);
        let finished = w.run(&mut |c| {
            let inner: Vec<usize> = c.iter().copied().filter(|&x| x != u && x != v).collect();
            let saved = self.last_first[gi];
            self.last_first[gi] = Some(c[1]);
            self.need[gi] -= 1;
            for &x in &inner {
                self.used.insert(x);
            }
            self.chosen.push(c.to_vec());
            let r = self.go();
            if r == Some(true) {
                result = r;
                return false;
            }
            self.chosen.pop();
            for &x in &inner {
                self.used.remove(x);
            }
            self.need[gi] += 1;
            self.last_first[gi] = saved;
            if r.is_none() {
                result = None;
                return false;
            }
            true
        });
        self.left = self.left.saturating_sub(w.nodes);
        if !finished && result == Some(false) {
            return None;
        }
        result
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "packing")]
pub enum Freeness {
    Free,
    Contains(CyclePacking),
    Budget,
}

/// Decides `C^V_{lengths}` / `C^E_{lengths}` subgraph containment by packing at every anchor.
pub fn vtype_or_etype_free(
    g: &Graph,
    lengths: &[usize],
    mode: BouquetMode,
    budget: u64,
) -> Freeness {
    let k = lengths.len();
    let mut quotas: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in lengths {
        *quotas.entry(l).or_default() += 1;
    }
    let quotas: Vec<(usize, usize)> = quotas.into_iter().collect();
    let anchors: Vec<Anchor> = match mode {
        BouquetMode::Vertex => (0..g.n())
            .filter(|&a| g.degree(a) >= 2 * k)
            .map(Anchor::Vertex)
            .collect(),
        BouquetMode::Edge => g
            .edges()
            .into_iter()
            .filter(|&(u, v)| g.degree(u) > k && g.degree(v) > k)
            .map(|(u, v)| Anchor::Edge(u, v))
            .collect(),
    };
    let mut left = budget;
    let mut exhausted = false;
    for a in anchors {
        match packing_charged(g, a, &quotas, &mut left) {
            Outcome::Found(p) => return Freeness::Contains(p),
            Outcome::Absent => {}
            Outcome::Budget => {
                exhausted = true;
                break;
            }
        }
    }
    if exhausted {
        Freeness::Budget
    } else {
        Freeness::Free
    }
}
