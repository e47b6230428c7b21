//! Structural recognizers for a forbidden graph `F`.

use serde::{Deserialize, Serialize};

use crate::constructions::{h_graph, path, BouquetMode};
use crate::containment::{has_induced_subgraph, has_subgraph, Outcome, UNLIMITED};
use crate::graph::planarity::is_planar;
use crate::graph::Graph;

/// Cap on the DFS steps spent counting cycles.
const CYCLE_COUNT_STEPS: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureProfile {
    pub n: usize,
    pub m: usize,
    pub is_connected: bool,
    pub is_clique: bool,
    pub induced_subgraph_of_p4: bool,
    pub induced_subgraph_of_p2: bool,
    pub is_planar: bool,
    pub is_apex_planar: bool,
    pub is_forest: bool,
    pub is_apex_forest: bool,
    pub is_linear_forest: bool,
    pub is_apex_linear_forest: bool,
    /// Every component a path or subdivided claw.
    pub in_script_s: bool,
    /// Subgraph of some subdivided star.
    pub subgraph_of_subdivided_star: bool,
    /// Least `l` with `F ⊆ H_2^l`, searched up to `l = n`.
    pub min_h2_ell: Option<usize>,
    pub is_bipartite: bool,
    pub contains_c4: bool,
    pub cycle_rank: usize,
    /// Number of distinct cycles; `None` if counting hit its step cap.
    pub cycle_count: Option<u64>,
    pub unicyclic: bool,
    /// Sorted cycle lengths if `F` is `C^V_{..}` (a single cycle parses as both types).
    pub vtype: Option<Vec<usize>>,
    pub etype: Option<Vec<usize>>,
    pub components: Vec<Vec<usize>>,
}

pub fn profile(f: &Graph) -> StructureProfile {
    let f = f.clone().without_labels();
    let n = f.n();
    let is_forest = f.is_forest();
    let linear = is_linear_forest(&f);
    let cycle_rank = f.cycle_rank();
    StructureProfile {
        n,
        m: f.edge_count(),
        is_connected: f.is_connected(),
        is_clique: n > 0 && f.is_complete(),
        induced_subgraph_of_p4: induced_in_path(&f, 4),
        induced_subgraph_of_p2: induced_in_path(&f, 2),
        is_planar: is_planar(&f),
        is_apex_planar: apex(&f, is_planar),
        is_forest,
        is_apex_forest: apex(&f, |g| g.is_forest()),
        is_linear_forest: linear,
        is_apex_linear_forest: apex(&f, is_linear_forest),
        in_script_s: in_script_s(&f),
        subgraph_of_subdivided_star: is_forest && high_degree(&f, 3) <= 1,
        min_h2_ell: min_h2_ell(&f),
        is_bipartite: f.is_bipartite(),
        contains_c4: f.girth().is_some_and(|g| g <= 4) && contains_c4(&f),
        cycle_rank,
        cycle_count: count_cycles(&f, CYCLE_COUNT_STEPS),
        unicyclic: cycle_rank == 1,
        vtype: vtype_parse(&f),
        etype: etype_parse(&f),
        components: f.components(),
    }
}

fn high_degree(f: &Graph, d: usize) -> usize {
    (0..f.n()).filter(|&v| f.degree(v) >= d).count()
}

pub fn is_linear_forest(f: &Graph) -> bool {
    f.is_forest() && f.max_degree() <= 2
}

/// `X(F)` or `X(F - v)` for some `v`.
pub fn apex(f: &Graph, pred: impl Fn(&Graph) -> bool) -> bool {
    pred(f) || (0..f.n()).any(|v| pred(&f.remove_vertex(v)))
}

fn induced_in_path(f: &Graph, k: usize) -> bool {
    f.n() <= k && has_induced_subgraph(&path(k).expect("k >= 1"), f, UNLIMITED).is_found()
}

fn in_script_s(f: &Graph) -> bool {
    f.is_forest()
        && f.components().iter().all(|c| {
            let degs: Vec<usize> = c.iter().map(|&v| f.degree(v)).collect();
            let big = degs.iter().filter(|&&d| d >= 3).count();
            big == 0 || (big == 1 && degs.iter().all(|&d| d <= 3))
        })
}

fn min_h2_ell(f: &Graph) -> Option<usize> {
    if !f.is_forest() || f.max_degree() > 3 || high_degree(f, 3) > 2 {
        return None;
    }
    // |H_2^l| = 3 + 4l; containment is monotone in l
    let start = f.n().saturating_sub(3).div_ceil(4).max(1);
    (start..=f.n().max(1))
        .find(|&l| has_subgraph(&h_graph(2, l).expect("valid"), f, UNLIMITED).is_found())
}

fn contains_c4(f: &Graph) -> bool {
    (0..f.n()).any(|u| {
        ((u + 1)..f.n()).any(|v| f.neighbor_set(u).intersection_len(f.neighbor_set(v)) >= 2)
    })
}

/// Each cycle is counted once from its least vertex, in one direction.
pub fn count_cycles(f: &Graph, max_steps: u64) -> Option<u64> {
    struct Dfs<'a> {
        f: &'a Graph,
        start: usize,
        on: Vec<bool>,
        found: u64,
        steps: u64,
        max: u64,
    }
    impl Dfs<'_> {
        fn go(&mut self, v: usize, len: usize) -> bool {
            self.steps += 1;
            if self.steps > self.max {
                return false;
            }
            for &w in self.f.neighbors(v) {
                if w == self.start && len >= 3 {
                    self.found += 1;
                } else if w > self.start && !self.on[w] {
                    self.on[w] = true;
                    let ok = self.go(w, len + 1);
                    self.on[w] = false;
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
    }
    let mut total = 0;
    let mut steps = 0;
    for s in 0..f.n() {
        let mut d = Dfs {
            f,
            start: s,
            on: vec![false; f.n()],
            found: 0,
            steps,
            max: max_steps,
        };
        d.on[s] = true;
        if !d.go(s, 1) {
            return None;
        }
        steps = d.steps;
        total += d.found / 2;
    }
    Some(total)
}

fn is_cycle_graph(f: &Graph) -> bool {
    f.n() >= 3 && f.is_connected() && (0..f.n()).all(|v| f.degree(v) == 2)
}

/// Vertices of a path component from one end to the other; `None` if not a path.
fn path_order(g: &Graph, comp: &[usize]) -> Option<Vec<usize>> {
    if comp.len() == 1 {
        return Some(comp.to_vec());
    }
    let end = *comp.iter().find(|&&v| g.degree(v) == 1)?;
    if comp.iter().any(|&v| g.degree(v) > 2) {
        return None;
    }
    let mut order = vec![end];
    let mut prev = usize::MAX;
    let mut cur = end;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == comp.len()).then_some(order)
}

/// Interior vertices of a path listed end to end.
fn inner(p: &[usize]) -> &[usize] {
    if p.len() < 2 {
        &[]
    } else {
        &p[1..p.len() - 1]
    }
}

/// Paths of `F - removed` in original ids, each listed end to end.
fn residual_paths(f: &Graph, removed: &[usize]) -> Option<Vec<Vec<usize>>> {
    let keep: Vec<usize> = (0..f.n()).filter(|v| !removed.contains(v)).collect();
    let rest = f.induced_subgraph(&keep);
    rest.components()
        .iter()
        .map(|c| path_order(&rest, c).map(|p| p.into_iter().map(|i| keep[i]).collect()))
        .collect()
}

pub fn vtype_parse(f: &Graph) -> Option<Vec<usize>> {
    if is_cycle_graph(f) {
        return Some(vec![f.n()]);
    }
    if !f.is_connected() {
        return None;
    }
    let c = (0..f.n()).max_by_key(|&v| f.degree(v))?;
    let deg = f.degree(c);
    if deg < 4 || deg % 2 == 1 {
        return None;
    }
    let paths = residual_paths(f, &[c])?;
    let mut lengths = Vec::with_capacity(paths.len());
    for p in &paths {
        if p.len() < 2 {
            return None;
        }
        let (a, b) = (p[0], p[p.len() - 1]);
        let inner_free = p[1..p.len() - 1].iter().all(|&v| !f.has_edge(c, v));
        if !f.has_edge(c, a) || !f.has_edge(c, b) || !inner_free {
            return None;
        }
        lengths.push(p.len() + 1);
    }
    lengths.sort_unstable();
    Some(lengths)
}

pub fn etype_parse(f: &Graph) -> Option<Vec<usize>> {
    if is_cycle_graph(f) {
        return Some(vec![f.n()]);
    }
    if !f.is_connected() {
        return None;
    }
    'edges: for (u, v) in f.edges() {
        let k = f.degree(u);
        if k < 3 || f.degree(v) != k {
            continue;
        }
        let Some(paths) = residual_paths(f, &[u, v]) else {
            continue;
        };
        if paths.len() != k - 1 {
            continue;
        }
        let mut lengths = Vec::with_capacity(paths.len());
        for p in &paths {
            let (a, b) = (p[0], p[p.len() - 1]);
            let oriented =
                (f.has_edge(u, a) && f.has_edge(v, b)) || (f.has_edge(v, a) && f.has_edge(u, b));
            let inner_free = inner(p)
                .iter()
                .all(|&w| !f.has_edge(u, w) && !f.has_edge(v, w));
            if !oriented || !inner_free {
                continue 'edges;
            }
            lengths.push(p.len() + 2);
        }
        lengths.sort_unstable();
        return Some(lengths);
    }
    None
}

/// Whether `F` is a subgraph of `C^V_{k x [L]}` for some `k >= 1` and even `L >= min_len`.
pub fn subgraph_of_uniform_vbouquet(f: &Graph, min_len: usize) -> bool {
    if is_linear_forest(f) {
        return true;
    }
    (0..f.n()).any(|c| {
        let Some(paths) = residual_paths(f, &[c]) else {
            return false;
        };
        let mut cycle_len: Option<usize> = None;
        let mut longest_other = 0;
        for p in &paths {
            let (a, b) = (p[0], p[p.len() - 1]);
            if inner(p).iter().any(|&w| f.has_edge(c, w)) {
                return false;
            }
            if p.len() >= 2 && f.has_edge(c, a) && f.has_edge(c, b) {
                let l = p.len() + 1;
                if cycle_len.is_some_and(|x| x != l) {
                    return false;
                }
                cycle_len = Some(l);
            } else {
                longest_other = longest_other.max(p.len());
            }
        }
        match cycle_len {
            None => true,
            Some(l) => l % 2 == 0 && l >= min_len && longest_other < l,
        }
    })
}

/// `F` contains `C^mode_{lengths}` as a subgraph (three-valued).
pub fn contains_bouquet(
    f: &Graph,
    lengths: &[usize],
    mode: BouquetMode,
    budget: u64,
) -> Outcome<()> {
    use crate::containment::{vtype_or_etype_free, Freeness};
    let shared = match mode {
        BouquetMode::Vertex => 1,
        BouquetMode::Edge => 2,
    };
    let need: usize = shared + lengths.iter().map(|l| l - shared).sum::<usize>();
    if need > f.n() || f.cycle_rank() < lengths.len() {
        return Outcome::Absent;
    }
    match vtype_or_etype_free(f, lengths, mode, budget) {
        Freeness::Free => Outcome::Absent,
        Freeness::Contains(_) => Outcome::Found(()),
        Freeness::Budget => Outcome::Budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::graph::join;

    #[test]
    fn examples() {
        let c6 = profile(&cycle(6).unwrap());
        assert!(c6.is_bipartite && c6.unicyclic && !c6.contains_c4 && c6.is_apex_linear_forest);
        assert_eq!(c6.vtype, Some(vec![6]));
        let s = profile(&spider(&[2, 2, 2]).unwrap());
        assert!(s.subgraph_of_subdivided_star && s.in_script_s);
        let h = profile(&h_graph(2, 3).unwrap());
        assert!(!h.subgraph_of_subdivided_star);
        assert_eq!(h.min_h2_ell, Some(3));
    }

    #[test]
    fn bouquet_parses() {
        let v = cycle_bouquet(&[6, 8], BouquetMode::Vertex).unwrap();
        assert_eq!(vtype_parse(&v), Some(vec![6, 8]));
        assert_eq!(etype_parse(&v), None);
        let e = cycle_bouquet(&[3, 6, 6], BouquetMode::Edge).unwrap();
        assert_eq!(etype_parse(&e), Some(vec![3, 6, 6]));
        assert_eq!(vtype_parse(&e), None);
        assert!(subgraph_of_uniform_vbouquet(
            &cycle_bouquet(&[6, 6, 6], BouquetMode::Vertex).unwrap(),
            6
        ));
        assert!(!subgraph_of_uniform_vbouquet(&v, 6));
        assert!(subgraph_of_uniform_vbouquet(
            &spider(&[9, 1, 1, 4]).unwrap(),
            6
        ));
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(count_cycles(&complete(4).unwrap(), 1000), Some(7));
        assert_eq!(count_cycles(&path(5).unwrap(), 1000), Some(0));
        let k = join(&path(3).unwrap(), &complete(1).unwrap());
        assert_eq!(profile(&k).cycle_count, Some(3));
    }
}
