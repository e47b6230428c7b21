//! Exact treedepth, pathwidth and treewidth at desk scale, with certificates.
//!
//! Above the exact limits the solvers return a `(lower, upper)` pair and an upper-bound
//! certificate instead of a value.

mod pw;
mod td;
mod tw;

use serde::{Deserialize, Serialize};

pub use pw::{ordering_to_path_decomposition, vertex_separation};
pub use tw::ordering_to_tree_decomposition;

use crate::graph::{longest_path, Graph};

pub const TD_LIMIT: usize = 24;
pub const PW_LIMIT: usize = 20;
pub const TW_LIMIT: usize = 16;

/// Version tag written into certificate JSON.
pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Td,
    Pw,
    Tw,
    Cw,
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Param::Td => "td",
            Param::Pw => "pw",
            Param::Tw => "tw",
            Param::Cw => "cw",
        })
    }
}

impl std::str::FromStr for Param {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "td" => Ok(Param::Td),
            "pw" => Ok(Param::Pw),
            "tw" => Ok(Param::Tw),
            "cw" => Ok(Param::Cw),
            _ => Err(crate::Error::Query(format!("unknown parameter `{s}`"))),
        }
    }
}

/// `parent[v] = None` marks a root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationForest {
    pub parent: Vec<Option<usize>>,
}

impl EliminationForest {
    /// Depth of every vertex (roots have depth 1), or `None` if the parent map has a cycle
    /// or an out-of-range entry.
    pub fn depths(&self) -> Option<Vec<usize>> {
        let n = self.parent.len();
        let mut depth = vec![0usize; n];
        for v in 0..n {
            let mut chain = vec![v];
            let mut x = v;
            while depth[x] == 0 {
                match self.parent[x] {
                    None => {
                        depth[x] = 1;
                        break;
                    }
                    Some(p) if p < n && chain.len() <= n => {
                        chain.push(p);
                        x = p;
                    }
                    _ => return None,
                }
            }
            let mut d = depth[x];
            for &y in chain.iter().rev() {
                if depth[y] == 0 {
                    d += 1;
                    depth[y] = d;
                } else {
                    d = depth[y];
                }
            }
        }
        Some(depth)
    }

    pub fn height(&self) -> Option<usize> {
        self.depths().map(|d| d.into_iter().max().unwrap_or(0))
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Valid for `g`: a forest on `V(g)` whose ancestor relation covers every edge.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.parent.len() == g.n()
            && self.depths().is_some()
            && g.edges()
                .into_iter()
                .all(|(u, v)| self.is_ancestor(u, v) || self.is_ancestor(v, u))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let k = self.bags.len();
        if g.n() == 0 {
            return true;
        }
        if k == 0 || self.edges.len() != k - 1 {
            return false;
        }
        let mut tree = crate::GraphBuilder::new(k);
        for &(a, b) in &self.edges {
            if tree.add_edge(a, b).is_err() {
                return false;
            }
        }
        let tree = tree.build();
        if !tree.is_connected() || tree.edge_count() != k - 1 {
            return false;
        }
        if self.bags.iter().flatten().any(|&v| v >= g.n()) {
            return false;
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return false;
            }
        }
        (0..g.n()).all(|v| {
            let holding: Vec<usize> = (0..k).filter(|&i| self.bags[i].contains(&v)).collect();
            !holding.is_empty() && tree.induced_subgraph(&holding).is_connected()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Certificate {
    Forest { forest: EliminationForest },
    Ordering { order: Vec<usize> },
    Decomposition { decomposition: TreeDecomposition },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthResult {
    pub schema: u32,
    pub parameter: Param,
    /// `Some` iff solved exactly.
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    /// Witnesses `upper`.
    pub certificate: Certificate,
}

impl WidthResult {
    fn exact(parameter: Param, v: usize, certificate: Certificate) -> Self {
        WidthResult {
            schema: CERTIFICATE_SCHEMA,
            parameter,
            value: Some(v),
            lower: v,
            upper: v,
            certificate,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }
}

pub fn treedepth_exact(g: &Graph) -> WidthResult {
    treedepth_with_limit(g, TD_LIMIT)
}

pub fn treedepth_with_limit(g: &Graph, limit: usize) -> WidthResult {
    if g.n() <= limit.min(64) {
        let (t, forest) = td::solve(g);
        return WidthResult::exact(Param::Td, t, Certificate::Forest { forest });
    }
    let (lower, _) = treedepth_bounds(g);
    let forest = separator_forest(g);
    let upper = forest.height().unwrap_or(g.n());
    WidthResult {
        schema: CERTIFICATE_SCHEMA,
        parameter: Param::Td,
        value: None,
        lower: lower.min(upper),
        upper,
        certificate: Certificate::Forest { forest },
    }
}

pub fn pathwidth_exact(g: &Graph) -> WidthResult {
    pathwidth_with_limit(g, PW_LIMIT)
}

pub fn pathwidth_with_limit(g: &Graph, limit: usize) -> WidthResult {
    if g.n() <= limit.min(24) {
        let (p, order) = pw::solve(g);
        return WidthResult::exact(Param::Pw, p, Certificate::Ordering { order });
    }
    let order = pw::greedy_order(g);
    let upper = vertex_separation(g, &order);
    WidthResult {
        schema: CERTIFICATE_SCHEMA,
        parameter: Param::Pw,
        value: None,
        lower: degeneracy(g).min(upper),
        upper,
        certificate: Certificate::Ordering { order },
    }
}

pub fn treewidth_exact(g: &Graph) -> WidthResult {
    treewidth_with_limit(g, TW_LIMIT)
}

pub fn treewidth_with_limit(g: &Graph, limit: usize) -> WidthResult {
    if g.n() <= limit.min(24) {
        let (t, order) = tw::solve(g);
        let decomposition = ordering_to_tree_decomposition(g, &order);
        debug_assert_eq!(decomposition.width(), t);
        return WidthResult::exact(Param::Tw, t, Certificate::Decomposition { decomposition });
    }
    let order = tw::min_degree_order(g);
    let decomposition = ordering_to_tree_decomposition(g, &order);
    let upper = decomposition.width();
    WidthResult {
        schema: CERTIFICATE_SCHEMA,
        parameter: Param::Tw,
        value: None,
        lower: degeneracy(g).min(upper),
        upper,
        certificate: Certificate::Decomposition { decomposition },
    }
}

pub fn solve(g: &Graph, p: Param, limit: Option<usize>) -> crate::Result<WidthResult> {
    Ok(match p {
        Param::Td => treedepth_with_limit(g, limit.unwrap_or(TD_LIMIT)),
        Param::Pw => pathwidth_with_limit(g, limit.unwrap_or(PW_LIMIT)),
        Param::Tw => treewidth_with_limit(g, limit.unwrap_or(TW_LIMIT)),
        Param::Cw => return Err(crate::Error::Query("clique-width is not computed".into())),
    })
}

/// Recomputes the certificate's width and checks the claimed bounds against it.
pub fn verify_certificate(g: &Graph, r: &WidthResult) -> bool {
    let measured = match (&r.certificate, r.parameter) {
        (Certificate::Forest { forest }, Param::Td) => {
            if !forest.is_valid_for(g) {
                return false;
            }
            forest.height().unwrap_or(usize::MAX)
        }
        (Certificate::Ordering { order }, Param::Pw) => {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != (0..g.n()).collect::<Vec<_>>() {
                return false;
            }
            let bags = ordering_to_path_decomposition(g, order);
            let k = bags.len();
            let td = TreeDecomposition {
                bags,
                edges: (1..k).map(|i| (i - 1, i)).collect(),
            };
            if !td.is_valid_for(g) {
                return false;
            }
            vertex_separation(g, order)
        }
        (Certificate::Decomposition { decomposition }, Param::Tw) => {
            if !decomposition.is_valid_for(g) {
                return false;
            }
            decomposition.width()
        }
        _ => return false,
    };
    measured == r.upper
        && r.lower <= r.upper
        && r.value.is_none_or(|v| v == r.upper && v == r.lower)
}

pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !gone[v])
            .min_by_key(|&v| deg[v])
            .unwrap();
        best = best.max(deg[v]);
        gone[v] = true;
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

/// Treedepth bounds from a longest path with `l` edges: `ceil(log2(l + 2))` below
/// (a path on `p` vertices has treedepth `ceil(log2(p + 1))`), and above the smaller of
/// `l + 1` (when the path is exact) and the height of a separator-based elimination forest.
pub fn treedepth_bounds(g: &Graph) -> (usize, usize) {
    if g.n() == 0 {
        return (0, 0);
    }
    let lp = longest_path(g);
    let p = lp.path.vertices.len();
    let lower = ceil_log2(p + 1);
    let heuristic = separator_forest(g).height().unwrap_or(g.n());
    let upper = if lp.exact {
        heuristic.min(p)
    } else {
        heuristic
    };
    (lower, upper)
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Elimination forest built by repeatedly removing, in each component, a vertex that
/// minimises the largest remaining component.
pub fn separator_forest(g: &Graph) -> EliminationForest {
    let mut parent = vec![None; g.n()];
    let mut stack: Vec<(Vec<usize>, Option<usize>)> =
        g.components().into_iter().map(|c| (c, None)).collect();
    while let Some((comp, above)) = stack.pop() {
        let sub = g.induced_subgraph(&comp);
        let root = (0..comp.len())
            .min_by_key(|&i| {
                let rest: Vec<usize> = (0..comp.len()).filter(|&j| j != i).collect();
                let largest = sub
                    .induced_subgraph(&rest)
                    .components()
                    .iter()
                    .map(|c| c.len())
                    .max()
                    .unwrap_or(0);
                (largest, std::cmp::Reverse(sub.degree(i)))
            })
            .unwrap();
        parent[comp[root]] = above;
        let rest: Vec<usize> = (0..comp.len()).filter(|&j| j != root).collect();
        for c in sub.induced_subgraph(&rest).components() {
            stack.push((c.iter().map(|&j| comp[rest[j]]).collect(), Some(comp[root])));
        }
    }
    EliminationForest { parent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    #[test]
    fn closed_forms() {
        for n in 1..=10 {
            assert_eq!(treedepth_exact(&complete(n).unwrap()).value, Some(n));
        }
        assert_eq!(treedepth_exact(&path(7).unwrap()).value, Some(3));
        assert_eq!(treedepth_exact(&cycle(6).unwrap()).value, Some(4));
        assert_eq!(pathwidth_exact(&path(9).unwrap()).value, Some(1));
        assert_eq!(pathwidth_exact(&cycle(9).unwrap()).value, Some(2));
        assert_eq!(
            pathwidth_exact(&complete_bipartite(3, 3).unwrap()).value,
            Some(3)
        );
        assert_eq!(treewidth_exact(&complete(6).unwrap()).value, Some(5));
        assert_eq!(treewidth_exact(&spider(&[3, 3, 3]).unwrap()).value, Some(1));
    }

    #[test]
    fn certificates_verify() {
        for g in [
            wall(2, 0).unwrap(),
            cycle(7).unwrap(),
            complete_bipartite(3, 4).unwrap(),
        ] {
            for r in [
                treedepth_exact(&g),
                pathwidth_exact(&g),
                treewidth_exact(&g),
            ] {
                assert!(verify_certificate(&g, &r), "{r:?}");
            }
        }
        let p3 = path(3).unwrap();
        let good = WidthResult::exact(
            Param::Td,
            2,
            Certificate::Forest {
                forest: EliminationForest {
                    parent: vec![Some(1), None, Some(1)],
                },
            },
        );
        assert!(verify_certificate(&p3, &good));
        let mut bad = good.clone();
        bad.value = Some(1);
        bad.lower = 1;
        bad.upper = 1;
        assert!(!verify_certificate(&p3, &bad));
    }

    #[test]
    fn bounds() {
        assert_eq!(treedepth_bounds(&complete(1).unwrap()), (1, 1));
        let (lo, hi) = treedepth_bounds(&path(16).unwrap());
        assert!(lo >= 4 && hi <= 15);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
        let big = treedepth_with_limit(&path(40).unwrap(), 24);
        assert!(!big.is_exact() && verify_certificate(&path(40).unwrap(), &big));
    }
}
