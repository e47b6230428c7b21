use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::containment::{contains, Mode, Outcome};
use crate::error::domain;
use crate::graph::io::to_graph6;
use crate::graph::{canonical_code, diameter, Graph, GraphBuilder};
use crate::width::{solve, Param};
use crate::{Error, Result};

/// Largest order accepted by [`census`] and [`connected_graphs`].
pub const CENSUS_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub count: u64,
    /// `None` when no graph qualifies.
    pub max_width: Option<usize>,
    /// graph6 of the first graph (in canonical-code order) attaining `max_width`.
    pub witness: Option<String>,
}

/// Connected graphs on exactly `n` vertices up to isomorphism, one per class, in canonical-code order.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut levels = connected_levels(n)?;
    Ok(levels.pop().unwrap_or_default())
}

/// `levels[k]` holds the connected graphs on `k + 1` vertices.
fn connected_levels(n_max: usize) -> Result<Vec<Vec<Graph>>> {
    if n_max > CENSUS_LIMIT {
        return Err(Error::SizeLimit {
            what: "census",
            n: n_max,
            limit: CENSUS_LIMIT,
        });
    }
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    if n_max == 0 {
        return Ok(levels);
    }
    levels.push(vec![Graph::empty(1)]);
    for n in 2..=n_max {
        // Every connected graph has a non-cut vertex, so extending each smaller one by a
        // vertex with a nonempty neighbourhood reaches every class.
        levels.push(extend(levels.last().unwrap(), n, |mask| mask != 0)?);
    }
    Ok(levels)
}

/// All graphs (connected or not) on exactly `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > CENSUS_LIMIT {
        return Err(Error::SizeLimit {
            what: "census",
            n,
            limit: CENSUS_LIMIT,
        });
    }
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        level = extend(&level, k, |_| true)?;
    }
    Ok(level)
}

fn extend(prev: &[Graph], n: usize, keep: impl Fn(u32) -> bool) -> Result<Vec<Graph>> {
    let mut seen: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    let old = n - 1;
    for g in prev {
        let edges = g.edges();
        for mask in 0u32..1 << old {
            if !keep(mask) {
                continue;
            }
            let mut b = GraphBuilder::new(n);
            for &(u, v) in &edges {
                b.add_edge(u, v)?;
            }
            for u in 0..old {
                if mask >> u & 1 == 1 {
                    b.add_edge(u, old)?;
                }
            }
            let h = b.build();
            let code = canonical_code(&h)?;
            seen.entry(code).or_insert(h);
        }
    }
    Ok(seen.into_values().collect())
}

/// Per order `1..=n_max`: the connected graphs of diameter at most `d` that avoid `forbidden`
/// under `relation`, with the largest exact width among them.
pub fn census(
    n_max: usize,
    forbidden: &Graph,
    relation: Mode,
    d: u32,
    param: Param,
) -> Result<Vec<CensusRow>> {
    if param == Param::Cw {
        return Err(domain("the census computes td, pw or tw"));
    }
    let levels = connected_levels(n_max)?;
    let mut rows = Vec::with_capacity(levels.len());
    for (i, level) in levels.iter().enumerate() {
        let mut row = CensusRow {
            n: i + 1,
            count: 0,
            max_width: None,
            witness: None,
        };
        for g in level {
            if !qualifies(g, forbidden, relation, d)? {
                continue;
            }
            row.count += 1;
            let w = solve(g, param, None)?
                .value
                .ok_or_else(|| domain("width solver did not finish on a census graph"))?;
            if row.max_width.is_none_or(|m| w > m) {
                row.max_width = Some(w);
                row.witness = Some(to_graph6(g));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Diameter and freeness test used by [`census`], exposed for re-verification of witnesses.
pub fn qualifies(g: &Graph, forbidden: &Graph, relation: Mode, d: u32) -> Result<bool> {
    if !diameter(g)?.at_most(d) {
        return Ok(false);
    }
    match contains(g, forbidden, relation, crate::containment::UNLIMITED) {
        Outcome::Found(_) => Ok(false),
        Outcome::Absent => Ok(true),
        Outcome::Budget => unreachable!("unlimited search returned on budget"),
    }
}
