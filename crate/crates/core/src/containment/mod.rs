//! Exact pattern containment: subgraph, induced subgraph, minor, the biclique-or-induced-path
//! witness, and cycle packings through an anchor (which decide `C^V` / `C^E` containment).
//!
//! Every search takes a node budget and answers three-valued; [`Outcome::Budget`] is never
//! reported as absence.

mod cycles;
mod iso;
mod minor;

use serde::{Deserialize, Serialize};

pub use cycles::{
    cycle_packing, enumerate_cycles, first_cycle, vtype_or_etype_free, Anchor, CyclePacking,
    Freeness,
};
pub use iso::{has_induced_subgraph, has_subgraph};
pub use minor::has_minor;

use crate::bitset::VertexSet;
use crate::constructions::complete_bipartite;
use crate::graph::{Graph, PathKind, PathWitness};

/// Search without a node limit.
pub const UNLIMITED: u64 = u64::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "witness")]
pub enum Outcome<T> {
    Found(T),
    /// Exhaustive search completed without a witness.
    Absent,
    /// Node budget hit before a decision.
    Budget,
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Outcome::Absent)
    }

    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Subgraph,
    Induced,
    Minor,
}

/// `branch_sets[i]` is the host image of pattern vertex `i`; singletons except in minor mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub mode: Mode,
    pub branch_sets: Vec<Vec<usize>>,
}

impl Embedding {
    pub(crate) fn from_map(mode: Mode, map: &[usize]) -> Self {
        Embedding {
            mode,
            branch_sets: map.iter().map(|&v| vec![v]).collect(),
        }
    }

    /// The vertex map when every branch set is a singleton.
    pub fn vertex_map(&self) -> Option<Vec<usize>> {
        self.branch_sets
            .iter()
            .map(|b| (b.len() == 1).then(|| b[0]))
            .collect()
    }

    pub fn verify(&self, host: &Graph, pattern: &Graph) -> bool {
        let k = pattern.n();
        if self.branch_sets.len() != k {
            return false;
        }
        let mut used = VertexSet::new(host.n());
        for b in &self.branch_sets {
            if b.is_empty() || (self.mode != Mode::Minor && b.len() != 1) {
                return false;
            }
            for &v in b {
                if v >= host.n() || !used.insert(v) {
                    return false;
                }
            }
            if !host.induced_subgraph(b).is_connected() {
                return false;
            }
        }
        let touch =
            |a: &[usize], b: &[usize]| a.iter().any(|&u| b.iter().any(|&w| host.has_edge(u, w)));
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (&self.branch_sets[i], &self.branch_sets[j]);
                let e = pattern.has_edge(i, j);
                if e && !touch(a, b) {
                    return false;
                }
                if self.mode == Mode::Induced && !e && host.has_edge(a[0], b[0]) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn contains(host: &Graph, pattern: &Graph, mode: Mode, budget: u64) -> Outcome<Embedding> {
    match mode {
        Mode::Subgraph => has_subgraph(host, pattern, budget),
        Mode::Induced => has_induced_subgraph(host, pattern, budget),
        Mode::Minor => has_minor(host, pattern, budget),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GrsWitness {
    Biclique {
        embedding: Embedding,
    },
    InducedPath {
        path: PathWitness,
    },
    /// Both searches ran to completion: no `K_{r,s}` subgraph and no induced `P_l`.
    Exhausted,
    /// A search hit its budget before either object was found.
    Undecided,
}

/// A `K_{r,s}` subgraph, else an induced path on `l` vertices, else proof that neither exists.
pub fn grs_witness(g: &Graph, r: usize, s: usize, l: usize, budget: u64) -> GrsWitness {
    let Ok(k) = complete_bipartite(r, s) else {
        return GrsWitness::Undecided;
    };
    let bi = has_subgraph(g, &k, budget);
    if let Outcome::Found(embedding) = bi {
        return GrsWitness::Biclique { embedding };
    }
    let search = crate::graph::paths::induced_path_with_target(g, l, budget);
    if search.path.vertices.len() >= l {
        let mut vertices = search.path.vertices;
        vertices.truncate(l);
        return GrsWitness::InducedPath {
            path: PathWitness {
                vertices,
                kind: PathKind::Induced,
            },
        };
    }
    if bi.is_absent() && search.exact {
        GrsWitness::Exhausted
    } else {
        GrsWitness::Undecided
    }
}
