//! Completion search around an induced path: connect every far pair of path vertices within
//! the diameter bound while never closing a cycle of the forbidden length.
//!
//! Vertices `0..=l` are the path, the rest are witnesses. Edges between two path vertices are
//! only the path edges, so the path stays induced. Refuted is relative to the witness cap.

use serde::{Deserialize, Serialize};

use crate::constructions::cycle;
use crate::containment::{has_subgraph, UNLIMITED};
use crate::error::domain;
use crate::graph::{bfs_distances, Graph};
use crate::{Error, Result};

/// Vertex capacity of the bitset model.
pub const MODEL_LIMIT: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefuteConfig {
    /// Half the forbidden cycle length.
    pub r: usize,
    pub d: u32,
    /// Edges on the induced path.
    pub l: usize,
    /// Witness cap.
    pub w: usize,
}

impl RefuteConfig {
    /// Default cap `3l/d`, clipped to the model capacity.
    pub fn new(r: usize, d: u32, l: usize) -> Result<Self> {
        let w = 3 * l / d.max(1) as usize;
        Self::with_witnesses(r, d, l, w.min(MODEL_LIMIT.saturating_sub(l + 1)))
    }

    pub fn with_witnesses(r: usize, d: u32, l: usize, w: usize) -> Result<Self> {
        if r < 2 {
            return Err(domain("r must be at least 2"));
        }
        if !(2..=3).contains(&d) {
            return Err(domain("d must be 2 or 3"));
        }
        if l < 2 {
            return Err(domain("the path needs at least 2 edges"));
        }
        if l + 1 + w > MODEL_LIMIT {
            return Err(Error::SizeLimit {
                what: "refuter model",
                n: l + 1 + w,
                limit: MODEL_LIMIT,
            });
        }
        Ok(RefuteConfig { r, d, l, w })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    /// Far pairs of the bare path.
    pub initial_far_pairs: usize,
}

/// A completion: the path on `0..=l` plus witnesses, all path pairs within distance `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Model {
    pub r: usize,
    pub d: u32,
    pub l: usize,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Model {
    pub fn graph(&self) -> Result<Graph> {
        Ok(Graph::from_edges(self.vertices, &self.edges)?)
    }
}

/// Resumable search position: `stack[k]` is the next option index at depth `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config: RefuteConfig,
    pub stack: Vec<usize>,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum RefutationOutcome {
    Refuted {
        stats: SearchStats,
    },
    Consistent {
        model: Model,
        stats: SearchStats,
    },
    BudgetExhausted {
        checkpoint: Checkpoint,
        stats: SearchStats,
    },
}

impl RefutationOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, RefutationOutcome::Refuted { .. })
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            RefutationOutcome::Refuted { stats }
            | RefutationOutcome::Consistent { stats, .. }
            | RefutationOutcome::BudgetExhausted { stats, .. } => stats,
        }
    }
}

/// Searches with the default witness cap; `budget` counts search nodes.
pub fn refute_path(r: usize, d: u32, l: usize, budget: u64) -> Result<RefutationOutcome> {
    search(&RefuteConfig::new(r, d, l)?, budget, None)
}

/// Searches with an explicit configuration.
pub fn refute_with(cfg: &RefuteConfig, budget: u64) -> Result<RefutationOutcome> {
    search(cfg, budget, None)
}

/// Continues a search from a checkpoint with a fresh node budget.
pub fn resume(checkpoint: &Checkpoint, budget: u64) -> Result<RefutationOutcome> {
    search(&checkpoint.config, budget, Some(checkpoint))
}

/// Re-checks a model from scratch: induced path present, no `C_{2r}` subgraph, every pair of
/// path vertices within distance `d`.
pub fn verify_model(m: &Model) -> bool {
    let Ok(g) = m.graph() else { return false };
    if m.l + 1 > m.vertices {
        return false;
    }
    for i in 0..=m.l {
        for j in i + 1..=m.l {
            if g.has_edge(i, j) != (j == i + 1) {
                return false;
            }
        }
    }
    let Ok(c) = cycle(2 * m.r) else { return false };
    if !has_subgraph(&g, &c, UNLIMITED).is_absent() {
        return false;
    }
    (0..=m.l).all(|i| {
        let dist = bfs_distances(&g, i);
        (0..=m.l).all(|j| dist[j].is_some_and(|x| x <= m.d))
    })
}

#[derive(Clone)]
struct State {
    adj: Vec<u128>,
    used: usize,
}

type Edges = Vec<(usize, usize)>;

struct Frame {
    state: State,
    options: Vec<Edges>,
    next: usize,
}

struct Engine {
    cfg: RefuteConfig,
    cap: usize,
}

fn search(cfg: &RefuteConfig, budget: u64, from: Option<&Checkpoint>) -> Result<RefutationOutcome> {
    let cfg = RefuteConfig::with_witnesses(cfg.r, cfg.d, cfg.l, cfg.w)?;
    let eng = Engine {
        cfg,
        cap: cfg.l + 1 + cfg.w,
    };
    let mut root = State {
        adj: vec![0; eng.cap],
        used: cfg.l + 1,
    };
    for i in 0..cfg.l {
        root.add(i, i + 1);
    }
    let mut stats = SearchStats {
        nodes: 0,
        max_depth: 0,
        initial_far_pairs: eng.far_pairs(&root).len(),
    };
    let mut frames: Vec<Frame> = Vec::new();
    let start_nodes;
    match from {
        None => {
            start_nodes = 0;
            match eng.expand(root) {
                Ok(model) => return Ok(consistent(&eng, model, stats)),
                Err(f) => frames.push(f),
            }
            stats.nodes = 1;
        }
        Some(cp) => {
            if cp.config != cfg || cp.stack.is_empty() {
                return Err(Error::Query(
                    "checkpoint does not match the configuration".into(),
                ));
            }
            let mut state = root;
            for (k, &next) in cp.stack.iter().enumerate() {
                let f = match eng.expand(state) {
                    Ok(_) => return Err(Error::Query("checkpoint replays past a model".into())),
                    Err(f) => f,
                };
                if next > f.options.len() || (k + 1 < cp.stack.len() && next == 0) {
                    return Err(Error::Query("checkpoint index out of range".into()));
                }
                state = f.state.clone();
                if k + 1 < cp.stack.len() {
                    state.apply(&f.options[next - 1]);
                }
                frames.push(Frame { next, ..f });
            }
            start_nodes = cp.nodes;
            stats.nodes = cp.nodes;
        }
    }
    while let Some(top) = frames.last_mut() {
        if top.next == top.options.len() {
            frames.pop();
            continue;
        }
        if stats.nodes - start_nodes >= budget {
            let checkpoint = Checkpoint {
                config: cfg,
                stack: frames.iter().map(|f| f.next).collect(),
                nodes: stats.nodes,
            };
            return Ok(RefutationOutcome::BudgetExhausted { checkpoint, stats });
        }
        let mut child = top.state.clone();
        child.apply(&top.options[top.next]);
        top.next += 1;
        stats.nodes += 1;
        match eng.expand(child) {
            Ok(model) => return Ok(consistent(&eng, model, stats)),
            Err(f) => frames.push(f),
        }
        stats.max_depth = stats.max_depth.max(frames.len());
    }
    Ok(RefutationOutcome::Refuted { stats })
}

fn consistent(eng: &Engine, s: State, stats: SearchStats) -> RefutationOutcome {
    let mut edges = Vec::new();
    for u in 0..s.used {
        for v in u + 1..s.used {
            if s.adj[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    let model = Model {
        r: eng.cfg.r,
        d: eng.cfg.d,
        l: eng.cfg.l,
        vertices: s.used,
        edges,
    };
    debug_assert!(verify_model(&model));
    RefutationOutcome::Consistent { model, stats }
}

impl State {
    fn add(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn apply(&mut self, edges: &Edges) {
        for &(u, v) in edges {
            self.add(u, v);
            self.used = self.used.max(u.max(v) + 1);
        }
    }
}

impl Engine {
    /// A finished model, or the frame of viable options for the most constrained far pair.
    fn expand(&self, state: State) -> std::result::Result<State, Frame> {
        let far = self.far_pairs(&state);
        if far.is_empty() {
            return Ok(state);
        }
        let mut best: Option<Vec<Edges>> = None;
        for &(i, j) in &far {
            let limit = best.as_ref().map_or(usize::MAX, |b| b.len());
            let opts = self.viable(&state, i, j, limit);
            if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                let done = opts.len() <= 1;
                best = Some(opts);
                if done {
                    break;
                }
            }
        }
        Err(Frame {
            state,
            options: best.unwrap_or_default(),
            next: 0,
        })
    }

    fn far_pairs(&self, s: &State) -> Vec<(usize, usize)> {
        let l = self.cfg.l;
        let path_mask: u128 = if l + 1 == 128 {
            u128::MAX
        } else {
            (1u128 << (l + 1)) - 1
        };
        let mut out = Vec::new();
        for i in 0..=l {
            let mut reach = 1u128 << i;
            let mut frontier = reach;
            for _ in 0..self.cfg.d {
                let mut next = 0u128;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= s.adj[v];
                }
                frontier = next & !reach;
                reach |= next;
            }
            let mut miss = !reach & path_mask & !((1u128 << (i + 1)) - 1);
            while miss != 0 {
                let j = miss.trailing_zeros() as usize;
                miss &= miss - 1;
                out.push((i, j));
            }
        }
        out
    }

    /// Connector edge sets for `(i, j)` that keep the graph free of `C_{2r}`; stops past `limit`.
    fn viable(&self, s: &State, i: usize, j: usize, limit: usize) -> Vec<Edges> {
        let l = self.cfg.l;
        let fresh = |k: usize| (s.used + k < self.cap).then_some(s.used + k);
        let witnesses: Vec<usize> = (l + 1..s.used).collect();
        let mut cands: Vec<Vec<usize>> = Vec::new();
        for &x in &witnesses {
            cands.push(vec![x]);
        }
        if let Some(f) = fresh(0) {
            cands.push(vec![f]);
        }
        if self.cfg.d == 3 {
            let near = |p: usize| {
                let mut v = Vec::new();
                if p > 0 {
                    v.push(p - 1);
                }
                if p < l {
                    v.push(p + 1);
                }
                v
            };
            let mut first: Vec<usize> = near(i);
            first.extend(&witnesses);
            first.extend(fresh(0));
            for &a in &first {
                let mut second: Vec<usize> = near(j);
                second.extend(&witnesses);
                if a == s.used {
                    second.extend(fresh(1));
                } else {
                    second.extend(fresh(0));
                }
                for &b in &second {
                    if a == b || (a <= l && b <= l) {
                        continue;
                    }
                    cands.push(vec![a, b]);
                }
            }
        }
        let mut out: Vec<Edges> = Vec::new();
        for mid in cands {
            let mut walk = vec![i];
            walk.extend(&mid);
            walk.push(j);
            let mut edges: Edges = walk
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .filter(|&(u, v)| u >= s.used || v >= s.used || !s.has(u, v))
                .collect();
            edges.sort_unstable();
            if out.contains(&edges) {
                continue;
            }
            let mut t = s.clone();
            t.apply(&edges);
            if edges.iter().any(|&(u, v)| self.closes_cycle(&t, u, v)) {
                continue;
            }
            out.push(edges);
            if out.len() >= limit {
                break;
            }
        }
        out
    }

    /// Whether edge `uv` lies on a cycle of length exactly `2r` in `s`.
    fn closes_cycle(&self, s: &State, u: usize, v: usize) -> bool {
        let len = 2 * self.cfg.r - 1;
        fn walk(s: &State, cur: usize, target: usize, left: usize, seen: u128) -> bool {
            if left == 1 {
                return s.adj[cur] >> target & 1 == 1;
            }
            let mut nb = s.adj[cur] & !seen & !(1u128 << target);
            while nb != 0 {
                let x = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if walk(s, x, target, left - 1, seen | 1u128 << x) {
                    return true;
                }
            }
            false
        }
        walk(s, v, u, len, 1u128 << u | 1u128 << v)
    }
}
