//! Planarity by the Demoucron–Malgrange–Pertuiset path-embedding test, run per block.

use std::collections::HashSet;

use super::Graph;
use crate::bitset::VertexSet;

pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n <= 4 {
        return true;
    }
    if g.edge_count() > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|edges| block_planar(g, &edges))
}

/// Edge sets of the biconnected components (bridges included as single-edge blocks).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut idx)) = frames.last_mut() {
            if *idx < g.degree(u) {
                let w = g.neighbors(u)[*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn block_planar(g: &Graph, edges: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let (bn, bm) = (verts.len(), edges.len());
    if bn <= 4 || bm <= bn {
        return true;
    }
    if bm > 3 * bn - 6 {
        return false;
    }
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let cycle = find_cycle(&adj, verts[0]);
    let mut in_h = VertexSet::new(n);
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        in_h.insert(cycle[i]);
        h_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    while h_edges.len() < bm {
        let frags = fragments(&adj, &verts, &in_h, &h_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, f) in frags.iter().enumerate() {
            let ok: Vec<usize> = (0..faces.len())
                .filter(|&k| f.attach.iter().all(|a| faces[k].contains(a)))
                .collect();
            match ok.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, ok[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, ok[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("a fragment exists while edges remain");
        let path = fragment_path(&adj, &frags[fi], &in_h);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &v in &path {
            in_h.insert(v);
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let arc = |from: usize, to: usize| -> Vec<usize> {
            let mut v = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % len;
                v.push(face[i]);
            }
            v
        };
        let inner = &path[1..path.len() - 1];
        // a..b along the face, then back to a through the new path
        let mut f1 = arc(ia, ib);
        f1.extend(inner.iter().rev());
        let mut f2 = arc(ib, ia);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
    }
    true
}

struct Fragment {
    attach: Vec<usize>,
    /// Interior vertices (empty for a chord).
    inner: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(
    adj: &[Vec<usize>],
    verts: &[usize],
    in_h: &VertexSet,
    h_edges: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &u in verts {
        if !in_h.contains(u) {
            continue;
        }
        for &v in &adj[u] {
            if u < v && in_h.contains(v) && !h_edges.contains(&(u, v)) {
                out.push(Fragment {
                    attach: vec![u, v],
                    inner: vec![],
                    chord: Some((u, v)),
                });
            }
        }
    }
    let mut seen = VertexSet::new(adj.len());
    for &s in verts {
        if in_h.contains(s) || seen.contains(s) {
            continue;
        }
        seen.insert(s);
        let mut comp = vec![s];
        let mut attach = Vec::new();
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in &adj[u] {
                if in_h.contains(w) {
                    if !attach.contains(&w) {
                        attach.push(w);
                    }
                } else if seen.insert(w) {
                    comp.push(w);
                }
            }
        }
        out.push(Fragment {
            attach,
            inner: comp,
            chord: None,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], f: &Fragment, in_h: &VertexSet) -> Vec<usize> {
    if let Some((u, v)) = f.chord {
        return vec![u, v];
    }
    let a = f.attach[0];
    let inner: HashSet<usize> = f.inner.iter().copied().collect();
    let start = *adj[a].iter().find(|w| inner.contains(w)).unwrap();
    let mut prev = std::collections::HashMap::new();
    prev.insert(start, a);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if in_h.contains(w) && w != a {
                let mut path = vec![w, u];
                let mut x = u;
                while x != start {
                    x = prev[&x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if inner.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected graph have two attachments")
}

fn find_cycle(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    // DFS until a back edge closes a cycle.
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(s, 0usize)];
    depth[s] = 0;
    while let Some((u, i)) = stack.pop() {
        if i < adj[u].len() {
            stack.push((u, i + 1));
            let w = adj[u][i];
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push((w, 0));
            } else if w != parent[u] && depth[w] < depth[u] {
                let mut cyc = vec![u];
                let mut x = u;
                while x != w {
                    x = parent[x];
                    cyc.push(x);
                }
                return cyc;
            }
        }
    }
    unreachable!("blocks with more edges than vertices contain a cycle")
}
