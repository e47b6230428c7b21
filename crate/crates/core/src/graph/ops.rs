use super::{Graph, GraphBuilder};

/// Disjoint union; ids of `h` are shifted by `|g|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let mut b = GraphBuilder::new(off + h.n());
    for (u, v) in g.edges() {
        b.push_unchecked(u, v);
    }
    for (u, v) in h.edges() {
        b.push_unchecked(u + off, v + off);
    }
    for (&v, l) in g.labels() {
        b.set_label(v, l.clone());
    }
    for (&v, l) in h.labels() {
        b.set_label(v + off, l.clone());
    }
    b.build()
}

/// `g ⋈ h`: disjoint union plus every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let u = disjoint_union(g, h);
    let off = g.n();
    let mut b = GraphBuilder::new(u.n());
    for (x, y) in u.edges() {
        b.push_unchecked(x, y);
    }
    for x in 0..off {
        for y in off..u.n() {
            b.push_unchecked(x, y);
        }
    }
    for (&v, l) in u.labels() {
        b.set_label(v, l.clone());
    }
    b.build()
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                b.push_unchecked(u, v);
            }
        }
    }
    for (&v, l) in g.labels() {
        b.set_label(v, l.clone());
    }
    b.build()
}

/// Replace each edge by a path with `k` internal vertices.
///
/// Original ids are kept; the internal vertices of the `e`-th edge (in sorted edge order)
/// are `n + e*k .. n + (e+1)*k`, ordered from the smaller endpoint.
pub fn subdivide(g: &Graph, k: usize) -> Graph {
    let edges = g.edges();
    let n = g.n();
    let mut b = GraphBuilder::new(n + k * edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        let mut prev = u;
        for t in 0..k {
            let w = n + e * k + t;
            b.push_unchecked(prev, w);
            prev = w;
        }
        b.push_unchecked(prev, v);
    }
    for (&v, l) in g.labels() {
        b.set_label(v, l.clone());
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{diameter, Distance};

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn join_counts() {
        let g = join(&path(3), &Graph::empty(1));
        assert_eq!((g.n(), g.edge_count()), (4, 5));
        assert_eq!(
            diameter(&join(&path(9), &Graph::empty(1))),
            Ok(Distance::Finite(2))
        );
    }

    #[test]
    fn complement_involution() {
        let g = path(5);
        assert_eq!(complement(&complement(&g)), g);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cc = complement(&c5);
        assert_eq!(cc.edge_count(), 5);
        assert!(cc.check_invariants());
        assert_eq!(cc.girth(), Some(5));
    }

    #[test]
    fn subdivide_counts() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c6 = subdivide(&k3, 1);
        assert_eq!((c6.n(), c6.edge_count(), c6.girth()), (6, 6, Some(6)));
        let p7 = subdivide(&path(3), 2);
        assert_eq!((p7.n(), p7.edge_count(), p7.max_degree()), (7, 6, 2));
        assert!(p7.is_connected());
        assert_eq!(subdivide(&k3, 0), k3);
    }
}
