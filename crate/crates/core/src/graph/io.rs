//! graph6, plain edge lists, and JSON label sidecars.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder};
use crate::error::GraphError;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut String, n: usize) {
    let push6 = |out: &mut String, x: usize| out.push((63 + (x & 63) as u8) as char);
    if n <= 62 {
        push6(out, n);
    } else if n <= 258_047 {
        out.push('~');
        for s in [12, 6, 0] {
            push6(out, n >> s);
        }
    } else {
        out.push_str("~~");
        for s in [30, 24, 18, 12, 6, 0] {
            push6(out, n >> s);
        }
    }
}

/// graph6 encoding without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push(((acc << (6 - k)) + 63) as char);
    }
    out
}

/// Parse one graph6 line. Accepts the optional `>>graph6<<` header and trailing whitespace.
pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let bytes = s.as_bytes();
    let mut pos = if s.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let end = s.trim_end().len();
    let byte = |pos: usize| -> Result<usize, GraphError> {
        match bytes.get(pos) {
            Some(&b) if pos < end && (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(&b) if pos < end => Err(GraphError::parse(
                pos,
                format!("byte 0x{b:02x} outside the graph6 range 63..=126"),
            )),
            _ => Err(GraphError::parse(pos, "unexpected end of input")),
        }
    };
    let first = byte(pos)?;
    let n = if first < 63 {
        pos += 1;
        first
    } else {
        let wide = byte(pos + 1)? == 63;
        let (start, count) = if wide { (pos + 2, 6) } else { (pos + 1, 3) };
        let mut n = 0usize;
        for i in 0..count {
            n = (n << 6) | byte(start + i)?;
        }
        pos = start + count;
        n
    };
    let total = n * n.saturating_sub(1) / 2;
    let need = total.div_ceil(6);
    let mut b = GraphBuilder::new(n);
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let chunk = byte(pos + bit / 6)?;
            if chunk >> (5 - bit % 6) & 1 == 1 {
                b.push_unchecked(i, j);
            }
            bit += 1;
            if bit == total {
                break 'outer;
            }
        }
    }
    let body_end = pos + need;
    if need > 0 {
        let last = byte(body_end - 1)?;
        let pad = need * 6 - total;
        if pad > 0 && last & ((1 << pad) - 1) != 0 {
            return Err(GraphError::parse(body_end - 1, "nonzero padding bits"));
        }
    }
    if body_end < end {
        return Err(GraphError::parse(
            body_end,
            "trailing bytes after graph body",
        ));
    }
    Ok(b.build())
}

/// `n m` header followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn from_edge_list(s: &str) -> Result<Graph, GraphError> {
    let mut offset = 0;
    let mut lines = Vec::new();
    for line in s.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            lines.push((offset, body));
        }
        offset += line.len();
    }
    let mut it = lines.into_iter();
    let (hoff, header) = it
        .next()
        .ok_or_else(|| GraphError::parse(0, "missing `n m` header"))?;
    let nums = |off: usize, l: &str| -> Result<(usize, usize), GraphError> {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(GraphError::parse(
                off,
                format!("expected two integers, got `{l}`"),
            ));
        }
        let p = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| GraphError::parse(off, format!("not a nonnegative integer: `{t}`")))
        };
        Ok((p(parts[0])?, p(parts[1])?))
    };
    let (n, m) = nums(hoff, header)?;
    let mut b = GraphBuilder::new(n);
    let mut count = 0;
    for (off, l) in it {
        let (u, v) = nums(off, l)?;
        b.add_edge(u, v)
            .map_err(|e| GraphError::parse(off, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(GraphError::parse(
            s.len(),
            format!("header announces {m} edges, found {count}"),
        ));
    }
    Ok(b.build())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LabelSidecar {
    pub n: usize,
    pub labels: BTreeMap<usize, String>,
}

pub fn labels_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&LabelSidecar {
        n: g.n(),
        labels: g.labels().clone(),
    })
    .expect("label map serializes")
}

pub fn labels_from_json(s: &str) -> Result<LabelSidecar, serde_json::Error> {
    serde_json::from_str(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_c_tilde() {
        let mut e = vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                e.push((i, j));
            }
        }
        let k4 = Graph::from_edges(4, &e).unwrap();
        assert_eq!(to_graph6(&k4), "C~");
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap(), k4);
    }

    #[test]
    fn large_sizes_roundtrip() {
        let n = 70;
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Graph::from_edges(n, &e).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_reports_offset() {
        match from_graph6("C~ ~") {
            Err(GraphError::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match from_graph6("C\x10") {
            Err(GraphError::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(from_graph6("C").is_err());
    }

    #[test]
    fn edge_list_roundtrip() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let s = to_edge_list(&p3);
        assert_eq!(s, "3 2\n0 1\n1 2\n");
        assert_eq!(from_edge_list(&s).unwrap(), p3);
        assert_eq!(
            from_graph6(&to_graph6(&from_edge_list(&s).unwrap())).unwrap(),
            p3
        );
        assert!(matches!(
            from_edge_list("3 1\n0 x\n"),
            Err(GraphError::Parse { offset: 4, .. })
        ));
    }
}
