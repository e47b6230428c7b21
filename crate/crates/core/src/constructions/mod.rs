//! Generators for the named graph families and the unboundedness gadgets.
//!
//! Every generator documents its id layout. Gadgets label their vertices by role
//! (`path:i`, `apex`, `Z:x01`, ...), so tests can address roles without guessing ids.

mod spec;

pub use spec::{Family, FamilySpec};

use crate::error::{domain, Result};
use crate::graph::{subdivide, Graph, GraphBuilder};

/// Label of path vertex `p_i` in the gadgets and apex paths.
pub fn path_label(i: usize) -> String {
    format!("path:{i}")
}

/// `P_n`: ids `0..n` in path order.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(domain("P_n needs n >= 1"));
    }
    let mut b = GraphBuilder::new(n);
    for i in 1..n {
        b.push_unchecked(i - 1, i);
    }
    Ok(b.build())
}

/// `C_n`: ids `0..n` around the cycle.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(domain("C_n needs n >= 3"));
    }
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        b.push_unchecked(i, (i + 1) % n);
    }
    Ok(b.build())
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(domain("K_n needs n >= 1"));
    }
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for j in i + 1..n {
            b.push_unchecked(i, j);
        }
    }
    Ok(b.build())
}

/// `K_{r,s}`: left side `0..r`, right side `r..r+s`.
pub fn complete_bipartite(r: usize, s: usize) -> Result<Graph> {
    if r == 0 || s == 0 {
        return Err(domain("K_{r,s} needs r, s >= 1"));
    }
    let mut b = GraphBuilder::new(r + s);
    for i in 0..r {
        for j in r..r + s {
            b.push_unchecked(i, j);
        }
    }
    Ok(b.build())
}

/// Edgeless graph on `n` vertices.
pub fn edgeless(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(domain("edgeless graph needs n >= 1"));
    }
    Ok(Graph::empty(n))
}

/// Appends a fresh path of `len` vertices hanging from `from`; returns the new ids.
fn hang_path(b: &mut GraphBuilder, from: usize, len: usize) -> Vec<usize> {
    let mut prev = from;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let v = b.add_vertex();
        b.push_unchecked(prev, v);
        out.push(v);
        prev = v;
    }
    out
}

/// Subdivided star `S_{l1,..,lk}`: centre 0, then each leg from the centre outwards.
pub fn spider(lengths: &[usize]) -> Result<Graph> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(domain("spider needs at least one leg, each of length >= 1"));
    }
    let mut b = GraphBuilder::new(1);
    b.set_label(0, "center");
    for &l in lengths {
        hang_path(&mut b, 0, l);
    }
    Ok(b.build())
}

/// `H_i^l`: spine `0..=i` (ends 0 and i have degree 3), then two pendant paths of `l`
/// edges at vertex 0, then two at vertex i.
pub fn h_graph(i: usize, l: usize) -> Result<Graph> {
    if i == 0 || l == 0 {
        return Err(domain("H_i^l needs i >= 1 and l >= 1"));
    }
    let mut b = GraphBuilder::new(i + 1);
    for s in 1..=i {
        b.push_unchecked(s - 1, s);
    }
    for end in [0, i] {
        for _ in 0..2 {
            hang_path(&mut b, end, l);
        }
    }
    Ok(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BouquetMode {
    /// `C^V`: cycles pairwise sharing exactly one common vertex.
    Vertex,
    /// `C^E`: cycles pairwise sharing exactly one common edge.
    Edge,
}

/// `C^V_{l1..lk}` (centre 0) or `C^E_{l1..lk}` (shared edge 0–1); each cycle's private
/// vertices follow in order.
pub fn cycle_bouquet(lengths: &[usize], mode: BouquetMode) -> Result<Graph> {
    if lengths.is_empty() || lengths.iter().any(|&l| l < 3) {
        return Err(domain("cycle bouquet needs cycles of length >= 3"));
    }
    let mut b;
    match mode {
        BouquetMode::Vertex => {
            b = GraphBuilder::new(1);
            b.set_label(0, "center");
            for &l in lengths {
                let p = hang_path(&mut b, 0, l - 1);
                b.push_unchecked(*p.last().unwrap(), 0);
            }
        }
        BouquetMode::Edge => {
            b = GraphBuilder::new(2);
            b.push_unchecked(0, 1);
            b.set_label(0, "shared:0");
            b.set_label(1, "shared:1");
            for &l in lengths {
                if l == 3 {
                    let v = b.add_vertex();
                    b.push_unchecked(0, v);
                    b.push_unchecked(v, 1);
                } else {
                    let p = hang_path(&mut b, 0, l - 2);
                    b.push_unchecked(*p.last().unwrap(), 1);
                }
            }
        }
    }
    Ok(b.build())
}

/// Column range `(lo, hi)` of row `y` in the height-`h` brick wall.
fn wall_row(h: usize, y: usize) -> (usize, usize) {
    let w = 2 * h + 1;
    if y == 0 {
        (1, w)
    } else if y < h {
        (0, w)
    } else if h.is_multiple_of(2) {
        (0, w - 1)
    } else {
        (1, w)
    }
}

/// Wall of height `h` with every edge subdivided `k` times.
///
/// Rows `0..=h`; row 0 spans columns `1..=2h+1`, middle rows `0..=2h+1`, the top row
/// `0..=2h` for even `h` and `1..=2h+1` for odd `h`. Rows are paths; `(x,y)` and `(x,y+1)`
/// are joined when `x + y` is odd. Base-wall ids are row-major (labels `w:x,y`),
/// subdivision vertices follow.
pub fn wall(h: usize, k: usize) -> Result<Graph> {
    if h < 2 {
        return Err(domain("wall needs height >= 2"));
    }
    let mut ids = std::collections::BTreeMap::new();
    let mut b = GraphBuilder::new(0);
    for y in 0..=h {
        let (lo, hi) = wall_row(h, y);
        for x in lo..=hi {
            let v = b.add_labeled_vertex(format!("w:{x},{y}"));
            ids.insert((x, y), v);
        }
    }
    for y in 0..=h {
        let (lo, hi) = wall_row(h, y);
        for x in lo..hi {
            b.push_unchecked(ids[&(x, y)], ids[&(x + 1, y)]);
        }
        if y < h {
            for x in lo..=hi {
                if (x + y) % 2 == 1 {
                    if let Some(&up) = ids.get(&(x, y + 1)) {
                        b.push_unchecked(ids[&(x, y)], up);
                    }
                }
            }
        }
    }
    Ok(subdivide(&b.build(), k))
}

/// Checks a bit string over `{0,1}`.
fn bits_of(pattern: &str) -> Result<Vec<bool>> {
    if pattern.is_empty() {
        return Err(domain("bit pattern must be nonempty"));
    }
    pattern
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(domain(format!("bit pattern contains `{c}`"))),
        })
        .collect()
}

/// `P_n^b`: path `0..n`, apex `n` adjacent to `p_i` iff `b[i mod |b|] = 1`.
pub fn patterned_apex_path(n: usize, pattern: &str) -> Result<Graph> {
    let bits = bits_of(pattern)?;
    if n == 0 {
        return Err(domain("patterned apex path needs n >= 1"));
    }
    let mut b = labeled_path(n);
    let apex = b.add_labeled_vertex("apex");
    for i in 0..n {
        if bits[i % bits.len()] {
            b.push_unchecked(apex, i);
        }
    }
    Ok(b.build())
}

fn labeled_path(vertices: usize) -> GraphBuilder {
    let mut b = GraphBuilder::new(vertices);
    for i in 0..vertices {
        b.set_label(i, path_label(i));
        if i > 0 {
            b.push_unchecked(i - 1, i);
        }
    }
    b
}

/// The triangle-free diameter-2 gadget built on the wall of height `h`.
///
/// Layout with `w = |V(wall(h,0))|`: wall vertices `0..w`, their copies `x_i = w + i`,
/// then `r = 2w` and `b = 2w + 1`. `R` is the colour class of wall vertex 0.
pub fn gadget_is_cw(h: usize) -> Result<Graph> {
    let wl = wall(h, 0)?;
    let w = wl.n();
    let red: Vec<bool> = wl
        .two_coloring()
        .expect("walls are bipartite")
        .into_iter()
        .map(|c| !c)
        .collect();
    let mut b = GraphBuilder::new(2 * w + 2);
    let (r, bl) = (2 * w, 2 * w + 1);
    for i in 0..w {
        b.set_label(i, format!("w:{i}"));
        b.set_label(w + i, format!("x:{i}"));
    }
    b.set_label(r, "r");
    b.set_label(bl, "b");
    for (u, v) in wl.edges() {
        b.push_unchecked(u, v);
        b.push_unchecked(w + u, w + v);
    }
    b.push_unchecked(r, bl);
    for i in 0..w {
        b.push_unchecked(if red[i] { r } else { bl }, i);
        b.push_unchecked(w + i, i);
        for j in 0..w {
            if red[j] != red[i] && !wl.has_edge(i, j) {
                b.push_unchecked(w + i, j);
            }
        }
    }
    Ok(b.build())
}

/// Residue pairs of the clique vertices: four `x_{i,i+1 mod 4}`, then eight `y_{i,i+2 mod 8}`.
pub const CV_Z: [(char, usize, usize, usize); 12] = [
    ('x', 0, 1, 4),
    ('x', 1, 2, 4),
    ('x', 2, 3, 4),
    ('x', 3, 0, 4),
    ('y', 0, 2, 8),
    ('y', 1, 3, 8),
    ('y', 2, 4, 8),
    ('y', 3, 5, 8),
    ('y', 4, 6, 8),
    ('y', 5, 7, 8),
    ('y', 6, 0, 8),
    ('y', 7, 1, 8),
];

/// Diameter-2 gadget forbidding `C^V_{12x[6],12x[8]}`.
///
/// Path `p_0..p_n` on ids `0..=n`; clique `Z` on `n+1..n+13` in [`CV_Z`] order, labelled
/// `Z:x01`, `Z:y02`, ... `z_{i,j}` (modulus `q`) is adjacent to `p_k` iff `k ≡ i` or `k ≡ j (mod q)`.
pub fn gadget_cv_unbounded(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(domain("gadget needs n >= 1"));
    }
    let mut b = labeled_path(n + 1);
    let z: Vec<usize> = CV_Z
        .iter()
        .map(|&(t, i, j, _)| b.add_labeled_vertex(format!("Z:{t}{i}{j}")))
        .collect();
    for (a, &za) in z.iter().enumerate() {
        for &zb in &z[a + 1..] {
            b.push_unchecked(za, zb);
        }
        let (_, i, j, q) = CV_Z[a];
        for k in 0..=n {
            if k % q == i || k % q == j {
                b.push_unchecked(za, k);
            }
        }
    }
    Ok(b.build())
}

/// `R = 1(10)^{l-2}`, of length `2l - 3`.
pub fn ce_pattern(l: usize) -> Result<String> {
    if l < 3 {
        return Err(domain("pattern needs l >= 3"));
    }
    Ok(format!("1{}", "10".repeat(l - 2)))
}

/// Diameter-2 gadget forbidding `C^E_{k x [2l]}` with `k = 2(2l-3)`.
///
/// Path `p_0..p_n` on ids `0..=n`, independent apexes `x_j = n+1+j` for `j < 2l-3`;
/// `p_i ~ x_j` iff bit `(i - j) mod (2l-3)` of [`ce_pattern`] is 1.
pub fn gadget_ce_unbounded(n: usize, l: usize) -> Result<Graph> {
    let r = bits_of(&ce_pattern(l)?)?;
    if n == 0 {
        return Err(domain("gadget needs n >= 1"));
    }
    let m = r.len();
    let mut b = labeled_path(n + 1);
    for j in 0..m {
        let x = b.add_labeled_vertex(format!("apex:{j}"));
        for i in 0..=n {
            if r[(i + m - j % m) % m] {
                b.push_unchecked(x, i);
            }
        }
    }
    Ok(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SamecycVariant {
    A,
    B,
}

/// Apex pattern of the two-apex diameter-3 gadgets: `1100` for A,
/// `11(01)^{l-2}00(10)^{l-2}` (length `4l-4`) for B.
pub fn samecyc_pattern(variant: SamecycVariant, l: usize) -> Result<String> {
    match variant {
        SamecycVariant::A => Ok("1100".into()),
        SamecycVariant::B => {
            if l < 2 {
                return Err(domain("variant B needs l >= 2"));
            }
            Ok(format!("11{}00{}", "01".repeat(l - 2), "10".repeat(l - 2)))
        }
    }
}

/// Path `p_0..p_n` on ids `0..=n`, apex `x = n+1` on the pattern's 1-positions and
/// `y = n+2` on its 0-positions. `l` is ignored by variant A.
pub fn gadget_samecyc(n: usize, variant: SamecycVariant, l: usize) -> Result<Graph> {
    let r = bits_of(&samecyc_pattern(variant, l)?)?;
    if n == 0 {
        return Err(domain("gadget needs n >= 1"));
    }
    let mut b = labeled_path(n + 1);
    let x = b.add_labeled_vertex("x");
    let y = b.add_labeled_vertex("y");
    for i in 0..=n {
        b.push_unchecked(if r[i % r.len()] { x } else { y }, i);
    }
    Ok(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum WitnessKind {
    /// 1-subdivision of `K_{n,n}`.
    Biclique1Sub,
    /// 2-subdivision of `K_n`.
    Clique2Sub,
}

pub fn subdivided_witness(kind: WitnessKind, n: usize) -> Result<Graph> {
    match kind {
        WitnessKind::Biclique1Sub => Ok(subdivide(&complete_bipartite(n, n)?, 1)),
        WitnessKind::Clique2Sub => Ok(subdivide(&complete(n)?, 2)),
    }
}
