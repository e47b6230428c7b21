//! The acceptance criteria, one pass/fail line each. Exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use diamwidth::atlas::{classify, parse_catalog, Answer, Diameter, Query};
use diamwidth::constructions::{
    complete, complete_bipartite, cycle, cycle_bouquet, gadget_ce_unbounded, gadget_cv_unbounded,
    gadget_is_cw, gadget_samecyc, h_graph, path, path_label, samecyc_pattern, BouquetMode,
    SamecycVariant,
};
use diamwidth::containment::{
    cycle_packing, first_cycle, has_induced_subgraph, has_subgraph, vtype_or_etype_free, Anchor,
    Freeness, Outcome, UNLIMITED,
};
use diamwidth::geometry::er_polarity_graph;
use diamwidth::graph::io::from_graph6;
use diamwidth::graph::{diameter, join, longest_induced_path, longest_path, Distance};
use diamwidth::refuter::{
    all_graphs, census, connected_graphs, qualifies, refute_path, verify_model, RefutationOutcome,
};
use diamwidth::width::{
    pathwidth_exact, treedepth_exact, treewidth_exact, verify_certificate, Param,
};
use diamwidth::{Graph, GraphBuilder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "solver exactness on connected graphs up to 7 vertices",
            mins(10),
            c01_solvers,
        ),
        (
            "path treedepth and longest-path sandwich",
            mins(10),
            c02_paths,
        ),
        ("triangle-free wall gadget", mins(1), c03_is_cw),
        ("projective-plane polarity graphs", mins(5), c04_polarity),
        ("vertex-bouquet gadget", mins(30), c05_cv_gadget),
        ("edge-bouquet gadget", mins(30), c06_ce_gadget),
        ("two-apex diameter-3 gadgets", mins(10), c07_samecyc),
        ("fan and biclique contrasts", mins(5), c08_contrasts),
        ("containment oracle equivalence", mins(30), c09_containment),
        (
            "classification catalog and monotonicity",
            mins(5),
            c10_catalog,
        ),
        (
            "census anchor and witness re-verification",
            mins(10),
            c11_census,
        ),
        ("refuter soundness and refutation", mins(60), c12_refuter),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = t.elapsed();
        let out = match out {
            Ok(_) if took > *limit => Err(format!("took {took:?}, limit {limit:?}")),
            o => o,
        };
        match out {
            Ok(detail) => println!("PASS {:>2} {name} ({took:.1?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.1?}): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn mins(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn diam(g: &Graph) -> Distance {
    diameter(g).expect("nonempty graph")
}

fn c01_solvers() -> Check {
    let mut graphs = 0;
    for n in 1..=7 {
        for g in connected_graphs(n).unwrap() {
            graphs += 1;
            let checks = [
                (treedepth_exact(&g), common::treedepth(&g)),
                (pathwidth_exact(&g), common::pathwidth(&g)),
                (treewidth_exact(&g), common::treewidth(&g)),
            ];
            for (r, want) in checks {
                ensure!(
                    r.value == Some(want) && verify_certificate(&g, &r),
                    "{:?} on {:?}: solver {:?}, brute force {want}",
                    r.parameter,
                    g,
                    r.value
                );
            }
        }
    }
    Ok(format!("{graphs} graphs, td/pw/tw agree with brute force"))
}

fn ceil_log2(x: usize) -> usize {
    (0..).find(|&k| 1usize << k >= x).unwrap()
}

fn c02_paths() -> Check {
    for n in 1..=24 {
        let td = treedepth_exact(&path(n).unwrap()).value;
        ensure!(td == Some(ceil_log2(n + 1)), "td(P_{n}) = {td:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7d);
    let mut tested = 0;
    while tested < 100 {
        let n = rng.gen_range(4..=14);
        let p: f64 = rng.gen_range(0.15..0.6);
        let g = random_graph(&mut rng, n, p);
        if !g.is_connected() {
            continue;
        }
        tested += 1;
        let lp = longest_path(&g);
        ensure!(
            lp.exact && lp.path.verify(&g),
            "longest path not exact on {g:?}"
        );
        let l = lp.path.vertices.len();
        let td = treedepth_exact(&g).value.ok_or("treedepth not exact")?;
        ensure!(
            (l as f64).log2() <= td as f64 && td <= l,
            "sandwich fails: l={l}, td={td} on {g:?}"
        );
    }
    Ok("td(P_n) exact for n <= 24; 100 random graphs satisfy log2(l) <= td <= l".into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

fn c03_is_cw() -> Check {
    let k3 = complete(3).unwrap();
    for h in 2..=4 {
        let g = gadget_is_cw(h).unwrap();
        ensure!(!g.has_triangle(), "h={h}: triangle");
        ensure!(
            has_subgraph(&g, &k3, UNLIMITED).is_absent(),
            "h={h}: matcher finds K3"
        );
        ensure!(
            diam(&g) == Distance::Finite(2),
            "h={h}: diameter {}",
            diam(&g)
        );
    }
    Ok("h = 2, 3, 4 triangle-free with diameter 2".into())
}

fn c04_polarity() -> Check {
    let c4 = cycle(4).unwrap();
    let mut tds = Vec::new();
    for q in [2usize, 3, 5, 7] {
        let g = er_polarity_graph(q as u64).unwrap();
        ensure!(g.n() == q * q + q + 1, "q={q}: {} vertices", g.n());
        ensure!(
            g.edge_count() == q * (q + 1) * (q + 1) / 2,
            "q={q}: {} edges",
            g.edge_count()
        );
        let low = (0..g.n()).filter(|&v| g.degree(v) == q).count();
        ensure!(low == q + 1, "q={q}: {low} vertices of degree q");
        ensure!(
            (0..g.n()).all(|v| g.degree(v) == q || g.degree(v) == q + 1),
            "q={q}: degree out of range"
        );
        ensure!(
            has_subgraph(&g, &c4, UNLIMITED).is_absent(),
            "q={q}: C4 found"
        );
        ensure!(
            diam(&g) == Distance::Finite(2),
            "q={q}: diameter {}",
            diam(&g)
        );
        if q <= 3 {
            tds.push(treedepth_exact(&g).value.ok_or("treedepth not exact")?);
        }
    }
    ensure!(
        tds[0] < tds[1],
        "td(ER_2) = {} not below td(ER_3) = {}",
        tds[0],
        tds[1]
    );
    Ok(format!(
        "q = 2, 3, 5, 7 verified; td(ER_2) = {} < td(ER_3) = {}",
        tds[0], tds[1]
    ))
}

fn path_ids(g: &Graph) -> Vec<usize> {
    (0..).map_while(|i| g.find_label(&path_label(i))).collect()
}

fn induced_path_on(g: &Graph, ids: &[usize]) -> bool {
    ids.iter().enumerate().all(|(a, &u)| {
        ids.iter()
            .enumerate()
            .skip(a + 1)
            .all(|(b, &w)| g.has_edge(u, w) == (b == a + 1))
    })
}

fn c05_cv_gadget() -> Check {
    for n in [24, 32, 48] {
        let g = gadget_cv_unbounded(n).unwrap();
        ensure!(
            diam(&g) == Distance::Finite(2),
            "n={n}: diameter {}",
            diam(&g)
        );
        let ids = path_ids(&g);
        ensure!(
            ids.len() == n + 1 && induced_path_on(&g, &ids),
            "n={n}: labelled path not induced"
        );
        let z: Vec<usize> = (0..g.n())
            .filter(|&v| g.label(v).is_some_and(|l| l.starts_with("Z:")))
            .collect();
        ensure!(z.len() == 12, "n={n}: {} clique vertices", z.len());
        for &zv in &z {
            let len = if g.label(zv).unwrap().starts_with("Z:x") {
                8
            } else {
                6
            };
            let keep: Vec<usize> = (0..g.n()).filter(|v| !z.contains(v) || *v == zv).collect();
            let h = g.induced_subgraph(&keep);
            let anchor = keep.iter().position(|&v| v == zv).unwrap();
            let found = first_cycle(&h, Anchor::Vertex(anchor), len, UNLIMITED);
            ensure!(
                found.is_absent(),
                "n={n}: C{len} through {} uses no second clique vertex",
                g.label(zv).unwrap()
            );
        }
    }
    let g = gadget_cv_unbounded(32).unwrap();
    let x01 = g.find_label("Z:x01").ok_or("no Z:x01")?;
    let out = cycle_packing(&g, Anchor::Vertex(x01), &[(8, 12)], UNLIMITED);
    ensure!(
        out.is_absent(),
        "n=32: packing of twelve C8 at Z:x01 not refuted: {out:?}"
    );
    Ok("n = 24, 32, 48: diameter 2, induced labelled path, single-clique-vertex cycle scan clean; twelve C8 at Z:x01 refuted".into())
}

fn c06_ce_gadget() -> Check {
    let mut edges = 0;
    for n in (4..=40).step_by(4) {
        let g = gadget_ce_unbounded(n, 3).unwrap();
        ensure!(
            diam(&g) == Distance::Finite(2),
            "n={n}: diameter {}",
            diam(&g)
        );
        ensure!(
            induced_path_on(&g, &path_ids(&g)),
            "n={n}: labelled path not induced"
        );
        for (u, v) in g.edges() {
            edges += 1;
            let out = cycle_packing(&g, Anchor::Edge(u, v), &[(6, 6)], UNLIMITED);
            ensure!(
                out.is_absent(),
                "n={n}: six hexagons on edge {u}-{v}: {out:?}"
            );
        }
        ensure!(
            matches!(
                vtype_or_etype_free(&g, &[6; 6], BouquetMode::Edge, UNLIMITED),
                Freeness::Free
            ),
            "n={n}: bouquet checker disagrees"
        );
    }
    Ok(format!(
        "n = 4, 8, .., 40: diameter 2; exact packing refutes six hexagons on all {edges} edges"
    ))
}

fn c07_samecyc() -> Check {
    let want = [
        "1100",
        "11010010",
        "110101001010",
        "1101010100101010",
        "11010101010010101010",
    ];
    for (l, w) in (2..=6).zip(want) {
        let got = samecyc_pattern(SamecycVariant::B, l).unwrap();
        ensure!(got == w, "l={l}: pattern {got}, want {w}");
    }
    ensure!(
        samecyc_pattern(SamecycVariant::A, 0).unwrap() == "1100",
        "variant A pattern"
    );
    let mut variants = vec![(SamecycVariant::A, 0)];
    variants.extend((2..=6).map(|l| (SamecycVariant::B, l)));
    for (var, l) in variants {
        let g = gadget_samecyc(40, var, l).unwrap();
        ensure!(diam(&g).at_most(3), "{var:?} l={l}: diameter {}", diam(&g));
    }
    let g = gadget_samecyc(40, SamecycVariant::B, 4).unwrap();
    let c8 = cycle(8).unwrap();
    let ids = path_ids(&g);
    for apex in ["x", "y"] {
        let mut keep = ids.clone();
        keep.push(g.find_label(apex).ok_or("missing apex")?);
        let h = g.induced_subgraph(&keep);
        ensure!(
            has_subgraph(&h, &c8, UNLIMITED).is_absent(),
            "{apex}-side subgraph contains C8"
        );
    }
    Ok(
        "patterns match for l = 2..6; diameter <= 3 at n = 40; both apex sides of B(l=4) C8-free"
            .into(),
    )
}

fn c08_contrasts() -> Check {
    let h3 = h_graph(3, 1).unwrap();
    let k1 = complete(1).unwrap();
    for n in [10, 15, 20, 25] {
        let g = join(&path(n).unwrap(), &k1);
        ensure!(
            has_subgraph(&g, &h3, UNLIMITED).is_absent(),
            "fan n={n} contains H3"
        );
        ensure!(
            diam(&g) == Distance::Finite(2),
            "fan n={n}: diameter {}",
            diam(&g)
        );
    }
    let c5 = cycle(5).unwrap();
    for n in 2..=8 {
        let g = complete_bipartite(n, n).unwrap();
        ensure!(
            has_subgraph(&g, &c5, UNLIMITED).is_absent(),
            "K_{{{n},{n}}} contains C5"
        );
        ensure!(
            diam(&g) == Distance::Finite(2),
            "K_{{{n},{n}}}: diameter {}",
            diam(&g)
        );
    }
    Ok("fans n = 10..25 H3-free with diameter 2; K_{n,n} n = 2..8 C5-free with diameter 2".into())
}

/// Nondecreasing length lists with `size(lengths) <= max_vertices` and at least two cycles.
fn bouquet_lengths(mode: BouquetMode, max_vertices: usize) -> Vec<Vec<usize>> {
    let (base, per) = match mode {
        BouquetMode::Vertex => (1, 1),
        BouquetMode::Edge => (2, 2),
    };
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<usize>, size: usize, max: usize, per: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        let start = cur.last().copied().unwrap_or(3);
        for l in start.. {
            if size + l - per > max {
                break;
            }
            cur.push(l);
            rec(cur, size + l - per, max, per, out);
            cur.pop();
        }
    }
    rec(&mut Vec::new(), base, max_vertices, per, &mut out);
    out
}

fn c09_containment() -> Check {
    let hosts: Vec<Graph> = (1..=6).flat_map(|n| all_graphs(n).unwrap()).collect();
    let patterns: Vec<Graph> = (1..=4).flat_map(|n| all_graphs(n).unwrap()).collect();
    for h in &hosts {
        for p in &patterns {
            for induced in [false, true] {
                let out = if induced {
                    has_induced_subgraph(h, p, UNLIMITED)
                } else {
                    has_subgraph(h, p, UNLIMITED)
                };
                let want = common::embeds(h, p, induced);
                ensure!(
                    out.is_found() == want,
                    "induced={induced}: {p:?} in {h:?}: got {out:?}"
                );
                if let Outcome::Found(e) = out {
                    ensure!(e.verify(h, p), "bad embedding of {p:?} in {h:?}");
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0);
    let random_hosts: Vec<Graph> = (0..50)
        .map(|i| {
            let n = rng.gen_range(8..=14);
            let p = [0.25, 0.35, 0.5][i % 3];
            random_graph(&mut rng, n, p)
        })
        .collect();
    let mut pairs = 0;
    let mut present = 0;
    for mode in [BouquetMode::Vertex, BouquetMode::Edge] {
        for lengths in bouquet_lengths(mode, 12) {
            let pat = cycle_bouquet(&lengths, mode).unwrap();
            ensure!(
                pat.n() <= 12,
                "pattern {lengths:?} has {} vertices",
                pat.n()
            );
            for h in &random_hosts {
                pairs += 1;
                let direct = has_subgraph(h, &pat, UNLIMITED);
                let special = vtype_or_etype_free(h, &lengths, mode, UNLIMITED);
                let agree = match (&special, &direct) {
                    (Freeness::Free, Outcome::Absent) => true,
                    (Freeness::Contains(pk), Outcome::Found(_)) => pk.verify(h),
                    _ => false,
                };
                ensure!(
                    agree,
                    "{mode:?} {lengths:?} on {h:?}: checker {special:?}, matcher {}",
                    direct.is_found()
                );
                present += direct.is_found() as usize;
            }
        }
    }
    Ok(format!(
        "{} hosts x {} patterns both modes; {pairs} bouquet checks ({present} present) agree",
        hosts.len(),
        patterns.len()
    ))
}

fn d_key(d: Diameter) -> u32 {
    match d {
        Diameter::At(k) => k,
        Diameter::Infinite => u32::MAX,
    }
}

fn c10_catalog() -> Check {
    let cat = parse_catalog(include_str!("data/atlas_catalog.toml")).map_err(|e| e.to_string())?;
    ensure!(cat.len() == 60, "catalog has {} queries", cat.len());
    let params = [Param::Td, Param::Pw, Param::Tw, Param::Cw];
    let ds: Vec<Diameter> = (1..=6)
        .map(Diameter::At)
        .chain([Diameter::Infinite])
        .collect();
    let mut open = 0;
    for e in &cat {
        let q = e.query().map_err(|e| e.to_string())?;
        let v = classify(&q).map_err(|err| format!("{:?}: {err}", e.forbidden))?;
        ensure!(
            v.answer == e.verdict && v.cite == e.cite,
            "{:?} {} {} d={}: got {} {:?}, want {} {:?}",
            e.forbidden
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>(),
            e.relation,
            e.parameter,
            e.d,
            v.answer,
            v.cite,
            e.verdict,
            e.cite
        );
        open += (v.answer == Answer::Open) as usize;
        let mut grid = Vec::new();
        for (pi, &p) in params.iter().enumerate() {
            for &d in &ds {
                let q = Query {
                    parameter: p,
                    d,
                    ..q.clone()
                };
                let a = classify(&q)
                    .map_err(|err| format!("{:?} {p} d={d}: {err}", e.forbidden))?
                    .answer;
                grid.push((pi, d_key(d), a));
            }
        }
        for &(pi, di, a) in &grid {
            if a != Answer::Bounded {
                continue;
            }
            for &(pj, dj, b) in &grid {
                ensure!(
                    !(pj >= pi && dj <= di && b == Answer::Unbounded),
                    "{:?} {}: bounded at ({}, {di}) but unbounded at ({}, {dj})",
                    e.forbidden
                        .iter()
                        .map(|f| f.to_string())
                        .collect::<Vec<_>>(),
                    e.relation,
                    params[pi],
                    params[pj]
                );
            }
        }
    }
    ensure!(open == 3, "{open} open verdicts");
    Ok(format!(
        "60 verdicts and citations match ({open} open); monotone over 4 parameters x 7 diameters"
    ))
}

fn c11_census() -> Check {
    let counts: Vec<usize> = (1..=6)
        .map(|n| connected_graphs(n).unwrap().len())
        .collect();
    ensure!(
        counts == [1, 1, 2, 6, 21, 112],
        "connected counts {counts:?}"
    );
    let k7 = complete(7).unwrap();
    let unfiltered = census(6, &k7, diamwidth::containment::Mode::Subgraph, 6, Param::Td)
        .map_err(|e| e.to_string())?;
    let got: Vec<u64> = unfiltered.iter().map(|r| r.count).collect();
    ensure!(
        got == [1, 1, 2, 6, 21, 112],
        "unfiltered census counts {got:?}"
    );
    let runs = [
        (cycle(4).unwrap(), 2, Param::Td, 7),
        (complete(3).unwrap(), 2, Param::Pw, 7),
        (cycle(6).unwrap(), 3, Param::Tw, 7),
        (k7.clone(), 6, Param::Td, 6),
    ];
    let mut rows = 0;
    for (f, d, p, n_max) in runs {
        let table = census(n_max, &f, diamwidth::containment::Mode::Subgraph, d, p)
            .map_err(|e| e.to_string())?;
        for r in table {
            let Some(w6) = &r.witness else {
                ensure!(
                    r.count == 0 && r.max_width.is_none(),
                    "row without witness: {r:?}"
                );
                continue;
            };
            rows += 1;
            let g = from_graph6(w6).map_err(|e| e.to_string())?;
            ensure!(
                g.n() == r.n && g.is_connected(),
                "witness {w6} has wrong order or is disconnected"
            );
            ensure!(diam(&g).at_most(d), "witness {w6}: diameter {}", diam(&g));
            ensure!(
                !common::embeds(&g, &f, false),
                "witness {w6} contains the forbidden graph"
            );
            ensure!(
                qualifies(&g, &f, diamwidth::containment::Mode::Subgraph, d).unwrap(),
                "witness {w6} rejected"
            );
            let w = match p {
                Param::Td => common::treedepth(&g),
                Param::Pw => common::pathwidth(&g),
                _ => common::treewidth(&g),
            };
            ensure!(
                Some(w) == r.max_width,
                "witness {w6}: width {w}, row says {:?}",
                r.max_width
            );
        }
    }
    Ok(format!(
        "counts 1, 1, 2, 6, 21, 112; {rows} extremal witnesses re-verified"
    ))
}

fn c12_refuter() -> Check {
    let er7 = er_polarity_graph(7).unwrap();
    let lip = longest_induced_path(&er7, 64);
    ensure!(
        lip.exact && lip.path.verify(&er7),
        "longest induced path of ER_7 not exact"
    );
    let max_l = lip.path.length();
    let mut models = 0;
    for l in 2..=max_l {
        match refute_path(2, 2, l, 20_000).map_err(|e| e.to_string())? {
            RefutationOutcome::Refuted { .. } => return Err(format!("(2, 2, {l}) refuted")),
            RefutationOutcome::Consistent { model, .. } => {
                ensure!(verify_model(&model), "(2, 2, {l}) model fails verification");
                models += 1;
            }
            RefutationOutcome::BudgetExhausted { .. } => {}
        }
    }
    let t = Instant::now();
    let out = refute_path(3, 2, 64, u64::MAX).map_err(|e| e.to_string())?;
    ensure!(out.is_refuted(), "(3, 2, 64) not refuted: {out:?}");
    Ok(format!(
        "ER_7 induced path has {max_l} edges; (2, 2, l) for l = 2..{max_l} never refuted ({models} verified models); (3, 2, 64) refuted in {} nodes, {:.1?}",
        out.stats().nodes,
        t.elapsed()
    ))
}
