use diamwidth::constructions::FamilySpec;
use diamwidth::graph::canonical_code;
use diamwidth::graph::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use diamwidth::refuter::{refute_path, verify_model, RefutationOutcome};
use diamwidth::width::{pathwidth_exact, treedepth_exact, treewidth_exact, verify_certificate};
use diamwidth::{Graph, GraphBuilder};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut b = GraphBuilder::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        b.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            b.build()
        })
    })
}

fn family() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (1..9usize).prop_map(|n| format!("path:{n}")),
        (3..9usize).prop_map(|n| format!("cycle:{n}")),
        (1..6usize).prop_map(|n| format!("complete:{n}")),
        (1..4usize, 1..4usize).prop_map(|(a, b)| format!("biclique:{a}:{b}")),
        (1..4usize, 1..3usize).prop_map(|(i, l)| format!("h:{i}:{l}")),
        proptest::collection::vec(3..7usize, 1..4).prop_map(|v| format!(
            "cv:{}",
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )),
        proptest::collection::vec(1..4usize, 1..4).prop_map(|v| format!(
            "spider:{}",
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )),
        (2..5usize, 0..3usize).prop_map(|(h, k)| format!("wall:{h}:{k}")),
    ];
    proptest::collection::vec(proptest::collection::vec(leaf, 1..3), 1..3).prop_map(|terms| {
        terms
            .iter()
            .map(|t| t.join(" * "))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn permuted(g: &Graph, seed: u64) -> Graph {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    g.permute(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_spec_round_trips(text in family()) {
        let spec: FamilySpec = text.parse().unwrap();
        let again: FamilySpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(&again, &spec);
        prop_assert_eq!(again.build().unwrap(), spec.build().unwrap());
    }

    #[test]
    fn serializations_round_trip(g in graph(70)) {
        prop_assert_eq!(&from_graph6(&to_graph6(&g)).unwrap(), &g);
        prop_assert_eq!(&from_edge_list(&to_edge_list(&g)).unwrap(), &g);
    }

    #[test]
    fn canonical_code_is_invariant(g in graph(12), seed in any::<u64>()) {
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&permuted(&g, seed)).unwrap());
    }

    #[test]
    fn width_chain(g in graph(10)) {
        let (tw, pw, td) = (treewidth_exact(&g), pathwidth_exact(&g), treedepth_exact(&g));
        for r in [&tw, &pw, &td] {
            prop_assert!(verify_certificate(&g, r));
        }
        let (tw, pw, td) = (tw.value.unwrap(), pw.value.unwrap(), td.value.unwrap());
        prop_assert!(tw <= pw && pw < td);
    }

    #[test]
    fn refuter_models_verify(r in 2..4usize, d in 2..4u32, l in 2..12usize) {
        let out = refute_path(r, d, l, 5_000).unwrap();
        if let RefutationOutcome::Consistent { model, .. } = &out {
            prop_assert!(verify_model(model));
        }
    }
}
