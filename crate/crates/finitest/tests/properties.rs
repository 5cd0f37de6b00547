//! Randomized invariants over the core kernels.

use finitest::catalog::{canonical_code, chv, TypeCatalog};
use finitest::graph::{edit_distance, explore_ball, ExplicitGraph, ExplicitOracle};
use finitest::logic::ast::Formula;
use finitest::logic::parse_sentence;
use finitest::numtheory::{conical_decompose, crt_solve, gcd_many, Congruence};
use proptest::prelude::*;

fn apply_perm(g: &ExplicitGraph, perm: &[usize]) -> ExplicitGraph {
    let edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (perm[u as usize - 1] as u32, perm[v as usize - 1] as u32);
            (a.min(b), a.max(b))
        })
        .collect();
    ExplicitGraph::from_edges(g.vertex_count(), &edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = ExplicitGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (1..=n as u32)
            .flat_map(|u| (u + 1..=n as u32).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &m)| m)
                .map(|(&e, _)| e)
                .collect();
            ExplicitGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn canonical_code_is_relabeling_invariant(
        (g, perm) in arb_graph(7).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), arb_perm(n))
        })
    ) {
        let h = apply_perm(&g, &perm);
        prop_assert_eq!(
            canonical_code(&g, None).unwrap(),
            canonical_code(&h, None).unwrap()
        );
        for v in 1..=g.vertex_count() {
            prop_assert_eq!(
                canonical_code(&g, Some(v)).unwrap(),
                canonical_code(&h, Some(perm[v - 1])).unwrap()
            );
        }
    }

    #[test]
    fn ball_codes_follow_relabeling(
        (g, perm) in arb_graph(6).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), arb_perm(n))
        }),
        r in 0u32..3,
    ) {
        let h = apply_perm(&g, &perm);
        let og = ExplicitOracle::new(&g, 6);
        let oh = ExplicitOracle::new(&h, 6);
        for v in 1..=g.vertex_count() {
            let bg = explore_ball(&og, v as u64, r).unwrap();
            let bh = explore_ball(&oh, perm[v - 1] as u64, r).unwrap();
            prop_assert_eq!(
                canonical_code(&bg.graph, Some(bg.root)).unwrap(),
                canonical_code(&bh.graph, Some(bh.root)).unwrap()
            );
        }
    }

    #[test]
    fn crt_solutions_satisfy_every_congruence(
        raw in proptest::collection::vec((0u64..40, 1u64..40), 1..5)
    ) {
        let sys: Vec<Congruence> =
            raw.iter().map(|&(r, m)| Congruence::new(r, m).unwrap()).collect();
        if let Some(solution) = crt_solve(&sys).unwrap() {
            for c in &sys {
                prop_assert!(c.holds(solution.residue));
            }
            // Minimality: nothing below the residue satisfies the system.
            for x in 0..solution.residue {
                prop_assert!(!sys.iter().all(|c| c.holds(x)));
            }
        }
    }

    #[test]
    fn decomposition_reproduces_target(
        target in 0u64..500,
        weights in proptest::collection::vec(1u64..20, 1..4)
    ) {
        match conical_decompose(target, &weights).unwrap() {
            Some(coeffs) => {
                let total: u64 = coeffs.iter().zip(&weights).map(|(b, w)| b * w).sum();
                prop_assert_eq!(total, target);
            }
            None => {
                // The gcd must already rule it out, or a bounded brute
                // force confirms there is no combination.
                let g = gcd_many(&weights).unwrap();
                if target % g == 0 {
                    let mut reachable = vec![false; target as usize + 1];
                    reachable[0] = true;
                    for v in 1..=target {
                        for &w in &weights {
                            if w <= v && reachable[(v - w) as usize] {
                                reachable[v as usize] = true;
                                break;
                            }
                        }
                    }
                    prop_assert!(!reachable[target as usize]);
                }
            }
        }
    }

    #[test]
    fn edit_distance_is_a_metric_on_small_graphs(
        (a, b) in (2usize..=5).prop_flat_map(|n| (arb_graph_exact(n), arb_graph_exact(n)))
    ) {
        let d_ab = edit_distance(&a, &b).unwrap();
        let d_ba = edit_distance(&b, &a).unwrap();
        prop_assert_eq!(d_ab, d_ba);
        prop_assert!(d_ab <= a.edge_count() + b.edge_count());
        prop_assert_eq!(edit_distance(&a, &a).unwrap(), 0);
        prop_assert_eq!(d_ab == 0, edit_distance(&b, &a).unwrap() == 0);
    }

    #[test]
    fn census_roundtrip_on_random_members(
        counts in proptest::collection::vec(0u64..5, 4)
    ) {
        let catalog = TypeCatalog::new(3, 2).unwrap();
        let g = finitest::tester::realize_counts(&counts, &catalog).unwrap();
        let direct = chv(&g, &catalog).unwrap();
        prop_assert_eq!(&direct.0, &counts);
        let converted = finitest::catalog::bhv_to_chv(
            &finitest::catalog::bhv(&g, &catalog).unwrap(),
            &catalog,
        )
        .unwrap();
        prop_assert_eq!(direct, converted);
    }

    #[test]
    fn sentences_roundtrip_through_printing(s in arb_sentence()) {
        let text = s.to_string();
        let parsed = parse_sentence(&text).unwrap();
        prop_assert_eq!(parsed.formula(), &s);
    }
}

fn arb_graph_exact(n: usize) -> impl Strategy<Value = ExplicitGraph> {
    let pairs: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|u| (u + 1..=n as u32).map(move |v| (u, v)))
        .collect();
    let len = pairs.len();
    proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(&e, _)| e)
            .collect();
        ExplicitGraph::from_edges(n, &edges).unwrap()
    })
}

/// Random closed formulas: quantifier prefixes over small bodies, using a
/// fixed variable pool so shadowing and reuse both occur.
fn arb_sentence() -> impl Strategy<Value = Formula> {
    let vars = prop_oneof![Just("x"), Just("y"), Just("z")];
    let atom = (vars.clone(), vars.clone()).prop_flat_map(|(a, b)| {
        prop_oneof![
            Just(Formula::Edge(a.to_string(), b.to_string())),
            Just(Formula::Eq(a.to_string(), b.to_string())),
        ]
    });
    let body = atom.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::And(Box::new(l), Box::new(r))),
            (inner.clone(), inner)
                .prop_map(|(l, r)| Formula::Or(Box::new(l), Box::new(r))),
        ]
    });
    // Close the formula with quantifiers over all three variables.
    (body, proptest::collection::vec(0u8..5, 3), 0u64..4, 1u64..4).prop_map(
        |(body, kinds, m, l)| {
            let mut f = body;
            for (var, kind) in ["z", "y", "x"].iter().zip(kinds) {
                f = match kind {
                    0 => Formula::Exists(var.to_string(), Box::new(f)),
                    1 => Formula::Forall(var.to_string(), Box::new(f)),
                    2 => Formula::CountGeq(m, var.to_string(), Box::new(f)),
                    3 => Formula::CountEq(m, var.to_string(), Box::new(f)),
                    _ => Formula::CountMod {
                        j: m.min(l - 1),
                        l,
                        var: var.to_string(),
                        body: Box::new(f),
                    },
                };
            }
            f
        },
    )
}
