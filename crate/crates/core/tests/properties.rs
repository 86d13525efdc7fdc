use num_bigint::BigUint;
use proptest::prelude::*;

use dompoly::engine::{graph_poly, graph_poly_with, recurrence_poly, Selection};
use dompoly::families::{binomial, union_poly};
use dompoly::graph::{disjoint_union, is_dominating, lift};
use dompoly::oracle::{brute_force_poly, DEFAULT_CAP};
use dompoly::{Left, SimpleGraph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            SimpleGraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_matches_oracle(g in graph(10)) {
        prop_assert_eq!(graph_poly(&g), brute_force_poly(&g, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn branching_rule_does_not_matter(g in graph(9)) {
        let reference = graph_poly(&g);
        for s in [Selection::MinOutDegree, Selection::MinLabel, Selection::MaxLabel] {
            prop_assert_eq!(&graph_poly_with(&g, s), &reference);
        }
    }

    #[test]
    fn supersets_of_dominating_sets_dominate(g in graph(9), bits in any::<u16>(), extra in any::<u16>()) {
        let n = g.n();
        let pick = |mask: u16| (1..=n).filter(move |v| mask >> (v - 1) & 1 == 1);
        let d = VertexSet::from_labels(n, pick(bits)).unwrap();
        let bigger = VertexSet::from_labels(n, pick(bits | extra)).unwrap();
        if is_dominating(&g, &d).unwrap() {
            prop_assert!(is_dominating(&g, &bigger).unwrap());
        }
    }

    #[test]
    fn lift_has_one_arc_per_vertex_and_two_per_edge(g in graph(10)) {
        let gamma = lift(&g);
        prop_assert_eq!(gamma.u1().len(), g.n());
        prop_assert_eq!(gamma.u2().len(), g.n());
        prop_assert_eq!(gamma.arcs().len(), g.n() + 2 * g.edge_count());
    }

    #[test]
    fn coefficient_bounds(g in graph(10)) {
        let p = graph_poly(&g);
        let n = g.n();
        prop_assert_eq!(p.coeff(0), BigUint::from(0u8));
        prop_assert_eq!(p.coeff(n), BigUint::from(1u8));
        for k in 0..=n {
            prop_assert!(p.coeff(k) <= binomial(n as i64, k as i64));
        }
    }

    #[test]
    fn union_is_multiplicative(a in graph(6), b in graph(6)) {
        let parts = [graph_poly(&a), graph_poly(&b)];
        prop_assert_eq!(graph_poly(&disjoint_union(&a, &b)), union_poly(&parts));
    }

    #[test]
    fn deletion_extraction_recurrence(g in graph(8), pick in any::<prop::sample::Index>()) {
        let gamma = lift(&g);
        let i = Left(pick.index(g.n()) + 1);
        let deleted = gamma.delete(i).unwrap();
        let extracted = gamma.extract(i).unwrap();
        prop_assert_eq!(deleted.u1().len() + 1, gamma.u1().len());
        prop_assert_eq!(extracted.u1().len() + 1, gamma.u1().len());
        prop_assert!(extracted.u2().len() < gamma.u2().len());

        let (whole, a, b) = (recurrence_poly(&gamma), recurrence_poly(&deleted), recurrence_poly(&extracted));
        for k in 0..=g.n() {
            let with_i = if k == 0 { BigUint::from(0u8) } else { b.coeff(k - 1) };
            prop_assert_eq!(whole.coeff(k), a.coeff(k) + with_i);
        }
    }
}
