use proptest::prelude::*;
use urmatch::graph::{complete_bipartite, cycle, gk_gadget, petersen, Edge, Graph};
use urmatch::matching::{
    all_matchings, is_acyclic_matching, is_uniquely_restricted_fast, is_uniquely_restricted_oracle, Matching,
};
use urmatch::solvers::{greedy_maximal, max_matching, nu_ac_exact, nu_ur_exact, solve, Objective, DEFAULT_BUDGET};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(prop::bool::weighted(0.4), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Distinct perfect matchings of `g[vs]`, by exhaustive pairing.
fn perfect_matchings(g: &Graph, vs: &[usize]) -> usize {
    if vs.is_empty() {
        return 1;
    }
    let (first, rest) = (vs[0], &vs[1..]);
    (0..rest.len())
        .filter(|&i| g.has_edge(first, rest[i]))
        .map(|i| {
            let mut left = rest.to_vec();
            left.remove(i);
            perfect_matchings(g, &left)
        })
        .sum()
}

fn covered(m: &Matching) -> Vec<usize> {
    let mut vs = m.covered_vertices();
    vs.sort_unstable();
    vs
}

fn forest_on(g: &Graph, vs: &[usize]) -> bool {
    let h = g.induced(vs);
    h.size() + h.component_count() == h.order()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn predicates_agree_with_definitions(g in arb_graph(7)) {
        for m in all_matchings(&g) {
            let unique = perfect_matchings(&g, &covered(&m)) == 1;
            let fast = is_uniquely_restricted_fast(&g, &m).unwrap();
            prop_assert_eq!(fast.is_uniquely_restricted(), unique);
            prop_assert_eq!(is_uniquely_restricted_oracle(&g, &m).unwrap(), unique);
            if let Some(w) = fast.witness() {
                prop_assert!(w.validate(&g, &m).is_ok());
            }
            prop_assert_eq!(is_acyclic_matching(&g, &m).unwrap(), forest_on(&g, &covered(&m)));
        }
    }

    #[test]
    fn exact_solvers_match_enumeration(g in arb_graph(8)) {
        let all = all_matchings(&g);
        let nu = all.iter().map(Matching::len).max().unwrap();
        let nu_ur = all.iter().filter(|m| perfect_matchings(&g, &covered(m)) == 1).map(Matching::len).max().unwrap();
        let nu_ac = all.iter().filter(|m| forest_on(&g, &covered(m))).map(Matching::len).max().unwrap();
        prop_assert_eq!(max_matching(&g).value, nu);
        let ur = nu_ur_exact(&g, DEFAULT_BUDGET);
        prop_assert!(ur.optimal);
        prop_assert_eq!(ur.value, nu_ur);
        prop_assert_eq!(ur.witness.len(), nu_ur);
        prop_assert_eq!(perfect_matchings(&g, &covered(&ur.witness)), 1);
        let ac = nu_ac_exact(&g, DEFAULT_BUDGET);
        prop_assert_eq!(ac.value, nu_ac);
        prop_assert!(forest_on(&g, &covered(&ac.witness)));
        prop_assert!(nu >= nu_ur && nu_ur >= nu_ac);
    }

    #[test]
    fn greedy_is_valid_and_bounded(g in arb_graph(9)) {
        for objective in [Objective::Matching, Objective::UniquelyRestricted, Objective::Acyclic] {
            let m = greedy_maximal(&g, objective);
            prop_assert!(m.validate(&g).is_ok());
            let exact = solve(&g, objective, DEFAULT_BUDGET);
            prop_assert!(m.len() <= exact.value);
        }
        let ur = greedy_maximal(&g, Objective::UniquelyRestricted);
        prop_assert!(is_uniquely_restricted_fast(&g, &ur).unwrap().is_uniquely_restricted());
    }
}

#[test]
fn named_values() {
    // ν_ur(C_n) = ⌈n/2⌉ − 1 for even n and ⌊n/2⌋ for odd n
    for n in 3..=10 {
        let expected = if n % 2 == 0 { n / 2 - 1 } else { n / 2 };
        assert_eq!(nu_ur_exact(&cycle(n), DEFAULT_BUDGET).value, expected, "C_{n}");
    }
    assert_eq!(nu_ur_exact(&gk_gadget(1).unwrap(), DEFAULT_BUDGET).value, 4);
    assert_eq!(max_matching(&petersen()).value, 5);
    for d in 2..=4 {
        let k = complete_bipartite(d, d).unwrap();
        assert_eq!(nu_ur_exact(&k, DEFAULT_BUDGET).value, 1);
        assert_eq!(nu_ac_exact(&k, DEFAULT_BUDGET).value, 1);
    }
}

#[test]
fn exhausted_budget_is_reported() {
    let r = nu_ur_exact(&gk_gadget(2).unwrap(), 3);
    assert!(!r.optimal);
    assert!(r.value <= 7);
    assert!(is_uniquely_restricted_fast(&gk_gadget(2).unwrap(), &r.witness)
        .unwrap()
        .is_uniquely_restricted());
}

#[test]
fn matching_validation() {
    let g = cycle(4);
    assert!(Matching::new(&g, [Edge::new(0, 1), Edge::new(1, 2)]).is_err());
    assert!(Matching::new(&g, [Edge::new(0, 2)]).is_err());
    assert!(Matching::new(&g, [Edge::new(0, 1), Edge::new(2, 3)]).is_ok());
}
