use fwrank::covering::{clique_cover_number, covering_number, schonheim_bound, DEFAULT_BUDGET};
use fwrank::specgraph::SupportGraph;
use proptest::prelude::*;

#[test]
fn covering_table_is_consistent() {
    for n in 2..=8 {
        let mut prev = usize::MAX;
        for k in 2..=n.min(4) {
            let r = covering_number(n, k, DEFAULT_BUDGET).unwrap();
            assert!(r.certified, "C({n}, {k}, 2) not certified");
            assert!(r.design.verify());
            assert!(r.value >= schonheim_bound(n, k).unwrap());
            assert!(r.value <= prev, "C({n}, k, 2) increased at k = {k}");
            prev = r.value;
            let cc = clique_cover_number(&SupportGraph::complete(n), k, DEFAULT_BUDGET).unwrap();
            assert_eq!(cc.value, r.value, "cc_{k}(K_{n})");
            assert!(cc.cover.verify(&SupportGraph::complete(n)));
        }
    }
}

#[test]
fn uncertified_values_stay_above_schonheim() {
    let r = covering_number(10, 4, 50).unwrap();
    assert!(r.design.verify());
    assert!(r.value >= schonheim_bound(10, 4).unwrap());
    assert!(r.lower_bound <= r.value);
}

/// Random bipartite graph on parts `0..p` and `p..n`.
fn bipartite() -> impl Strategy<Value = SupportGraph> {
    (2usize..=9).prop_flat_map(|n| {
        (1..n, prop::collection::vec(any::<bool>(), n * n)).prop_map(move |(p, bits)| {
            let edges: Vec<(usize, usize)> = (0..p)
                .flat_map(|i| (p..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .collect();
            SupportGraph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_free_covers_need_half_the_edges(g in bipartite()) {
        let r = clique_cover_number(&g, 3.min(g.n()), DEFAULT_BUDGET).unwrap();
        prop_assert!(r.cover.verify(&g));
        if g.n() >= 3 {
            prop_assert!(r.value >= g.edge_count().div_ceil(2));
        }
    }
}
