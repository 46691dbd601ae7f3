mod common;

use common::{dd_sparse, nonnegative_fw};
use fwrank::hadamard::{conjecture_search, fran_power_bound};
use fwrank::matcore::{hadamard_power, hadamard_product};
use fwrank::widthdec::factor_width_le_2;
use fwrank::ToleranceConfig;
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

proptest! {
    #[test]
    fn width_two_is_closed_under_products(
        (a, b) in (2usize..=6).prop_flat_map(|n| (dd_sparse(n, n), dd_sparse(n, n)))
    ) {
        prop_assert!(factor_width_le_2(&a, &cfg()).unwrap());
        prop_assert!(factor_width_le_2(&b, &cfg()).unwrap());
        prop_assert!(factor_width_le_2(&hadamard_product(&a, &b).unwrap(), &cfg()).unwrap());
    }

    #[test]
    fn real_powers_keep_width_two(
        a in (3usize..=6).prop_flat_map(|n| nonnegative_fw(n, 2)),
        s in prop::sample::select(vec![1.0, 1.5, 2.0, 2.7]),
    ) {
        prop_assert!(factor_width_le_2(&hadamard_power(&a, s).unwrap(), &cfg()).unwrap());
    }

    #[test]
    fn power_bound_is_polynomial(r in 1u64..=20, s in 1u64..=8) {
        prop_assert!(fran_power_bound(r, s).unwrap() <= r.pow(s as u32));
    }
}

#[test]
fn search_output_ignores_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                conjecture_search(5, 3, 2.5, 12, 99, &cfg())
                    .unwrap()
                    .to_jsonl()
            })
    };
    assert_eq!(run(1), run(4));
}
