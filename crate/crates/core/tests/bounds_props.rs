mod common;

use common::{dd_sparse, psd, tridiagonal};
use fwrank::bounds::{bounds_report, fran_exact_small, BoundsOptions, SmallFran};
use fwrank::matcore::psd_rank;
use fwrank::widthdec::factor_width;
use fwrank::{SymMatrix, ToleranceConfig};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn opts() -> BoundsOptions {
    BoundsOptions::default()
}

fn mixed(lo: usize, hi: usize) -> impl Strategy<Value = SymMatrix> {
    prop_oneof![psd(lo, hi), dd_sparse(lo, hi)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lower_bounds_never_exceed_upper_bounds(a in mixed(1, 5)) {
        let k = factor_width(&a, &cfg()).unwrap().hi;
        let r = bounds_report(&a, k, &cfg(), &opts()).unwrap();
        for lo in &r.lower {
            for up in &r.upper {
                prop_assert!(lo.value <= up.value, "{:?} > {:?}", lo, up);
            }
        }
        prop_assert_eq!(r.exact.is_some(), r.best_lower() == r.best_upper());
    }

    #[test]
    fn small_exact_values_respect_bounds(a in mixed(1, 4)) {
        let s = fran_exact_small(&a, &cfg(), &opts()).unwrap();
        let r = bounds_report(&a, s.k, &cfg(), &opts()).unwrap();
        match s.result {
            SmallFran::Exact(v) => {
                prop_assert!(r.best_lower() <= v && v <= r.best_upper(), "{} outside {:?}", v, r);
            }
            SmallFran::Range(lo, hi) => {
                prop_assert!(lo < hi);
                prop_assert!(r.best_lower() <= lo && hi <= r.best_upper());
            }
        }
        prop_assert!(!s.trace.is_empty());
    }

    #[test]
    fn small_tridiagonal_values_equal_rank((a, rank) in tridiagonal(1, 4)) {
        let s = fran_exact_small(&a, &cfg(), &opts()).unwrap();
        prop_assert_eq!(s.result, SmallFran::Exact(rank));
        prop_assert_eq!(rank, psd_rank(&a, &cfg()));
    }
}
