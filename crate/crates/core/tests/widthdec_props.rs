mod common;

use common::{dd_sparse, positive_diag, psd};
use fwrank::matcore::relative_residual;
use fwrank::widthdec::{
    factor_width, factor_width_le_2, membership, verify_dual_witness, Certificate, MembershipStatus,
};
use fwrank::{SymMatrix, ToleranceConfig};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn mixed(lo: usize, hi: usize) -> impl Strategy<Value = SymMatrix> {
    prop_oneof![psd(lo, hi), dd_sparse(lo, hi)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdicts_carry_valid_certificates(a in mixed(2, 5), k in 2usize..=4) {
        let k = k.min(a.n());
        let v = membership(&a, k, &cfg()).unwrap();
        match (&v.status, &v.certificate) {
            (MembershipStatus::Member, Some(Certificate::Decomposition(d))) => {
                prop_assert!(d.max_support() <= k);
                prop_assert!(relative_residual(&a, &d.reconstruct()) <= cfg().tol_recon);
            }
            (MembershipStatus::NotMember, Some(Certificate::Witness(w))) => {
                prop_assert!(verify_dual_witness(&a, w, k, &cfg()));
            }
            (MembershipStatus::Undetermined, None) => {}
            other => prop_assert!(false, "inconsistent verdict {:?}", other),
        }
    }

    #[test]
    fn membership_is_nested(a in mixed(3, 5)) {
        let mut member = false;
        for k in 2..=a.n() {
            let s = membership(&a, k, &cfg()).unwrap().status;
            prop_assert!(!(member && s != MembershipStatus::Member), "lost membership at k = {}", k);
            member |= s == MembershipStatus::Member;
        }
        prop_assert!(member, "every PSD matrix has factor width at most n");
    }

    #[test]
    fn width_two_routes_agree(a in mixed(2, 5)) {
        let exact = factor_width_le_2(&a, &cfg()).unwrap();
        let s = membership(&a, 2, &cfg()).unwrap().status;
        prop_assert_ne!(s, MembershipStatus::Undetermined);
        prop_assert_eq!(exact, s == MembershipStatus::Member);
    }

    #[test]
    fn width_is_scaling_invariant(
        (a, d) in mixed(1, 4).prop_flat_map(|a| { let n = a.n(); (Just(a), positive_diag(n)) })
    ) {
        let x = factor_width(&a, &cfg()).unwrap();
        let y = factor_width(&a.congruence_diag(&d).unwrap(), &cfg()).unwrap();
        prop_assert_eq!(x.k, y.k);
    }
}
