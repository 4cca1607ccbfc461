use proptest::prelude::*;

use dqm::algebra::{binom_mod_p, FieldConfig, PolyT, RatT};
use dqm::expr::{parse_qm, qm_from_json, qm_to_json, series_from_json, series_to_json};
use dqm::hyperd::DerivationEngine;
use dqm::qmring::{Mono, QmPoly};
use dqm::tseries::{hyper_derive, AlphaTable, TSeries};

const FIELDS: [u32; 6] = [3, 4, 5, 7, 8, 9];

fn field() -> impl Strategy<Value = FieldConfig> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|q| FieldConfig::for_q(q).unwrap())
}

fn poly_in(f: FieldConfig, max_deg: usize) -> impl Strategy<Value = PolyT> {
    prop::collection::vec(0..f.q() as usize, 0..=max_deg + 1)
        .prop_map(move |ix| PolyT::from_coeffs(f, ix.into_iter().map(|i| f.elements().nth(i).unwrap()).collect()))
}

fn rat_in(f: FieldConfig) -> impl Strategy<Value = RatT> {
    (poly_in(f, 3), poly_in(f, 2)).prop_filter_map("zero denominator", move |(n, d)| {
        if d.is_zero() {
            return None;
        }
        let (lc, monic) = d.monic();
        let n = n.scale(f.inv(lc).expect("leading coefficient is nonzero"));
        RatT::new(n, monic).ok()
    })
}

fn qm_in(f: FieldConfig) -> impl Strategy<Value = QmPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), rat_in(f)), 0..5)
        .prop_map(move |terms| QmPoly::from_terms(f, terms.into_iter().map(|((a, b, c), r)| (Mono::new(a, b, c), r))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_field_laws((a, b, c) in field().prop_flat_map(|f| (rat_in(f), rat_in(f), rat_in(f)))) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!(a.den().is_monic());
    }

    #[test]
    fn polynomial_division((a, b) in field().prop_flat_map(|f| (poly_in(f, 8), poly_in(f, 4)))) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn frobenius_is_pth_power(a in field().prop_flat_map(rat_in)) {
        let p = a.field().p() as i64;
        prop_assert_eq!(a.frobenius(1), a.pow(p).unwrap());
        prop_assert_eq!(a.frobenius(1).frobenius_root(1), Some(a));
    }

    #[test]
    fn lucas_matches_pascal(n in -40i64..60, k in 0u64..40, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        // C(n, k) = C(n-1, k) + C(n-1, k-1)
        if k > 0 {
            let lhs = binom_mod_p(n, k, p);
            let rhs = (binom_mod_p(n - 1, k, p) + binom_mod_p(n - 1, k - 1, p)) % p;
            prop_assert_eq!(lhs, rhs);
        } else {
            prop_assert_eq!(binom_mod_p(n, 0, p), 1);
        }
    }

    #[test]
    fn display_and_json_round_trip(x in field().prop_flat_map(qm_in)) {
        let f = x.field();
        prop_assert_eq!(parse_qm(f, &x.to_string()).unwrap(), x.clone());
        let json = serde_json::to_string(&qm_to_json(&x)).unwrap();
        let back = qm_from_json(f, &serde_json::from_str::<Vec<_>>(&json).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn series_inverse_and_json((f, cs) in field().prop_flat_map(|f| (Just(f), prop::collection::vec(rat_in(f), 1..12)))) {
        let mut cs = cs;
        if cs[0].is_zero() {
            cs[0] = RatT::one(f);
        }
        let s = TSeries::from_terms(f, 16, cs.into_iter().enumerate());
        let inv = s.inverse().unwrap();
        prop_assert_eq!(&s * &inv, TSeries::one(f, 16));
        let back = series_from_json(f, &series_to_json(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn series_iterativity(
        (f, cs, i, j) in field().prop_flat_map(|f| (Just(f), prop::collection::vec(rat_in(f), 1..10), 0u64..16, 0u64..16))
    ) {
        let s = TSeries::from_terms(f, 30, cs.into_iter().enumerate().map(|(n, c)| (2 * n, c)));
        let mut alpha = AlphaTable::new(f);
        let lhs = hyper_derive(&hyper_derive(&s, j, &mut alpha), i, &mut alpha);
        let b = binom_mod_p((i + j) as i64, i, f.p());
        let rhs = hyper_derive(&s, i + j, &mut alpha).scale(&RatT::from_int(f, b as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_leibniz(
        (f, a, b, n) in field().prop_flat_map(|f| (Just(f), prop::collection::vec(rat_in(f), 1..8), prop::collection::vec(rat_in(f), 1..8), 0u64..12))
    ) {
        let x = TSeries::from_terms(f, 24, a.into_iter().enumerate());
        let y = TSeries::from_terms(f, 24, b.into_iter().enumerate().map(|(k, c)| (k + 1, c)));
        let mut alpha = AlphaTable::new(f);
        let lhs = hyper_derive(&(&x * &y), n, &mut alpha);
        let mut rhs = TSeries::zero(f, 24);
        for r in 0..=n {
            rhs = &rhs + &(&hyper_derive(&x, r, &mut alpha) * &hyper_derive(&y, n - r, &mut alpha));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_leibniz((x, y, n) in field().prop_flat_map(|f| (qm_in(f), qm_in(f), 0u64..10))) {
        let f = x.field();
        let mut en = DerivationEngine::new(f);
        let lhs = en.derive(&(&x * &y), n).unwrap();
        let mut rhs = QmPoly::zero(f);
        for r in 0..=n {
            rhs = &rhs + &(&en.derive(&x, r).unwrap() * &en.derive(&y, n - r).unwrap());
        }
        prop_assert_eq!(lhs, rhs);
    }
}
