use mock_theta::series::to_order;
use mock_theta::thetas::{theta_j, ThetaSpec};
use mock_theta::{Cyc, Monomial, Rational, Series};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn cyc() -> impl Strategy<Value = Cyc> {
    proptest::array::uniform8(rat()).prop_map(Cyc::from_coords)
}

fn series() -> impl Strategy<Value = Series> {
    (-3i64..=3, proptest::collection::vec(-5i64..=5, 1..12), 0i64..=8).prop_map(|(v, cs, extra)| {
        let order = v + cs.len() as i64 - 1 + extra;
        Series::from_coeffs(v, cs.into_iter().map(Cyc::from_int).collect(), order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.add(&a.neg()), Cyc::zero());
    }

    #[test]
    fn inverse(a in cyc()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.mul(&a.inv().unwrap()), Cyc::one());
        prop_assert_eq!(a.mul_zeta_pow(24), a.clone());
    }

    #[test]
    fn product_precision(a in series(), b in series()) {
        let p = a.mul(&b);
        let expected = (a.order() + b.valuation()).min(b.order() + a.valuation());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(p.order(), expected);
        }
        // coefficients below the order agree with the product of exact truncations
        let n = p.order();
        let q = a.truncate(a.order()).mul(&b.truncate(b.order()));
        prop_assert!(p.first_mismatch(&q, n).is_none());
    }

    #[test]
    fn series_inverse(a in series()) {
        prop_assume!(!a.is_zero());
        let inv = a.invert().unwrap();
        let one = a.mul(&inv);
        prop_assert!(one.first_mismatch(&Series::one(one.order()), one.order()).is_none());
        prop_assert!(one.order() >= 0);
    }

    #[test]
    fn twist_composes(a in series(), j in 0i64..24, k in 0i64..24) {
        let (u, v) = (Cyc::zeta_pow(j), Cyc::zeta_pow(k));
        prop_assert_eq!(a.twist(&u).twist(&v), a.twist(&u.mul(&v)));
        prop_assert_eq!(a.twist(&u).twist(&u.inv().unwrap()), a.clone());
    }

    #[test]
    fn to_order_reaches_target(k in 0i64..24, e in -4i64..=4, m in 1i64..=4, n in 10i64..40) {
        let x = Monomial::new(Cyc::zeta_pow(k), e).unwrap();
        let t = theta_j(&ThetaSpec::new(x, m), n + 5);
        let s = to_order(n, |w| Ok(t.truncate(w.min(t.order())))).unwrap();
        prop_assert_eq!(s.order(), n);
    }
}
