use genusforge::ring::{int, rat, Invertible, Rational, Ring};
use genusforge::series::{Laurent, PowerSeries, QSeries};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn qseries(len: usize) -> impl Strategy<Value = QSeries<Rational>> {
    prop::collection::vec(rational(), len).prop_map(|c| QSeries::from_coeffs(int(0), c))
}

fn unit_qseries(len: usize) -> impl Strategy<Value = QSeries<Rational>> {
    (qseries(len), 1i64..=5).prop_map(|(s, c0)| {
        let mut c = s.coeffs().to_vec();
        c[0] = int(c0);
        QSeries::from_coeffs(int(0), c)
    })
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-4i64..=4, rational()), 0..5).prop_map(Laurent::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qseries_ring_axioms(a in qseries(8), b in qseries(8), c in qseries(8)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn qseries_inverse(a in unit_qseries(8)) {
        let one = a.mul(&a.inv().unwrap());
        prop_assert_eq!(one.coeff(0), Some(&int(1)));
        prop_assert!(one.coeffs()[1..].iter().all(|c| c == &int(0)));
    }

    #[test]
    fn qseries_exp_log_round_trip(a in qseries(7)) {
        let mut c = a.coeffs().to_vec();
        c[0] = int(0);
        let x = QSeries::from_coeffs(int(0), c);
        prop_assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }

    #[test]
    fn flip_half_is_an_involution(a in qseries(9)) {
        prop_assert_eq!(a.flip_half().flip_half(), a.clone());
        prop_assert_eq!(a.flip_half().mul(&a.flip_half()), a.mul(&a).flip_half());
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.times(&b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn power_series_inverse_and_log(c in prop::collection::vec(rational(), 6), c0 in 1i64..=4) {
        let mut c = c;
        c[0] = int(c0);
        let p = PowerSeries::new(c);
        let one = p.times(&p.try_inv().unwrap());
        prop_assert_eq!(one.coeff(0), int(1));
        prop_assert!(one.coeffs()[1..].iter().all(|x| x == &int(0)));
        let mut u = p.coeffs().to_vec();
        u[0] = int(1);
        let u = PowerSeries::new(u);
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
    }
}
