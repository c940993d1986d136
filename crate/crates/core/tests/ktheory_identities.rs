mod common;

use genusforge::ktheory::{lambda_total_class, sym_total_class, witten_element_class, Twist};
use genusforge::ring::QAlgebra;
use genusforge::series::grid_order;

const TOP: u32 = 8;

#[test]
fn sym_times_lambda_is_one() {
    let mut rng = common::rng(11);
    let order = grid_order(4);
    for _ in 0..20 {
        let e = common::random_class(&mut rng, "E");
        let s = sym_total_class(&e, Twist::q_power(1), order, TOP);
        let l = lambda_total_class(&e, Twist::new(-1, 2), order, TOP);
        assert!(s.mul(&l).is_one(), "{e:?}");
    }
}

#[test]
fn half_integer_twists_also_cancel() {
    let mut rng = common::rng(12);
    let order = grid_order(3);
    for _ in 0..5 {
        let e = common::random_class(&mut rng, "E");
        let s = sym_total_class(&e, Twist::new(1, 1), order, TOP);
        let l = lambda_total_class(&e, Twist::new(-1, 1), order, TOP);
        assert!(s.mul(&l).is_one());
    }
}

#[test]
fn witten_element_is_multiplicative() {
    let mut rng = common::rng(13);
    let order = grid_order(4);
    for _ in 0..20 {
        let e = common::random_class(&mut rng, "E");
        let f = common::random_class(&mut rng, "F");
        let sum = witten_element_class(&e.plus(&f), order, TOP);
        let prod = witten_element_class(&e, order, TOP).mul(&witten_element_class(&f, order, TOP));
        assert_eq!(sum, prod, "{e:?} + {f:?}");
    }
}
