mod common;

use genusforge::catalog::oracle::mod2_member;
use genusforge::equivariant::{
    fixed_point_series, g_series, h_series, slash, subgroup_member, EquivariantModel, FixedComponent, GroupElement2x2,
    JacobiFormMeta, LefschetzTwist, Mode, MovingF, MovingFperp, Path, Subgroup,
};
use genusforge::ktheory::RVariant;
use genusforge::ring::{int, rat};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn membership_matches_mod_two_reduction() {
    let mut rng = common::rng(7);
    for _ in 0..1000 {
        let len = rng.gen_range(0..12);
        let g = common::random_word(&mut rng, len);
        for tag in Subgroup::ALL {
            assert_eq!(subgroup_member(&g, tag).unwrap(), mod2_member(&g, tag), "{g} in {tag:?}");
        }
    }
}

#[test]
fn subgroups_are_closed_under_products() {
    let mut rng = common::rng(8);
    for tag in Subgroup::ALL {
        let members: Vec<GroupElement2x2> = (0..400)
            .map(|_| {
                let len = rng.gen_range(0..8);
                common::random_word(&mut rng, len)
            })
            .filter(|g| subgroup_member(g, tag).unwrap())
            .take(20)
            .collect();
        for a in &members {
            for b in &members {
                assert!(subgroup_member(&a.mul(b), tag).unwrap());
                assert!(subgroup_member(&a.inverse(), tag).unwrap());
            }
        }
    }
}

fn test_fn(t: Complex64, tau: Complex64) -> genusforge::Result<Complex64> {
    Ok((Complex64::new(0.0, 2.0) * t).exp() * (tau + Complex64::new(0.3, 2.0)).powi(2) + t * tau)
}

#[test]
fn slash_is_a_right_action() {
    let meta = JacobiFormMeta {
        index: rat(3, 2),
        weight: int(2),
        subgroup: Subgroup::Sl2z,
    };
    let mut rng = common::rng(9);
    let (t, tau) = (Complex64::new(0.17, 0.05), Complex64::new(0.21, 1.3));
    for _ in 0..50 {
        let (l1, l2) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let g1 = common::random_word(&mut rng, l1);
        let g2 = common::random_word(&mut rng, l2);
        let nested = slash(slash(test_fn, g1, &meta), g2, &meta)(t, tau).unwrap();
        let direct = slash(test_fn, g1.mul(&g2), &meta)(t, tau).unwrap();
        assert!((nested - direct).norm() < 1e-9 * direct.norm().max(1.0), "{g1} {g2}: {nested} vs {direct}");
    }
}

fn split_point(m: i64, n: i64) -> FixedComponent {
    FixedComponent::point(1, vec![MovingF { rank: 1, m }], vec![MovingFperp { rank: 1, n }]).unwrap()
}

#[test]
fn double_prime_is_prime_with_half_powers_negated() {
    let model = EquivariantModel::new(Mode::Split, vec![split_point(1, 2), split_point(-3, 1)], 1, 1, 0).unwrap();
    let g1 = g_series(&model, RVariant::RPrime, 2).unwrap();
    let g2 = g_series(&model, RVariant::RDoublePrime, 2).unwrap();
    assert_eq!(g2, g1.flip_half());
    assert_ne!(g1, g2);
}

fn points(weights: &[Vec<i64>]) -> Vec<FixedComponent> {
    weights
        .iter()
        .map(|ms| FixedComponent::point(1, ms.iter().map(|&m| MovingF { rank: 1, m }).collect(), vec![]).unwrap())
        .collect()
}

fn weight() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_components_and_summands(
        ws in prop::collection::vec(prop::collection::vec(weight(), 2), 1..4),
        seed in any::<u64>(),
    ) {
        let model = EquivariantModel::new(Mode::Foliated, points(&ws), 2, 0, 0).unwrap();
        let mut rng = common::rng(seed);
        let mut shuffled: Vec<Vec<i64>> = ws.iter().map(|w| if rng.gen() { vec![w[1], w[0]] } else { w.clone() }).collect();
        shuffled.rotate_left(rng.gen_range(0..ws.len()));
        let other = EquivariantModel::new(Mode::Foliated, points(&shuffled), 2, 0, 0).unwrap();
        prop_assert_eq!(h_series(&model, 1).unwrap(), h_series(&other, 1).unwrap());
        prop_assert_eq!(
            fixed_point_series(&model, LefschetzTwist::Dirac, Path::Direct, 0).unwrap(),
            fixed_point_series(&other, LefschetzTwist::Dirac, Path::Direct, 0).unwrap()
        );
    }
}
