use iexg_core::builtin::{dyadic_spec, factorial_spec, rank2_spec, sqrt2_spec};
use iexg_core::gamma::MultiplierRule;
use iexg_core::iet::random::{random_iet, random_point};
use iexg_core::iet::{
    gamma_b, gamma_b1b2, r_ka, sign_hom, sigma, sigma_hat, sigma_ij, GammaBData,
};
use iexg_core::{GammaSpec, Iet};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn specs() -> Vec<GammaSpec> {
    vec![sqrt2_spec(1), sqrt2_spec(6), rank2_spec(4), dyadic_spec(), factorial_spec()]
}

fn spec_and_rng(which: usize, seed: u64) -> (GammaSpec, StdRng) {
    let all = specs();
    (all[which % all.len()].clone(), StdRng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn composition_is_associative(which in 0usize..5, seed in any::<u64>()) {
        let (s, mut rng) = spec_and_rng(which, seed);
        let f = random_iet(&s, 5, &mut rng).unwrap();
        let g = random_iet(&s, 5, &mut rng).unwrap();
        let h = random_iet(&s, 5, &mut rng).unwrap();
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverses_cancel(which in 0usize..5, seed in any::<u64>()) {
        let (s, mut rng) = spec_and_rng(which, seed);
        let f = random_iet(&s, 6, &mut rng).unwrap();
        let inv = f.inverse().unwrap();
        prop_assert!(f.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&f).unwrap().is_identity());
        prop_assert_eq!(inv.inverse().unwrap(), f.clone());
        prop_assert_eq!(Iet::identity(&s).compose(&f).unwrap(), f);
    }

    #[test]
    fn canonical_form_is_stable(which in 0usize..5, seed in any::<u64>()) {
        let (s, mut rng) = spec_and_rng(which, seed);
        let f = random_iet(&s, 6, &mut rng).unwrap();
        let g = random_iet(&s, 6, &mut rng).unwrap();
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.normalized().unwrap(), fg.clone());
        for w in fg.shifts().windows(2) {
            prop_assert!(w[0] != w[1]);
        }
        prop_assert!(fg.cuts()[0].is_zero());
    }

    #[test]
    fn composition_agrees_pointwise(which in 0usize..5, seed in any::<u64>()) {
        let (s, mut rng) = spec_and_rng(which, seed);
        let f = random_iet(&s, 5, &mut rng).unwrap();
        let g = random_iet(&s, 5, &mut rng).unwrap();
        let fg = f.compose(&g).unwrap();
        let mut pts: Vec<_> = g.cuts().to_vec();
        pts.extend(f.cuts().iter().cloned());
        for _ in 0..8 {
            pts.push(random_point(&s, &mut rng).unwrap());
        }
        for t in pts {
            let lhs = fg.apply(&t).unwrap();
            prop_assert_eq!(lhs.clone(), f.apply(&g.apply(&t).unwrap()).unwrap());
            prop_assert!(lhs.sign().unwrap() != iexg_core::Sign::Negative);
            prop_assert!(lhs.lt(&s.one()).unwrap());
        }
    }

    #[test]
    fn angles_of_products_are_sums(which in 0usize..5, seed in any::<u64>()) {
        let (s, mut rng) = spec_and_rng(which, seed);
        let f = random_iet(&s, 5, &mut rng).unwrap();
        let g = random_iet(&s, 5, &mut rng).unwrap();
        let sums: Vec<_> = f
            .angles()
            .iter()
            .flat_map(|a| g.angles().into_iter().map(move |b| a.add(&b).unwrap()))
            .collect();
        for a in f.compose(&g).unwrap().angles() {
            prop_assert!(sums.contains(&a), "angle {} is not a sum", a);
        }
    }

    #[test]
    fn equality_matches_pointwise_equality(which in 0usize..5, seed in any::<u64>()) {
        let (s, mut rng) = spec_and_rng(which, seed);
        let f = random_iet(&s, 3, &mut rng).unwrap();
        let g = random_iet(&s, 3, &mut rng).unwrap();
        let mut pts: Vec<_> = f.cuts().to_vec();
        pts.extend(g.cuts().iter().cloned());
        let pointwise = pts.iter().all(|t| f.apply(t).unwrap() == g.apply(t).unwrap());
        prop_assert_eq!(f.equals(&g), pointwise);
    }

    #[test]
    fn parity_is_multiplicative_for_odd_multipliers(seed in any::<u64>()) {
        let s = GammaSpec::rational_rule(MultiplierRule::Constant(3)).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_iet(&s, 5, &mut rng).unwrap();
        let g = random_iet(&s, 5, &mut rng).unwrap();
        let sf = sign_hom(&s, &f).unwrap().value;
        let sg = sign_hom(&s, &g).unwrap().value;
        let sfg = sign_hom(&s, &f.compose(&g).unwrap()).unwrap().value;
        prop_assert_eq!(sfg, (sf + sg) % 2);
    }
}

#[test]
fn generator_orders() {
    let s = rank2_spec(1);
    for i in 1..=2 {
        assert_eq!(sigma(&s, i).unwrap().order(10).unwrap(), Some(3));
        assert_eq!(sigma_hat(&s, i).unwrap().order(10).unwrap(), Some(3));
    }
    let k = sqrt2_spec(11);
    let r = r_ka(&k, &k.rational(9, 11).unwrap()).unwrap().value;
    assert_eq!(r.order(10).unwrap(), Some(3));
    let d = dyadic_spec();
    let t = sigma_ij(&d, 3, 1, 6).unwrap();
    assert_eq!(t.order(10).unwrap(), Some(2));
    assert_eq!(t.apply(&d.at_level(3, 1).unwrap()).unwrap(), d.at_level(3, 6).unwrap());
}

#[test]
fn gamma_b_commutator_has_order_three() {
    let s = sqrt2_spec(10);
    let q = |p| s.rational(p, 10).unwrap();
    let b1 = GammaBData::new(q(0), q(1), q(2));
    let b2 = GammaBData::new(q(2), q(3), q(3));
    let g = gamma_b1b2(&s, &b1, &b2).unwrap();
    assert_eq!(g.order(10).unwrap(), Some(3));
    let c = gamma_b(&s, &b1).unwrap().commutator(&gamma_b(&s, &b2).unwrap()).unwrap();
    assert_eq!(c, g);
    let far = GammaBData::new(q(6), q(7), q(2));
    let c = gamma_b(&s, &b1).unwrap().commutator(&gamma_b(&s, &far).unwrap()).unwrap();
    assert!(c.is_identity());
    let overlapping = GammaBData::new(q(1), q(2), q(3));
    assert!(gamma_b1b2(&s, &b1, &overlapping).is_err());
}
