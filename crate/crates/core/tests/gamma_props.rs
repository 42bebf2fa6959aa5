use std::cmp::Ordering;

use iexg_core::builtin::{dyadic_spec, rank2_spec, sqrt2_spec};
use iexg_core::gamma::lattice::{lattice_membership, same_subgroup};
use iexg_core::{GammaElement, GammaSpec, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn lattice_el(s: &GammaSpec, c: Vec<i64>) -> GammaElement {
    s.from_coeffs(c).unwrap()
}

fn coeffs(d: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, d + 1)
}

/// `p(x)` for integer coefficients, constant term first.
fn eval(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn compare_is_zero_iff_equal(a in coeffs(2, 40), b in coeffs(2, 40)) {
        let s = rank2_spec(7);
        let (x, y) = (lattice_el(&s, a.clone()), lattice_el(&s, b.clone()));
        prop_assert_eq!(x.compare(&y).unwrap() == Ordering::Equal, a == b);
    }

    #[test]
    fn order_is_translation_invariant(a in coeffs(2, 40), b in coeffs(2, 40), c in coeffs(2, 40)) {
        let s = rank2_spec(3);
        let (x, y, z) = (lattice_el(&s, a), lattice_el(&s, b), lattice_el(&s, c));
        let before = x.compare(&y).unwrap();
        let after = x.add(&z).unwrap().compare(&y.add(&z).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn frac_lands_in_unit_interval(a in coeffs(2, 200)) {
        let s = rank2_spec(5);
        let f = lattice_el(&s, a).frac().unwrap();
        prop_assert!(f.sign().unwrap() != Sign::Negative);
        prop_assert_eq!(f.sub(&s.one()).unwrap().sign().unwrap(), Sign::Negative);
    }

    #[test]
    fn rule_frac_lands_in_unit_interval(level in 0u32..6, num in -500i128..500) {
        let s = dyadic_spec();
        let f = s.at_level(level, num).unwrap().frac().unwrap();
        prop_assert!(f.sign().unwrap() != Sign::Negative);
        prop_assert!(f.lt(&s.one()).unwrap());
    }

    #[test]
    fn generator_enclosures_bracket_the_root(bits in 1u32..60, i in 1usize..=2) {
        let s = rank2_spec(1);
        let l = s.lambda(i).unwrap();
        let w = BigRational::new(1.into(), BigInt::from(1u64) << bits);
        let (lo, hi) = l.enclose(&w).unwrap();
        prop_assert!(&hi - &lo <= w);
        let p = s.irrationals()[i - 1].minpoly();
        let (plo, phi) = (eval(p, &lo), eval(p, &hi));
        // a simple root inside [lo, hi] changes sign (or sits on an endpoint)
        prop_assert!(plo.is_zero() || phi.is_zero() || plo.is_positive() != phi.is_positive());
        let (ilo, ihi) = s.irrationals()[i - 1].interval();
        prop_assert!(ilo <= &hi && &lo <= ihi);
    }

    #[test]
    fn rational_enclosures_are_exact(a in -1000i64..1000) {
        let s = sqrt2_spec(9);
        let x = lattice_el(&s, vec![a, 0]);
        let (lo, hi) = x.enclose(&BigRational::new(1.into(), 2.into())).unwrap();
        prop_assert_eq!(lo.clone(), hi);
        prop_assert_eq!(lo, BigRational::new(a.into(), 9.into()));
    }

    #[test]
    fn membership_matches_brute_force(
        x in coeffs(1, 5),
        t1 in coeffs(1, 5),
        t2 in coeffs(1, 5),
        two in any::<bool>(),
    ) {
        let s = sqrt2_spec(1);
        let mut targets = vec![t1.clone()];
        if two {
            targets.push(t2.clone());
        }
        let elems: Vec<GammaElement> = targets.iter().map(|c| lattice_el(&s, c.clone())).collect();
        let member = lattice_membership(&lattice_el(&s, x.clone()), &elems).unwrap();
        // multipliers needed here never exceed 50 in absolute value
        let range: Vec<i64> = (-50..=50).collect();
        let found = if two {
            range.iter().any(|&u| range.iter().any(|&v| {
                (0..2).all(|j| u * t1[j] + v * t2[j] == x[j])
            }))
        } else {
            range.iter().any(|&u| (0..2).all(|j| u * t1[j] == x[j]))
        };
        prop_assert_eq!(member, found);
    }

    #[test]
    fn subgroup_equality_is_an_equivalence(
        fams in prop::collection::vec(prop::collection::vec(coeffs(1, 4), 1..3), 3)
    ) {
        let s = sqrt2_spec(2);
        let fams: Vec<Vec<GammaElement>> = fams
            .into_iter()
            .map(|f| f.into_iter().map(|c| lattice_el(&s, c)).collect())
            .collect();
        for a in &fams {
            prop_assert!(same_subgroup(a, a).unwrap());
            for b in &fams {
                let ab = same_subgroup(a, b).unwrap();
                prop_assert_eq!(ab, same_subgroup(b, a).unwrap());
                for c in &fams {
                    if ab && same_subgroup(b, c).unwrap() {
                        prop_assert!(same_subgroup(a, c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn spec_examples() {
    let s = GammaSpec::finitely_generated(5, vec![iexg_core::builtin::sqrt2_minus_1()]).unwrap();
    let l = s.lambda(1).unwrap();
    assert_eq!(l.sub(&s.rational(2, 5).unwrap()).unwrap().sign().unwrap(), Sign::Positive);
    let d = dyadic_spec();
    let sum = d.at_level(1, 1).unwrap().add(&d.at_level(2, 1).unwrap()).unwrap();
    assert_eq!(sum, d.at_level(2, 3).unwrap());
    let k6 = sqrt2_spec(6);
    assert!(lattice_membership(&k6.rational(1, 2).unwrap(), &[k6.rational(1, 6).unwrap()]).unwrap());
    let s = sqrt2_spec(1);
    let l = s.lambda(1).unwrap();
    assert!(!lattice_membership(&l, &[l.int_scale(2).unwrap(), s.one()]).unwrap());
    assert!(lattice_membership(&s.one().add(&l).unwrap(), &[s.one(), l]).unwrap());
}
