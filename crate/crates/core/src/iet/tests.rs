use super::*;
use crate::builtin::{dyadic_spec, rank2_spec, sqrt2_spec};
use crate::error::Warning;
use crate::gamma::MultiplierRule;

fn r(spec: &GammaSpec, p: i64, q: i64) -> GammaElement {
    spec.rational(p, q).unwrap()
}

fn lam(spec: &GammaSpec, i: usize) -> GammaElement {
    spec.lambda(i).unwrap()
}

/// `a/k + Σ b_i λ_i`.
fn el(spec: &GammaSpec, c: &[i64]) -> GammaElement {
    spec.from_coeffs(c.to_vec()).unwrap()
}

/// Sample points: grid points, lattice points near every cut, and a spread of combos.
fn samples(spec: &GammaSpec, extra: &[&Iet]) -> Vec<GammaElement> {
    let mut out = Vec::new();
    let push = |x: GammaElement, out: &mut Vec<GammaElement>| {
        let f = x.frac().unwrap();
        if !out.contains(&f) {
            out.push(f);
        }
    };
    if spec.is_rational() {
        let kn = spec.level_denominator(3).unwrap();
        for j in 0..kn {
            push(spec.at_level(3, j).unwrap(), &mut out);
        }
    } else {
        let k = spec.denominator().unwrap() as i64;
        let d = spec.rank();
        for a0 in -2 * k..=2 * k {
            for b in -2..=2i64 {
                let mut c = vec![a0];
                c.extend(std::iter::repeat_n(b, d));
                push(el(spec, &c), &mut out);
                if d > 1 {
                    let mut c = vec![a0, b];
                    c.extend(std::iter::repeat_n(0, d - 1));
                    push(el(spec, &c), &mut out);
                }
            }
        }
    }
    let eps = if spec.is_rational() {
        spec.at_level(4, 1).unwrap()
    } else {
        // a tiny positive element: 29λ₁ - 12 ≈ 0.0122
        let mut c = vec![-12 * spec.denominator().unwrap() as i64, 29];
        c.extend(std::iter::repeat_n(0, spec.rank() - 1));
        el(spec, &c)
    };
    for f in extra {
        for c in f.cuts() {
            push(c.clone(), &mut out);
            push(c.add(&eps).unwrap(), &mut out);
            push(c.sub(&eps).unwrap(), &mut out);
        }
    }
    out
}

#[test]
fn from_pieces_examples() {
    let s = sqrt2_spec(1);
    let id = Iet::from_pieces(&s, vec![s.zero()], vec![s.zero()]).unwrap();
    assert!(id.is_identity());
    let c = lam(&s, 1);
    let rot = Iet::from_pieces(
        &s,
        vec![s.zero(), s.one().sub(&c).unwrap()],
        vec![c.clone(), c.sub(&s.one()).unwrap()],
    )
    .unwrap();
    assert_eq!(rot, Iet::rotation(&s, &c).unwrap());
    let d = dyadic_spec();
    let merged = Iet::from_pieces(&d, vec![d.zero(), r(&d, 1, 2)], vec![d.zero(), d.zero()]).unwrap();
    assert!(merged.is_identity());
    assert_eq!(merged.piece_count(), 1);
}

#[test]
fn from_pieces_rejects_bad_input() {
    let d = dyadic_spec();
    let overlap = Iet::from_pieces(&d, vec![d.zero(), r(&d, 1, 2)], vec![r(&d, 1, 4), d.zero()]);
    assert!(matches!(overlap, Err(Error::NotABijection(_))));
    let no_zero = Iet::from_pieces(&d, vec![r(&d, 1, 2)], vec![d.zero()]);
    assert!(matches!(no_zero, Err(Error::BadPartition(_))));
    let unsorted =
        Iet::from_pieces(&d, vec![d.zero(), r(&d, 3, 4), r(&d, 1, 2)], vec![d.zero(); 3]);
    assert!(matches!(unsorted, Err(Error::BadPartition(_))));
    let lengths = Iet::from_pieces(&d, vec![d.zero()], vec![]);
    assert!(matches!(lengths, Err(Error::BadPartition(_))));
}

#[test]
fn shifts_are_normalized_mod_one() {
    let d = dyadic_spec();
    // rotation by 1/4 given with shifts off by integers
    let f = Iet::from_pieces(&d, vec![d.zero()], vec![r(&d, 9, 4)]).unwrap();
    assert_eq!(f, Iet::rotation(&d, &r(&d, 1, 4)).unwrap());
    assert_eq!(f.cuts(), &[d.zero(), r(&d, 3, 4)]);
    assert_eq!(f.shifts(), &[r(&d, 1, 4), r(&d, -3, 4)]);
}

#[test]
fn sigma_hat_apply_examples() {
    // 1/10 and 9/10 need k = 10
    let s = sqrt2_spec(10);
    let l = lam(&s, 1);
    let h = sigma_hat(&s, 1).unwrap();
    assert_eq!(h.apply(&r(&s, 1, 10)).unwrap(), r(&s, 1, 10).add(&l).unwrap());
    assert_eq!(h.apply(&r(&s, 1, 2)).unwrap(), r(&s, 1, 2).add(&l).unwrap());
    assert_eq!(h.apply(&r(&s, 9, 10)).unwrap(), r(&s, 9, 10).sub(&l.int_scale(2).unwrap()).unwrap());
    assert!(matches!(h.apply(&s.one()), Err(Error::OutOfDomain)));
    assert!(matches!(h.apply(&r(&s, -1, 10)), Err(Error::OutOfDomain)));
}

/// The displayed piecewise formulas, transcribed on `[a, b)` pieces.
fn sigma_oracle(spec: &GammaSpec, i: usize, t: &GammaElement) -> GammaElement {
    let one = spec.one();
    let l1 = lam(spec, 1);
    let li = lam(spec, i);
    let two = li.int_scale(2).unwrap();
    let inside = |a: &GammaElement, b: &GammaElement| a.le(t).unwrap() && t.lt(b).unwrap();
    let a1 = l1.clone();
    let b1 = one.sub(&two).unwrap().add(&l1).unwrap();
    let a2 = l1.add(&li).unwrap();
    let b2 = one.add(&l1).unwrap().sub(&li).unwrap();
    let a3 = l1.add(&two).unwrap().sub(&one).unwrap();
    if inside(&a1, &b1) {
        t.add(&li).unwrap()
    } else if inside(&a2, &b2) {
        t.add(&li).unwrap().sub(&one).unwrap()
    } else if inside(&a3, &l1) {
        t.add(&one).unwrap().sub(&two).unwrap()
    } else {
        t.clone()
    }
}

fn sigma_hat_oracle(spec: &GammaSpec, i: usize, t: &GammaElement) -> GammaElement {
    let one = spec.one();
    let li = lam(spec, i);
    let two = li.int_scale(2).unwrap();
    let inside = |a: &GammaElement, b: &GammaElement| a.le(t).unwrap() && t.lt(b).unwrap();
    if inside(&spec.zero(), &one.sub(&two).unwrap()) || inside(&li, &one.sub(&li).unwrap()) {
        t.add(&li).unwrap()
    } else if inside(&two, &one) {
        t.sub(&two).unwrap()
    } else {
        t.clone()
    }
}

#[test]
fn sigma_generators_match_formulas() {
    let s = rank2_spec(1);
    for i in 1..=2 {
        let f = sigma(&s, i).unwrap();
        let g = sigma_hat(&s, i).unwrap();
        for t in samples(&s, &[&f, &g]) {
            assert_eq!(f.apply(&t).unwrap(), sigma_oracle(&s, i, &t), "sigma_{i} at {t}");
            assert_eq!(g.apply(&t).unwrap(), sigma_hat_oracle(&s, i, &t), "sigma_hat_{i} at {t}");
        }
        assert_eq!(f.order(10).unwrap(), Some(3));
        assert_eq!(g.order(10).unwrap(), Some(3));
    }
}

#[test]
fn sigma_two_at_nine_twentieths() {
    let s = rank2_spec(20);
    let f = sigma(&s, 2).unwrap();
    let t = r(&s, 9, 20);
    assert_eq!(f.apply(&t).unwrap(), t.add(&lam(&s, 2)).unwrap());
}

#[test]
fn sigma_range_is_checked() {
    // λ = √2 - 1 twice over would not be increasing; use λ₂ < λ₁ instead
    let gens = vec![crate::builtin::sqrt21_over_10(), crate::builtin::sqrt2_minus_1()];
    let s = GammaSpec::finitely_generated(1, gens).unwrap();
    assert!(matches!(sigma(&s, 1), Err(Error::GeneratorRangeError(_))));
    let low = crate::AlgebraicGenerator::new(
        &[-1, 0, 10],
        num_rational::BigRational::new(31.into(), 100.into()),
        num_rational::BigRational::new(32.into(), 100.into()),
    )
    .unwrap();
    let s = GammaSpec::finitely_generated(1, vec![low]).unwrap();
    assert!(matches!(sigma_hat(&s, 1), Err(Error::GeneratorRangeError(_))));
    assert!(matches!(sigma(&sqrt2_spec(1), 2), Err(Error::IndexError(_))));
}

#[test]
fn group_laws_on_generators() {
    let s = sqrt2_spec(1);
    let h = sigma_hat(&s, 1).unwrap();
    assert!(h.compose(&h.inverse().unwrap()).unwrap().is_identity());
    assert!(h.compose(&h.compose(&h).unwrap()).unwrap().is_identity());
    let a = lam(&s, 1);
    let b = el(&s, &[0, 2]);
    let ra = Iet::rotation(&s, &a).unwrap();
    let rb = Iet::rotation(&s, &b).unwrap();
    let sum = a.add(&b).unwrap().frac().unwrap();
    assert_eq!(ra.compose(&rb).unwrap(), Iet::rotation(&s, &sum).unwrap());
}

#[test]
fn angles_examples() {
    let s = sqrt2_spec(1);
    assert_eq!(Iet::identity(&s).angles(), vec![s.zero()]);
    let l = lam(&s, 1);
    let mut a = sigma_hat(&s, 1).unwrap().angles();
    a.sort_by(|x, y| x.compare(y).unwrap());
    assert_eq!(a, vec![l.int_scale(-2).unwrap(), s.zero(), l.clone()]);
    let rot = Iet::rotation(&s, &l).unwrap().angles();
    assert_eq!(rot, vec![l.clone(), l.sub(&s.one()).unwrap()]);
}

#[test]
fn gamma_b_examples() {
    let d = dyadic_spec();
    let data = GammaBData::new(d.zero(), r(&d, 1, 4), r(&d, 1, 2));
    let g = gamma_b(&d, &data).unwrap();
    assert_eq!(g.apply(&r(&d, 1, 8)).unwrap(), r(&d, 5, 8));
    assert_eq!(g.apply(&r(&d, 5, 8)).unwrap(), r(&d, 1, 8));
    assert_eq!(g.apply(&r(&d, 3, 8)).unwrap(), r(&d, 3, 8));
    assert_eq!(g.apply(&r(&d, 7, 8)).unwrap(), r(&d, 7, 8));
    assert!(g.compose(&g).unwrap().is_identity());
    let bad = GammaBData::new(d.zero(), r(&d, 1, 4), r(&d, 1, 8));
    assert!(matches!(gamma_b(&d, &bad), Err(Error::OverlappingIntervals)));
}

#[test]
fn gamma_b_wraps_around_one() {
    let d = dyadic_spec();
    // [3/4, 1) moved by 3/8 lands on [1/8, 3/8)
    let g = gamma_b(&d, &GammaBData::new(r(&d, 3, 4), d.one(), r(&d, 3, 8))).unwrap();
    assert_eq!(g.apply(&r(&d, 7, 8)).unwrap(), r(&d, 1, 4));
    assert_eq!(g.apply(&r(&d, 1, 4)).unwrap(), r(&d, 7, 8));
    assert!(g.compose(&g).unwrap().is_identity());
}

#[test]
fn gamma_b1b2_example() {
    let d = dyadic_spec();
    let b1 = GammaBData::new(d.zero(), r(&d, 1, 8), r(&d, 1, 4));
    let b2 = GammaBData::new(r(&d, 1, 4), r(&d, 3, 8), r(&d, 1, 4));
    let c = gamma_b1b2(&d, &b1, &b2).unwrap();
    // the three intervals are permuted among themselves, everything else fixed
    let x = r(&d, 1, 16);
    let y = r(&d, 5, 16);
    let z = r(&d, 9, 16);
    assert_eq!(c.apply(&x).unwrap(), z);
    assert_eq!(c.apply(&z).unwrap(), y);
    assert_eq!(c.apply(&y).unwrap(), x);
    assert_eq!(c.apply(&r(&d, 3, 16)).unwrap(), r(&d, 3, 16));
    assert_eq!(c.apply(&r(&d, 13, 16)).unwrap(), r(&d, 13, 16));
    assert_eq!(c.order(5).unwrap(), Some(3));
    let comm = gamma_b(&d, &b1).unwrap().commutator(&gamma_b(&d, &b2).unwrap()).unwrap();
    assert_eq!(c, comm);
}

#[test]
fn gamma_b1b2_mismatch() {
    let d = dyadic_spec();
    let b1 = GammaBData::new(d.zero(), r(&d, 1, 8), r(&d, 1, 4));
    let b2 = GammaBData::new(r(&d, 3, 8), r(&d, 1, 2), r(&d, 1, 4));
    assert!(matches!(gamma_b1b2(&d, &b1, &b2), Err(Error::IntervalMismatch(_))));
    let b2 = GammaBData::new(r(&d, 1, 4), r(&d, 3, 8), r(&d, 3, 4));
    assert!(matches!(gamma_b1b2(&d, &b1, &b2), Err(Error::OverlappingIntervals)));
}

#[test]
fn r_ka_examples() {
    let s = rank2_spec(11);
    let a = r(&s, 9, 11);
    let f = r_ka(&s, &a).unwrap();
    assert!(f.warnings.is_empty());
    let f = f.value;
    // 5/11 + λ₁ ≈ 0.869 lies in the first cell [9/11, 10/11)
    let t = el(&s, &[5, 1, 0]);
    assert_eq!(f.apply(&t).unwrap(), el(&s, &[6, 1, 0]));
    // the third cell wraps to [0, 1/11) and goes back to [9/11, 10/11)
    assert_eq!(f.apply(&s.zero()).unwrap(), el(&s, &[9, 0, 0]));
    assert_eq!(f.apply(&el(&s, &[10, 0, 0])).unwrap(), s.zero());
    assert_eq!(f.apply(&el(&s, &[1, 0, 0])).unwrap(), el(&s, &[1, 0, 0]));
    assert_eq!(f.order(5).unwrap(), Some(3));
    let set = generating_set_k(&s).unwrap();
    assert_eq!(set.value.len(), 2 * 2 + 4);
    assert!(set.warnings.is_empty());
}

#[test]
fn r_ka_small_k() {
    let s = sqrt2_spec(5);
    let f = r_ka(&s, &s.zero()).unwrap();
    assert_eq!(f.warnings, vec![Warning::KOutsideHypothesis { k: 5 }]);
    assert_eq!(f.value.order(5).unwrap(), Some(3));
    assert!(matches!(r_ka(&sqrt2_spec(2), &sqrt2_spec(2).zero()), Err(Error::KTooSmall { k: 2 })));
    assert!(matches!(r_ka(&dyadic_spec(), &dyadic_spec().zero()), Err(Error::UnsupportedSpec(_))));
}

fn list23() -> GammaSpec {
    GammaSpec::rational_rule(MultiplierRule::List { multipliers: vec![2, 3], repeat_last: true })
        .unwrap()
}

#[test]
fn sigma_ij_examples() {
    let d = dyadic_spec();
    let s = sigma_ij(&d, 1, 0, 1).unwrap();
    assert_eq!(s.apply(&r(&d, 1, 4)).unwrap(), r(&d, 3, 4));
    assert!(s.compose(&s).unwrap().is_identity());
    let g = gamma_b(&d, &GammaBData::new(d.zero(), r(&d, 1, 2), r(&d, 1, 2))).unwrap();
    assert_eq!(s, g);
    assert!(matches!(sigma_ij(&d, 1, 1, 1), Err(Error::IndexError(_))));
    assert!(matches!(sigma_ij(&d, 1, 0, 2), Err(Error::IndexError(_))));
    assert!(matches!(sigma_ij(&sqrt2_spec(1), 1, 0, 1), Err(Error::UnsupportedSpec(_))));
}

#[test]
fn embedding_and_relations_for_two_three() {
    let s = list23();
    assert!(embedding_check(&s, 1, 0).unwrap());
    let lhs = sigma_ij(&s, 1, 0, 1).unwrap();
    let mut rhs = Iet::identity(&s);
    for (i, j) in [(0, 3), (1, 4), (2, 5)] {
        rhs = rhs.compose(&sigma_ij(&s, 2, i, j).unwrap()).unwrap();
    }
    assert_eq!(lhs, rhs);
    for i in 0..4 {
        let a = sigma_ij(&s, 2, i, i + 1).unwrap();
        let b = sigma_ij(&s, 2, i + 1, i + 2).unwrap();
        let aba = a.compose(&b).unwrap().compose(&a).unwrap();
        let bab = b.compose(&a).unwrap().compose(&b).unwrap();
        assert_eq!(aba, bab);
    }
    let a = sigma_ij(&s, 2, 0, 1).unwrap();
    let c = sigma_ij(&s, 2, 3, 4).unwrap();
    assert!(a.commutator(&c).unwrap().is_identity());
    assert!(embedding_check(&dyadic_spec(), 2, 2).unwrap());
    assert!(matches!(embedding_check(&s, 1, 1), Err(Error::IndexError(_))));
}

#[test]
fn as_permutation_examples() {
    let s = list23();
    let f = sigma_ij(&s, 1, 0, 1).unwrap();
    assert_eq!(as_permutation(&s, &f, 1).unwrap(), vec![1, 0]);
    assert_eq!(as_permutation(&s, &f, 2).unwrap(), vec![3, 4, 5, 0, 1, 2]);
    assert_eq!(as_permutation(&s, &Iet::identity(&s), 2).unwrap(), (0..6).collect::<Vec<_>>());
    let g = sigma_ij(&s, 2, 0, 1).unwrap();
    assert!(matches!(as_permutation(&s, &g, 1), Err(Error::NotGridAligned { level: 1 })));
    assert_eq!(iota_embed(&s, &f, 1).unwrap(), f);
    assert!(matches!(iota_embed(&s, &g, 1), Err(Error::NotGridAligned { .. })));
}

/// Parity by counting inversions, independent of the cycle-based count.
fn inversion_parity(p: &[usize]) -> u8 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    (inv % 2) as u8
}

#[test]
fn parity_agrees_with_inversions() {
    let perms: [&[usize]; 5] = [&[0], &[1, 0], &[2, 0, 1], &[3, 4, 5, 0, 1, 2], &[1, 0, 3, 2, 5, 4, 7, 6]];
    for p in perms {
        assert_eq!(permutation_parity(p), inversion_parity(p));
    }
}

#[test]
fn sign_hom_examples() {
    let d = dyadic_spec();
    assert_eq!(sign_hom(&d, &Iet::identity(&d)).unwrap().value, 0);
    let s1 = sigma_ij(&d, 1, 0, 1).unwrap();
    let sign = sign_hom(&d, &s1).unwrap();
    assert_eq!(sign.value, 1);
    // at level 2 the same element is (0 2)(1 3), which is even
    assert_eq!(inversion_parity(&as_permutation(&d, &s1, 2).unwrap()), 0);
    assert_eq!(sign.warnings, vec![Warning::ConsistencyWarning { level: 1, next_level: 2 }]);
    // (0 2)(1 3) then (0 1) at level 2: odd
    let prod = s1.compose(&sigma_ij(&d, 2, 0, 1).unwrap()).unwrap();
    let p = as_permutation(&d, &prod, 2).unwrap();
    assert_eq!(inversion_parity(&p), 1);
    assert_eq!(sign_hom(&d, &prod).unwrap().value, 1);
    // odd multipliers keep parity across levels
    let t = GammaSpec::rational_rule(MultiplierRule::Constant(3)).unwrap();
    let x = sign_hom(&t, &sigma_ij(&t, 1, 0, 1).unwrap()).unwrap();
    assert_eq!(x.value, 1);
    assert!(x.warnings.is_empty());
}

#[test]
fn ambient_group_examples() {
    let d = dyadic_spec();
    let basis = ambient_group(&[sigma_ij(&d, 1, 0, 1).unwrap()]).unwrap();
    assert_eq!(basis, vec![r(&d, 1, 2)]);
    assert_eq!(ambient_group(&[Iet::identity(&d)]).unwrap(), vec![d.one()]);
    let s = sqrt2_spec(1);
    let basis = ambient_group(&[sigma_hat(&s, 1).unwrap()]).unwrap();
    assert_eq!(basis, vec![s.one(), lam(&s, 1)]);
    assert!(matches!(
        ambient_group(&[Iet::identity(&d), Iet::identity(&s)]),
        Err(Error::SpecMismatch)
    ));
}

#[test]
fn rescale_examples() {
    let d = dyadic_spec();
    assert_eq!(rescale_spec(&d, &r(&d, 1, 2)).unwrap(), d);
    assert_eq!(rescale_spec(&d, &d.one()).unwrap(), d);
    // (2/5)ℤ[1/2] needs 1/5
    let five = rescale_spec(&d, &r(&d, 5, 2)).unwrap();
    assert_ne!(five, d);
    assert!(five.from_rational(&num_rational::BigRational::new(1.into(), 5.into())).is_ok());
    assert_eq!(rescale_element(&five, &r(&d, 5, 2), &r(&d, 1, 2)).unwrap(), r(&five, 1, 5));

    let s = sqrt2_spec(2);
    let half = r(&s, 1, 2);
    let t = rescale_spec(&s, &half).unwrap();
    assert_eq!(t.denominator(), Some(1));
    // new generator μ = 2λ
    let mu = lam(&t, 1);
    assert!(mu.int_scale(5).unwrap().lt(&t.integer(5)).unwrap()); // 2λ ≈ 0.83 < 1
    assert!(t.integer(4).lt(&mu.int_scale(5).unwrap()).unwrap());
    assert_eq!(t.irrationals()[0].minpoly().len(), 3);
    assert_eq!(rescale_element(&t, &half, &lam(&s, 1)).unwrap(), mu);
    assert_eq!(rescale_element(&t, &half, &s.one()).unwrap(), t.integer(2));
    assert_eq!(rescale_spec(&s, &s.one()).unwrap(), s);
    assert!(matches!(rescale_spec(&s, &lam(&s, 1)), Err(Error::NonRationalScale)));
    assert!(matches!(rescale_spec(&s, &s.zero()), Err(Error::NonRationalScale)));
}

#[test]
fn rescale_by_negative_rational() {
    let s = sqrt2_spec(3);
    let x = r(&s, -2, 3);
    let t = rescale_spec(&s, &x).unwrap();
    assert_eq!(t.denominator(), Some(2));
    // λ / x = -3λ/2 ≈ -0.62
    let mu = lam(&t, 1);
    assert!(mu.lt(&t.zero()).unwrap());
    assert!(t.integer(-1).lt(&mu).unwrap());
    assert_eq!(rescale_element(&t, &x, &r(&s, 1, 3)).unwrap(), r(&t, -1, 2));
}

#[test]
fn rotation_has_no_fixed_points() {
    let s = sqrt2_spec(1);
    let rot = Iet::rotation(&s, &lam(&s, 1)).unwrap();
    for t in samples(&s, &[&rot]) {
        assert_ne!(rot.apply(&t).unwrap(), t);
    }
}

#[test]
fn normalization_is_idempotent_on_generators() {
    let s = rank2_spec(11);
    for g in generating_set_k(&s).unwrap().value {
        assert_eq!(g.normalized().unwrap(), g);
    }
}
