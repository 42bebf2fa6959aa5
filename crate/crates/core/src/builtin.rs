//! Named example groups.

use num_rational::BigRational;

use crate::gamma::{AlgebraicGenerator, GammaSpec, MultiplierRule};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `√2 − 1`, root of `x² + 2x − 1`.
pub fn sqrt2_minus_1() -> AlgebraicGenerator {
    AlgebraicGenerator::new(&[-1, 2, 1], q(41, 100), q(42, 100)).expect("valid generator")
}

/// `√21 / 10`, root of `100x² − 21`.
pub fn sqrt21_over_10() -> AlgebraicGenerator {
    AlgebraicGenerator::new(&[-21, 0, 100], q(45, 100), q(46, 100)).expect("valid generator")
}

/// `√2 / 3`, root of `9x² − 2`. Not independent of `√2 − 1` over `ℚ`.
pub fn sqrt2_over_3() -> AlgebraicGenerator {
    AlgebraicGenerator::new(&[-2, 0, 9], q(47, 100), q(48, 100)).expect("valid generator")
}

/// `√3 / 4`, root of `16x² − 3`.
pub fn sqrt3_over_4() -> AlgebraicGenerator {
    AlgebraicGenerator::new(&[-3, 0, 16], q(43, 100), q(44, 100)).expect("valid generator")
}

/// `(1/k)ℤ ⊕ (√2 − 1)ℤ`.
pub fn sqrt2_spec(k: u64) -> GammaSpec {
    GammaSpec::finitely_generated(k, vec![sqrt2_minus_1()]).expect("valid spec")
}

/// `(1/k)ℤ ⊕ (√2 − 1)ℤ ⊕ (√21/10)ℤ`.
pub fn rank2_spec(k: u64) -> GammaSpec {
    GammaSpec::finitely_generated(k, vec![sqrt2_minus_1(), sqrt21_over_10()]).expect("valid spec")
}

/// `(1/k)ℤ ⊕ (√2 − 1)ℤ ⊕ (√3/4)ℤ ⊕ (√21/10)ℤ`, generators in increasing order.
pub fn rank3_spec(k: u64) -> GammaSpec {
    GammaSpec::finitely_generated(k, vec![sqrt2_minus_1(), sqrt3_over_4(), sqrt21_over_10()])
        .expect("valid spec")
}

/// `ℤ ⊕ (√2 − 1)ℤ ⊕ (√2/3)ℤ`, declared independent although it is not.
pub fn dependent_spec() -> GammaSpec {
    GammaSpec::finitely_generated(1, vec![sqrt2_minus_1(), sqrt2_over_3()]).expect("valid spec")
}

pub fn dyadic_spec() -> GammaSpec {
    GammaSpec::rational_rule(MultiplierRule::Constant(2)).expect("valid spec")
}

pub fn factorial_spec() -> GammaSpec {
    GammaSpec::rational_rule(MultiplierRule::Factorial).expect("valid spec")
}

pub const BUILTIN_NAMES: [&str; 6] = ["sqrt2", "rank2", "rank3", "dyadic", "factorial", "k11"];

/// The registry: `sqrt2`, `rank2`, `rank3`, `dyadic`, `factorial`, `k11`.
pub fn builtin_spec(name: &str) -> Option<GammaSpec> {
    Some(match name {
        "sqrt2" => sqrt2_spec(1),
        "rank2" => rank2_spec(1),
        "rank3" => rank3_spec(1),
        "dyadic" => dyadic_spec(),
        "factorial" => factorial_spec(),
        "k11" => rank2_spec(11),
        _ => return None,
    })
}

pub fn builtin_specs() -> Vec<(&'static str, GammaSpec)> {
    BUILTIN_NAMES.iter().map(|n| (*n, builtin_spec(n).unwrap())).collect()
}
