use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Iet;
use crate::error::{Error, Result};
use crate::gamma::algebraic::MAX_INTERVAL_DENOMINATOR;
use crate::gamma::lattice::subgroup_basis;
use crate::gamma::{AlgebraicGenerator, GammaElement, GammaSpec, MultiplierRule, SpecKind};
use crate::invariants::supernatural;

/// HNF basis of the subgroup generated by 1 and every angle of every element.
pub fn ambient_group(elements: &[Iet]) -> Result<Vec<GammaElement>> {
    let Some(first) = elements.first() else {
        return Err(Error::Precondition("ambient_group needs at least one element".into()));
    };
    let spec = first.spec();
    let mut gens = vec![spec.one()];
    for f in elements {
        if f.spec() != spec {
            return Err(Error::SpecMismatch);
        }
        gens.extend(f.angles());
    }
    subgroup_basis(spec, &gens)
}

fn rational_scale(x: &GammaElement) -> Result<BigRational> {
    match x.to_rational() {
        Some(r) if !r.is_zero() => Ok(r),
        _ => Err(Error::NonRationalScale),
    }
}

/// A spec for `(1/x)Γ`, `x` a nonzero rational element of `Γ`.
///
/// For `Γ = (1/k)ℤ ⊕ Σ λ_i ℤ` and `x = a/k` this is `(1/|a|)ℤ ⊕ Σ μ_i ℤ` with
/// `μ_i = λ_i / x`. Rule-based specs come back unchanged when `(1/x)Γ = Γ`.
pub fn rescale_spec(spec: &GammaSpec, x: &GammaElement) -> Result<GammaSpec> {
    if x.spec() != spec {
        return Err(Error::SpecMismatch);
    }
    let r = rational_scale(x)?;
    match spec.kind() {
        SpecKind::FinitelyGenerated { k, irrationals } => {
            if r == BigRational::from_integer(1.into()) {
                return Ok(spec.clone());
            }
            let a = x.coeffs().unwrap()[0];
            let mut gens = Vec::with_capacity(irrationals.len());
            for g in irrationals {
                gens.push(scale_generator(g, *k as i64, a)?);
            }
            GammaSpec::finitely_generated(a.unsigned_abs(), gens)
        }
        SpecKind::RationalRule(rule) => {
            let (level, num) = x.level_num().unwrap();
            let num = num.unsigned_abs();
            let num = u64::try_from(num).map_err(|_| Error::Overflow("rescale"))?;
            let tail: Vec<u64> = match rule {
                MultiplierRule::Constant(m) => vec![*m],
                MultiplierRule::Factorial => return Ok(spec.clone()),
                MultiplierRule::List { multipliers, repeat_last: true } => {
                    let from = (level as usize).min(multipliers.len() - 1);
                    multipliers[from..].to_vec()
                }
                MultiplierRule::List { repeat_last: false, .. } => Vec::new(),
            };
            let mut multipliers = Vec::with_capacity(tail.len() + 1);
            if num > 1 {
                multipliers.push(num);
            }
            multipliers.extend(tail.iter().copied());
            if tail.is_empty() {
                let MultiplierRule::List { multipliers: cycle, .. } = rule else { unreachable!() };
                return if primes_recur(num, cycle) {
                    Ok(spec.clone())
                } else {
                    Err(Error::UnsupportedSpec(
                        "rescaling a cyclic rule by this factor changes its supernatural number"
                            .into(),
                    ))
                };
            }
            let candidate = GammaSpec::rational_rule(MultiplierRule::List {
                multipliers,
                repeat_last: true,
            })?;
            if supernatural(&candidate)? == supernatural(spec)? {
                Ok(spec.clone())
            } else {
                Ok(candidate)
            }
        }
    }
}

/// Does every prime factor of `n` divide some multiplier of the cycle?
fn primes_recur(mut n: u64, cycle: &[u64]) -> bool {
    loop {
        let g = cycle.iter().map(|m| n.gcd(m)).max().unwrap_or(1);
        if g == 1 {
            return n == 1;
        }
        n /= g;
    }
}

/// `μ = λ·k/a` for the generator `λ` with minimal polynomial `Σ c_j λ^j`.
fn scale_generator(g: &AlgebraicGenerator, k: i64, a: i64) -> Result<AlgebraicGenerator> {
    let deg = g.minpoly().len() - 1;
    // λ = μ·a/k, so Σ c_j a^j k^(deg-j) μ^j = 0
    let mut coeffs: Vec<BigInt> = g
        .minpoly()
        .iter()
        .enumerate()
        .map(|(j, c)| c * BigInt::from(a).pow(j as u32) * BigInt::from(k).pow((deg - j) as u32))
        .collect();
    let content = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in coeffs.iter_mut() {
            *c = &*c / &content;
        }
    }
    let coeffs: Vec<i64> = coeffs
        .iter()
        .map(|c| c.to_i64().ok_or(Error::Overflow("rescaled minimal polynomial")))
        .collect::<Result<_>>()?;
    let f = BigRational::new(k.into(), a.into());
    let (lo, hi) = g.interval();
    let (mut lo, mut hi) = (lo * &f, hi * &f);
    if f.is_negative() {
        std::mem::swap(&mut lo, &mut hi);
    }
    let limit = BigInt::from(MAX_INTERVAL_DENOMINATOR);
    if lo.denom() > &limit || hi.denom() > &limit {
        lo = BigRational::new((&lo * &limit).floor().to_integer(), limit.clone());
        hi = BigRational::new((&hi * &limit).ceil().to_integer(), limit);
    }
    AlgebraicGenerator::new(&coeffs, lo, hi)
}

/// `e / x` as an element of `target = rescale_spec(e.spec(), x)`.
pub fn rescale_element(
    target: &GammaSpec,
    x: &GammaElement,
    e: &GammaElement,
) -> Result<GammaElement> {
    if x.spec() != e.spec() {
        return Err(Error::SpecMismatch);
    }
    let r = rational_scale(x)?;
    match e.coeffs() {
        Some(c) => {
            let a = x.coeffs().unwrap()[0];
            if target.rank() != c.len() - 1 || target.denominator() != Some(a.unsigned_abs()) {
                return Err(Error::SpecMismatch);
            }
            if target == e.spec() {
                return Ok(e.clone());
            }
            let mut out = c.to_vec();
            out[0] *= a.signum();
            target.from_coeffs(out)
        }
        None => {
            let v = e.to_rational().unwrap() / r;
            target.from_rational(&v)
        }
    }
}
