//! Finitely generated (or rule-based rational) dense subgroups `Γ ⊂ ℝ` containing 1.
//!
//! Elements are integer coefficient vectors. Equality is decided symbolically;
//! ordering refines dyadic enclosures of the irrational generators until the sign
//! is certain. Soundness of the symbolic zero test rests on the declared
//! ℚ-independence of `{1/k, λ_1, ..., λ_d}`: a violated declaration surfaces as
//! [`Error::PrecisionExhausted`], never as a wrong answer.

pub mod algebraic;
pub mod lattice;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

pub use algebraic::AlgebraicGenerator;

use crate::error::{Error, Result};

/// Default bit budget for sign determination.
pub const DEFAULT_PRECISION_BITS: u32 = 4096;

/// How the rational part of a rule-based spec is refined: `k(n) = k_1 * ... * k_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MultiplierRule {
    Constant(u64),
    /// `k_i = i + 1`, so `k(n) = (n + 1)!`.
    Factorial,
    /// Explicit multipliers. After the list ends the last entry repeats forever
    /// when `repeat_last` is set, otherwise the list cycles.
    List { multipliers: Vec<u64>, repeat_last: bool },
}

impl MultiplierRule {
    /// The multiplier `k_i` for `i >= 1`.
    pub fn multiplier(&self, i: u32) -> u64 {
        debug_assert!(i >= 1);
        match self {
            MultiplierRule::Constant(m) => *m,
            MultiplierRule::Factorial => i as u64 + 1,
            MultiplierRule::List { multipliers, repeat_last } => {
                let idx = (i - 1) as usize;
                if idx < multipliers.len() {
                    multipliers[idx]
                } else if *repeat_last {
                    *multipliers.last().unwrap()
                } else {
                    multipliers[idx % multipliers.len()]
                }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            MultiplierRule::Constant(m) if *m < 2 => {
                Err(Error::MalformedSpec(format!("constant multiplier {m} must be >= 2")))
            }
            MultiplierRule::List { multipliers, .. } if multipliers.is_empty() => {
                Err(Error::MalformedSpec("multiplier list is empty".into()))
            }
            MultiplierRule::List { multipliers, .. } if multipliers.iter().any(|&m| m < 2) => {
                Err(Error::MalformedSpec("multipliers must be >= 2".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecKind {
    /// `Γ = (1/k)ℤ ⊕ λ_1 ℤ ⊕ ... ⊕ λ_d ℤ`.
    FinitelyGenerated { k: u64, irrationals: Vec<AlgebraicGenerator> },
    /// `Γ = ⋃_n (1/k(n))ℤ`.
    RationalRule(MultiplierRule),
}

/// A validated, immutable description of `Γ`. Cheap to clone.
#[derive(Clone)]
pub struct GammaSpec {
    inner: Arc<SpecKind>,
}

impl PartialEq for GammaSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}
impl Eq for GammaSpec {}

impl fmt::Debug for GammaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaSpec({})", self.summary())
    }
}

impl GammaSpec {
    pub fn finitely_generated(k: u64, irrationals: Vec<AlgebraicGenerator>) -> Result<Self> {
        if k == 0 {
            return Err(Error::MalformedSpec("rational denominator k must be positive".into()));
        }
        if irrationals.is_empty() {
            return Err(Error::DensityError(format!(
                "(1/{k})Z has no irrational generator and is discrete"
            )));
        }
        Ok(GammaSpec { inner: Arc::new(SpecKind::FinitelyGenerated { k, irrationals }) })
    }

    pub fn rational_rule(rule: MultiplierRule) -> Result<Self> {
        rule.validate()?;
        Ok(GammaSpec { inner: Arc::new(SpecKind::RationalRule(rule)) })
    }

    pub fn kind(&self) -> &SpecKind {
        &self.inner
    }

    pub fn is_rational(&self) -> bool {
        matches!(*self.inner, SpecKind::RationalRule(_))
    }

    /// Number of irrational generators (0 for rule-based specs).
    pub fn rank(&self) -> usize {
        match &*self.inner {
            SpecKind::FinitelyGenerated { irrationals, .. } => irrationals.len(),
            SpecKind::RationalRule(_) => 0,
        }
    }

    /// Rational denominator `k` of a finitely generated spec.
    pub fn denominator(&self) -> Option<u64> {
        match &*self.inner {
            SpecKind::FinitelyGenerated { k, .. } => Some(*k),
            SpecKind::RationalRule(_) => None,
        }
    }

    pub fn irrationals(&self) -> &[AlgebraicGenerator] {
        match &*self.inner {
            SpecKind::FinitelyGenerated { irrationals, .. } => irrationals,
            SpecKind::RationalRule(_) => &[],
        }
    }

    pub fn rule(&self) -> Option<&MultiplierRule> {
        match &*self.inner {
            SpecKind::RationalRule(r) => Some(r),
            SpecKind::FinitelyGenerated { .. } => None,
        }
    }

    /// `k(n)` for rule-based specs; `k(0) = 1`.
    pub fn level_denominator(&self, n: u32) -> Result<i128> {
        let rule = self
            .rule()
            .ok_or_else(|| Error::UnsupportedSpec("levels exist only for rational_rule specs".into()))?;
        let mut acc: i128 = 1;
        for i in 1..=n {
            acc = acc
                .checked_mul(rule.multiplier(i) as i128)
                .ok_or(Error::Overflow("level denominator"))?;
        }
        Ok(acc)
    }

    pub fn summary(&self) -> String {
        match &*self.inner {
            SpecKind::FinitelyGenerated { k, irrationals } => {
                let mut s = if *k == 1 { "Z".to_string() } else { format!("(1/{k})Z") };
                for (i, g) in irrationals.iter().enumerate() {
                    let poly: Vec<String> = g.minpoly().iter().map(|c| c.to_string()).collect();
                    s.push_str(&format!(" + l{}Z[{}]", i + 1, poly.join(",")));
                }
                s
            }
            SpecKind::RationalRule(MultiplierRule::Constant(m)) => format!("Z[1/{m}]"),
            SpecKind::RationalRule(MultiplierRule::Factorial) => "Q".to_string(),
            SpecKind::RationalRule(MultiplierRule::List { multipliers, repeat_last }) => {
                let l: Vec<String> = multipliers.iter().map(|m| m.to_string()).collect();
                format!(
                    "rational rule [{}]{}",
                    l.join(","),
                    if *repeat_last { " repeat-last" } else { " cyclic" }
                )
            }
        }
    }

    pub fn zero(&self) -> GammaElement {
        match &*self.inner {
            SpecKind::FinitelyGenerated { irrationals, .. } => GammaElement {
                spec: self.clone(),
                value: Value::Lattice(vec![0; irrationals.len() + 1]),
            },
            SpecKind::RationalRule(_) => {
                GammaElement { spec: self.clone(), value: Value::Level { level: 0, num: 0 } }
            }
        }
    }

    pub fn one(&self) -> GammaElement {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> GammaElement {
        match &*self.inner {
            SpecKind::FinitelyGenerated { k, irrationals } => {
                let mut c = vec![0; irrationals.len() + 1];
                c[0] = n * *k as i64;
                GammaElement { spec: self.clone(), value: Value::Lattice(c) }
            }
            SpecKind::RationalRule(_) => GammaElement {
                spec: self.clone(),
                value: Value::Level { level: 0, num: n as i128 },
            },
        }
    }

    /// The element with coefficient vector `coeffs` (`a_0/k + Σ a_i λ_i`).
    pub fn from_coeffs(&self, coeffs: Vec<i64>) -> Result<GammaElement> {
        match &*self.inner {
            SpecKind::FinitelyGenerated { irrationals, .. } => {
                if coeffs.len() != irrationals.len() + 1 {
                    return Err(Error::MalformedSpec(format!(
                        "expected {} coefficients, got {}",
                        irrationals.len() + 1,
                        coeffs.len()
                    )));
                }
                Ok(GammaElement { spec: self.clone(), value: Value::Lattice(coeffs) })
            }
            SpecKind::RationalRule(_) => {
                Err(Error::MalformedSpec("coefficient vectors need a finitely_generated spec".into()))
            }
        }
    }

    /// `num / k(level)` for rule-based specs.
    pub fn at_level(&self, level: u32, num: i128) -> Result<GammaElement> {
        if !self.is_rational() {
            return Err(Error::MalformedSpec("levels need a rational_rule spec".into()));
        }
        self.level_denominator(level)?;
        Ok(GammaElement { spec: self.clone(), value: Value::Level { level, num } }.reduced())
    }

    /// `λ_i`, 1-based.
    pub fn lambda(&self, i: usize) -> Result<GammaElement> {
        let d = self.rank();
        if i == 0 || i > d {
            return Err(Error::IndexError(format!("generator {i} of {d}")));
        }
        let mut c = vec![0; d + 1];
        c[i] = 1;
        self.from_coeffs(c)
    }

    /// `p/q` as an element, if it lies in `Γ`.
    pub fn rational(&self, p: i64, q: i64) -> Result<GammaElement> {
        self.from_rational(&BigRational::new(p.into(), q.into()))
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<GammaElement> {
        let not_in = || Error::Precondition(format!("{r} is not an element of {}", self.summary()));
        match &*self.inner {
            SpecKind::FinitelyGenerated { k, irrationals } => {
                let scaled = r * BigRational::from_integer(BigInt::from(*k));
                if !scaled.is_integer() {
                    return Err(not_in());
                }
                let a0 = scaled.to_integer().to_i64().ok_or(Error::Overflow("coefficient"))?;
                let mut c = vec![0; irrationals.len() + 1];
                c[0] = a0;
                Ok(GammaElement { spec: self.clone(), value: Value::Lattice(c) })
            }
            SpecKind::RationalRule(_) => {
                // find the first level whose denominator absorbs r's denominator
                let den = r.denom().clone();
                for level in 0..=MAX_LEVEL_SEARCH {
                    let kn = match self.level_denominator(level) {
                        Ok(v) => BigInt::from(v),
                        Err(_) => break,
                    };
                    if kn.is_multiple_of(&den) {
                        let num = (r.numer() * (&kn / &den))
                            .to_i128()
                            .ok_or(Error::Overflow("numerator"))?;
                        return self.at_level(level, num);
                    }
                }
                Err(not_in())
            }
        }
    }

    /// Generators of `Γ/ℤ` used for word searches: `1/k` (when `k > 1`) then each `λ_i`.
    /// Rule-based specs return `1/k(n)` for `1 <= n <= max_level`.
    pub fn quotient_generators(&self, max_level: u32) -> Result<Vec<GammaElement>> {
        match &*self.inner {
            SpecKind::FinitelyGenerated { k, irrationals } => {
                let d = irrationals.len();
                let mut out = Vec::new();
                if *k > 1 {
                    let mut c = vec![0; d + 1];
                    c[0] = 1;
                    out.push(self.from_coeffs(c)?);
                }
                for i in 1..=d {
                    out.push(self.lambda(i)?);
                }
                Ok(out)
            }
            SpecKind::RationalRule(_) => (1..=max_level.max(1)).map(|n| self.at_level(n, 1)).collect(),
        }
    }
}

const MAX_LEVEL_SEARCH: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Lattice(Vec<i64>),
    /// `num / k(level)`, always stored at the smallest level that represents it.
    Level { level: u32, num: i128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// An exact element of `Γ`.
#[derive(Clone)]
pub struct GammaElement {
    spec: GammaSpec,
    value: Value,
}

impl PartialEq for GammaElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.spec == other.spec
    }
}
impl Eq for GammaElement {}

impl Hash for GammaElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Level { level, num } => {
                let den = self.spec.level_denominator(*level).unwrap_or(1);
                if den == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
            Value::Lattice(c) => {
                let k = self.spec.denominator().unwrap_or(1) as i64;
                let mut terms = Vec::new();
                if c[0] != 0 || c.iter().all(|&x| x == 0) {
                    let r = BigRational::new(c[0].into(), k.into());
                    terms.push(r.to_string());
                }
                for (i, &a) in c.iter().enumerate().skip(1) {
                    match a {
                        0 => {}
                        1 => terms.push(format!("l{i}")),
                        -1 => terms.push(format!("-l{i}")),
                        _ => terms.push(format!("{a}*l{i}")),
                    }
                }
                let s = terms.join(" + ").replace("+ -", "- ");
                write!(f, "{s}")
            }
        }
    }
}

impl GammaElement {
    pub fn spec(&self) -> &GammaSpec {
        &self.spec
    }

    /// Coefficients `(a_0, ..., a_d)` of a finitely generated element.
    pub fn coeffs(&self) -> Option<&[i64]> {
        match &self.value {
            Value::Lattice(c) => Some(c),
            Value::Level { .. } => None,
        }
    }

    /// `(level, num)` of a rule-based element, at its minimal level.
    pub fn level_num(&self) -> Option<(u32, i128)> {
        match self.value {
            Value::Level { level, num } => Some((level, num)),
            Value::Lattice(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Lattice(c) => c.iter().all(|&x| x == 0),
            Value::Level { num, .. } => *num == 0,
        }
    }

    /// Exact rational value, when the element has no irrational part.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Lattice(c) => {
                if c[1..].iter().any(|&x| x != 0) {
                    return None;
                }
                let k = self.spec.denominator().unwrap();
                Some(BigRational::new(c[0].into(), k.into()))
            }
            Value::Level { level, num } => {
                let den = self.spec.level_denominator(*level).ok()?;
                Some(BigRational::new((*num).into(), den.into()))
            }
        }
    }

    fn reduced(mut self) -> Self {
        if let Value::Level { level, num } = &mut self.value {
            let rule = self.spec.rule().unwrap();
            if *num == 0 {
                *level = 0;
            }
            while *level > 0 {
                let m = rule.multiplier(*level) as i128;
                if *num % m != 0 {
                    break;
                }
                *num /= m;
                *level -= 1;
            }
        }
        self
    }

    fn check_spec(&self, other: &GammaElement) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    /// Numerators of `self` and `other` at their common level.
    fn promote(&self, other: &GammaElement) -> Result<(u32, i128, i128)> {
        let (Value::Level { level: la, num: a }, Value::Level { level: lb, num: b }) =
            (&self.value, &other.value)
        else {
            unreachable!("promote on lattice elements");
        };
        let level = (*la).max(*lb);
        let kn = self.spec.level_denominator(level)?;
        let fa = kn / self.spec.level_denominator(*la)?;
        let fb = kn / self.spec.level_denominator(*lb)?;
        let a = a.checked_mul(fa).ok_or(Error::Overflow("promotion"))?;
        let b = b.checked_mul(fb).ok_or(Error::Overflow("promotion"))?;
        Ok((level, a, b))
    }

    pub fn add(&self, other: &GammaElement) -> Result<GammaElement> {
        self.check_spec(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Lattice(a), Value::Lattice(b)) => Value::Lattice(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("addition")))
                    .collect::<Result<_>>()?,
            ),
            _ => {
                let (level, a, b) = self.promote(other)?;
                let num = a.checked_add(b).ok_or(Error::Overflow("addition"))?;
                Value::Level { level, num }
            }
        };
        Ok(GammaElement { spec: self.spec.clone(), value }.reduced())
    }

    pub fn sub(&self, other: &GammaElement) -> Result<GammaElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GammaElement {
        let value = match &self.value {
            Value::Lattice(a) => Value::Lattice(a.iter().map(|x| -x).collect()),
            Value::Level { level, num } => Value::Level { level: *level, num: -num },
        };
        GammaElement { spec: self.spec.clone(), value }
    }

    pub fn int_scale(&self, m: i64) -> Result<GammaElement> {
        let value = match &self.value {
            Value::Lattice(a) => Value::Lattice(
                a.iter()
                    .map(|x| x.checked_mul(m).ok_or(Error::Overflow("scaling")))
                    .collect::<Result<_>>()?,
            ),
            Value::Level { level, num } => Value::Level {
                level: *level,
                num: num.checked_mul(m as i128).ok_or(Error::Overflow("scaling"))?,
            },
        };
        Ok(GammaElement { spec: self.spec.clone(), value }.reduced())
    }

    /// Sign with the default precision budget.
    pub fn sign(&self) -> Result<Sign> {
        self.sign_with_cap(DEFAULT_PRECISION_BITS)
    }

    /// Exact sign. Zero is decided symbolically; otherwise enclosures are refined
    /// up to `cap` bits.
    pub fn sign_with_cap(&self, cap: u32) -> Result<Sign> {
        match &self.value {
            Value::Level { num, .. } => Ok(match num.cmp(&0) {
                Ordering::Less => Sign::Negative,
                Ordering::Equal => Sign::Zero,
                Ordering::Greater => Sign::Positive,
            }),
            Value::Lattice(c) => {
                if c.iter().all(|&x| x == 0) {
                    return Ok(Sign::Zero);
                }
                if c[1..].iter().all(|&x| x == 0) {
                    return Ok(if c[0] > 0 { Sign::Positive } else { Sign::Negative });
                }
                let cap = cap.max(1);
                let mut bits = algebraic::BASE_BITS.min(cap);
                loop {
                    let (lo, hi) = self.scaled_enclosure(bits);
                    if lo.is_positive() {
                        return Ok(Sign::Positive);
                    }
                    if hi.is_negative() {
                        return Ok(Sign::Negative);
                    }
                    if bits >= cap {
                        return Err(Error::PrecisionExhausted { bits: cap });
                    }
                    bits = bits.saturating_mul(2).min(cap);
                }
            }
        }
    }

    /// Integer bounds `[lo, hi]` on `k * 2^bits * x` for lattice elements.
    fn scaled_enclosure(&self, bits: u32) -> (BigInt, BigInt) {
        let Value::Lattice(c) = &self.value else { unreachable!() };
        let k = BigInt::from(self.spec.denominator().unwrap());
        let mut lo = BigInt::from(c[0]) << bits;
        let mut hi = lo.clone();
        for (g, &a) in self.spec.irrationals().iter().zip(&c[1..]) {
            if a == 0 {
                continue;
            }
            let e = g.enclosure(bits);
            let f = &k * a;
            let (x, y) = (&f * &e.m, &f * (&e.m + 1));
            if a > 0 {
                lo += x;
                hi += y;
            } else {
                lo += y;
                hi += x;
            }
        }
        (lo, hi)
    }

    /// Rational interval containing the value, of width at most `width`.
    pub fn enclose(&self, width: &BigRational) -> Result<(BigRational, BigRational)> {
        if let Some(r) = self.to_rational() {
            return Ok((r.clone(), r));
        }
        if !width.is_positive() {
            return Err(Error::Precondition("enclosure width must be positive".into()));
        }
        let c = self.coeffs().unwrap();
        let spread: i64 = c[1..].iter().map(|a| a.abs()).sum();
        // width of the scaled enclosure is spread * k / (k * 2^bits) = spread / 2^bits
        let mut bits = 1u32;
        while BigRational::new(spread.into(), BigInt::one() << bits) > *width {
            bits += 1;
        }
        let (lo, hi) = self.scaled_enclosure(bits);
        let den = BigInt::from(self.spec.denominator().unwrap()) << bits;
        Ok((BigRational::new(lo, den.clone()), BigRational::new(hi, den)))
    }

    /// Floating-point approximation (display only).
    pub fn approx(&self) -> f64 {
        let w = BigRational::new(1.into(), BigInt::one() << 60);
        match self.enclose(&w) {
            Ok((lo, _)) => lo.to_f64().unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    }

    pub fn cmp_with_cap(&self, other: &GammaElement, cap: u32) -> Result<Ordering> {
        Ok(self.sub(other)?.sign_with_cap(cap)?.to_ordering())
    }

    /// Exact comparison (`sign_of(self - other)`).
    pub fn compare(&self, other: &GammaElement) -> Result<Ordering> {
        self.cmp_with_cap(other, DEFAULT_PRECISION_BITS)
    }

    pub fn lt(&self, other: &GammaElement) -> Result<bool> {
        Ok(self.compare(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &GammaElement) -> Result<bool> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    /// The unique integer `m` with `m <= x < m + 1`.
    pub fn floor(&self) -> Result<i64> {
        if let Some(r) = self.to_rational() {
            return r.floor().to_integer().to_i64().ok_or(Error::Overflow("floor"));
        }
        let (lo, _) = self.enclose(&BigRational::new(1.into(), 4.into()))?;
        let mut m = lo.floor().to_integer().to_i64().ok_or(Error::Overflow("floor"))?;
        let one = self.spec.one();
        while self.lt(&one.int_scale(m)?)? {
            m -= 1;
        }
        while !self.lt(&one.int_scale(m + 1)?)? {
            m += 1;
        }
        Ok(m)
    }

    /// `x - floor(x)`, the representative in `[0, 1)`.
    pub fn frac(&self) -> Result<GammaElement> {
        let m = self.floor()?;
        if m == 0 {
            return Ok(self.clone());
        }
        self.sub(&self.spec.integer(m))
    }
}

/// Outcome of [`sign_of`]; mirrors the element-level API for callers that think in operations.
pub fn sign_of(x: &GammaElement, precision_cap: u32) -> Result<Sign> {
    x.sign_with_cap(precision_cap)
}
