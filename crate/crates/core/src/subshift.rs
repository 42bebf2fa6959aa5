//! The `Γ/ℤ`-subshift coding `t ↦ (b ↦ [frac(t + b) < λ])`, its patches and cylinder sets.

use std::fmt;

use crate::circle::{sort_by_start, CircleSet};
use crate::error::{Error, Result};
use crate::gamma::{GammaElement, GammaSpec, Sign};
use crate::iet::Iet;

/// Largest patch domain accepted by [`enumerate_patches`].
pub const MAX_PATCH_DOMAIN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubshiftContext {
    spec: GammaSpec,
    lambda: GammaElement,
}

impl SubshiftContext {
    /// Coding window `[0, λ₁)`.
    pub fn new(spec: &GammaSpec) -> Result<Self> {
        if spec.rank() == 0 {
            return Err(Error::Precondition("the default window needs an irrational generator".into()));
        }
        Self::with_lambda(spec, spec.lambda(1)?)
    }

    pub fn with_lambda(spec: &GammaSpec, lambda: GammaElement) -> Result<Self> {
        if lambda.spec() != spec {
            return Err(Error::SpecMismatch);
        }
        if lambda.sign()? != Sign::Positive || !lambda.lt(&spec.one())? {
            return Err(Error::Precondition(format!("window length {lambda} is not in (0, 1)")));
        }
        Ok(SubshiftContext { spec: spec.clone(), lambda })
    }

    pub fn spec(&self) -> &GammaSpec {
        &self.spec
    }

    pub fn lambda(&self) -> &GammaElement {
        &self.lambda
    }

    /// `{t : x_t(b) = 1}`, i.e. the arc `[-b, λ - b)`.
    pub fn window(&self, b: &GammaElement) -> Result<CircleSet> {
        CircleSet::arc(&b.neg(), &self.lambda)
    }
}

/// `x_t`, or the left limit `x̂_t` when `hat` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    t: GammaElement,
    hat: bool,
}

impl Configuration {
    /// `x_t` for `t` reduced into `[0, 1)`.
    pub fn point(t: &GammaElement) -> Result<Self> {
        Ok(Configuration { t: t.frac()?, hat: false })
    }

    /// `x̂_t` for `t` reduced into `(0, 1]`.
    pub fn hat(t: &GammaElement) -> Result<Self> {
        Ok(Configuration { t: frac_right(t)?, hat: true })
    }

    pub fn t(&self) -> &GammaElement {
        &self.t
    }

    pub fn is_hat(&self) -> bool {
        self.hat
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hat {
            write!(f, "x^_{{{}}}", self.t)
        } else {
            write!(f, "x_{{{}}}", self.t)
        }
    }
}

/// Representative in `(0, 1]`.
fn frac_right(x: &GammaElement) -> Result<GammaElement> {
    let f = x.frac()?;
    if f.is_zero() {
        Ok(x.spec().one())
    } else {
        Ok(f)
    }
}

pub fn config_value(ctx: &SubshiftContext, c: &Configuration, b: &GammaElement) -> Result<u8> {
    let s = c.t.add(b)?;
    let inside = if c.hat {
        frac_right(&s)?.le(&ctx.lambda)?
    } else {
        s.frac()?.lt(&ctx.lambda)?
    };
    Ok(inside as u8)
}

pub fn shift_config(c: &Configuration, g: &GammaElement) -> Result<Configuration> {
    let t = c.t.add(g)?;
    if c.hat {
        Configuration::hat(&t)
    } else {
        Configuration::point(&t)
    }
}

/// A finite `{0,1}`-labelling of points of `Γ/ℤ`, keys reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Patch {
    entries: Vec<(GammaElement, u8)>,
}

impl Patch {
    /// Keeps the given key order; that order is the default cycle order of `T_π`.
    pub fn new(entries: Vec<(GammaElement, u8)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition("patch domain is empty".into()));
        }
        let mut out: Vec<(GammaElement, u8)> = Vec::with_capacity(entries.len());
        for (k, v) in entries {
            if v > 1 {
                return Err(Error::Precondition(format!("patch value {v} is not 0 or 1")));
            }
            let k = k.frac()?;
            if out.iter().any(|(q, _)| *q == k) {
                return Err(Error::Precondition(format!("duplicate patch key {k}")));
            }
            if let Some((q, _)) = out.first() {
                if q.spec() != k.spec() {
                    return Err(Error::SpecMismatch);
                }
            }
            out.push((k, v));
        }
        Ok(Patch { entries: out })
    }

    /// `π(keys[j]) = values[j]`.
    pub fn labeled(keys: &[GammaElement], values: &[u8]) -> Result<Self> {
        if keys.len() != values.len() {
            return Err(Error::Precondition("keys and values differ in length".into()));
        }
        Self::new(keys.iter().cloned().zip(values.iter().copied()).collect())
    }

    pub fn entries(&self) -> &[(GammaElement, u8)] {
        &self.entries
    }

    pub fn keys(&self) -> Vec<GammaElement> {
        self.entries.iter().map(|(k, _)| k.clone()).collect()
    }

    pub fn values(&self) -> Vec<u8> {
        self.entries.iter().map(|(_, v)| *v).collect()
    }

    /// The same patch with keys sorted ascending.
    pub fn sorted(&self) -> Result<Self> {
        let mut e = self.entries.clone();
        sort_by_start(&mut e)?;
        Ok(Patch { entries: e })
    }
}

/// `{t ∈ [0,1) : x_t ∈ W_p}`.
pub fn cylinder_intervals(ctx: &SubshiftContext, p: &Patch) -> Result<CircleSet> {
    let mut acc = CircleSet::full(&ctx.spec);
    for (b, v) in &p.entries {
        let w = ctx.window(b)?;
        let w = if *v == 1 { w } else { w.complement()? };
        acc = acc.intersect(&w)?;
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnosis {
    WellDefined,
    EmptyCylinder,
    /// A single key: there is nothing to permute.
    SingleKey,
    /// Translates by `keys[i]` and `keys[j]` meet.
    Overlap { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellDefinedness {
    pub diagnosis: Diagnosis,
    pub cylinder: CircleSet,
    pub message: String,
}

impl WellDefinedness {
    pub fn is_well_defined(&self) -> bool {
        self.diagnosis == Diagnosis::WellDefined
    }
}

#[allow(non_snake_case)]
pub fn is_T_well_defined(ctx: &SubshiftContext, p: &Patch) -> Result<WellDefinedness> {
    let cylinder = cylinder_intervals(ctx, p)?;
    let done = |diagnosis, message: String, cylinder| Ok(WellDefinedness { diagnosis, cylinder, message });
    if cylinder.is_empty() {
        return done(Diagnosis::EmptyCylinder, "cylinder set is empty".into(), cylinder);
    }
    if p.entries.len() < 2 {
        return done(Diagnosis::SingleKey, "one key: no translates to permute".into(), cylinder);
    }
    let translates = p
        .entries
        .iter()
        .map(|(s, _)| cylinder.translate(s))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..translates.len() {
        for j in i + 1..translates.len() {
            if !translates[i].is_disjoint(&translates[j])? {
                let msg = format!(
                    "translates by {} and {} intersect",
                    p.entries[i].0, p.entries[j].0
                );
                return done(Diagnosis::Overlap { i, j }, msg, cylinder);
            }
        }
    }
    done(Diagnosis::WellDefined, "well defined".into(), cylinder)
}

/// All `2^n` labellings of `domain`, in lexicographic order of the value tuple.
pub fn enumerate_patches(
    ctx: &SubshiftContext,
    domain: &[GammaElement],
) -> Result<Vec<(Patch, WellDefinedness)>> {
    let n = domain.len();
    if n > MAX_PATCH_DOMAIN {
        return Err(Error::DomainTooLarge(n));
    }
    let mut out = Vec::with_capacity(1 << n);
    for bits in 0u32..(1 << n) {
        let values: Vec<u8> = (0..n).map(|j| ((bits >> (n - 1 - j)) & 1) as u8).collect();
        let p = Patch::labeled(domain, &values)?;
        let w = is_T_well_defined(ctx, &p)?;
        out.push((p, w));
    }
    Ok(out)
}

/// `T_π` as an interval exchange: the `s_i`-translate of the cylinder moves by
/// `s_{i+1} - s_i`, cyclically in `order` (the patch's key order when `None`).
#[allow(non_snake_case)]
pub fn T_pi_as_iet(ctx: &SubshiftContext, p: &Patch, order: Option<&[GammaElement]>) -> Result<Iet> {
    let w = is_T_well_defined(ctx, p)?;
    if !w.is_well_defined() {
        return Err(Error::NotWellDefined(w.message));
    }
    let keys = match order {
        None => p.keys(),
        Some(o) => {
            let o = o.iter().map(|s| s.frac()).collect::<Result<Vec<_>>>()?;
            let want = p.keys();
            let covers = want.iter().all(|s| o.contains(s));
            if o.len() != want.len() || !covers {
                return Err(Error::Precondition("order must list every patch key once".into()));
            }
            o
        }
    };
    let n = keys.len();
    let mut arcs = Vec::new();
    for (a, b) in w.cylinder.intervals() {
        let len = b.sub(a)?;
        for i in 0..n {
            let shift = keys[(i + 1) % n].sub(&keys[i])?;
            arcs.push((a.add(&keys[i])?, len.clone(), shift));
        }
    }
    Iet::from_arcs(&ctx.spec, &arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{rank2_spec, sqrt2_spec};
    use crate::iet::{r_ka, sigma, sigma_hat};

    fn lam(s: &GammaSpec, i: usize) -> GammaElement {
        s.lambda(i).unwrap()
    }

    fn ops(s: &GammaSpec, i: usize) -> Vec<GammaElement> {
        let l = lam(s, i);
        vec![s.zero(), l.clone(), l.neg()]
    }

    #[test]
    fn config_values() {
        let s = sqrt2_spec(1);
        let ctx = SubshiftContext::new(&s).unwrap();
        let l = lam(&s, 1);
        let x0 = Configuration::point(&s.zero()).unwrap();
        assert_eq!(config_value(&ctx, &x0, &s.zero()).unwrap(), 1);
        let xh = Configuration::hat(&l).unwrap();
        assert_eq!(config_value(&ctx, &xh, &s.zero()).unwrap(), 1);
        let xl = Configuration::point(&l).unwrap();
        assert_eq!(config_value(&ctx, &xl, &s.zero()).unwrap(), 0);
        // x̂_1 reads 0 at 0 and 1 just below λ
        let x1 = Configuration::hat(&s.one()).unwrap();
        assert_eq!(config_value(&ctx, &x1, &s.zero()).unwrap(), 0);
        assert_eq!(config_value(&ctx, &x1, &l).unwrap(), 1);
    }

    #[test]
    fn shifting() {
        let s = sqrt2_spec(10);
        let l = lam(&s, 1);
        let t = s.rational(1, 10).unwrap();
        let x = Configuration::point(&t).unwrap();
        assert_eq!(shift_config(&x, &l).unwrap(), Configuration::point(&t.add(&l).unwrap()).unwrap());
        assert_eq!(shift_config(&x, &s.zero()).unwrap(), x);
        let x1 = Configuration::hat(&s.one()).unwrap();
        assert_eq!(shift_config(&x1, &t).unwrap(), Configuration::hat(&t).unwrap());
        assert!(shift_config(&x1, &s.zero()).unwrap().t() == &s.one());
    }

    #[test]
    fn window_measure_is_lambda() {
        let s = rank2_spec(3);
        let ctx = SubshiftContext::new(&s).unwrap();
        for b in [s.zero(), lam(&s, 2), s.rational(2, 3).unwrap(), lam(&s, 1).neg()] {
            for v in [0u8, 1] {
                let p = Patch::new(vec![(b.clone(), v)]).unwrap();
                let m = cylinder_intervals(&ctx, &p).unwrap().measure().unwrap();
                let want = if v == 1 { lam(&s, 1) } else { s.one().sub(&lam(&s, 1)).unwrap() };
                assert_eq!(m, want);
            }
        }
    }

    #[test]
    fn patches_reject_bad_keys() {
        let s = sqrt2_spec(1);
        assert!(Patch::new(vec![]).is_err());
        let dup = Patch::new(vec![(s.zero(), 0), (s.one(), 1)]);
        assert!(matches!(dup, Err(Error::Precondition(_))));
        let ctx = SubshiftContext::new(&s).unwrap();
        let big: Vec<GammaElement> = (0..17).map(|j| s.lambda(1).unwrap().int_scale(j).unwrap()).collect();
        assert!(matches!(enumerate_patches(&ctx, &big), Err(Error::DomainTooLarge(17))));
    }

    #[test]
    fn single_key_is_never_well_defined() {
        let s = sqrt2_spec(1);
        let ctx = SubshiftContext::new(&s).unwrap();
        let all = enumerate_patches(&ctx, &[s.zero()]).unwrap();
        assert_eq!(all.len(), 2);
        for (_, w) in all {
            assert_eq!(w.diagnosis, Diagnosis::SingleKey);
        }
    }

    #[test]
    fn t_pi_recovers_sigma_and_sigma_hat() {
        let s = rank2_spec(1);
        let ctx = SubshiftContext::new(&s).unwrap();
        for i in 1..=2 {
            let d = ops(&s, i);
            let t010 = T_pi_as_iet(&ctx, &Patch::labeled(&d, &[0, 1, 0]).unwrap(), None).unwrap();
            let t001 = T_pi_as_iet(&ctx, &Patch::labeled(&d, &[0, 0, 1]).unwrap(), None).unwrap();
            assert_eq!(t010, sigma(&s, i).unwrap());
            assert_eq!(t001, sigma_hat(&s, i).unwrap());
        }
    }

    #[test]
    fn t_pi_for_k11() {
        let s = rank2_spec(11);
        let ctx = SubshiftContext::new(&s).unwrap();
        let e = s.rational(1, 11).unwrap();
        let d = vec![s.zero(), e.clone(), e.neg()];
        let t = T_pi_as_iet(&ctx, &Patch::labeled(&d, &[0, 1, 0]).unwrap(), None).unwrap();
        let a = s.one().sub(&e.int_scale(2).unwrap()).unwrap();
        assert_eq!(t, r_ka(&s, &a).unwrap().value);
        let bad = T_pi_as_iet(&ctx, &Patch::labeled(&d, &[1, 0, 0]).unwrap(), None);
        assert!(matches!(bad, Err(Error::NotWellDefined(_))));
    }
}
