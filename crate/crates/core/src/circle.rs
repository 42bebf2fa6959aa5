//! Finite unions of half-open intervals on the circle `ℝ/ℤ`, with endpoints in `Γ`.
//!
//! Canonical form: intervals `[a, b)` with `0 <= a < b <= 1`, sorted, pairwise
//! disjoint and non-adjacent. An arc crossing 0 is stored as `[a, 1)` plus `[0, b)`.

use crate::error::{Error, Result};
use crate::gamma::{GammaElement, GammaSpec, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSet {
    spec: GammaSpec,
    intervals: Vec<(GammaElement, GammaElement)>,
}

impl CircleSet {
    pub fn empty(spec: &GammaSpec) -> Self {
        CircleSet { spec: spec.clone(), intervals: Vec::new() }
    }

    pub fn full(spec: &GammaSpec) -> Self {
        CircleSet { spec: spec.clone(), intervals: vec![(spec.zero(), spec.one())] }
    }

    /// The arc starting at `start` (any real in `Γ`) of the given length in `[0, 1]`.
    pub fn arc(start: &GammaElement, length: &GammaElement) -> Result<Self> {
        let spec = start.spec().clone();
        let one = spec.one();
        if length.sign()? != Sign::Positive {
            return Ok(Self::empty(&spec));
        }
        if !length.lt(&one)? {
            return Ok(Self::full(&spec));
        }
        let a = start.frac()?;
        let b = a.add(length)?;
        if b.le(&one)? {
            Ok(CircleSet { spec, intervals: vec![(a, b)] })
        } else {
            let wrap = b.sub(&one)?;
            Ok(CircleSet { spec: spec.clone(), intervals: vec![(spec.zero(), wrap), (a, one)] })
        }
    }

    /// The circle image of `[a, b)` for reals `a <= b` in `Γ` (not reduced mod 1).
    pub fn interval(a: &GammaElement, b: &GammaElement) -> Result<Self> {
        Self::arc(a, &b.sub(a)?)
    }

    /// Builds a canonical set from arbitrary intervals already inside `[0, 1]`.
    pub fn from_intervals(
        spec: &GammaSpec,
        mut raw: Vec<(GammaElement, GammaElement)>,
    ) -> Result<Self> {
        let mut err = None;
        raw.retain(|(a, b)| match a.lt(b) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                false
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        sort_by_start(&mut raw)?;
        let mut out: Vec<(GammaElement, GammaElement)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            if let Some(last) = out.last_mut() {
                if a.le(&last.1)? {
                    if last.1.lt(&b)? {
                        last.1 = b;
                    }
                    continue;
                }
            }
            out.push((a, b));
        }
        Ok(CircleSet { spec: spec.clone(), intervals: out })
    }

    pub fn spec(&self) -> &GammaSpec {
        &self.spec
    }

    pub fn intervals(&self) -> &[(GammaElement, GammaElement)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Does the set contain the point `t` (any real, read mod 1)?
    pub fn contains(&self, t: &GammaElement) -> Result<bool> {
        let t = t.frac()?;
        for (a, b) in &self.intervals {
            if a.le(&t)? && t.lt(b)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn complement(&self) -> Result<Self> {
        let mut out = Vec::new();
        let mut cursor = self.spec.zero();
        for (a, b) in &self.intervals {
            if cursor.lt(a)? {
                out.push((cursor.clone(), a.clone()));
            }
            cursor = b.clone();
        }
        let one = self.spec.one();
        if cursor.lt(&one)? {
            out.push((cursor, one));
        }
        Ok(CircleSet { spec: self.spec.clone(), intervals: out })
    }

    pub fn intersect(&self, other: &CircleSet) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a1, b1) = &self.intervals[i];
            let (a2, b2) = &other.intervals[j];
            let lo = if a1.lt(a2)? { a2 } else { a1 };
            let b1_first = b1.lt(b2)?;
            let hi = if b1_first { b1 } else { b2 };
            if lo.lt(hi)? {
                out.push((lo.clone(), hi.clone()));
            }
            if b1_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(CircleSet { spec: self.spec.clone(), intervals: out })
    }

    pub fn union(&self, other: &CircleSet) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let mut raw = self.intervals.clone();
        raw.extend(other.intervals.iter().cloned());
        Self::from_intervals(&self.spec, raw)
    }

    pub fn difference(&self, other: &CircleSet) -> Result<Self> {
        self.intersect(&other.complement()?)
    }

    /// The rotated set `{t + g mod 1 : t in self}`.
    pub fn translate(&self, g: &GammaElement) -> Result<Self> {
        let mut acc = Self::empty(&self.spec);
        for (a, b) in &self.intervals {
            let piece = Self::arc(&a.add(g)?, &b.sub(a)?)?;
            acc = acc.union(&piece)?;
        }
        Ok(acc)
    }

    pub fn is_disjoint(&self, other: &CircleSet) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    /// Total length, exactly.
    pub fn measure(&self) -> Result<GammaElement> {
        let mut m = self.spec.zero();
        for (a, b) in &self.intervals {
            m = m.add(&b.sub(a)?)?;
        }
        Ok(m)
    }
}

/// Stable merge sort on fallible exact comparisons.
pub(crate) fn sort_by_start<T>(v: &mut Vec<(GammaElement, T)>) -> Result<()> {
    if v.len() <= 1 {
        return Ok(());
    }
    let mut items: Vec<(GammaElement, T)> = std::mem::take(v);
    let right = items.split_off(items.len() / 2);
    let mut left = items;
    let mut right = right;
    sort_by_start(&mut left)?;
    sort_by_start(&mut right)?;
    let mut out = Vec::with_capacity(left.len() + right.len());
    let mut l = left.into_iter().peekable();
    let mut r = right.into_iter().peekable();
    loop {
        match (l.peek(), r.peek()) {
            (Some(x), Some(y)) => {
                if y.0.lt(&x.0)? {
                    out.push(r.next().unwrap());
                } else {
                    out.push(l.next().unwrap());
                }
            }
            (Some(_), None) => out.push(l.next().unwrap()),
            (None, Some(_)) => out.push(r.next().unwrap()),
            (None, None) => break,
        }
    }
    *v = out;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::MultiplierRule;

    fn dyadic() -> GammaSpec {
        GammaSpec::rational_rule(MultiplierRule::Constant(2)).unwrap()
    }

    #[test]
    fn arcs_split_at_zero() {
        let s = dyadic();
        let set = CircleSet::arc(&s.rational(3, 4).unwrap(), &s.rational(1, 2).unwrap()).unwrap();
        assert_eq!(
            set.intervals(),
            &[
                (s.zero(), s.rational(1, 4).unwrap()),
                (s.rational(3, 4).unwrap(), s.one())
            ]
        );
        assert_eq!(set.measure().unwrap(), s.rational(1, 2).unwrap());
    }

    #[test]
    fn complement_and_intersection() {
        let s = dyadic();
        let a = CircleSet::interval(&s.rational(1, 4).unwrap(), &s.rational(3, 4).unwrap()).unwrap();
        let c = a.complement().unwrap();
        assert!(a.is_disjoint(&c).unwrap());
        assert_eq!(a.union(&c).unwrap(), CircleSet::full(&s));
        let b = CircleSet::interval(&s.rational(1, 2).unwrap(), &s.one()).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.intervals(), &[(s.rational(1, 2).unwrap(), s.rational(3, 4).unwrap())]);
    }

    #[test]
    fn adjacent_intervals_merge() {
        let s = dyadic();
        let a = CircleSet::interval(&s.zero(), &s.rational(1, 2).unwrap()).unwrap();
        let b = CircleSet::interval(&s.rational(1, 2).unwrap(), &s.rational(5, 8).unwrap()).unwrap();
        assert_eq!(a.union(&b).unwrap().intervals().len(), 1);
    }

    #[test]
    fn translate_wraps() {
        let s = dyadic();
        let a = CircleSet::interval(&s.zero(), &s.rational(1, 2).unwrap()).unwrap();
        let t = a.translate(&s.rational(3, 4).unwrap()).unwrap();
        assert!(t.contains(&s.rational(7, 8).unwrap()).unwrap());
        assert!(t.contains(&s.rational(1, 8).unwrap()).unwrap());
        assert!(!t.contains(&s.rational(1, 4).unwrap()).unwrap());
        assert_eq!(t.translate(&s.rational(1, 4).unwrap()).unwrap(), a);
    }
}
