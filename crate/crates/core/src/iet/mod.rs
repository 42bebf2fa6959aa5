//! Interval exchange elements: right-continuous bijections of `[0, 1)` that
//! translate each of finitely many half-open pieces by an element of `Γ`.
//!
//! Every `Iet` is stored in canonical form. Piece `i` is `[cuts[i], cuts[i+1])`
//! (the last piece ends at 1) and is moved by `shifts[i]`, the true displacement,
//! so the image of each piece already lies inside `[0, 1)`. Adjacent pieces never
//! share a shift, and the cut at 0 is always kept.

mod ambient;
mod generators;
pub mod random;
mod rational;

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use ambient::{ambient_group, rescale_element, rescale_spec};
pub use generators::{
    gamma_b, gamma_b1b2, generating_set_k, r_ka, sigma, sigma_hat, GammaBData,
};
pub use rational::{
    as_permutation, embedding_check, iota_embed, minimal_level, permutation_parity, sigma_ij,
    sign_hom,
};

use crate::circle::sort_by_start;
use crate::error::{Error, Result};
use crate::gamma::{GammaElement, GammaSpec, Sign};

#[derive(Clone, PartialEq, Eq)]
pub struct Iet {
    spec: GammaSpec,
    cuts: Vec<GammaElement>,
    shifts: Vec<GammaElement>,
}

impl Hash for Iet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.cuts.hash(state);
        self.shifts.hash(state);
    }
}

impl fmt::Debug for Iet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for (i, s) in self.shifts.iter().enumerate() {
            let end = self.cuts.get(i + 1).map(|c| c.to_string()).unwrap_or_else(|| "1".into());
            l.entry(&format_args!("[{}, {}) by {}", self.cuts[i], end, s));
        }
        l.finish()
    }
}

/// A raw piece `[start, end)` with its translation, used while assembling.
type Piece = (GammaElement, GammaElement, GammaElement);

impl Iet {
    pub fn identity(spec: &GammaSpec) -> Self {
        Iet { spec: spec.clone(), cuts: vec![spec.zero()], shifts: vec![spec.zero()] }
    }

    /// Validates and normalizes. Shifts may be any representative mod 1.
    pub fn from_pieces(
        spec: &GammaSpec,
        cuts: Vec<GammaElement>,
        shifts: Vec<GammaElement>,
    ) -> Result<Self> {
        if cuts.len() != shifts.len() {
            return Err(Error::BadPartition(format!(
                "{} cuts but {} shifts",
                cuts.len(),
                shifts.len()
            )));
        }
        if cuts.is_empty() {
            return Err(Error::BadPartition("no pieces".into()));
        }
        if cuts.iter().chain(&shifts).any(|x| x.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        if !cuts[0].is_zero() {
            return Err(Error::BadPartition("first cut must be 0".into()));
        }
        for w in cuts.windows(2) {
            if !w[0].lt(&w[1])? {
                return Err(Error::BadPartition(format!(
                    "cuts not strictly increasing at {} >= {}",
                    w[0], w[1]
                )));
            }
        }
        let one = spec.one();
        if !cuts.last().unwrap().lt(&one)? {
            return Err(Error::BadPartition("cuts must lie in [0,1)".into()));
        }
        let mut raw = Vec::with_capacity(cuts.len());
        for (i, s) in shifts.into_iter().enumerate() {
            let end = cuts.get(i + 1).cloned().unwrap_or_else(|| one.clone());
            raw.push((cuts[i].clone(), end, s));
        }
        Self::from_partition(spec, raw)
    }

    /// Pieces that already partition `[0, 1)` in order; shifts any representative.
    fn from_partition(spec: &GammaSpec, raw: Vec<Piece>) -> Result<Self> {
        let one = spec.one();
        let mut pieces: Vec<Piece> = Vec::with_capacity(raw.len() + 2);
        for (a, b, s) in raw {
            let m = a.add(&s)?.floor()?;
            let s = if m == 0 { s } else { s.sub(&spec.integer(m))? };
            let top = b.add(&s)?;
            if one.lt(&top)? {
                let c = one.sub(&s)?;
                let s2 = s.sub(&one)?;
                pieces.push((a, c.clone(), s));
                pieces.push((c, b, s2));
            } else {
                pieces.push((a, b, s));
            }
        }
        check_tiling(spec, &pieces)?;
        Ok(Self::assemble(spec, pieces))
    }

    /// Merges adjacent pieces with equal shifts. Assumes a valid partition.
    fn assemble(spec: &GammaSpec, pieces: Vec<Piece>) -> Self {
        let mut cuts: Vec<GammaElement> = Vec::with_capacity(pieces.len());
        let mut shifts: Vec<GammaElement> = Vec::with_capacity(pieces.len());
        for (a, _, s) in pieces {
            if shifts.last() == Some(&s) {
                continue;
            }
            cuts.push(a);
            shifts.push(s);
        }
        Iet { spec: spec.clone(), cuts, shifts }
    }

    /// Identity off the given arcs; arc `(start, length, shift)` is read on the
    /// circle and moved by `shift` mod 1.
    pub fn from_arcs(
        spec: &GammaSpec,
        arcs: &[(GammaElement, GammaElement, GammaElement)],
    ) -> Result<Self> {
        let one = spec.one();
        let mut dom: Vec<(GammaElement, (GammaElement, GammaElement))> = Vec::new();
        for (start, len, shift) in arcs {
            if len.sign()? != Sign::Positive || !len.le(&one)? {
                return Err(Error::BadPartition(format!("arc length {len} outside (0,1]")));
            }
            let a = start.frac()?;
            let b = a.add(len)?;
            if one.lt(&b)? {
                dom.push((a, (one.clone(), shift.clone())));
                dom.push((spec.zero(), (b.sub(&one)?, shift.clone())));
            } else {
                dom.push((a, (b, shift.clone())));
            }
        }
        sort_by_start(&mut dom)?;
        let mut raw: Vec<Piece> = Vec::with_capacity(2 * dom.len() + 1);
        let mut cursor = spec.zero();
        for (a, (b, s)) in dom {
            match a.compare(&cursor)? {
                std::cmp::Ordering::Less => return Err(Error::OverlappingIntervals),
                std::cmp::Ordering::Greater => raw.push((cursor, a.clone(), spec.zero())),
                std::cmp::Ordering::Equal => {}
            }
            cursor = b.clone();
            raw.push((a, b, s));
        }
        if cursor.lt(&one)? {
            raw.push((cursor, one, spec.zero()));
        }
        Self::from_partition(spec, raw)
    }

    /// Cyclically maps the arc `[starts[j], starts[j] + length)` onto the next one.
    pub fn cycle(spec: &GammaSpec, starts: &[GammaElement], length: &GammaElement) -> Result<Self> {
        let n = starts.len();
        let mut arcs = Vec::with_capacity(n);
        for j in 0..n {
            let shift = starts[(j + 1) % n].sub(&starts[j])?;
            arcs.push((starts[j].clone(), length.clone(), shift));
        }
        Self::from_arcs(spec, &arcs)
    }

    /// Rotation `t ↦ t + c mod 1`.
    pub fn rotation(spec: &GammaSpec, c: &GammaElement) -> Result<Self> {
        let c = c.frac()?;
        if c.is_zero() {
            return Ok(Self::identity(spec));
        }
        let one = spec.one();
        Ok(Iet {
            spec: spec.clone(),
            cuts: vec![spec.zero(), one.sub(&c)?],
            shifts: vec![c.clone(), c.sub(&one)?],
        })
    }

    pub fn spec(&self) -> &GammaSpec {
        &self.spec
    }

    pub fn cuts(&self) -> &[GammaElement] {
        &self.cuts
    }

    pub fn shifts(&self) -> &[GammaElement] {
        &self.shifts
    }

    pub fn piece_count(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_identity(&self) -> bool {
        self.shifts.len() == 1 && self.shifts[0].is_zero()
    }

    /// Index of the piece containing `t`, for `t` in `[0, 1)`.
    fn locate(&self, t: &GammaElement) -> Result<usize> {
        let (mut lo, mut hi) = (0usize, self.cuts.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.cuts[mid].le(t)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    pub fn apply(&self, t: &GammaElement) -> Result<GammaElement> {
        if t.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        if t.sign()? == Sign::Negative || !t.lt(&self.spec.one())? {
            return Err(Error::OutOfDomain);
        }
        let i = self.locate(t)?;
        t.add(&self.shifts[i])
    }

    fn end(&self, i: usize) -> GammaElement {
        self.cuts.get(i + 1).cloned().unwrap_or_else(|| self.spec.one())
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &Iet) -> Result<Iet> {
        if self.spec != g.spec {
            return Err(Error::SpecMismatch);
        }
        if self.is_identity() {
            return Ok(g.clone());
        }
        if g.is_identity() {
            return Ok(self.clone());
        }
        let mut pieces: Vec<Piece> = Vec::with_capacity(self.cuts.len() + g.cuts.len());
        for i in 0..g.cuts.len() {
            let s = &g.shifts[i];
            let a = &g.cuts[i];
            let img_end = g.end(i).add(s)?;
            let mut start = a.clone();
            let mut j = self.locate(&a.add(s)?)?;
            loop {
                let f_end = self.end(j);
                let last = !f_end.lt(&img_end)?;
                let dom_end = if last { g.end(i) } else { f_end.sub(s)? };
                pieces.push((start, dom_end.clone(), s.add(&self.shifts[j])?));
                if last {
                    break;
                }
                start = dom_end;
                j += 1;
            }
        }
        Ok(Self::assemble(&self.spec, pieces))
    }

    pub fn inverse(&self) -> Result<Iet> {
        let mut imgs: Vec<(GammaElement, (GammaElement, GammaElement))> =
            Vec::with_capacity(self.cuts.len());
        for i in 0..self.cuts.len() {
            let s = &self.shifts[i];
            imgs.push((self.cuts[i].add(s)?, (self.end(i).add(s)?, s.neg())));
        }
        sort_by_start(&mut imgs)?;
        let pieces = imgs.into_iter().map(|(a, (b, s))| (a, b, s)).collect();
        Ok(Self::assemble(&self.spec, pieces))
    }

    pub fn equals(&self, other: &Iet) -> bool {
        self == other
    }

    /// `f^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Result<Iet> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Iet::identity(&self.spec);
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// Smallest `n >= 1` with `f^n = id`, searching up to `max`.
    pub fn order(&self, max: u32) -> Result<Option<u32>> {
        let mut acc = self.clone();
        for n in 1..=max {
            if acc.is_identity() {
                return Ok(Some(n));
            }
            acc = acc.compose(self)?;
        }
        Ok(None)
    }

    /// `f g f⁻¹ g⁻¹`, composed right to left.
    pub fn commutator(&self, g: &Iet) -> Result<Iet> {
        self.compose(&g.compose(&self.inverse()?.compose(&g.inverse()?)?)?)
    }

    /// Distinct shift values, in order of first appearance.
    pub fn angles(&self) -> Vec<GammaElement> {
        let mut seen = HashSet::new();
        self.shifts.iter().filter(|s| seen.insert((*s).clone())).cloned().collect()
    }

    /// Re-runs normalization on the stored data.
    pub fn normalized(&self) -> Result<Iet> {
        Self::from_pieces(&self.spec, self.cuts.clone(), self.shifts.clone())
    }

    /// Image intervals `[a + s, b + s)` in domain order.
    pub fn image_intervals(&self) -> Result<Vec<(GammaElement, GammaElement)>> {
        (0..self.cuts.len())
            .map(|i| Ok((self.cuts[i].add(&self.shifts[i])?, self.end(i).add(&self.shifts[i])?)))
            .collect()
    }
}

fn check_tiling(spec: &GammaSpec, pieces: &[Piece]) -> Result<()> {
    let mut imgs: Vec<(GammaElement, GammaElement)> = Vec::with_capacity(pieces.len());
    for (a, b, s) in pieces {
        imgs.push((a.add(s)?, b.add(s)?));
    }
    sort_by_start(&mut imgs)?;
    let mut cursor = spec.zero();
    for (a, b) in imgs {
        if a != cursor {
            return Err(Error::NotABijection(if a.lt(&cursor)? {
                format!("images overlap near {a}")
            } else {
                format!("gap in image between {cursor} and {a}")
            }));
        }
        cursor = b;
    }
    if cursor != spec.one() {
        return Err(Error::NotABijection(format!("image ends at {cursor}, not 1")));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
