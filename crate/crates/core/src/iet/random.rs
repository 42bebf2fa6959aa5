//! Random valid elements and points, for property tests and the verification suite.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Iet;
use crate::circle::sort_by_start;
use crate::error::Result;
use crate::gamma::{GammaElement, GammaSpec};

/// Highest grid level sampled for rule-based specs.
const MAX_RANDOM_LEVEL: u32 = 3;

/// A point of `Γ ∩ [0, 1)` with small coefficients.
pub fn random_point<R: Rng + ?Sized>(spec: &GammaSpec, rng: &mut R) -> Result<GammaElement> {
    if spec.is_rational() {
        let level = rng.gen_range(0..=MAX_RANDOM_LEVEL);
        let kn = spec.level_denominator(level)?;
        return spec.at_level(level, rng.gen_range(0..kn));
    }
    let k = spec.denominator().unwrap() as i64;
    let mut c = vec![rng.gen_range(-2 * k..=2 * k)];
    for _ in 0..spec.rank() {
        c.push(rng.gen_range(-3..=3));
    }
    spec.from_coeffs(c)?.frac()
}

/// Cuts `[0, 1)` at up to `max_pieces - 1` random points and permutes the pieces.
pub fn random_iet<R: Rng + ?Sized>(
    spec: &GammaSpec,
    max_pieces: usize,
    rng: &mut R,
) -> Result<Iet> {
    let n = rng.gen_range(1..=max_pieces.max(1));
    let mut pts: Vec<(GammaElement, ())> = Vec::with_capacity(n);
    for _ in 1..n {
        let p = random_point(spec, rng)?;
        if !p.is_zero() && !pts.iter().any(|(q, _)| *q == p) {
            pts.push((p, ()));
        }
    }
    sort_by_start(&mut pts)?;
    let mut cuts = vec![spec.zero()];
    cuts.extend(pts.into_iter().map(|(p, _)| p));
    let one = spec.one();
    let lengths: Vec<GammaElement> = (0..cuts.len())
        .map(|i| cuts.get(i + 1).unwrap_or(&one).sub(&cuts[i]))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..cuts.len()).collect();
    order.shuffle(rng);
    // piece order[j] lands at position j
    let mut dest = vec![spec.zero(); cuts.len()];
    let mut cursor = spec.zero();
    for &p in &order {
        dest[p] = cursor.clone();
        cursor = cursor.add(&lengths[p])?;
    }
    let shifts = (0..cuts.len()).map(|i| dest[i].sub(&cuts[i])).collect::<Result<_>>()?;
    Iet::from_pieces(spec, cuts, shifts)
}

/// A word of length `len` in `gens` and their inverses, evaluated.
pub fn random_word<R: Rng + ?Sized>(
    spec: &GammaSpec,
    gens: &[Iet],
    len: usize,
    rng: &mut R,
) -> Result<(Vec<(usize, i8)>, Iet)> {
    let mut word = Vec::with_capacity(len);
    let mut acc = Iet::identity(spec);
    if gens.is_empty() {
        return Ok((word, acc));
    }
    for _ in 0..len {
        let g = rng.gen_range(0..gens.len());
        let e: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let step = if e == 1 { gens[g].clone() } else { gens[g].inverse()? };
        acc = acc.compose(&step)?;
        word.push((g, e));
    }
    Ok((word, acc))
}
