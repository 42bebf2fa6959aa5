//! The rational case: `IE(Γ)` as the union of the symmetric groups `S_{k(n)}`
//! acting on the grid intervals `[j/k(n), (j+1)/k(n))`.

use super::Iet;
use crate::error::{Checked, Error, Result, Warning};
use crate::gamma::{GammaElement, GammaSpec};

/// Refuse to materialize permutations on more points than this.
const MAX_GRID: i128 = 1 << 22;

fn require_rule(spec: &GammaSpec) -> Result<()> {
    if spec.is_rational() {
        Ok(())
    } else {
        Err(Error::UnsupportedSpec("operation needs a rational_rule spec".into()))
    }
}

/// The transposition of grid cells `i` and `j` at level `n`.
pub fn sigma_ij(spec: &GammaSpec, n: u32, i: i128, j: i128) -> Result<Iet> {
    require_rule(spec)?;
    let kn = spec.level_denominator(n)?;
    if !(0 <= i && i < j && j < kn) {
        return Err(Error::IndexError(format!("need 0 <= {i} < {j} < k({n}) = {kn}")));
    }
    let starts = [spec.at_level(n, i)?, spec.at_level(n, j)?];
    Iet::cycle(spec, &starts, &spec.at_level(n, 1)?)
}

/// Smallest level at which every cut and shift of `f` lies on the grid.
pub fn minimal_level(f: &Iet) -> Result<u32> {
    require_rule(f.spec())?;
    Ok(f.cuts()
        .iter()
        .chain(f.shifts())
        .map(|e| e.level_num().unwrap().0)
        .max()
        .unwrap_or(0))
}

fn check_aligned(f: &Iet, n: u32) -> Result<()> {
    if minimal_level(f)? > n {
        return Err(Error::NotGridAligned { level: n });
    }
    Ok(())
}

/// `f` regarded as an element of `S_{k(n+1)}`. The element itself is unchanged.
pub fn iota_embed(spec: &GammaSpec, f: &Iet, n: u32) -> Result<Iet> {
    require_rule(spec)?;
    if f.spec() != spec {
        return Err(Error::SpecMismatch);
    }
    check_aligned(f, n)?;
    spec.level_denominator(n + 1)?;
    Ok(f.clone())
}

/// Checks `σⁿ_{i,i+1} = ∏_{m < k_{n+1}} σⁿ⁺¹_{i·k_{n+1}+m, (i+1)·k_{n+1}+m}` exactly.
pub fn embedding_check(spec: &GammaSpec, n: u32, i: i128) -> Result<bool> {
    require_rule(spec)?;
    let lhs = sigma_ij(spec, n, i, i + 1)?;
    let kn1 = spec.rule().unwrap().multiplier(n + 1) as i128;
    let mut rhs = Iet::identity(spec);
    for m in 0..kn1 {
        rhs = rhs.compose(&sigma_ij(spec, n + 1, i * kn1 + m, (i + 1) * kn1 + m)?)?;
    }
    Ok(lhs == rhs)
}

/// The permutation `p` of `{0, ..., k(n) − 1}` with `f([j/k(n), (j+1)/k(n))) = [p(j)/k(n), ...)`.
pub fn as_permutation(spec: &GammaSpec, f: &Iet, n: u32) -> Result<Vec<usize>> {
    require_rule(spec)?;
    if f.spec() != spec {
        return Err(Error::SpecMismatch);
    }
    check_aligned(f, n)?;
    let kn = spec.level_denominator(n)?;
    if kn > MAX_GRID {
        return Err(Error::Precondition(format!("k({n}) = {kn} is too large to enumerate")));
    }
    let mut perm = Vec::with_capacity(kn as usize);
    for j in 0..kn {
        let img = f.apply(&spec.at_level(n, j)?)?;
        perm.push(numerator_at(&img, spec, n)? as usize);
    }
    Ok(perm)
}

fn numerator_at(x: &GammaElement, spec: &GammaSpec, n: u32) -> Result<i128> {
    let (l, num) = x.level_num().unwrap();
    Ok(num * (spec.level_denominator(n)? / spec.level_denominator(l)?))
}

/// Parity of a permutation (0 even, 1 odd).
pub fn permutation_parity(perm: &[usize]) -> u8 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    (transpositions % 2) as u8
}

/// Parity of `f` at its minimal aligned level. A `ConsistencyWarning` is attached
/// when the parity one level further down disagrees.
pub fn sign_hom(spec: &GammaSpec, f: &Iet) -> Result<Checked<u8>> {
    let n = minimal_level(f)?;
    let value = permutation_parity(&as_permutation(spec, f, n)?);
    let mut warnings = Vec::new();
    if !f.is_identity() && spec.level_denominator(n + 1).is_ok_and(|k| k <= MAX_GRID) {
        let next = permutation_parity(&as_permutation(spec, f, n + 1)?);
        if next != value {
            warnings.push(Warning::ConsistencyWarning { level: n, next_level: n + 1 });
        }
    }
    Ok(Checked { value, warnings })
}
