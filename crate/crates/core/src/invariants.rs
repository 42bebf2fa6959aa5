//! Closed-form homological invariants of `IE(Γ)` and its groupoid, plus the
//! subgroup-equality test that decides isomorphism of the groups.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gamma::lattice::same_subgroup;
use crate::gamma::{GammaElement, GammaSpec, MultiplierRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeRank {
    Finite(u64),
    /// The group `Γ` itself (not finitely generated).
    Gamma,
}

/// `free ⊕ ⨁ ℤ_{t}` for `t` in `torsion` (prime powers, sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupDescriptor {
    pub free_rank: FreeRank,
    pub torsion: Vec<u64>,
    /// False when only partial information is available.
    pub exact: bool,
}

impl AbelianGroupDescriptor {
    pub fn free(rank: u64) -> Self {
        AbelianGroupDescriptor { free_rank: FreeRank::Finite(rank), torsion: Vec::new(), exact: true }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn gamma() -> Self {
        AbelianGroupDescriptor { free_rank: FreeRank::Gamma, torsion: Vec::new(), exact: true }
    }

    pub fn with_torsion(mut self, mut torsion: Vec<u64>) -> Self {
        torsion.sort_unstable();
        self.torsion = torsion;
        self
    }

    pub fn partial(mut self) -> Self {
        self.exact = false;
        self
    }

    /// Free rank when finite.
    pub fn rank(&self) -> Option<u64> {
        match self.free_rank {
            FreeRank::Finite(r) => Some(r),
            FreeRank::Gamma => None,
        }
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<u64> {
        match self.free_rank {
            FreeRank::Finite(0) => Some(self.torsion.iter().product()),
            _ => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == FreeRank::Finite(0) && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            FreeRank::Gamma => parts.push("Gamma".to_string()),
            FreeRank::Finite(0) => {}
            FreeRank::Finite(1) => parts.push("Z".to_string()),
            FreeRank::Finite(r) => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let n = self.torsion[i..].iter().take_while(|&&x| x == t).count();
            parts.push(if n == 1 { format!("Z_{t}") } else { format!("Z_{t}^{n}") });
            i += n;
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))?;
        if !self.exact {
            write!(f, " (partial)")?;
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of irrational generators, or `None` for rule-based specs.
fn lattice_rank(spec: &GammaSpec) -> Option<u64> {
    if spec.is_rational() {
        None
    } else {
        Some(spec.rank() as u64)
    }
}

/// `H_n` of the transformation groupoid, i.e. `H_{n+1}(Γ)`.
pub fn groupoid_homology(spec: &GammaSpec, n: u32) -> Result<AbelianGroupDescriptor> {
    Ok(match lattice_rank(spec) {
        None if n == 0 => AbelianGroupDescriptor::gamma(),
        None => AbelianGroupDescriptor::trivial(),
        Some(d) => AbelianGroupDescriptor::free(binomial(d + 1, n as u64 + 1)),
    })
}

/// `(K₀, K₁)`: the even and odd groupoid homology summed.
pub fn k_groups(spec: &GammaSpec) -> Result<(AbelianGroupDescriptor, AbelianGroupDescriptor)> {
    match lattice_rank(spec) {
        None => Ok((AbelianGroupDescriptor::gamma(), AbelianGroupDescriptor::trivial())),
        Some(d) => {
            let (mut even, mut odd) = (0, 0);
            for n in 0..=d as u32 {
                let r = groupoid_homology(spec, n)?.rank().unwrap();
                if n % 2 == 0 {
                    even += r;
                } else {
                    odd += r;
                }
            }
            Ok((AbelianGroupDescriptor::free(even), AbelianGroupDescriptor::free(odd)))
        }
    }
}

/// `IE(Γ)_ab`. Exact for rational `Γ` and for `d ∈ {1, 2}`; for `d ≥ 3` only the
/// free rank of the `H₂` quotient and the `ℤ₂^{d+1}` subgroup are known.
pub fn abelianization(spec: &GammaSpec) -> Result<AbelianGroupDescriptor> {
    match lattice_rank(spec) {
        None => Ok(AbelianGroupDescriptor::trivial().with_torsion(vec![2])),
        Some(1) => Ok(AbelianGroupDescriptor::free(1).with_torsion(vec![2, 2])),
        Some(2) => Ok(AbelianGroupDescriptor::free(1).with_torsion(vec![2, 2, 2])),
        Some(d) if d >= 3 => Ok(AbelianGroupDescriptor::free(binomial(d + 1, 3))
            .with_torsion(vec![2; d as usize + 1])
            .partial()),
        Some(_) => Err(Error::UnsupportedSpec("no irrational generators".into())),
    }
}

/// Abelianization for `Γ = ℤ[λ, λ⁻¹]`, symbolic and only for quadratic `λ`.
pub fn ring_abelianization(minpoly: &[i64]) -> Result<String> {
    if minpoly.len() != 3 {
        return Err(Error::UnsupportedSpec(format!(
            "ring case is covered only for quadratic l, got degree {}",
            minpoly.len().saturating_sub(1)
        )));
    }
    Ok("(Z[l,l^-1] (x) Z_2) + H_2(Z[l,l^-1])".to_string())
}

/// Which homology variant to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Full,
    /// The derived subgroup `D(IE(Γ))`: degree-1 exterior generators drop out.
    Derived,
}

/// Graded generators: degree `n ≥ 1` carries `C(d+1, n+1)` generators, exterior
/// when `n` is odd and symmetric when `n` is even.
fn generator_dims(d: u64, max_degree: u32, variant: Variant) -> Vec<(u32, u64, bool)> {
    (1..=max_degree)
        .filter(|&n| !(variant == Variant::Derived && n == 1))
        .map(|n| (n, binomial(d + 1, n as u64 + 1), n % 2 == 1))
        .filter(|&(_, dim, _)| dim > 0)
        .collect()
}

/// Dimensions of `H_n(IE(Γ), ℚ)` (or of the derived subgroup) for `n ≤ up_to`.
pub fn rational_homology(spec: &GammaSpec, up_to: u32, variant: Variant) -> Result<Vec<u64>> {
    let mut dims = vec![0u64; up_to as usize + 1];
    dims[0] = 1;
    let Some(d) = lattice_rank(spec) else {
        return Ok(dims);
    };
    for (deg, count, exterior) in generator_dims(d, up_to, variant) {
        // multiply the Poincaré series by (1 + t^deg)^count or 1/(1 - t^deg)^count
        for _ in 0..count {
            let deg = deg as usize;
            if exterior {
                for n in (deg..dims.len()).rev() {
                    dims[n] += dims[n - deg];
                }
            } else {
                for n in deg..dims.len() {
                    dims[n] += dims[n - deg];
                }
            }
        }
    }
    Ok(dims)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Supernatural {
    /// Every prime with infinite exponent.
    Universal,
    Primes(BTreeMap<u64, Exponent>),
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Supernatural::Universal => write!(f, "prod_p p^inf"),
            Supernatural::Primes(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(p, e)| match e {
                        Exponent::Infinite => format!("{p}^inf"),
                        Exponent::Finite(1) => format!("{p}"),
                        Exponent::Finite(n) => format!("{p}^{n}"),
                    })
                    .collect();
                write!(f, "{}", parts.join(" * "))
            }
        }
    }
}

pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// The supernatural number `∏ k_i` of a rule-based spec.
pub fn supernatural(spec: &GammaSpec) -> Result<Supernatural> {
    let rule = spec
        .rule()
        .ok_or_else(|| Error::UnsupportedSpec("supernatural numbers need a rational_rule spec".into()))?;
    let infinite = |ms: &[u64]| -> BTreeMap<u64, Exponent> {
        ms.iter().flat_map(|&m| factorize(m).into_keys()).map(|p| (p, Exponent::Infinite)).collect()
    };
    Ok(match rule {
        MultiplierRule::Factorial => Supernatural::Universal,
        MultiplierRule::Constant(m) => Supernatural::Primes(infinite(&[*m])),
        MultiplierRule::List { multipliers, repeat_last: false } => {
            Supernatural::Primes(infinite(multipliers))
        }
        MultiplierRule::List { multipliers, repeat_last: true } => {
            let (last, prefix) = multipliers.split_last().unwrap();
            let mut out = infinite(&[*last]);
            for &m in prefix {
                for (p, e) in factorize(m) {
                    let slot = out.entry(p).or_insert(Exponent::Finite(0));
                    if let Exponent::Finite(x) = slot {
                        *x += e;
                    }
                }
            }
            Supernatural::Primes(out)
        }
    })
}

/// Do the two generator families span the same subgroup of their common `Γ`?
pub fn group_equal(a: &[GammaElement], b: &[GammaElement]) -> Result<bool> {
    same_subgroup(a, b)
}

/// Every invariant in one table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub spec_summary: String,
    pub homology: BTreeMap<u32, AbelianGroupDescriptor>,
    pub k0: AbelianGroupDescriptor,
    pub k1: AbelianGroupDescriptor,
    pub abelianization: AbelianGroupDescriptor,
    pub rational_homology: BTreeMap<u32, u64>,
    pub derived_rational_homology: BTreeMap<u32, u64>,
    pub supernatural: Option<Supernatural>,
    pub notes: Vec<String>,
}

/// Degrees reported for rational homology.
pub const REPORT_DEGREES: u32 = 6;

pub fn invariant_report(spec: &GammaSpec) -> Result<InvariantReport> {
    let top = match lattice_rank(spec) {
        Some(d) => d as u32 + 1,
        None => 1,
    };
    let mut homology = BTreeMap::new();
    for n in 0..=top {
        homology.insert(n, groupoid_homology(spec, n)?);
    }
    let (k0, k1) = k_groups(spec)?;
    let to_map = |v: Vec<u64>| v.into_iter().enumerate().map(|(i, x)| (i as u32, x)).collect();
    let mut notes = Vec::new();
    if lattice_rank(spec) == Some(1) {
        notes.push(
            "K1 of rank 1 follows the homology formula; the rotation algebra has K1 of rank 2"
                .to_string(),
        );
    }
    Ok(InvariantReport {
        spec_summary: spec.summary(),
        homology,
        k0,
        k1,
        abelianization: abelianization(spec)?,
        rational_homology: to_map(rational_homology(spec, REPORT_DEGREES, Variant::Full)?),
        derived_rational_homology: to_map(rational_homology(
            spec,
            REPORT_DEGREES,
            Variant::Derived,
        )?),
        supernatural: if spec.is_rational() { Some(supernatural(spec)?) } else { None },
        notes,
    })
}

impl InvariantReport {
    /// Plain-text table, one invariant per line.
    pub fn table(&self) -> String {
        let mut s = format!("group: {}\n", self.spec_summary);
        for (n, h) in &self.homology {
            s.push_str(&format!("H{n} = {h}\n"));
        }
        s.push_str(&format!("K0 = {}\nK1 = {}\n", self.k0, self.k1));
        s.push_str(&format!("IE_ab = {}\n", self.abelianization));
        let dims = |m: &BTreeMap<u32, u64>| {
            m.values().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
        };
        s.push_str(&format!("dim H_*(IE, Q) = [{}]\n", dims(&self.rational_homology)));
        s.push_str(&format!("dim H_*(D(IE), Q) = [{}]\n", dims(&self.derived_rational_homology)));
        if let Some(sn) = &self.supernatural {
            s.push_str(&format!("supernatural = {sn}\n"));
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}
