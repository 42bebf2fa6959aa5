//! Cayley balls, relation checks and dynamical witnesses at desk scale.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gamma::{GammaElement, GammaSpec};
use crate::iet::Iet;
use crate::subshift::{config_value, Configuration, SubshiftContext};

pub const DEFAULT_MAX_RADIUS: u32 = 8;
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

/// A word `g_{i₁}^{e₁} ⋯ g_{iₙ}^{eₙ}`, evaluated left to right as `f₁ ∘ ⋯ ∘ fₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    pub letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn evaluate(&self, generators: &[Iet]) -> Result<Iet> {
        let spec = generators
            .first()
            .map(|g| g.spec().clone())
            .ok_or_else(|| Error::Precondition("no generators".into()))?;
        let mut acc = Iet::identity(&spec);
        for &(g, e) in &self.letters {
            let f = generators
                .get(g)
                .ok_or_else(|| Error::IndexError(format!("generator {g} of {}", generators.len())))?;
            let step = match e {
                1 => f.clone(),
                -1 => f.inverse()?,
                _ => return Err(Error::Precondition(format!("exponent {e} is not +1 or -1"))),
            };
            acc = acc.compose(&step)?;
        }
        Ok(acc)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| if e == 1 { format!("g{g}") } else { format!("g{g}^-1") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallLimits {
    pub max_radius: u32,
    pub max_elements: usize,
}

impl Default for BallLimits {
    fn default() -> Self {
        BallLimits { max_radius: DEFAULT_MAX_RADIUS, max_elements: DEFAULT_MAX_ELEMENTS }
    }
}

#[derive(Debug, Clone)]
pub struct BallReport {
    pub radius: u32,
    pub element_count: usize,
    /// `growth[r]` is the size of the ball of radius `r`.
    pub growth: Vec<usize>,
    /// Elements in discovery order, each with its first (shortest) word.
    pub elements: Vec<(Iet, Word)>,
}

impl BallReport {
    /// The ball stopped growing before the requested radius.
    pub fn saturated(&self) -> bool {
        self.growth.len() >= 2 && self.growth[self.growth.len() - 1] == self.growth[self.growth.len() - 2]
    }

    pub fn contains(&self, f: &Iet) -> bool {
        self.elements.iter().any(|(g, _)| g == f)
    }
}

/// Breadth-first search over canonical forms. Letters are tried generator
/// ascending, `+1` before `-1`; frontiers are expanded in parallel and merged in
/// that order, so the report is the sequential one.
pub fn cayley_ball(
    spec: &GammaSpec,
    generators: &[Iet],
    radius: u32,
    limits: &BallLimits,
) -> Result<BallReport> {
    if radius > limits.max_radius {
        return Err(Error::BallCapExceeded(format!("radius {radius} > {}", limits.max_radius)));
    }
    if generators.iter().any(|g| g.spec() != spec) {
        return Err(Error::SpecMismatch);
    }
    let mut letters: Vec<((usize, i8), Iet)> = Vec::with_capacity(2 * generators.len());
    for (i, g) in generators.iter().enumerate() {
        letters.push(((i, 1), g.clone()));
        letters.push(((i, -1), g.inverse()?));
    }
    let id = Iet::identity(spec);
    let mut seen: HashMap<Iet, usize> = HashMap::new();
    seen.insert(id.clone(), 0);
    let mut elements = vec![(id, Word::default())];
    let mut frontier = vec![0usize];
    let mut growth = vec![1usize];
    for _ in 0..radius {
        if frontier.is_empty() {
            growth.push(elements.len());
            continue;
        }
        let products: Vec<Vec<Iet>> = frontier
            .par_iter()
            .map(|&idx| {
                let base = &elements[idx].0;
                letters.iter().map(|(_, l)| base.compose(l)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (&idx, row) in frontier.iter().zip(products) {
            for (((g, e), _), f) in letters.iter().zip(row) {
                if seen.contains_key(&f) {
                    continue;
                }
                let mut w = elements[idx].1.clone();
                w.letters.push((*g, *e));
                seen.insert(f.clone(), elements.len());
                next.push(elements.len());
                elements.push((f, w));
                if elements.len() > limits.max_elements {
                    return Err(Error::BallCapExceeded(format!(
                        "more than {} elements",
                        limits.max_elements
                    )));
                }
            }
        }
        frontier = next;
        growth.push(elements.len());
    }
    Ok(BallReport { radius, element_count: elements.len(), growth, elements })
}

pub fn verify_relation(generators: &[Iet], w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Ok(true);
    }
    Ok(w.evaluate(generators)?.is_identity())
}

/// The ball of radius `depth` in `Γ/ℤ` over [`GammaSpec::quotient_generators`],
/// in deterministic breadth-first order (representatives in `[0, 1)`).
pub fn quotient_ball(spec: &GammaSpec, depth: u32, max_level: u32, limit: usize) -> Result<Vec<Vec<GammaElement>>> {
    let gens = spec.quotient_generators(max_level)?;
    let zero = spec.zero();
    let mut seen: HashSet<GammaElement> = HashSet::new();
    seen.insert(zero.clone());
    let mut shells = vec![vec![zero]];
    let mut total = 1usize;
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in shells.last().unwrap() {
            for g in &gens {
                for y in [x.add(g)?, x.sub(g)?] {
                    let y = y.frac()?;
                    if seen.insert(y.clone()) {
                        next.push(y);
                        total += 1;
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        shells.push(next);
        if total > limit {
            break;
        }
    }
    Ok(shells)
}

fn level_of(x: &GammaElement) -> u32 {
    x.level_num().map(|(l, _)| l).unwrap_or(0)
}

/// First `c` in the quotient ball with `x_t(c) ≠ x_{t'}(c)`.
pub fn separate_points(
    ctx: &SubshiftContext,
    t: &GammaElement,
    t2: &GammaElement,
    depth: u32,
) -> Result<GammaElement> {
    let (a, b) = (t.frac()?, t2.frac()?);
    if a == b {
        return Err(Error::Precondition("points coincide".into()));
    }
    let xa = Configuration::point(&a)?;
    let xb = Configuration::point(&b)?;
    let max_level = level_of(&a).max(level_of(&b)).max(level_of(ctx.lambda())) + 1;
    let spec = ctx.spec();
    let gens = spec.quotient_generators(max_level)?;
    let mut seen: HashSet<GammaElement> = HashSet::new();
    let mut frontier = vec![spec.zero()];
    seen.insert(spec.zero());
    for r in 0..=depth {
        for c in &frontier {
            if config_value(ctx, &xa, c)? != config_value(ctx, &xb, c)? {
                return Ok(c.clone());
            }
        }
        if r == depth || seen.len() > DEFAULT_MAX_ELEMENTS {
            break;
        }
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                for y in [x.add(g)?, x.sub(g)?] {
                    let y = y.frac()?;
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
        }
        frontier = next;
    }
    Err(Error::NotFound(depth))
}

#[derive(Debug, Clone)]
pub struct OrbitDensity {
    pub dense: bool,
    /// One orbit point per `ε`-cell, `None` where the search found nothing.
    pub witnesses: Vec<Option<GammaElement>>,
}

/// Index `j` with `j ε <= x < (j + 1) ε`.
fn cell_of(x: &GammaElement, eps: &BigRational) -> Result<u64> {
    let mut width = eps / BigRational::from_integer(BigInt::from(4));
    for _ in 0..64 {
        let (lo, hi) = x.enclose(&width)?;
        let a = (lo / eps).floor();
        if a == (hi / eps).floor() {
            return a.to_integer().to_u64().ok_or(Error::Overflow("cell index"));
        }
        width /= BigRational::from_integer(BigInt::from(16));
    }
    Err(Error::PrecisionExhausted { bits: 256 })
}

/// Whether the orbit ball of `t` meets every cell `[jε, (j+1)ε)` of `[0, 1)`.
/// For rule-based specs the quotient generators are `1/k(n)` for `n <= depth`.
pub fn orbit_density(spec: &GammaSpec, t: &GammaElement, epsilon: &BigRational, depth: u32) -> Result<OrbitDensity> {
    if !epsilon.is_positive() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let one = BigRational::from_integer(1.into());
    let cells = (one / epsilon).ceil().to_integer();
    let cells = cells.to_usize().filter(|&c| c <= 1 << 20).ok_or(Error::Overflow("cell count"))?;
    let mut witnesses: Vec<Option<GammaElement>> = vec![None; cells];
    let mut missing = cells;
    let shells = quotient_ball(spec, depth, depth, DEFAULT_MAX_ELEMENTS)?;
    'outer: for shell in shells {
        for c in shell {
            let p = t.add(&c)?.frac()?;
            let j = cell_of(&p, epsilon)? as usize;
            if j < cells && witnesses[j].is_none() {
                witnesses[j] = Some(p);
                missing -= 1;
                if missing == 0 {
                    break 'outer;
                }
            }
        }
    }
    Ok(OrbitDensity { dense: missing == 0, witnesses })
}
