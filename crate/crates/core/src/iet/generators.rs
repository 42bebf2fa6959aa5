use super::Iet;
use crate::error::{Checked, Error, Result, Warning};
use crate::gamma::{GammaElement, GammaSpec};

/// The interval `[a, b)` together with the translation `c` that moves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaBData {
    pub a: GammaElement,
    pub b: GammaElement,
    pub c: GammaElement,
}

impl GammaBData {
    pub fn new(a: GammaElement, b: GammaElement, c: GammaElement) -> Self {
        GammaBData { a, b, c }
    }

    fn length(&self) -> Result<GammaElement> {
        self.b.sub(&self.a)
    }
}

/// The involution exchanging `[a, b)` and `[a + c, b + c)` (read mod 1).
pub fn gamma_b(spec: &GammaSpec, data: &GammaBData) -> Result<Iet> {
    let len = data.length()?;
    let image = data.a.add(&data.c)?;
    Iet::from_arcs(
        spec,
        &[(data.a.clone(), len.clone(), data.c.clone()), (image, len, data.c.neg())],
    )
}

/// The 3-cycle on `X = [a₁, b₁)`, `Y = X + c₁` and `Z = Y + c₂`, oriented
/// `X → Z → Y → X` so that it equals `gamma_b(B₁).commutator(gamma_b(B₂))`.
pub fn gamma_b1b2(spec: &GammaSpec, b1: &GammaBData, b2: &GammaBData) -> Result<Iet> {
    let len = b1.length()?;
    let y = b1.a.add(&b1.c)?;
    if y.frac()? != b2.a.frac()? || b2.length()? != len {
        return Err(Error::IntervalMismatch(format!(
            "second interval [{}, {}) is not the image [{}, {}) of the first",
            b2.a,
            b2.b,
            y,
            b1.b.add(&b1.c)?
        )));
    }
    let z = b2.a.add(&b2.c)?;
    Iet::cycle(spec, &[b1.a.clone(), z, b2.a.clone()], &len)
}

/// Checks `2/5 < λ₁ < ... < λ_d < 1/2` (through `10·λ` against 4 and 5) and
/// returns the `λ`s.
fn ordered_lambdas(spec: &GammaSpec) -> Result<Vec<GammaElement>> {
    let d = spec.rank();
    if spec.is_rational() || d == 0 {
        return Err(Error::GeneratorRangeError("spec has no irrational generators".into()));
    }
    let lambdas: Vec<GammaElement> = (1..=d).map(|i| spec.lambda(i)).collect::<Result<_>>()?;
    let four = spec.integer(4);
    let five = spec.integer(5);
    if !four.lt(&lambdas[0].int_scale(10)?)? {
        return Err(Error::GeneratorRangeError("l1 <= 2/5".into()));
    }
    for (i, w) in lambdas.windows(2).enumerate() {
        if !w[0].lt(&w[1])? {
            return Err(Error::GeneratorRangeError(format!("l{} >= l{}", i + 1, i + 2)));
        }
    }
    if !lambdas[d - 1].int_scale(10)?.lt(&five)? {
        return Err(Error::GeneratorRangeError(format!("l{d} >= 1/2")));
    }
    Ok(lambdas)
}

fn lambda_index(lambdas: &[GammaElement], i: usize) -> Result<&GammaElement> {
    if i == 0 || i > lambdas.len() {
        return Err(Error::IndexError(format!("generator {i} of {}", lambdas.len())));
    }
    Ok(&lambdas[i - 1])
}

/// `σ_i`: cycles the three arcs of length `1 − 2λ_i` starting at
/// `λ₁`, `λ₁ + λ_i` and `λ₁ + 2λ_i − 1`.
pub fn sigma(spec: &GammaSpec, i: usize) -> Result<Iet> {
    let lambdas = ordered_lambdas(spec)?;
    let li = lambda_index(&lambdas, i)?;
    let l1 = &lambdas[0];
    let one = spec.one();
    let len = one.sub(&li.int_scale(2)?)?;
    let starts = [l1.clone(), l1.add(li)?, l1.add(&li.int_scale(2)?)?.sub(&one)?];
    Iet::cycle(spec, &starts, &len)
}

/// `σ̂_i`: cycles the three arcs of length `1 − 2λ_i` starting at `0`, `λ_i`, `2λ_i`.
pub fn sigma_hat(spec: &GammaSpec, i: usize) -> Result<Iet> {
    let lambdas = ordered_lambdas(spec)?;
    let li = lambda_index(&lambdas, i)?;
    let len = spec.one().sub(&li.int_scale(2)?)?;
    let starts = [spec.zero(), li.clone(), li.int_scale(2)?];
    Iet::cycle(spec, &starts, &len)
}

/// `r_{k,a}`: the 3-cycle of the `1/k`-arcs starting at `a`, `a + 1/k`, `a + 2/k`,
/// with `k` the rational denominator of the spec.
pub fn r_ka(spec: &GammaSpec, a: &GammaElement) -> Result<Checked<Iet>> {
    let k = spec
        .denominator()
        .ok_or_else(|| Error::UnsupportedSpec("r_ka needs a finitely generated spec".into()))?;
    if k < 3 {
        return Err(Error::KTooSmall { k });
    }
    let step = spec.rational(1, k as i64)?;
    let starts = [a.clone(), a.add(&step)?, a.add(&step.int_scale(2)?)?];
    let value = Iet::cycle(spec, &starts, &step)?;
    let warnings = if k <= 9 { vec![Warning::KOutsideHypothesis { k }] } else { Vec::new() };
    Ok(Checked { value, warnings })
}

/// `σ₁, σ̂₁, ..., σ_d, σ̂_d` followed by `r_{k,a}` for
/// `a ∈ {λ₁ − 1/k, λ₁ − 2/k, 1 − 2/k, 1 − 1/k}`: `2d + 4` elements.
pub fn generating_set_k(spec: &GammaSpec) -> Result<Checked<Vec<Iet>>> {
    let lambdas = ordered_lambdas(spec)?;
    let k = spec.denominator().unwrap();
    let mut out = Vec::with_capacity(2 * lambdas.len() + 4);
    for i in 1..=lambdas.len() {
        out.push(sigma(spec, i)?);
        out.push(sigma_hat(spec, i)?);
    }
    if k < 3 {
        return Err(Error::KTooSmall { k });
    }
    let step = spec.rational(1, k as i64)?;
    let l1 = &lambdas[0];
    let one = spec.one();
    let offsets = [
        l1.sub(&step)?,
        l1.sub(&step.int_scale(2)?)?,
        one.sub(&step.int_scale(2)?)?,
        one.sub(&step)?,
    ];
    let mut warnings = Vec::new();
    for a in &offsets {
        let r = r_ka(spec, a)?;
        out.push(r.value);
        if warnings.is_empty() {
            warnings = r.warnings;
        }
    }
    Ok(Checked { value: out, warnings })
}
