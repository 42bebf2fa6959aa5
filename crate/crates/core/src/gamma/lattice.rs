//! Integer lattices spanned by coefficient vectors: Hermite normal form,
//! membership, and subgroup bases inside a fixed ambient `Γ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{GammaElement, GammaSpec};
use crate::error::{Error, Result};

/// Row-style Hermite normal form. Returns the nonzero rows, echelon ordered,
/// with positive pivots and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivot_row = 0;
    for col in 0..width {
        if pivot_row == m.len() {
            break;
        }
        // Euclid down the column until one nonzero entry remains at pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if !m[r][col].is_zero()
                    && best.is_none_or(|b| m[r][col].abs() < m[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                let pr = m[pivot_row].clone();
                for (x, p) in m[r].iter_mut().zip(&pr) {
                    *x -= &q * p;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        let pr = m[pivot_row].clone();
        for row in m.iter_mut().take(pivot_row) {
            let q = row[col].div_floor(&pr[col]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(&pr) {
                    *x -= &q * p;
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

/// Is `x` an integer combination of the HNF rows?
pub fn in_span(hnf: &[Vec<BigInt>], x: &[BigInt]) -> bool {
    let mut v = x.to_vec();
    for row in hnf {
        let Some(col) = row.iter().position(|c| !c.is_zero()) else { continue };
        if v[..col].iter().any(|c| !c.is_zero()) {
            return false;
        }
        let (q, r) = v[col].div_rem(&row[col]);
        if !r.is_zero() {
            return false;
        }
        for (a, b) in v.iter_mut().zip(row) {
            *a -= &q * b;
        }
    }
    v.iter().all(|c| c.is_zero())
}

/// Integer vectors for a batch of elements of one spec. Rule-based elements are
/// brought to a common level and become 1-vectors of numerators.
fn integer_vectors(spec: &GammaSpec, elems: &[&GammaElement]) -> Result<(Vec<Vec<BigInt>>, u32)> {
    for e in elems {
        if e.spec() != spec {
            return Err(Error::SpecMismatch);
        }
    }
    if spec.is_rational() {
        let level = elems.iter().map(|e| e.level_num().unwrap().0).max().unwrap_or(0);
        let kn = spec.level_denominator(level)?;
        let mut out = Vec::with_capacity(elems.len());
        for e in elems {
            let (l, n) = e.level_num().unwrap();
            let f = kn / spec.level_denominator(l)?;
            out.push(vec![BigInt::from(n) * f]);
        }
        Ok((out, level))
    } else {
        Ok((
            elems
                .iter()
                .map(|e| e.coeffs().unwrap().iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
            0,
        ))
    }
}

/// Decides whether `x` lies in the ℤ-span of `target`.
pub fn lattice_membership(x: &GammaElement, target: &[GammaElement]) -> Result<bool> {
    let spec = x.spec().clone();
    let mut all: Vec<&GammaElement> = vec![x];
    all.extend(target.iter());
    let (vecs, _) = integer_vectors(&spec, &all)?;
    let hnf = hermite_normal_form(&vecs[1..]);
    if target.is_empty() {
        return Ok(x.is_zero());
    }
    Ok(in_span(&hnf, &vecs[0]))
}

/// A ℤ-basis (in Hermite normal form) of the subgroup generated by `elems`.
pub fn subgroup_basis(spec: &GammaSpec, elems: &[GammaElement]) -> Result<Vec<GammaElement>> {
    let refs: Vec<&GammaElement> = elems.iter().collect();
    let (vecs, level) = integer_vectors(spec, &refs)?;
    let hnf = hermite_normal_form(&vecs);
    hnf.into_iter()
        .map(|row| {
            if spec.is_rational() {
                let num = row[0].to_i128().ok_or(Error::Overflow("basis"))?;
                spec.at_level(level, num)
            } else {
                let c = row
                    .iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow("basis")))
                    .collect::<Result<Vec<_>>>()?;
                spec.from_coeffs(c)
            }
        })
        .collect()
}

/// Do two finite families generate the same subgroup of the shared ambient `Γ`?
pub fn same_subgroup(a: &[GammaElement], b: &[GammaElement]) -> Result<bool> {
    let spec = match a.first().or(b.first()) {
        Some(e) => e.spec().clone(),
        None => return Ok(true),
    };
    if a.iter().chain(b).any(|e| e.spec() != &spec) {
        return Err(Error::NoCommonAmbient);
    }
    for x in a {
        if !lattice_membership(x, b)? {
            return Ok(false);
        }
    }
    for x in b {
        if !lattice_membership(x, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}
