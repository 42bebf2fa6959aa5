//! Fixtures shared by the benchmarks.

use iexg_core::builtin::{rank2_spec, sqrt2_spec};
use iexg_core::iet::random::random_iet;
use iexg_core::iet::{sigma, sigma_hat};
use iexg_core::{GammaElement, GammaSpec, Iet};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// `count` random elements with up to `pieces` pieces, from a fixed seed.
pub fn random_elements(spec: &GammaSpec, pieces: usize, count: usize) -> Vec<Iet> {
    let mut rng = StdRng::seed_from_u64(pieces as u64);
    (0..count).map(|_| random_iet(spec, pieces, &mut rng).unwrap()).collect()
}

/// `σ₁, σ̂₁` over the rank one lattice.
pub fn sigma_pair() -> (GammaSpec, Vec<Iet>) {
    let s = sqrt2_spec(1);
    let g = vec![sigma(&s, 1).unwrap(), sigma_hat(&s, 1).unwrap()];
    (s, g)
}

/// `σ₁, σ̂₁, σ₂, σ̂₂` over the rank two lattice.
pub fn sigma_quad() -> (GammaSpec, Vec<Iet>) {
    let s = rank2_spec(1);
    let g = (1..=2).flat_map(|i| [sigma(&s, i).unwrap(), sigma_hat(&s, i).unwrap()]).collect();
    (s, g)
}

/// An element whose sign needs `bits` of precision: `λ₁ - p/q` for a
/// convergent `p/q` of `√2 - 1`.
pub fn near_zero(bits: u32) -> GammaElement {
    let s = sqrt2_spec(1);
    // Pell numbers: p/q -> √2 - 1 with error about 1/q²
    let (mut p, mut q): (i64, i64) = (0, 1);
    while (q as f64).log2() * 2.0 < bits as f64 && q < i64::MAX / 8 {
        let (np, nq) = (q, 2 * q + p);
        p = np;
        q = nq;
    }
    s.lambda(1).unwrap().int_scale(q).unwrap().sub(&s.integer(p)).unwrap()
}
