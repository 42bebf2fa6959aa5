//! Real algebraic generators: a minimal polynomial plus an isolating interval.
//!
//! The root is tracked as a dyadic enclosure `[m/2^bits, (m+1)/2^bits]` with
//! `m = floor(root * 2^bits)`, refined by bisection on the polynomial's sign.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Bits of precision computed once at construction.
pub(crate) const BASE_BITS: u32 = 128;

/// Largest denominator accepted for isolating-interval endpoints.
pub const MAX_INTERVAL_DENOMINATOR: i64 = 1_000_000;

/// `root` lies in `[m / 2^bits, (m + 1) / 2^bits]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub m: BigInt,
    pub bits: u32,
}

impl Dyadic {
    pub fn lower(&self) -> BigRational {
        BigRational::new(self.m.clone(), BigInt::one() << self.bits)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(&self.m + 1, BigInt::one() << self.bits)
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraicGenerator {
    minpoly: Vec<BigInt>,
    lo: BigRational,
    hi: BigRational,
    sign_at_lo: i8,
    base: Dyadic,
}

impl PartialEq for AlgebraicGenerator {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && self.lo == other.lo && self.hi == other.hi
    }
}
impl Eq for AlgebraicGenerator {}

impl AlgebraicGenerator {
    /// Validates that `minpoly` has exactly one real root in `(lo, hi)`.
    pub fn new(minpoly: &[i64], lo: BigRational, hi: BigRational) -> Result<Self> {
        if minpoly.len() < 2 || *minpoly.last().unwrap() == 0 {
            return Err(Error::MalformedSpec(
                "minpoly needs degree >= 1 and a nonzero leading coefficient".into(),
            ));
        }
        if minpoly.len() == 2 {
            return Err(Error::MalformedSpec(
                "a linear minpoly has a rational root; irrational generators need degree >= 2"
                    .into(),
            ));
        }
        for end in [&lo, &hi] {
            if end.denom() > &BigInt::from(MAX_INTERVAL_DENOMINATOR) {
                return Err(Error::MalformedSpec(format!(
                    "interval endpoint {end} has denominator above {MAX_INTERVAL_DENOMINATOR}"
                )));
            }
        }
        if lo >= hi {
            return Err(Error::MalformedSpec("interval needs lo < hi".into()));
        }
        let poly: Vec<BigInt> = minpoly.iter().map(|&c| BigInt::from(c)).collect();
        let s_lo = sign_at_rational(&poly, &lo);
        let s_hi = sign_at_rational(&poly, &hi);
        if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
            // no sign change: either no root or an even number of them
            let found = sturm_count(&poly, &lo, &hi);
            return Err(Error::RootCountError { found: if found == 1 { 0 } else { found } });
        }
        let found = sturm_count(&poly, &lo, &hi);
        if found != 1 {
            return Err(Error::RootCountError { found });
        }
        let mut gen = AlgebraicGenerator {
            minpoly: poly,
            lo,
            hi,
            sign_at_lo: s_lo,
            base: Dyadic { m: BigInt::zero(), bits: 0 },
        };
        gen.base = gen.search(BASE_BITS, None);
        Ok(gen)
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Dyadic enclosure of the root at `bits` bits.
    pub fn enclosure(&self, bits: u32) -> Dyadic {
        if bits <= self.base.bits {
            let drop = self.base.bits - bits;
            Dyadic { m: &self.base.m >> drop, bits }
        } else {
            self.search(bits, Some(&self.base))
        }
    }

    /// Is `j / 2^bits <= root`?
    fn at_or_below_root(&self, j: &BigInt, bits: u32) -> bool {
        let scale = BigInt::one() << bits;
        // compare j/2^bits with the isolating interval first
        if j * self.lo.denom() <= self.lo.numer() * &scale {
            return true;
        }
        if j * self.hi.denom() >= self.hi.numer() * &scale {
            return false;
        }
        let s = sign_at_dyadic(&self.minpoly, j, bits);
        s == 0 || s == self.sign_at_lo
    }

    /// Largest `j` with `j / 2^bits <= root`, by binary search.
    fn search(&self, bits: u32, from: Option<&Dyadic>) -> Dyadic {
        let (mut lo_j, mut hi_j) = match from {
            Some(d) => {
                let shift = bits - d.bits;
                (&d.m << shift, (&d.m + 1) << shift)
            }
            None => {
                let scale = BigInt::one() << bits;
                let lo_j = (self.lo.numer() * &scale).div_floor(self.lo.denom());
                let hi_j = (self.hi.numer() * &scale).div_ceil(self.hi.denom());
                (lo_j, hi_j + 1)
            }
        };
        // invariant: at_or_below(lo_j) && !at_or_below(hi_j)
        while &hi_j - &lo_j > BigInt::one() {
            let mid: BigInt = (&lo_j + &hi_j) >> 1;
            if self.at_or_below_root(&mid, bits) {
                lo_j = mid;
            } else {
                hi_j = mid;
            }
        }
        Dyadic { m: lo_j, bits }
    }
}

/// Sign of `p(a/b)` computed as the sign of `sum c_i a^i b^(n-i)` with `b > 0`.
pub(crate) fn sign_at_rational(poly: &[BigInt], x: &BigRational) -> i8 {
    let n = poly.len() - 1;
    let (a, b) = (x.numer(), x.denom());
    let mut acc = poly[n].clone();
    let mut bpow = BigInt::one();
    for i in (0..n).rev() {
        bpow *= b;
        acc = acc * a + &poly[i] * &bpow;
    }
    sign_of_int(&acc)
}

fn sign_at_dyadic(poly: &[BigInt], j: &BigInt, bits: u32) -> i8 {
    let n = poly.len() - 1;
    let mut acc = poly[n].clone();
    for (step, c) in poly[..n].iter().rev().enumerate() {
        acc = acc * j + (c << (bits as usize * (step + 1)));
    }
    sign_of_int(&acc)
}

fn sign_of_int(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    if d.is_empty() {
        d.push(BigRational::zero());
    }
    d
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let q = r.last().unwrap() / &lead;
        for i in 0..=db {
            let t = &q * &b[i];
            r[dr - db + i] -= t;
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    if r.is_empty() {
        r.push(BigRational::zero());
    }
    r
}

fn is_zero_poly(p: &QPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn eval_q(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn variations(chain: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = eval_q(p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(lo, hi]` by Sturm's theorem.
pub(crate) fn sturm_count(poly: &[BigInt], lo: &BigRational, hi: &BigRational) -> usize {
    let p0: QPoly = poly
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut chain = vec![p0.clone(), derivative(&p0)];
    loop {
        let n = chain.len();
        if is_zero_poly(&chain[n - 1]) || chain[n - 1].len() == 1 {
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if is_zero_poly(&r) {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain.retain(|p| !is_zero_poly(p));
    variations(&chain, lo).saturating_sub(variations(&chain, hi))
}
