//! The verification suite: every concretely checkable claim, re-derived by exact computation.
//!
//! Each criterion records the individual checks it ran. Random inputs come from
//! fixed seeds, so reruns are identical.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::builtin::{dependent_spec, dyadic_spec, factorial_spec, rank2_spec, rank3_spec, sqrt2_spec};
use crate::circle::CircleSet;
use crate::error::{Error, Result};
use crate::explorer::{cayley_ball, orbit_density, separate_points, verify_relation, BallLimits, Word};
use crate::gamma::{sign_of, GammaElement, GammaSpec, MultiplierRule, DEFAULT_PRECISION_BITS};
use crate::iet::random::{random_iet, random_point, random_word};
use crate::iet::{
    embedding_check, gamma_b, gamma_b1b2, generating_set_k, r_ka, sigma, sigma_hat, sigma_ij,
    sign_hom, GammaBData, Iet,
};
use crate::invariants::{
    abelianization, binomial, group_equal, groupoid_homology, k_groups, supernatural,
    AbelianGroupDescriptor, Exponent, Supernatural,
};
use crate::subshift::{
    cylinder_intervals, enumerate_patches, Diagnosis, Patch, SubshiftContext, T_pi_as_iet,
};

pub const CRITERIA: [(u32, &str); 11] = [
    (1, "cylinder tables"),
    (2, "patch classification"),
    (3, "generator realization"),
    (4, "finite cyclic rational part"),
    (5, "rational presentation"),
    (6, "sign homomorphism"),
    (7, "group laws"),
    (8, "commutator identity"),
    (9, "dynamics witnesses"),
    (10, "invariant tables"),
    (11, "soundness tripwire"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// One line per check, failures first.
    pub details: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let first = self.details.first().map(String::as_str).unwrap_or("");
        format!("criterion {:>2} [{status}] {}: {first}", self.id, self.name)
    }
}

#[derive(Default)]
struct Log {
    failures: Vec<String>,
    passes: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if ok {
            self.passes.push(what.into());
        } else {
            self.failures.push(format!("failed: {}", what.into()));
        }
    }

    fn finish(self, id: u32) -> CriterionResult {
        let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("?");
        let passed = self.failures.is_empty();
        let mut details = self.failures;
        if passed {
            details.push(format!("{} checks passed", self.passes.len()));
        } else {
            details.push(format!("{} other checks passed", self.passes.len()));
        }
        details.extend(self.passes);
        CriterionResult { id, name, passed, details }
    }
}

fn lam(s: &GammaSpec, i: usize) -> Result<GammaElement> {
    s.lambda(i)
}

/// `(0, e, -e)`.
fn triple(e: &GammaElement) -> Vec<GammaElement> {
    vec![e.spec().zero(), e.clone(), e.neg()]
}

fn label(v: &[u8]) -> String {
    v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
}

fn c1(log: &mut Log) -> Result<()> {
    let s = rank2_spec(1);
    let ctx = SubshiftContext::new(&s)?;
    let one = s.one();
    let l1 = lam(&s, 1)?;
    for i in 1..=2 {
        let li = lam(&s, i)?;
        let d = triple(&li);
        let cyl = |v: &[u8]| cylinder_intervals(&ctx, &Patch::labeled(&d, v)?);
        let expect = [
            ([1u8, 0, 0], CircleSet::interval(&s.zero(), &l1)?),
            ([0, 1, 0], CircleSet::interval(&l1.add(&li)?, &one.add(&l1)?.sub(&li)?)?),
            ([0, 1, 1], CircleSet::interval(&one.sub(&li)?, &li.add(&l1)?)?),
            ([0, 0, 1], CircleSet::interval(&li, &one.sub(&li)?)?),
        ];
        for (v, want) in &expect {
            let got = cyl(v)?;
            log.check(got == *want && !want.is_empty(), format!("i={i}: W({}) = {:?}", label(v), want.intervals()));
        }
        for v in [[1u8, 1, 0], [1, 0, 1], [1, 1, 1], [0, 0, 0]] {
            let got = cyl(&v)?;
            let msg = if got.is_empty() {
                format!("i={i}: W({}) is empty", label(&v))
            } else {
                format!("i={i}: W({}) is empty, computed {:?}", label(&v), got.intervals())
            };
            log.check(got.is_empty(), msg);
        }
        let w = crate::subshift::is_T_well_defined(&ctx, &Patch::labeled(&d, &[0, 1, 1])?)?;
        log.check(
            matches!(w.diagnosis, Diagnosis::Overlap { .. }),
            format!("i={i}: translates of W(0,1,1) overlap ({})", w.message),
        );
    }
    Ok(())
}

fn c2(log: &mut Log) -> Result<()> {
    let s = rank2_spec(1);
    let ctx = SubshiftContext::new(&s)?;
    for i in 1..=2 {
        let all = enumerate_patches(&ctx, &triple(&lam(&s, i)?))?;
        let good: Vec<Vec<u8>> =
            all.iter().filter(|(_, w)| w.is_well_defined()).map(|(p, _)| p.values()).collect();
        log.check(
            good == vec![vec![0, 0, 1], vec![0, 1, 0]],
            format!("i={i}: well-defined patches {good:?} are exactly (0,0,1), (0,1,0)"),
        );
    }
    Ok(())
}

fn c3(log: &mut Log) -> Result<()> {
    let s = rank2_spec(1);
    let ctx = SubshiftContext::new(&s)?;
    for i in 1..=2 {
        let d = triple(&lam(&s, i)?);
        let t010 = T_pi_as_iet(&ctx, &Patch::labeled(&d, &[0, 1, 0])?, None)?;
        let t001 = T_pi_as_iet(&ctx, &Patch::labeled(&d, &[0, 0, 1])?, None)?;
        let (si, hi) = (sigma(&s, i)?, sigma_hat(&s, i)?);
        let same_set = (t010 == si && t001 == hi) || (t010 == hi && t001 == si);
        let which = if t010 == si { "T(0,1,0) = sigma, T(0,0,1) = sigma_hat" } else { "T(0,1,0) = sigma_hat" };
        log.check(same_set, format!("i={i}: {{T(0,1,0), T(0,0,1)}} = {{sigma_{i}, sigma_hat_{i}}} ({which})"));
        for (name, f) in [("sigma", &si), ("sigma_hat", &hi), ("T(0,1,0)", &t010), ("T(0,0,1)", &t001)] {
            log.check(f.order(10)? == Some(3), format!("i={i}: {name} has order 3"));
        }
    }
    Ok(())
}

fn c4(log: &mut Log) -> Result<()> {
    let s = rank2_spec(11);
    let ctx = SubshiftContext::new(&s)?;
    let e = s.rational(1, 11)?;
    let all = enumerate_patches(&ctx, &triple(&e))?;
    let with = |pred: &dyn Fn(&Diagnosis) -> bool| -> Vec<Vec<u8>> {
        all.iter().filter(|(_, w)| pred(&w.diagnosis)).map(|(p, _)| p.values()).collect()
    };
    let empty = with(&|d| *d == Diagnosis::EmptyCylinder);
    let overlap = with(&|d| matches!(d, Diagnosis::Overlap { .. }));
    let good = with(&|d| *d == Diagnosis::WellDefined);
    log.check(empty == vec![vec![0, 1, 1], vec![1, 0, 0]], format!("empty cylinders {empty:?}"));
    log.check(overlap == vec![vec![0, 0, 0], vec![1, 1, 1]], format!("translate overlaps {overlap:?}"));
    log.check(good.len() == 4, format!("{} well-defined patches", good.len()));
    let l1 = lam(&s, 1)?;
    let one = s.one();
    let two = e.int_scale(2)?;
    let pairs = [
        ([0u8, 1, 0], one.sub(&two)?),
        ([1, 1, 0], one.sub(&e)?),
        ([1, 0, 1], l1.sub(&two)?),
        ([0, 0, 1], l1.sub(&e)?),
    ];
    let d = triple(&e);
    for (v, a) in &pairs {
        let t = T_pi_as_iet(&ctx, &Patch::labeled(&d, v)?, None)?;
        let r = r_ka(&s, a)?.value;
        log.check(t == r, format!("T({}) = r_(11, {a})", label(v)));
    }
    let gens = generating_set_k(&s)?;
    log.check(gens.value.len() == 2 * s.rank() + 4, format!("generating set has {} = 2d+4 elements", gens.value.len()));
    log.check(gens.warnings.is_empty(), "k = 11 lies inside the hypothesis k > 9");
    Ok(())
}

/// `k(1) = 2`, `k(2) = 6`, then 3 forever.
pub fn two_three_spec() -> GammaSpec {
    GammaSpec::rational_rule(MultiplierRule::List { multipliers: vec![2, 3], repeat_last: true })
        .expect("valid rule")
}

fn c5(log: &mut Log) -> Result<()> {
    let s = two_three_spec();
    let lhs = sigma_ij(&s, 1, 0, 1)?;
    let mut rhs = Iet::identity(&s);
    for m in 0..3 {
        rhs = rhs.compose(&sigma_ij(&s, 2, m, 3 + m)?)?;
    }
    log.check(lhs == rhs, "sigma^1_(0,1) = sigma^2_(0,3) sigma^2_(1,4) sigma^2_(2,5)");
    log.check(embedding_check(&s, 1, 0)?, "embedding_check(n=1, i=0)");
    let k2 = s.level_denominator(2)?;
    let gens: Vec<Iet> = (0..k2 - 1).map(|i| sigma_ij(&s, 2, i, i + 1)).collect::<Result<_>>()?;
    let n = gens.len();
    let mut rel_ok = true;
    for i in 0..n {
        rel_ok &= verify_relation(&gens, &Word::new(vec![(i, 1), (i, 1)]))?;
        if i + 1 < n {
            let braid = Word::new(vec![(i, 1), (i + 1, 1), (i, 1), (i + 1, -1), (i, -1), (i + 1, -1)]);
            rel_ok &= verify_relation(&gens, &braid)?;
        }
        for j in i + 2..n {
            rel_ok &= verify_relation(&gens, &Word::new(vec![(i, 1), (j, 1), (i, -1), (j, -1)]))?;
        }
    }
    log.check(rel_ok, format!("involution, braid and commutation relations among the {n} level-2 transpositions"));
    let limits = BallLimits { max_radius: 16, ..BallLimits::default() };
    let b3 = cayley_ball(&s, &gens[..3], 16, &limits)?;
    log.check(b3.element_count == 24 && b3.saturated(), format!("three transpositions: ball saturates at {} (4! = 24)", b3.element_count));
    let b5 = cayley_ball(&s, &gens, 16, &limits)?;
    log.check(
        b5.element_count == 720 && b5.saturated(),
        format!("all five transpositions: ball saturates at {} (6! = 720), growth {:?}", b5.element_count, b5.growth),
    );
    Ok(())
}

fn c6(log: &mut Log) -> Result<()> {
    let s = dyadic_spec();
    let mut gens = Vec::new();
    for n in 1..=3u32 {
        let kn = s.level_denominator(n)?;
        for i in 0..kn - 1 {
            gens.push(((n, i), sigma_ij(&s, n, i, i + 1)?));
        }
    }
    let pool: Vec<Iet> = gens.iter().map(|(_, g)| g.clone()).collect();
    let mut rng = StdRng::seed_from_u64(6);
    let mut bad = 0;
    let mut first_bad = None;
    for trial in 0..100 {
        let (_, f) = random_word(&s, &pool, rng.gen_range(0..=20), &mut rng)?;
        let (_, g) = random_word(&s, &pool, rng.gen_range(0..=20), &mut rng)?;
        let sf = sign_hom(&s, &f)?.value;
        let sg = sign_hom(&s, &g)?.value;
        let sfg = sign_hom(&s, &f.compose(&g)?)?.value;
        if sfg != (sf + sg) % 2 {
            bad += 1;
            first_bad.get_or_insert(trial);
        }
    }
    let first = first_bad.map(|t| format!(", first at pair {t}")).unwrap_or_default();
    log.check(
        bad == 0,
        format!("sign(fg) = sign(f) + sign(g) on 100 random word pairs ({bad} violations{first})"),
    );
    for _ in 0..10 {
        let ((n, i), g) = &gens[rng.gen_range(0..gens.len())];
        let v = sign_hom(&s, g)?.value;
        log.check(v == 1, format!("sign(sigma^{n}_({i},{})) = {v}", i + 1));
    }
    Ok(())
}

fn c7(log: &mut Log, extra: Option<&GammaSpec>) -> Result<()> {
    let mut specs = vec![sqrt2_spec(1), rank2_spec(1), dyadic_spec(), rank2_spec(11)];
    if let Some(e) = extra {
        specs.push(e.clone());
    }
    let mut rng = StdRng::seed_from_u64(7);
    let (mut assoc, mut inv, mut norm) = (true, true, true);
    for trial in 0..500 {
        let s = &specs[trial % specs.len()];
        let f = random_iet(s, 8, &mut rng)?;
        let g = random_iet(s, 8, &mut rng)?;
        let h = random_iet(s, 8, &mut rng)?;
        assoc &= f.compose(&g)?.compose(&h)? == f.compose(&g.compose(&h)?)?;
        let fi = f.inverse()?;
        inv &= f.compose(&fi)?.is_identity() && fi.compose(&f)?.is_identity() && fi.inverse()? == f;
        let fg = f.compose(&g)?;
        norm &= f.normalized()? == f && fg.normalized()? == fg;
    }
    log.check(assoc, "associativity on 500 random triples");
    log.check(inv, "inverse laws on 500 random elements");
    log.check(norm, "normalization idempotence on 500 random elements and products");
    let mut pointwise = true;
    for trial in 0..100 {
        let s = &specs[trial % specs.len()];
        let f = random_iet(s, 8, &mut rng)?;
        let g = random_iet(s, 8, &mut rng)?;
        let t = random_point(s, &mut rng)?;
        pointwise &= f.compose(&g)?.apply(&t)? == f.apply(&g.apply(&t)?)?;
    }
    log.check(pointwise, "apply(f o g, t) = f(g(t)) at 100 random points");
    Ok(())
}

/// Three pairwise disjoint arcs of a common length, in random cyclic roles.
fn disjoint_triple<R: Rng>(s: &GammaSpec, rng: &mut R) -> Result<(GammaBData, GammaBData)> {
    loop {
        let pts: Vec<GammaElement> = (0..3).map(|_| random_point(s, rng)).collect::<Result<_>>()?;
        if pts[0] == pts[1] || pts[1] == pts[2] || pts[0] == pts[2] {
            continue;
        }
        let mut sorted: Vec<(GammaElement, ())> = pts.iter().map(|p| (p.clone(), ())).collect();
        crate::circle::sort_by_start(&mut sorted)?;
        let sp: Vec<GammaElement> = sorted.into_iter().map(|(p, _)| p).collect();
        let gaps = [sp[1].sub(&sp[0])?, sp[2].sub(&sp[1])?, s.one().add(&sp[0])?.sub(&sp[2])?];
        let mut len = gaps[0].clone();
        for g in &gaps[1..] {
            if g.lt(&len)? {
                len = g.clone();
            }
        }
        let (x, y, z) = (&pts[0], &pts[1], &pts[2]);
        let b1 = GammaBData::new(x.clone(), x.add(&len)?, y.sub(x)?);
        let b2 = GammaBData::new(y.clone(), y.add(&len)?, z.sub(y)?);
        return Ok((b1, b2));
    }
}

fn c8(log: &mut Log) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(8);
    for (name, s) in [("Z[1/8]", dyadic_spec()), ("Z + l1 Z", sqrt2_spec(1))] {
        let mut ok = 0;
        for _ in 0..20 {
            let (b1, b2) = disjoint_triple(&s, &mut rng)?;
            let lhs = gamma_b1b2(&s, &b1, &b2)?;
            let rhs = gamma_b(&s, &b1)?.commutator(&gamma_b(&s, &b2)?)?;
            ok += (lhs == rhs && lhs.order(5)? == Some(3)) as u32;
        }
        log.check(ok == 20, format!("{name}: gamma_(B1,B2) = [gamma_B1, gamma_B2] on {ok}/20 random triples"));
    }
    Ok(())
}

fn c9(log: &mut Log) -> Result<()> {
    let s = sqrt2_spec(1);
    let ctx = SubshiftContext::new(&s)?;
    let mut rng = StdRng::seed_from_u64(9);
    let mut found = 0;
    let mut pairs = 0;
    while pairs < 50 {
        let t = random_point(&s, &mut rng)?;
        let u = random_point(&s, &mut rng)?;
        if t == u {
            continue;
        }
        pairs += 1;
        match separate_points(&ctx, &t, &u, 20) {
            Ok(_) => found += 1,
            Err(Error::NotFound(_)) => {}
            Err(e) => return Err(e),
        }
    }
    log.check(found == 50, format!("separating shift found within depth 20 for {found}/50 pairs"));
    let eps = num_rational::BigRational::new(1.into(), 100.into());
    let dens = orbit_density(&s, &s.zero(), &eps, 200)?;
    log.check(dens.dense, "orbit of 0 is 1/100-dense at depth 200");
    let rot = Iet::rotation(&s, &lam(&s, 1)?)?;
    let mut fixed = 0;
    for _ in 0..100 {
        let t = random_point(&s, &mut rng)?;
        fixed += (rot.apply(&t)? == t) as u32;
    }
    log.check(fixed == 0, format!("rotation by l1 fixes {fixed} of 100 sampled points"));
    Ok(())
}

fn c10(log: &mut Log) -> Result<()> {
    for (d, s) in [(1u64, sqrt2_spec(1)), (2, rank2_spec(1)), (3, rank3_spec(1))] {
        let mut ok = true;
        for n in 0..=d + 2 {
            ok &= groupoid_homology(&s, n as u32)? == AbelianGroupDescriptor::free(binomial(d + 1, n + 1));
        }
        log.check(ok, format!("d={d}: rank H_n = C({}, n+1)", d + 1));
        let (k0, k1) = k_groups(&s)?;
        let even: u64 = (0..=d + 1).step_by(2).map(|n| binomial(d + 1, n + 1)).sum();
        let odd: u64 = (1..=d + 1).step_by(2).map(|n| binomial(d + 1, n + 1)).sum();
        log.check(k0.rank() == Some(even) && k1.rank() == Some(odd), format!("d={d}: K0 = {k0}, K1 = {k1}"));
    }
    let z2 = AbelianGroupDescriptor::free(0).with_torsion(vec![2]);
    for (name, s) in [("dyadic", dyadic_spec()), ("factorial", factorial_spec())] {
        let ab = abelianization(&s)?;
        log.check(ab == z2, format!("{name}: IE_ab = {ab}"));
        let (k0, k1) = k_groups(&s)?;
        log.check(k0 == AbelianGroupDescriptor::gamma() && k1.is_trivial(), format!("{name}: K0 = {k0}, K1 = {k1}"));
    }
    let ab1 = abelianization(&sqrt2_spec(1))?;
    log.check(ab1 == AbelianGroupDescriptor::free(1).with_torsion(vec![2, 2]), format!("d=1: IE_ab = {ab1}"));
    let ab2 = abelianization(&rank2_spec(1))?;
    log.check(ab2 == AbelianGroupDescriptor::free(1).with_torsion(vec![2, 2, 2]), format!("d=2: IE_ab = {ab2}"));
    let two = supernatural(&dyadic_spec())?;
    let want = Supernatural::Primes([(2u64, Exponent::Infinite)].into_iter().collect());
    log.check(two == want, format!("constant(2): supernatural number {two}"));
    let fact = supernatural(&factorial_spec())?;
    log.check(fact == Supernatural::Universal, format!("factorial: supernatural number {fact}"));
    let s6 = sqrt2_spec(6);
    let a = vec![s6.one(), s6.rational(1, 2)?, s6.rational(1, 3)?];
    let b = vec![s6.rational(1, 6)?];
    log.check(group_equal(&a, &b)?, "<1, 1/2, 1/3> = <1/6>");
    let s = sqrt2_spec(1);
    let l = lam(&s, 1)?;
    log.check(!group_equal(&[s.one(), l.clone()], &[s.one(), l.int_scale(2)?])?, "<1, l1> != <1, 2 l1>");
    Ok(())
}

fn c11(log: &mut Log) -> Result<()> {
    let s = dependent_spec();
    let x = s.from_coeffs(vec![-1, -1, 3])?;
    match sign_of(&x, DEFAULT_PRECISION_BITS) {
        Err(Error::PrecisionExhausted { bits }) => {
            log.check(true, format!("3(sqrt2/3) - (sqrt2 - 1) - 1 raises PrecisionExhausted at {bits} bits"))
        }
        other => log.check(false, format!("expected PrecisionExhausted, got {other:?}")),
    }
    Ok(())
}

/// Runs one criterion; `extra` joins the random group-law suite.
pub fn run_criterion(id: u32, extra: Option<&GammaSpec>) -> CriterionResult {
    let mut log = Log::default();
    let r = match id {
        1 => c1(&mut log),
        2 => c2(&mut log),
        3 => c3(&mut log),
        4 => c4(&mut log),
        5 => c5(&mut log),
        6 => c6(&mut log),
        7 => c7(&mut log, extra),
        8 => c8(&mut log),
        9 => c9(&mut log),
        10 => c10(&mut log),
        11 => c11(&mut log),
        _ => Err(Error::IndexError(format!("no criterion {id}"))),
    };
    if let Err(e) = r {
        log.check(false, format!("error {}: {e}", e.kind()));
    }
    log.finish(id)
}

/// All criteria, evaluated in parallel and reported in order.
pub fn run_all(extra: Option<&GammaSpec>) -> Vec<CriterionResult> {
    CRITERIA.par_iter().map(|(id, _)| run_criterion(*id, extra)).collect()
}
