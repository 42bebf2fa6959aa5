use std::fs;
use std::path::Path;

use iexg_core::builtin::{builtin_spec, builtin_specs};
use iexg_core::docs::{
    self, ball_to_doc, cylinder_to_doc, element_from_doc, element_to_doc, iet_from_doc, iet_to_doc,
    parse_iet, parse_patch, patch_to_doc, report_to_doc, spec_to_doc, warning_strings, ElementDoc,
    IetDoc, SpecRef, SCHEMA,
};
use iexg_core::explorer::{cayley_ball, orbit_density, separate_points, BallLimits};
use iexg_core::gamma::lattice::lattice_membership;
use iexg_core::gamma::DEFAULT_PRECISION_BITS;
use iexg_core::iet::{generating_set_k, minimal_level, sigma, sigma_hat, sign_hom};
use iexg_core::invariants::{group_equal, invariant_report, rational_homology, Variant};
use iexg_core::subshift::{
    cylinder_intervals, enumerate_patches, is_T_well_defined, Diagnosis, SubshiftContext,
    T_pi_as_iet, WellDefinedness,
};
use iexg_core::verify::run_all;
use iexg_core::{Error, GammaElement, GammaSpec, Iet, Sign};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{
    Cli, ExploreCmd, GammaCmd, IetCmd, InvariantsCmd, Opts, SubshiftCmd, Verb, VerifyCmd,
};

pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = Result<T, Failure>;

/// Output text and whether every check passed.
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
}

impl Outcome {
    fn text(s: String) -> Self {
        Outcome { stdout: s, ok: true }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Domain(Error::Document(format!("cannot read {}: {e}", path.display()))))
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure::Domain(Error::Document(e.to_string()))
}

fn stamped(mut v: Value) -> Res<String> {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), SCHEMA.into());
    }
    serde_json::to_string_pretty(&v).map_err(json_err)
}

fn value<T: Serialize>(v: &T) -> Res<Value> {
    serde_json::to_value(v).map_err(json_err)
}

fn need<'a>(p: &'a Option<std::path::PathBuf>, flag: &str, what: &str) -> Res<&'a Path> {
    p.as_deref().ok_or_else(|| usage(format!("{flag} PATH is required ({what})")))
}

fn spec_ref(o: &Opts) -> Res<SpecRef> {
    if let Some(s) = &o.inline {
        return serde_json::from_str(s).map_err(|e| Failure::Domain(Error::MalformedSpec(e.to_string())));
    }
    let Some(s) = &o.spec else {
        return Err(usage("--spec PATH or --inline JSON is required"));
    };
    let path = Path::new(s);
    if !path.exists() && builtin_spec(s).is_some() {
        return Ok(SpecRef::Named(s.clone()));
    }
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(Error::MalformedSpec(e.to_string())))
}

fn spec(o: &Opts) -> Res<GammaSpec> {
    Ok(docs::resolve_spec(&spec_ref(o)?)?)
}

fn element(s: &GammaSpec, path: &Path) -> Res<GammaElement> {
    let d: ElementDoc = serde_json::from_str(&read(path)?).map_err(json_err)?;
    Ok(element_from_doc(s, &d)?)
}

fn elements(s: &GammaSpec, path: &Path) -> Res<Vec<GammaElement>> {
    let ds: Vec<ElementDoc> = serde_json::from_str(&read(path)?).map_err(json_err)?;
    Ok(ds.iter().map(|d| element_from_doc(s, d)).collect::<Result<_, _>>()?)
}

fn iet(path: &Path) -> Res<(Iet, SpecRef)> {
    Ok(parse_iet(&read(path)?)?)
}

fn iets(path: &Path) -> Res<(Vec<Iet>, Option<SpecRef>)> {
    let ds: Vec<IetDoc> = serde_json::from_str(&read(path)?).map_err(json_err)?;
    let r = ds.first().map(|d| d.spec.clone());
    Ok((ds.iter().map(iet_from_doc).collect::<Result<_, _>>()?, r))
}

fn element_out(x: &GammaElement) -> Res<String> {
    stamped(json!({ "element": value(&element_to_doc(x))?, "display": x.to_string() }))
}

fn iet_out(f: &Iet, r: &SpecRef) -> Res<String> {
    Ok(docs::iet_json(f, Some(r))?)
}

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "negative",
        Sign::Zero => "zero",
        Sign::Positive => "positive",
    }
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    let o = &cli.opts;
    let out = match &cli.verb {
        Verb::Gamma(c) => gamma(c, o)?,
        Verb::Iet(c) => iet_cmd(c, o)?,
        Verb::Subshift(c) => subshift(c, o)?,
        Verb::Explore(c) => explore(c, o)?,
        Verb::Invariants(c) => return invariants(c, o),
        Verb::Verify(VerifyCmd::PaperLemmas) => return verify(o),
    };
    Ok(Outcome::text(out))
}

fn gamma(c: &GammaCmd, o: &Opts) -> Res<String> {
    if let GammaCmd::Builtin = c {
        let rows: Vec<Value> = builtin_specs()
            .iter()
            .map(|(name, s)| Ok(json!({ "name": name, "summary": s.summary(), "spec": value(&spec_to_doc(s))? })))
            .collect::<Res<_>>()?;
        return stamped(json!({ "builtins": rows }));
    }
    let s = spec(o)?;
    let x = || element(&s, need(&o.first, "-f", "element document")?);
    let y = || element(&s, need(&o.second, "-g", "element document")?);
    match c {
        GammaCmd::Builtin => unreachable!(),
        GammaCmd::Show => stamped(json!({ "spec": value(&spec_to_doc(&s))?, "summary": s.summary() })),
        GammaCmd::Sign => {
            let v = x()?.sign_with_cap(o.precision_bits.unwrap_or(DEFAULT_PRECISION_BITS))?;
            stamped(json!({ "sign": sign_name(v) }))
        }
        GammaCmd::Compare => {
            let cap = o.precision_bits.unwrap_or(DEFAULT_PRECISION_BITS);
            let ord = match x()?.cmp_with_cap(&y()?, cap)? {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            stamped(json!({ "ordering": ord }))
        }
        GammaCmd::Add => element_out(&x()?.add(&y()?)?),
        GammaCmd::Sub => element_out(&x()?.sub(&y()?)?),
        GammaCmd::Frac => element_out(&x()?.frac()?),
        GammaCmd::Member => {
            let targets = elements(&s, need(&o.second, "-g", "list of element documents")?)?;
            stamped(json!({ "member": lattice_membership(&x()?, &targets)? }))
        }
    }
}

fn iet_cmd(c: &IetCmd, o: &Opts) -> Res<String> {
    if let IetCmd::Generators = c {
        let r = spec_ref(o)?;
        let s = docs::resolve_spec(&r)?;
        let (gens, warnings) = standard_generators(&s)?;
        let docs: Vec<Value> = gens.iter().map(|f| value(&iet_to_doc(f, Some(&r)))).collect::<Res<_>>()?;
        return stamped(json!({ "generators": docs, "warnings": warnings }));
    }
    let (f, r) = iet(need(&o.first, "-f", "iet document")?)?;
    let g = || -> Res<Iet> { Ok(iet(need(&o.second, "-g", "iet document")?)?.0) };
    match c {
        IetCmd::Generators => unreachable!(),
        IetCmd::Compose => iet_out(&f.compose(&g()?)?, &r),
        IetCmd::Inverse => iet_out(&f.inverse()?, &r),
        IetCmd::Normalize => iet_out(&f, &r),
        IetCmd::Commutator => iet_out(&f.commutator(&g()?)?, &r),
        IetCmd::Apply => {
            let t = element(f.spec(), need(&o.second, "-g", "point document")?)?;
            element_out(&f.apply(&t)?)
        }
        IetCmd::Order => {
            let max = o.depth.unwrap_or(64);
            stamped(json!({ "order": f.order(max)?, "searched_up_to": max }))
        }
        IetCmd::Sign => {
            let parity = sign_hom(f.spec(), &f)?;
            stamped(json!({
                "parity": parity.value,
                "level": minimal_level(&f)?,
                "warnings": warning_strings(&parity.warnings),
            }))
        }
    }
}

/// `σ_i, σ̂_i` for every generator, plus the `r_{k,a}` when `k >= 3`.
fn standard_generators(s: &GammaSpec) -> Res<(Vec<Iet>, Vec<String>)> {
    if s.is_rational() {
        return Err(Error::UnsupportedSpec("no standard generating set for rule-based specs".into()).into());
    }
    if s.denominator().unwrap_or(1) >= 3 {
        let c = generating_set_k(s)?;
        return Ok((c.value, warning_strings(&c.warnings)));
    }
    let mut gens = Vec::new();
    for i in 1..=s.rank() {
        gens.push(sigma(s, i)?);
        gens.push(sigma_hat(s, i)?);
    }
    Ok((gens, Vec::new()))
}

fn diagnosis_value(w: &WellDefinedness) -> Res<Value> {
    let (name, pair) = match &w.diagnosis {
        Diagnosis::WellDefined => ("well_defined", None),
        Diagnosis::EmptyCylinder => ("empty_cylinder", None),
        Diagnosis::SingleKey => ("single_key", None),
        Diagnosis::Overlap { i, j } => ("overlap", Some([*i, *j])),
    };
    Ok(json!({
        "diagnosis": name,
        "pair": pair,
        "message": w.message,
        "cylinder": value(&cylinder_to_doc(&w.cylinder))?,
    }))
}

fn subshift(c: &SubshiftCmd, o: &Opts) -> Res<String> {
    let r = spec_ref(o)?;
    let s = docs::resolve_spec(&r)?;
    let ctx = SubshiftContext::new(&s)?;
    let patch = || -> Res<_> { Ok(parse_patch(&s, &read(need(&o.first, "-f", "patch document")?)?)?) };
    match c {
        SubshiftCmd::Cylinder => {
            let w = cylinder_intervals(&ctx, &patch()?)?;
            let m = w.measure()?;
            stamped(json!({
                "intervals": value(&cylinder_to_doc(&w))?["intervals"],
                "measure": value(&element_to_doc(&m))?,
            }))
        }
        SubshiftCmd::Check => stamped(diagnosis_value(&is_T_well_defined(&ctx, &patch()?)?)?),
        SubshiftCmd::TPi => iet_out(&T_pi_as_iet(&ctx, &patch()?, None)?, &r),
        SubshiftCmd::Enumerate => {
            let keys = elements(&s, need(&o.first, "-f", "list of key documents")?)?;
            let rows: Vec<Value> = enumerate_patches(&ctx, &keys)?
                .iter()
                .map(|(p, w)| {
                    let mut v = diagnosis_value(w)?;
                    v["patch"] = value(&patch_to_doc(p))?;
                    Ok(v)
                })
                .collect::<Res<_>>()?;
            stamped(json!({ "patches": rows }))
        }
        SubshiftCmd::Separate => {
            let t = element(&s, need(&o.first, "-f", "point document")?)?;
            let t2 = element(&s, need(&o.second, "-g", "point document")?)?;
            let key = separate_points(&ctx, &t, &t2, o.depth.unwrap_or(20))?;
            element_out(&key)
        }
    }
}

fn explore(c: &ExploreCmd, o: &Opts) -> Res<String> {
    match c {
        ExploreCmd::Ball => {
            let (gens, r) = match &o.first {
                Some(p) => iets(p)?,
                None => {
                    let r = spec_ref(o)?;
                    (standard_generators(&docs::resolve_spec(&r)?)?.0, Some(r))
                }
            };
            let s = match (gens.first(), &r) {
                (Some(f), _) => f.spec().clone(),
                (None, _) => spec(o)?,
            };
            let mut limits = BallLimits::default();
            if let Some(m) = o.max_elements {
                limits.max_elements = m;
            }
            let radius = o.radius.unwrap_or(limits.max_radius);
            let ball = cayley_ball(&s, &gens, radius, &limits)?;
            Ok(docs::to_json(&ball_to_doc(&ball, o.emit_words, r.as_ref()))?)
        }
        ExploreCmd::Density => {
            let s = spec(o)?;
            let t = element(&s, need(&o.first, "-f", "point document")?)?;
            let eps = BigRational::new(1.into(), 100.into());
            let d = orbit_density(&s, &t, &eps, o.depth.unwrap_or(200))?;
            let missing: Vec<usize> =
                d.witnesses.iter().enumerate().filter(|(_, w)| w.is_none()).map(|(j, _)| j).collect();
            stamped(json!({ "dense": d.dense, "epsilon": "1/100", "missing_cells": missing }))
        }
    }
}

fn invariants(c: &InvariantsCmd, o: &Opts) -> Res<Outcome> {
    let s = spec(o)?;
    let out = match c {
        InvariantsCmd::Report => {
            let r = invariant_report(&s)?;
            if let Some(path) = &o.output {
                let doc = docs::to_json(&report_to_doc(&r))?;
                write_file(path, &doc)?;
            }
            return Ok(Outcome { stdout: r.table(), ok: true });
        }
        InvariantsCmd::Homology => {
            let n = o.depth.unwrap_or(6);
            stamped(json!({
                "full": rational_homology(&s, n, Variant::Full)?,
                "derived": rational_homology(&s, n, Variant::Derived)?,
            }))?
        }
        InvariantsCmd::GroupEqual => {
            let a = elements(&s, need(&o.first, "-f", "list of element documents")?)?;
            let b = elements(&s, need(&o.second, "-g", "list of element documents")?)?;
            stamped(json!({ "equal": group_equal(&a, &b)? }))?
        }
    };
    Ok(Outcome::text(out))
}

fn verify(o: &Opts) -> Res<Outcome> {
    let extra = match (&o.spec, &o.inline) {
        (None, None) => None,
        _ => Some(spec(o)?),
    };
    let results = run_all(extra.as_ref());
    let mut text = String::new();
    for r in &results {
        text.push_str(&r.line());
        text.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    text.push_str(&format!("{} of {} criteria passed\n", results.len() - failed, results.len()));
    Ok(Outcome { stdout: text, ok: failed == 0 })
}

pub fn write_file(path: &Path, s: &str) -> Res<()> {
    let mut body = s.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    fs::write(path, body)
        .map_err(|e| Failure::Domain(Error::Document(format!("cannot write {}: {e}", path.display()))))
}
