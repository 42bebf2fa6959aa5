//! JSON documents for specs, elements, interval exchanges, patches and reports.
//!
//! Top-level documents carry `"schema": "iexg/1"` as their last field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::builtin::builtin_spec;
use crate::circle::CircleSet;
use crate::error::{Error, Result, Warning};
use crate::explorer::BallReport;
use crate::gamma::{AlgebraicGenerator, GammaElement, GammaSpec, MultiplierRule, SpecKind};
use crate::iet::Iet;
use crate::invariants::{AbelianGroupDescriptor, Exponent, FreeRank, InvariantReport, Supernatural};
use crate::subshift::Patch;

pub const SCHEMA: &str = "iexg/1";

fn schema() -> String {
    SCHEMA.to_string()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub minpoly: Vec<i64>,
    pub interval: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleDoc {
    Constant { m: u64 },
    Factorial,
    List { multipliers: Vec<u64>, repeat_last: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecDoc {
    FinitelyGenerated { k: u64, irrationals: Vec<GeneratorDoc> },
    RationalRule { rule: RuleDoc },
}

/// A builtin name or an inline spec document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecRef {
    Named(String),
    Inline(SpecDoc),
}

/// `{"coeffs": [...]}` or `{"level": n, "num": a}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coeffs: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub num: Option<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IetDoc {
    pub spec: SpecRef,
    pub cuts: Vec<ElementDoc>,
    pub shifts: Vec<ElementDoc>,
    #[serde(default = "schema")]
    pub schema: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchEntryDoc {
    pub key: ElementDoc,
    pub value: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchDoc {
    pub entries: Vec<PatchEntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDoc {
    pub intervals: Vec<[ElementDoc; 2]>,
}

pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    if d == BigInt::from(0) {
        return Err(bad(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn spec_to_doc(spec: &GammaSpec) -> SpecDoc {
    match spec.kind() {
        SpecKind::FinitelyGenerated { k, irrationals } => SpecDoc::FinitelyGenerated {
            k: *k,
            irrationals: irrationals
                .iter()
                .map(|g| {
                    let (lo, hi) = g.interval();
                    GeneratorDoc {
                        minpoly: g.minpoly().iter().map(|c| c.to_i64().unwrap_or(i64::MAX)).collect(),
                        interval: [rational_string(lo), rational_string(hi)],
                    }
                })
                .collect(),
        },
        SpecKind::RationalRule(rule) => SpecDoc::RationalRule {
            rule: match rule {
                MultiplierRule::Constant(m) => RuleDoc::Constant { m: *m },
                MultiplierRule::Factorial => RuleDoc::Factorial,
                MultiplierRule::List { multipliers, repeat_last } => {
                    RuleDoc::List { multipliers: multipliers.clone(), repeat_last: *repeat_last }
                }
            },
        },
    }
}

pub fn spec_from_doc(doc: &SpecDoc) -> Result<GammaSpec> {
    match doc {
        SpecDoc::FinitelyGenerated { k, irrationals } => {
            let gens = irrationals
                .iter()
                .map(|g| {
                    let lo = parse_rational(&g.interval[0])?;
                    let hi = parse_rational(&g.interval[1])?;
                    AlgebraicGenerator::new(&g.minpoly, lo, hi)
                })
                .collect::<Result<Vec<_>>>()?;
            GammaSpec::finitely_generated(*k, gens)
        }
        SpecDoc::RationalRule { rule } => GammaSpec::rational_rule(match rule {
            RuleDoc::Constant { m } => MultiplierRule::Constant(*m),
            RuleDoc::Factorial => MultiplierRule::Factorial,
            RuleDoc::List { multipliers, repeat_last } => {
                MultiplierRule::List { multipliers: multipliers.clone(), repeat_last: *repeat_last }
            }
        }),
    }
}

pub fn resolve_spec(r: &SpecRef) -> Result<GammaSpec> {
    match r {
        SpecRef::Named(name) => {
            builtin_spec(name).ok_or_else(|| Error::MalformedSpec(format!("unknown builtin spec {name:?}")))
        }
        SpecRef::Inline(doc) => spec_from_doc(doc),
    }
}

/// Parses a spec document (or a bare builtin name in quotes).
pub fn parse_spec(json: &str) -> Result<GammaSpec> {
    let r: SpecRef = serde_json::from_str(json).map_err(|e| Error::MalformedSpec(e.to_string()))?;
    resolve_spec(&r)
}

#[derive(Serialize)]
struct SpecOut<'a> {
    #[serde(flatten)]
    doc: &'a SpecDoc,
    schema: &'static str,
}

pub fn spec_json(spec: &GammaSpec) -> Result<String> {
    to_json(&SpecOut { doc: &spec_to_doc(spec), schema: SCHEMA })
}

pub fn element_to_doc(x: &GammaElement) -> ElementDoc {
    match (x.coeffs(), x.level_num()) {
        (Some(c), _) => ElementDoc { coeffs: Some(c.to_vec()), ..Default::default() },
        (_, Some((level, num))) => ElementDoc { level: Some(level), num: Some(num), coeffs: None },
        _ => unreachable!("every element is either lattice or level based"),
    }
}

pub fn element_from_doc(spec: &GammaSpec, d: &ElementDoc) -> Result<GammaElement> {
    match (&d.coeffs, d.level, d.num) {
        (Some(c), None, None) => spec.from_coeffs(c.clone()),
        (None, Some(level), Some(num)) => spec.at_level(level, num),
        (None, None, Some(num)) => spec.at_level(0, num),
        _ => Err(bad("element needs either coeffs or level and num")),
    }
}

pub fn parse_element(spec: &GammaSpec, json: &str) -> Result<GammaElement> {
    let d: ElementDoc = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
    element_from_doc(spec, &d)
}

pub fn iet_to_doc(f: &Iet, spec_ref: Option<&SpecRef>) -> IetDoc {
    IetDoc {
        spec: spec_ref.cloned().unwrap_or_else(|| SpecRef::Inline(spec_to_doc(f.spec()))),
        cuts: f.cuts().iter().map(element_to_doc).collect(),
        shifts: f.shifts().iter().map(element_to_doc).collect(),
        schema: schema(),
    }
}

/// Accepts non-canonical input and normalizes it.
pub fn iet_from_doc(d: &IetDoc) -> Result<Iet> {
    let spec = resolve_spec(&d.spec)?;
    let cuts = d.cuts.iter().map(|c| element_from_doc(&spec, c)).collect::<Result<Vec<_>>>()?;
    let shifts = d.shifts.iter().map(|c| element_from_doc(&spec, c)).collect::<Result<Vec<_>>>()?;
    Iet::from_pieces(&spec, cuts, shifts)
}

pub fn parse_iet(json: &str) -> Result<(Iet, SpecRef)> {
    let d: IetDoc = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
    Ok((iet_from_doc(&d)?, d.spec))
}

pub fn iet_json(f: &Iet, spec_ref: Option<&SpecRef>) -> Result<String> {
    to_json(&iet_to_doc(f, spec_ref))
}

pub fn patch_to_doc(p: &Patch) -> PatchDoc {
    PatchDoc {
        entries: p
            .entries()
            .iter()
            .map(|(k, v)| PatchEntryDoc { key: element_to_doc(k), value: *v })
            .collect(),
    }
}

pub fn patch_from_doc(spec: &GammaSpec, d: &PatchDoc) -> Result<Patch> {
    let entries = d
        .entries
        .iter()
        .map(|e| Ok((element_from_doc(spec, &e.key)?, e.value)))
        .collect::<Result<Vec<_>>>()?;
    Patch::new(entries)
}

pub fn parse_patch(spec: &GammaSpec, json: &str) -> Result<Patch> {
    let d: PatchDoc = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
    patch_from_doc(spec, &d)
}

pub fn cylinder_to_doc(c: &CircleSet) -> CylinderDoc {
    CylinderDoc {
        intervals: c.intervals().iter().map(|(a, b)| [element_to_doc(a), element_to_doc(b)]).collect(),
    }
}

pub fn cylinder_from_doc(spec: &GammaSpec, d: &CylinderDoc) -> Result<CircleSet> {
    let raw = d
        .intervals
        .iter()
        .map(|[a, b]| Ok((element_from_doc(spec, a)?, element_from_doc(spec, b)?)))
        .collect::<Result<Vec<_>>>()?;
    CircleSet::from_intervals(spec, raw)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    /// A finite rank, or `"Gamma"`.
    pub free_rank: serde_json::Value,
    pub torsion: Vec<u64>,
    pub exact: bool,
    pub display: String,
}

pub fn group_to_doc(g: &AbelianGroupDescriptor) -> GroupDoc {
    GroupDoc {
        free_rank: match g.free_rank {
            FreeRank::Finite(r) => serde_json::Value::from(r),
            FreeRank::Gamma => serde_json::Value::from("Gamma"),
        },
        torsion: g.torsion.clone(),
        exact: g.exact,
        display: g.to_string(),
    }
}

pub fn group_from_doc(d: &GroupDoc) -> Result<AbelianGroupDescriptor> {
    let base = match &d.free_rank {
        serde_json::Value::String(s) if s == "Gamma" => AbelianGroupDescriptor::gamma(),
        v => AbelianGroupDescriptor::free(v.as_u64().ok_or_else(|| bad("bad free_rank"))?),
    };
    let g = base.with_torsion(d.torsion.clone());
    Ok(if d.exact { g } else { g.partial() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub spec: String,
    pub homology: BTreeMap<u32, GroupDoc>,
    pub k0: GroupDoc,
    pub k1: GroupDoc,
    pub abelianization: GroupDoc,
    pub rational_homology: BTreeMap<u32, u64>,
    pub derived_rational_homology: BTreeMap<u32, u64>,
    /// Prime to exponent (`null` for infinity), or `"universal"`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub supernatural: Option<serde_json::Value>,
    pub notes: Vec<String>,
    #[serde(default = "schema")]
    pub schema: String,
}

fn supernatural_to_value(s: &Supernatural) -> serde_json::Value {
    match s {
        Supernatural::Universal => serde_json::Value::from("universal"),
        Supernatural::Primes(m) => {
            let mut obj = serde_json::Map::new();
            for (p, e) in m {
                let v = match e {
                    Exponent::Finite(n) => serde_json::Value::from(*n),
                    Exponent::Infinite => serde_json::Value::from("inf"),
                };
                obj.insert(p.to_string(), v);
            }
            serde_json::Value::Object(obj)
        }
    }
}

fn supernatural_from_value(v: &serde_json::Value) -> Result<Supernatural> {
    match v {
        serde_json::Value::String(s) if s == "universal" => Ok(Supernatural::Universal),
        serde_json::Value::Object(obj) => {
            let mut m = BTreeMap::new();
            for (p, e) in obj {
                let p: u64 = p.parse().map_err(|_| bad(format!("bad prime {p}")))?;
                let e = match e {
                    serde_json::Value::String(s) if s == "inf" => Exponent::Infinite,
                    v => Exponent::Finite(
                        v.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("bad exponent"))?,
                    ),
                };
                m.insert(p, e);
            }
            Ok(Supernatural::Primes(m))
        }
        _ => Err(bad("bad supernatural number")),
    }
}

pub fn report_to_doc(r: &InvariantReport) -> ReportDoc {
    ReportDoc {
        spec: r.spec_summary.clone(),
        homology: r.homology.iter().map(|(n, g)| (*n, group_to_doc(g))).collect(),
        k0: group_to_doc(&r.k0),
        k1: group_to_doc(&r.k1),
        abelianization: group_to_doc(&r.abelianization),
        rational_homology: r.rational_homology.clone(),
        derived_rational_homology: r.derived_rational_homology.clone(),
        supernatural: r.supernatural.as_ref().map(supernatural_to_value),
        notes: r.notes.clone(),
        schema: schema(),
    }
}

pub fn report_from_doc(d: &ReportDoc) -> Result<InvariantReport> {
    Ok(InvariantReport {
        spec_summary: d.spec.clone(),
        homology: d
            .homology
            .iter()
            .map(|(n, g)| Ok((*n, group_from_doc(g)?)))
            .collect::<Result<_>>()?,
        k0: group_from_doc(&d.k0)?,
        k1: group_from_doc(&d.k1)?,
        abelianization: group_from_doc(&d.abelianization)?,
        rational_homology: d.rational_homology.clone(),
        derived_rational_homology: d.derived_rational_homology.clone(),
        supernatural: d.supernatural.as_ref().map(supernatural_from_value).transpose()?,
        notes: d.notes.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordRow {
    pub word: String,
    pub element: IetDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallDoc {
    pub radius: u32,
    pub element_count: usize,
    pub growth: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub words: Option<Vec<WordRow>>,
    #[serde(default = "schema")]
    pub schema: String,
}

pub fn ball_to_doc(b: &BallReport, emit_words: bool, spec_ref: Option<&SpecRef>) -> BallDoc {
    BallDoc {
        radius: b.radius,
        element_count: b.element_count,
        growth: b.growth.clone(),
        words: emit_words.then(|| {
            b.elements
                .iter()
                .map(|(f, w)| WordRow { word: w.to_string(), element: iet_to_doc(f, spec_ref) })
                .collect()
        }),
        schema: schema(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub error: ErrorBody,
    #[serde(default = "schema")]
    pub schema: String,
}

pub fn error_doc(e: &Error) -> ErrorDoc {
    ErrorDoc { error: ErrorBody { kind: e.kind().to_string(), message: e.to_string() }, schema: schema() }
}

pub fn warning_strings(ws: &[Warning]) -> Vec<String> {
    ws.iter()
        .map(|w| match w {
            Warning::KOutsideHypothesis { k } => format!("KOutsideHypothesis: k = {k} <= 9"),
            Warning::ConsistencyWarning { level, next_level } => {
                format!("ConsistencyWarning: parity differs between levels {level} and {next_level}")
            }
        })
        .collect()
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| bad(e.to_string()))
}
