//! The JSON descriptor format and canonical JSON for every report.
//!
//! Field elements are an integer in `[0, p)` when h = 1 and a length-h
//! coordinate list otherwise; polynomials are ascending coefficient arrays.
//! Objects are emitted with sorted keys, so equal values print identically.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::boseck::BasisElement;
use crate::error::{Error, Result};
use crate::finite_field::{Field, FieldSpec, Fq};
use crate::galois::{DecompositionReport, Submodule};
use crate::linalg::Matrix;
use crate::places::Place;
use crate::standard_form::{Replacement, SubstitutionChain};
use crate::tower::{
    ActionTable, RamificationProfile, StepKind, StepSpec, TowerAnalysis, TowerDescriptor, TowerOptions, ValidationReport,
    ValuationCertificate,
};
use crate::tower_algebra::{AlgebraElement, HolomorphyReport, LevelKind};
use crate::univariate::{Poly, RatFun};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireElement {
    Prime(u64),
    Coords(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireRatFun {
    pub num: Vec<WireElement>,
    #[serde(default = "one_poly")]
    pub den: Vec<WireElement>,
}

fn one_poly() -> Vec<WireElement> {
    vec![WireElement::Prime(1)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireTerm {
    pub exps: Vec<u32>,
    pub num: Vec<WireElement>,
    #[serde(default = "one_poly")]
    pub den: Vec<WireElement>,
}

/// A coefficient c_i: a list of terms, or a bare rational function when c_i ∈ K.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireCoefficient {
    Terms(Vec<WireTerm>),
    Rational(WireRatFun),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WireKind {
    Kummer,
    ArtinSchreier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireStep {
    pub kind: WireKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub c: WireCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WirePlace {
    Infinity(String),
    Finite { finite: Vec<WireElement> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireCertificate {
    pub place: WirePlace,
    pub level: usize,
    pub valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireAction {
    pub generator: usize,
    pub images: Vec<Vec<WireTerm>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireOptions {
    #[serde(default)]
    pub assume_uniform: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub valuation_certificates: Vec<WireCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<WireAction>,
}

/// The on-disk descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDocument {
    pub field: FieldSpec,
    pub steps: Vec<WireStep>,
    #[serde(default)]
    pub options: WireOptions,
}

fn parse_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

pub fn element_from_wire(w: &WireElement, k: &Field, path: &str) -> Result<Fq> {
    match w {
        WireElement::Prime(v) if k.h() == 1 => k.from_coeffs(&[*v]).map_err(|e| parse_err(path, e)),
        WireElement::Prime(_) => Err(parse_err(path, format!("expected a list of {} coordinates", k.h()))),
        WireElement::Coords(c) => k.from_coeffs(c).map_err(|e| parse_err(path, e)),
    }
}

pub fn element_to_wire(a: Fq, k: &Field) -> WireElement {
    if k.h() == 1 {
        WireElement::Prime(a.index() as u64)
    } else {
        WireElement::Coords(k.coeffs(a))
    }
}

pub fn poly_from_wire(w: &[WireElement], k: &Field, path: &str) -> Result<Poly> {
    let coeffs = w
        .iter()
        .enumerate()
        .map(|(i, e)| element_from_wire(e, k, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

pub fn poly_to_wire(p: &Poly, k: &Field) -> Vec<WireElement> {
    p.coeffs().iter().map(|&c| element_to_wire(c, k)).collect()
}

fn ratfun_from_parts(num: &[WireElement], den: &[WireElement], k: &Field, path: &str) -> Result<RatFun> {
    let n = poly_from_wire(num, k, &format!("{path}.num"))?;
    let d = poly_from_wire(den, k, &format!("{path}.den"))?;
    if d.is_zero() {
        return Err(parse_err(path, "denominator is zero"));
    }
    RatFun::new(n, d, k)
}

fn terms_from_wire(terms: &[WireTerm], nvars: usize, k: &Field, path: &str) -> Result<AlgebraElement> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let p = format!("{path}[{i}]");
        if t.exps.len() != nvars {
            return Err(parse_err(&p, format!("exps must have length {nvars}")));
        }
        out.push((t.exps.clone(), ratfun_from_parts(&t.num, &t.den, k, &p)?));
    }
    Ok(AlgebraElement::from_terms(nvars, out, k))
}

fn terms_to_wire(a: &AlgebraElement, k: &Field) -> Vec<WireTerm> {
    a.terms()
        .iter()
        .map(|(e, r)| WireTerm { exps: e.clone(), num: poly_to_wire(r.num(), k), den: poly_to_wire(r.den(), k) })
        .collect()
}

fn place_from_wire(w: &WirePlace, k: &Field, path: &str) -> Result<Place> {
    match w {
        WirePlace::Infinity(s) if s == "infinity" => Ok(Place::Infinity),
        WirePlace::Infinity(s) => Err(parse_err(path, format!("unknown place {s:?}"))),
        WirePlace::Finite { finite } => {
            Place::finite(poly_from_wire(finite, k, &format!("{path}.finite"))?, k).map_err(|e| parse_err(path, e))
        }
    }
}

fn place_to_wire(p: &Place, k: &Field) -> WirePlace {
    match p {
        Place::Infinity => WirePlace::Infinity("infinity".into()),
        Place::Finite(f) => WirePlace::Finite { finite: poly_to_wire(f, k) },
    }
}

impl DescriptorDocument {
    pub fn to_descriptor(&self) -> Result<TowerDescriptor> {
        let k = Field::new(self.field.clone()).map_err(|e| parse_err("field", e))?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            let path = format!("steps[{i}]");
            let kind = match (s.kind, s.n) {
                (WireKind::Kummer, Some(n)) => StepKind::Kummer { n },
                (WireKind::Kummer, None) => return Err(parse_err(&path, "Kummer step needs n")),
                (WireKind::ArtinSchreier, None) => StepKind::ArtinSchreier,
                (WireKind::ArtinSchreier, Some(_)) => return Err(parse_err(&path, "Artin-Schreier step takes no n")),
            };
            let c = match &s.c {
                WireCoefficient::Terms(t) => terms_from_wire(t, i, &k, &format!("{path}.c"))?,
                WireCoefficient::Rational(r) => {
                    AlgebraElement::from_ratfun(ratfun_from_parts(&r.num, &r.den, &k, &format!("{path}.c"))?, i)
                }
            };
            steps.push(StepSpec { kind, c });
        }
        let r = steps.len();
        let mut options = TowerOptions { assume_uniform: self.options.assume_uniform, ..Default::default() };
        for (i, c) in self.options.valuation_certificates.iter().enumerate() {
            let path = format!("options.valuation_certificates[{i}]");
            if c.level == 0 || c.level > r {
                return Err(parse_err(&path, format!("level must lie in 1..={r}")));
            }
            let place = place_from_wire(&c.place, &k, &format!("{path}.place"))?;
            options.valuation_certificates.push(ValuationCertificate { place, level: c.level, valuation: c.valuation });
        }
        for (i, a) in self.options.actions.iter().enumerate() {
            let path = format!("options.actions[{i}]");
            if a.generator == 0 || a.generator > r {
                return Err(parse_err(&path, format!("generator must lie in 1..={r}")));
            }
            let images = a
                .images
                .iter()
                .enumerate()
                .map(|(j, t)| terms_from_wire(t, r, &k, &format!("{path}.images[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            options.actions.push(ActionTable { generator: a.generator, images });
        }
        Ok(TowerDescriptor::new(k, steps)?.with_options(options))
    }

    pub fn from_descriptor(d: &TowerDescriptor) -> Self {
        let k = d.field();
        let steps = d
            .steps()
            .iter()
            .map(|s| {
                let (kind, n) = match s.kind {
                    StepKind::Kummer { n } => (WireKind::Kummer, Some(n)),
                    StepKind::ArtinSchreier => (WireKind::ArtinSchreier, None),
                };
                WireStep { kind, n, c: WireCoefficient::Terms(terms_to_wire(&s.c, k)) }
            })
            .collect();
        let o = &d.options;
        let options = WireOptions {
            assume_uniform: o.assume_uniform,
            valuation_certificates: o
                .valuation_certificates
                .iter()
                .map(|c| WireCertificate { place: place_to_wire(&c.place, k), level: c.level, valuation: c.valuation })
                .collect(),
            actions: o
                .actions
                .iter()
                .map(|a| WireAction { generator: a.generator, images: a.images.iter().map(|i| terms_to_wire(i, k)).collect() })
                .collect(),
        };
        DescriptorDocument { field: k.spec().clone(), steps, options }
    }
}

/// Parses a descriptor; syntax and shape errors carry line and column.
pub fn parse_descriptor(text: &str) -> Result<TowerDescriptor> {
    let doc: DescriptorDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), strip_position(&e))))?;
    doc.to_descriptor()
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

pub fn descriptor_to_value(d: &TowerDescriptor) -> Value {
    serde_json::to_value(DescriptorDocument::from_descriptor(d)).expect("descriptor serializes")
}

/// Pretty, sorted-key rendering used for every emitted artifact.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

pub fn element_value(a: Fq, k: &Field) -> Value {
    serde_json::to_value(element_to_wire(a, k)).expect("element serializes")
}

pub fn poly_value(p: &Poly, k: &Field) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| element_value(c, k)).collect())
}

pub fn ratfun_value(r: &RatFun, k: &Field) -> Value {
    json!({"num": poly_value(r.num(), k), "den": poly_value(r.den(), k)})
}

pub fn place_value(p: &Place, k: &Field) -> Value {
    serde_json::to_value(place_to_wire(p, k)).expect("place serializes")
}

pub fn algebra_value(a: &AlgebraElement, k: &Field) -> Value {
    serde_json::to_value(terms_to_wire(a, k)).expect("element serializes")
}

pub fn matrix_value(m: &Matrix, k: &Field) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(|&c| element_value(c, k)).collect())).collect())
}

pub fn validation_value(r: &ValidationReport) -> Value {
    json!({
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "id": c.id.to_string(),
            "description": c.description,
            "passed": c.passed,
            "failures": c.failures,
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

fn kind_name(k: LevelKind) -> &'static str {
    match k {
        LevelKind::Unramified => "unramified",
        LevelKind::Tame => "tame",
        LevelKind::Wild => "wild",
    }
}

pub fn profile_value(p: &RamificationProfile, k: &Field) -> Value {
    json!({
        "place": place_value(&p.place, k),
        "degree": p.degree,
        "e": p.e,
        "different": p.different,
        "levels": p.levels.iter().map(|l| json!({
            "level": l.level,
            "kind": kind_name(l.kind),
            "v": l.v,
            "v_c": l.v_c,
            "e_step": l.e_step,
            "e_above": l.e_above,
            "jump": l.jump,
        })).collect::<Vec<_>>(),
    })
}

/// Profile table keyed by the rendered place.
pub fn analysis_value(a: &TowerAnalysis, k: &Field) -> Value {
    let mut table = serde_json::Map::new();
    for p in &a.profiles {
        table.insert(p.place.display(k), profile_value(p, k));
    }
    json!({"ramified": Value::Object(table)})
}

pub fn basis_value(b: &BasisElement, k: &Field) -> Value {
    json!({
        "mu": b.mu,
        "nu": b.nu,
        "g": b.g.iter().map(|(pl, e)| json!([place_value(pl, k), e])).collect::<Vec<_>>(),
    })
}

pub fn holomorphy_value(r: &HolomorphyReport, k: &Field) -> Value {
    json!({
        "holomorphic": r.holomorphic,
        "valuations": r.valuations.iter().map(|(pl, v)| json!([place_value(pl, k), v])).collect::<Vec<_>>(),
    })
}

pub fn decomposition_value(r: &DecompositionReport) -> Value {
    json!({
        "entries": r.entries.iter().map(|e| json!({
            "mu_p": e.mu_p,
            "mu_tame": e.mu_tame,
            "dim": e.dim,
            "multiplicity": e.multiplicity,
        })).collect::<Vec<_>>(),
        "genus": r.genus,
        "p_exponent": r.p_exponent,
        "tame_degree": r.tame_degree,
        "t_unr": r.t_unr,
        "jordan_agrees": r.jordan_agrees,
    })
}

pub fn submodule_value(s: &Submodule, k: &Field) -> Value {
    json!({
        "generators": s.generators.iter().map(|(mu, th)| json!({"mu": mu, "element": algebra_value(th, k)})).collect::<Vec<_>>(),
        "dimension": s.dimension,
        "expected_dimension": s.expected_dimension,
    })
}

pub fn chain_value(c: &SubstitutionChain, k: &Field) -> Value {
    Value::Array(
        c.records
            .iter()
            .map(|r| {
                let (kind, f) = match &r.replacement {
                    Replacement::Shift(w) => ("shift", w),
                    Replacement::Scale(a) => ("scale", a),
                };
                json!({
                    "replace": kind,
                    "by": ratfun_value(f, k),
                    "improvements": r.improvements.iter().map(|(pl, a, b)| json!([place_value(pl, k), a, b])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn error_value(e: &Error) -> Value {
    json!({"error": e.code(), "detail": e.to_string()})
}
