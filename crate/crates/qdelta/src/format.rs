//! Canonical JSON for p-adic numbers, series, points, families and reports.
//!
//! Objects use sorted keys (serde_json's default map) and decimal strings for
//! every residue, so output is byte-stable across runs and platforms.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use qdelta_core::convection::{Decoded, PivotRow, ResidualReport, SolveCensus};
use qdelta_core::instability::{InstabilityWitness, ValuationLaw};
use qdelta_core::modforms::ModularPoint;
use qdelta_core::padic::{PadicContext, PadicNum, Scalar};
use qdelta_core::series::QSeries;
use qdelta_core::solutions::{FamilyKind, FamilyParams, Payload, SolutionFamily};

use crate::error::{CliError, CliResult};

/// Working context plus the truncation order `M`.
#[derive(Clone, Debug)]
pub struct Settings {
    pub ctx: PadicContext,
    pub order: i64,
}

impl Settings {
    pub fn new(p: u64, n: u32, f: u32, order: i64) -> CliResult<Self> {
        if p < 5 {
            return Err(CliError::usage(format!("p = {p} must be a prime >= 5")));
        }
        if n < 1 || order < 1 {
            return Err(CliError::usage("N and M must be at least 1"));
        }
        let ctx = if f == 1 { PadicContext::new(p, n) } else { PadicContext::unramified(p, n, f) };
        Ok(Settings { ctx: ctx.map_err(CliError::usage)?, order })
    }

    /// `p`, `N`, `f`, `M` as top-level fields of an output object.
    pub fn header(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("p".into(), json!(self.ctx.p()));
        m.insert("N".into(), json!(self.ctx.cap()));
        m.insert("f".into(), json!(self.ctx.degree()));
        m.insert("M".into(), json!(self.order));
        m
    }
}

/// Compact canonical text with a trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn coords_value(ctx: &PadicContext, coords: Vec<BigUint>) -> Value {
    if ctx.degree() == 1 {
        Value::String(coords[0].to_string())
    } else {
        Value::Array(coords.into_iter().map(|c| Value::String(c.to_string())).collect())
    }
}

fn parse_coords(ctx: &PadicContext, v: &Value) -> CliResult<Vec<BigUint>> {
    let one = |v: &Value| -> CliResult<BigUint> {
        v.as_str()
            .and_then(|s| s.parse::<BigUint>().ok())
            .ok_or_else(|| CliError::usage(format!("expected a decimal string, got {v}")))
    };
    match v {
        Value::Array(items) if ctx.degree() > 1 => items.iter().map(one).collect(),
        _ if ctx.degree() == 1 => Ok(vec![one(v)?]),
        _ => Err(CliError::usage("coefficient shape does not match the extension degree")),
    }
}

fn is_zero_coords(c: &[BigUint]) -> bool {
    c.iter().all(Zero::is_zero)
}

/// `{"p", "N", "f", "valuation", "value", "abs_prec", "denom_exp"?}`.
pub fn padic_to_json(x: &PadicNum) -> Value {
    let ctx = x.context();
    let (numer, d) = x.canonical();
    let mut m = Map::new();
    m.insert("p".into(), json!(ctx.p()));
    m.insert("N".into(), json!(ctx.cap()));
    m.insert("f".into(), json!(ctx.degree()));
    m.insert("valuation".into(), if x.is_zero() { Value::Null } else { json!(x.valuation()) });
    m.insert("abs_prec".into(), json!(x.abs_prec()));
    m.insert("value".into(), coords_value(ctx, numer));
    if d > 0 {
        m.insert("denom_exp".into(), json!(d));
    }
    Value::Object(m)
}

fn get<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| CliError::usage(format!("missing field `{key}`")))
}

fn get_i64(v: &Value, key: &str) -> CliResult<i64> {
    get(v, key)?.as_i64().ok_or_else(|| CliError::usage(format!("field `{key}` must be an integer")))
}

fn context_of(v: &Value) -> CliResult<PadicContext> {
    let p = get_i64(v, "p")? as u64;
    let n = get_i64(v, "N")? as u32;
    let f = v.get("f").and_then(Value::as_i64).unwrap_or(1) as u32;
    Settings::new(p, n, f, 1).map(|s| s.ctx)
}

fn build(ctx: &PadicContext, numer: &[BigUint], d: u32, abs: Option<i64>) -> PadicNum {
    if is_zero_coords(numer) {
        return match abs {
            Some(a) if a < ctx.cap() as i64 => PadicNum::inexact_zero(ctx, a),
            _ => PadicNum::zero(ctx),
        };
    }
    PadicNum::from_canonical(ctx, numer, d, abs.unwrap_or(ctx.cap() as i64).min(ctx.cap() as i64))
}

pub fn padic_from_json(v: &Value) -> CliResult<PadicNum> {
    let ctx = context_of(v)?;
    padic_from_json_in(&ctx, v)
}

fn padic_from_json_in(ctx: &PadicContext, v: &Value) -> CliResult<PadicNum> {
    let numer = parse_coords(ctx, get(v, "value")?)?;
    let d = v.get("denom_exp").and_then(Value::as_u64).unwrap_or(0) as u32;
    let abs = v.get("abs_prec").and_then(Value::as_i64);
    Ok(build(ctx, &numer, d, abs))
}

/// `{"p", "N", "f", "M", "lowest", "coeffs", "eff_prec", "denom_exp"?}`.
///
/// Coefficients share the denominator `p^denom_exp`; each entry is the
/// residue of `p^denom_exp c_n` modulo `p^N`.
pub fn series_to_json(s: &QSeries) -> Value {
    let ctx = s.context();
    let d = s.coeffs().iter().filter_map(|c| if c.is_zero() { None } else { c.valuation() }).min().unwrap_or(0);
    let d = (-d).max(0) as u32;
    let scale = PadicNum::from_bigint(ctx, &BigInt::from(ctx.p_pow(d)));
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                return coords_value(ctx, vec![BigUint::zero(); ctx.degree() as usize]);
            }
            let scaled = if d == 0 { c.clone() } else { c * &scale };
            coords_value(ctx, scaled.canonical().0)
        })
        .collect();
    let mut m = Map::new();
    m.insert("p".into(), json!(ctx.p()));
    m.insert("N".into(), json!(ctx.cap()));
    m.insert("f".into(), json!(ctx.degree()));
    m.insert("M".into(), json!(s.order()));
    m.insert("lowest".into(), json!(s.lowest()));
    m.insert("coeffs".into(), Value::Array(coeffs));
    m.insert("eff_prec".into(), json!(s.eff_prec()));
    if d > 0 {
        m.insert("denom_exp".into(), json!(d));
    }
    Value::Object(m)
}

/// Inverse of [`series_to_json`]. Zero residues become exact zeros; every
/// other coefficient is known to `eff_prec` (capped at `N`).
pub fn series_from_json(v: &Value) -> CliResult<QSeries> {
    let ctx = context_of(v)?;
    series_from_json_in(&ctx, v)
}

fn series_from_json_in(ctx: &PadicContext, v: &Value) -> CliResult<QSeries> {
    let lowest = get_i64(v, "lowest")?;
    let d = v.get("denom_exp").and_then(Value::as_u64).unwrap_or(0) as u32;
    let abs = v.get("eff_prec").and_then(Value::as_i64);
    let items = get(v, "coeffs")?.as_array().ok_or_else(|| CliError::usage("`coeffs` must be an array"))?;
    let mut coeffs = Vec::with_capacity(items.len());
    for item in items {
        let numer = parse_coords(ctx, item)?;
        coeffs.push(if is_zero_coords(&numer) {
            PadicNum::zero(ctx)
        } else {
            PadicNum::from_canonical(ctx, &numer, d, abs.unwrap_or(ctx.cap() as i64).min(ctx.cap() as i64))
        });
    }
    if coeffs.is_empty() {
        return Err(CliError::usage("a series needs at least one coefficient"));
    }
    Ok(QSeries::from_coeffs(ctx, lowest, coeffs))
}

pub fn point_to_json(pt: &ModularPoint) -> Value {
    json!({ "a": series_to_json(&pt.a), "b": series_to_json(&pt.b) })
}

pub fn point_from_json(v: &Value) -> CliResult<ModularPoint> {
    Ok(ModularPoint::new(series_from_json(get(v, "a")?)?, series_from_json(get(v, "b")?)?))
}

fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(c) if c.len() == 1 => Value::String(rational_string(&c[0])),
        Scalar::Exact(c) => Value::Array(c.iter().map(|q| Value::String(rational_string(q))).collect()),
        Scalar::Padic(x) => padic_to_json(x),
    }
}

/// Parses `"3"`, `"-1/2"` or `"1,2"` (coordinates over an extension).
pub fn parse_scalar_text(text: &str) -> CliResult<Scalar> {
    let coords = text.split(',').map(|t| parse_rational(t.trim())).collect::<CliResult<Vec<_>>>()?;
    Ok(Scalar::Exact(coords))
}

pub fn parse_rational(text: &str) -> CliResult<BigRational> {
    let bad = || CliError::usage(format!("`{text}` is not a rational number"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn scalar_from_json(v: &Value) -> CliResult<Scalar> {
    match v {
        Value::String(s) => parse_scalar_text(s),
        Value::Array(items) => {
            let coords = items
                .iter()
                .map(|x| {
                    x.as_str().ok_or_else(|| CliError::usage("expected a rational string")).and_then(parse_rational)
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Scalar::Exact(coords))
        }
        Value::Object(_) => Ok(Scalar::Padic(padic_from_json(v)?)),
        _ => Err(CliError::usage(format!("cannot read a parameter from {v}"))),
    }
}

pub fn kind_from_name(name: &str) -> CliResult<FamilyKind> {
    Ok(match name {
        "additive" => FamilyKind::Additive,
        "multiplicative" => FamilyKind::Multiplicative,
        "kernel" => FamilyKind::Kernel,
        "inhomogeneous" => FamilyKind::Inhomogeneous,
        "modular_plain" | "modular-plain" => FamilyKind::ModularPlain,
        "modular_deformed" | "modular-deformed" => FamilyKind::ModularDeformed,
        _ => return Err(CliError::usage(format!("unknown family `{name}`"))),
    })
}

pub fn family_to_json(settings: &Settings, fam: &SolutionFamily) -> Value {
    let p = &fam.params;
    let mut params = Map::new();
    if let Some(z) = &p.z {
        params.insert("z".into(), scalar_to_json(z));
    }
    if let Some(k) = p.kappa {
        params.insert("kappa".into(), json!(k));
    }
    if let Some(a) = &p.alpha {
        params.insert("alpha".into(), scalar_to_json(a));
    }
    for (key, val) in [("eta", &p.eta), ("zeta", &p.zeta), ("beta", &p.beta)] {
        if let Some(x) = val {
            params.insert(key.into(), padic_to_json(x));
        }
    }
    if let Some(v) = &p.v {
        params.insert("v".into(), series_to_json(v));
    }
    let mut m = settings.header();
    m.insert("kind".into(), json!(fam.kind.name()));
    m.insert("params".into(), Value::Object(params));
    m.insert(
        "payload".into(),
        match &fam.payload {
            Payload::Series(s) => json!({ "series": series_to_json(s) }),
            Payload::Point(pt) => json!({ "point": point_to_json(pt) }),
        },
    );
    Value::Object(m)
}

pub fn family_from_json(v: &Value) -> CliResult<SolutionFamily> {
    let kind = kind_from_name(get(v, "kind")?.as_str().unwrap_or_default())?;
    let pv = get(v, "params")?;
    let opt_scalar = |k: &str| pv.get(k).map(scalar_from_json).transpose();
    let opt_padic = |k: &str| pv.get(k).map(padic_from_json).transpose();
    let params = FamilyParams {
        z: opt_scalar("z")?,
        kappa: pv.get("kappa").and_then(Value::as_u64),
        alpha: opt_scalar("alpha")?,
        eta: opt_padic("eta")?,
        v: pv.get("v").map(series_from_json).transpose()?,
        zeta: opt_padic("zeta")?,
        beta: opt_padic("beta")?,
    };
    let payload = get(v, "payload")?;
    let payload = if let Some(s) = payload.get("series") {
        Payload::Series(series_from_json(s)?)
    } else {
        Payload::Point(point_from_json(get(payload, "point")?)?)
    };
    Ok(SolutionFamily { kind, params, payload })
}

pub fn residual_to_json(rep: &ResidualReport) -> Value {
    let vals: Vec<Value> = rep
        .residual
        .coeffs()
        .iter()
        .map(|c| if c.is_exact_zero() { Value::Null } else { json!(c.valuation()) })
        .collect();
    json!({
        "lowest": rep.residual.lowest(),
        "min_valuation": rep.min_coeff_valuation,
        "passed": rep.passed,
        "tolerance": rep.tolerance,
        "valuations": vals,
    })
}

pub fn pivot_to_json(r: &PivotRow) -> Value {
    json!({ "n": r.n, "pivot_valuation": r.pivot_valuation, "status": r.status.name() })
}

pub fn census_to_json(c: &SolveCensus) -> Value {
    json!({
        "free": c.free,
        "obstructed": c.obstructed,
        "rows": c.rows.iter().map(pivot_to_json).collect::<Vec<_>>(),
        "u": series_to_json(&c.u),
    })
}

pub fn decoded_to_json(d: &Decoded) -> Value {
    json!({ "u": series_to_json(&d.u), "v2": series_to_json(&d.v2), "v_exists": d.v_exists })
}

pub fn witness_to_json(w: &InstabilityWitness) -> Value {
    json!({
        "scenario": w.scenario.name(),
        "first_bad_exponent": w.first_bad_exponent,
        "constant_valuation": w.constant_valuation(),
        "valuation_table": w
            .valuation_table
            .iter()
            .map(|r| json!({ "n": r.n, "valuation": r.valuation }))
            .collect::<Vec<_>>(),
    })
}

pub fn law_to_json(l: &ValuationLaw) -> Value {
    json!({
        "z": rational_string(&l.z),
        "z0": rational_string(&l.z0),
        "observed": l.observed,
        "v_p(z - z0) + 1": l.via_difference,
        "v_p(z) + 1": l.via_z,
        "matches_difference": l.matches_difference(),
        "matches_z": l.matches_z(),
    })
}
