//! One function per subcommand. Each returns the JSON payload, a text table
//! and the verdict that decides the exit status.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use qdelta_core::convection::{beta_residual, residual, solve_beta, term_solver, EquationParams, IotaDecoder, Rhs};
use qdelta_core::instability::{instability_witness, valuation_law, InstabilityWitness, Scenario, WitnessParams};
use qdelta_core::modforms::{eisenstein, j_series, tate_point, ModularPoint};
use qdelta_core::padic::{PadicContext, PadicNum, Scalar};
use qdelta_core::series::QSeries;
use qdelta_core::solutions::{u_mult, FamilyKind, Payload, SolutionFamily};
use qdelta_core::symforms::SymFraction;

use crate::error::{CliError, CliResult};
use crate::fixtures;
use crate::format::*;
use crate::table::{opt, render};

/// Result of a command.
#[derive(Debug)]
pub struct Output {
    pub value: Value,
    pub table: String,
    pub passed: bool,
}

fn object(settings: &Settings, command: &str, fields: Value) -> Value {
    let mut m = settings.header();
    m.insert("command".into(), json!(command));
    if let Value::Object(f) = fields {
        m.extend(f);
    }
    Value::Object(m)
}

fn series_table(s: &QSeries) -> String {
    let rows: Vec<Vec<String>> = series_to_json(s)["coeffs"]
        .as_array()
        .expect("coeffs")
        .iter()
        .enumerate()
        .map(|(i, c)| vec![(s.lowest() + i as i64).to_string(), coeff_text(c)])
        .collect();
    render(&["n", "coeff"], &rows)
}

fn coeff_text(c: &Value) -> String {
    match c {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// What `expand` prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExpandTarget {
    Eisenstein,
    Delta,
    J,
    Tate,
    Hurlburt,
    Form,
}

pub fn expand(settings: &Settings, target: ExpandTarget, k: u32, expr: Option<&str>) -> CliResult<Output> {
    let ctx = &settings.ctx;
    let m = settings.order;
    let order = m.max(0) as usize;
    let (fields, table) = match target {
        ExpandTarget::Eisenstein => {
            let s = eisenstein(ctx, k, order)?;
            (json!({ "form": format!("E{k}"), "series": series_to_json(&s) }), series_table(&s))
        }
        ExpandTarget::Delta => {
            let s = tate_point(ctx, order).discriminant();
            (json!({ "form": "Delta", "series": series_to_json(&s) }), series_table(&s))
        }
        ExpandTarget::J => {
            let s = j_series(ctx, order);
            (json!({ "form": "j", "series": series_to_json(&s) }), series_table(&s))
        }
        ExpandTarget::Tate => {
            let pt = tate_point(ctx, order);
            let t = format!("a\n{}\nb\n{}", series_table(&pt.a), series_table(&pt.b));
            (json!({ "form": "tate", "point": point_to_json(&pt) }), t)
        }
        ExpandTarget::Hurlburt | ExpandTarget::Form => {
            let f = if target == ExpandTarget::Hurlburt {
                SymFraction::hurlburt()
            } else {
                let text = expr.ok_or_else(|| CliError::usage("`expand form` needs --expr"))?;
                text.parse::<SymFraction>()?
            };
            // derivatives of the Tate point lose no order; extra terms cover Delta's q
            let s = f.fourier_eval(ctx, order + 1)?.truncate(m);
            let fields = json!({
                "form": f.to_string(),
                "order": f.order(),
                "weight": f.weight(),
                "series": series_to_json(&s),
            });
            (fields, format!("{f}\n{}", series_table(&s)))
        }
    };
    Ok(Output { value: object(settings, "expand", fields), table, passed: true })
}

/// Family name accepted by `solve`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    Additive,
    Multiplicative,
    Kernel,
    Inhomogeneous,
    ModularPlain,
    ModularDeformed,
}

#[derive(Clone, Debug)]
pub struct SolveArgs {
    pub family: FamilyArg,
    pub z: String,
    pub kappa: Option<u64>,
    pub alpha: String,
    pub eta: String,
    pub zeta: String,
    pub v: Option<String>,
    pub seed: u64,
}

fn teichmuller(ctx: &PadicContext, text: &str) -> CliResult<PadicNum> {
    let residue = text
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::usage(format!("`{text}` is not a residue list"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(PadicNum::teichmuller(ctx, &residue)?)
}

fn unit_series(settings: &Settings, text: Option<&str>, seed: u64) -> CliResult<QSeries> {
    let ctx = &settings.ctx;
    match text {
        None => Ok(QSeries::one(ctx, settings.order)),
        Some("random") => Ok(QSeries::random_unit(ctx, settings.order, &mut ChaCha8Rng::seed_from_u64(seed))),
        Some(list) => {
            let mut coeffs = Vec::new();
            for t in list.split(',') {
                coeffs.push(parse_scalar_text(t.trim())?.to_padic(ctx)?);
            }
            coeffs.resize(settings.order.max(0) as usize + 1, PadicNum::zero(ctx));
            Ok(QSeries::from_coeffs(ctx, 0, coeffs))
        }
    }
}

pub fn solve(settings: &Settings, a: &SolveArgs) -> CliResult<Output> {
    let ctx = &settings.ctx;
    let m = settings.order;
    let z = parse_scalar_text(&a.z)?;
    let alpha = parse_scalar_text(&a.alpha)?;
    let kappa = || a.kappa.ok_or_else(|| CliError::usage("this family needs --kappa"));
    let eta = || -> CliResult<PadicNum> { Ok(parse_scalar_text(&a.eta)?.to_padic(ctx)?) };
    let fam = match a.family {
        FamilyArg::Additive => SolutionFamily::additive(ctx, z, kappa()?, alpha, m)?,
        FamilyArg::Multiplicative => SolutionFamily::multiplicative(ctx, z, kappa()?, alpha, m)?,
        FamilyArg::Kernel => SolutionFamily::kernel(ctx, z, kappa()?, alpha, teichmuller(ctx, &a.zeta)?, m)?,
        FamilyArg::Inhomogeneous => {
            SolutionFamily::inhomogeneous(ctx, z, kappa()?, alpha, teichmuller(ctx, &a.zeta)?, m)?
        }
        FamilyArg::ModularPlain => {
            SolutionFamily::modular_plain(ctx, eta()?, unit_series(settings, a.v.as_deref(), a.seed)?, m)?
        }
        FamilyArg::ModularDeformed => SolutionFamily::modular_deformed(
            ctx,
            z,
            eta()?,
            unit_series(settings, a.v.as_deref(), a.seed)?,
            kappa()?,
            alpha,
            m,
        )?,
    };
    let table = match &fam.payload {
        Payload::Series(s) => series_table(s),
        Payload::Point(pt) => format!("a\n{}\nb\n{}", series_table(&pt.a), series_table(&pt.b)),
    };
    let mut value = family_to_json(settings, &fam);
    value["command"] = json!("solve");
    Ok(Output { value, table, passed: true })
}

fn settings_of_series(s: &QSeries) -> Settings {
    Settings { ctx: s.context().clone(), order: s.order() }
}

fn checks_table(checks: &Map<String, Value>) -> String {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|(k, v)| vec![k.clone(), if v.as_bool() == Some(true) { "pass".into() } else { "FAIL".into() }])
        .collect();
    render(&["check", "verdict"], &rows)
}

fn equation(fam: &SolutionFamily, rhs: Rhs) -> CliResult<EquationParams> {
    let kappa = fam.params.kappa.ok_or_else(|| CliError::usage("family lacks kappa"))?;
    let z = fam.params.z.clone().ok_or_else(|| CliError::usage("family lacks z"))?;
    Ok(EquationParams::new(Scalar::int(kappa as i64), z, rhs)?)
}

/// Checks a serialized family: residuals for the series families, the
/// `iota` decomposition for the modular ones.
pub fn verify(doc: &Value, tolerance: Option<i64>) -> CliResult<Output> {
    let fam = family_from_json(doc)?;
    let mut checks = Map::new();
    let mut extra = Map::new();
    let settings = match &fam.payload {
        Payload::Series(s) => settings_of_series(s),
        Payload::Point(pt) => settings_of_series(&pt.a),
    };
    match (&fam.payload, fam.kind) {
        (Payload::Series(s), FamilyKind::Additive) => {
            checks.insert("integral".into(), json!(s.is_integral()));
        }
        (Payload::Series(s), FamilyKind::Multiplicative | FamilyKind::Kernel) => {
            let rep = residual(s, &equation(&fam, Rhs::Zero)?, tolerance)?;
            checks.insert("integral".into(), json!(s.is_integral()));
            checks.insert("residual".into(), json!(rep.passed));
            extra.insert("residual".into(), residual_to_json(&rep));
        }
        (Payload::Series(s), FamilyKind::Inhomogeneous) => {
            let eq = equation(&fam, Rhs::MinusOne)?;
            let beta = fam.params.beta.clone().ok_or_else(|| CliError::usage("family lacks beta"))?;
            let rep = residual(s, &eq, tolerance)?;
            checks.insert("beta_equation".into(), json!(beta_residual(&beta, &eq)?.passed));
            checks.insert("residual".into(), json!(rep.passed));
            extra.insert("residual".into(), residual_to_json(&rep));
        }
        (Payload::Point(pt), FamilyKind::ModularPlain | FamilyKind::ModularDeformed) => {
            let ctx = pt.context();
            let order = pt.order();
            checks.insert("bad_type".into(), json!(pt.is_bad_type()));
            checks.insert("ordinary".into(), json!(pt.is_ordinary().unwrap_or(false)));
            let eta = fam.params.eta.clone().ok_or_else(|| CliError::usage("family lacks eta"))?;
            let v = fam.params.v.clone().ok_or_else(|| CliError::usage("family lacks v"))?;
            let mut u = QSeries::constant(&eta, order);
            if fam.kind == FamilyKind::ModularDeformed {
                let kappa = fam.params.kappa.ok_or_else(|| CliError::usage("family lacks kappa"))?;
                let (z, alpha) = match (&fam.params.z, &fam.params.alpha) {
                    (Some(z), Some(a)) => (z, a),
                    _ => return Err(CliError::usage("family lacks z or alpha")),
                };
                u = u_mult(ctx, z, kappa, alpha, order)?.scale(&eta);
            }
            let d = IotaDecoder::new(ctx, order.max(0) as usize)?.decode(pt)?;
            let prec = ctx.cap() as i64;
            checks.insert("decode_u".into(), json!(d.u.eq_at(&u, prec)));
            checks.insert("decode_v2".into(), json!(d.v2.eq_at(&(&v * &v), prec)));
        }
        _ => return Err(CliError::usage("payload does not match the family kind")),
    }
    let passed = checks.values().all(|v| v.as_bool() == Some(true));
    let table = checks_table(&checks);
    let mut fields = Map::new();
    fields.insert("kind".into(), json!(fam.kind.name()));
    fields.insert("checks".into(), Value::Object(checks));
    fields.insert("passed".into(), json!(passed));
    fields.extend(extra);
    Ok(Output { value: object(&settings, "verify", Value::Object(fields)), table, passed })
}

/// Inverts `iota` on a point, given either as `{"a", "b"}` or as a family.
pub fn decompose(doc: &Value) -> CliResult<Output> {
    let pt: ModularPoint = match doc.get("payload") {
        Some(p) => point_from_json(p.get("point").ok_or_else(|| CliError::usage("family payload is not a point"))?)?,
        None => point_from_json(doc)?,
    };
    let settings = settings_of_series(&pt.a);
    let d = IotaDecoder::new(&settings.ctx, pt.order().max(0) as usize)?.decode(&pt)?;
    let table = format!("u\n{}\nv^2\n{}", series_table(&d.u), series_table(&d.v2));
    let mut fields = decoded_to_json(&d);
    fields["passed"] = json!(true);
    Ok(Output { value: object(&settings, "decompose", fields), table, passed: true })
}

#[derive(Clone, Debug)]
pub struct CensusArgs {
    pub kappa: String,
    pub z: String,
    pub c0: String,
    pub rhs: i64,
    pub free: Vec<String>,
    pub generic: bool,
}

pub fn census(settings: &Settings, a: &CensusArgs) -> CliResult<Output> {
    let ctx = &settings.ctx;
    let rhs = match a.rhs {
        0 => Rhs::Zero,
        -1 => Rhs::MinusOne,
        r => return Err(CliError::usage(format!("--rhs must be 0 or -1, not {r}"))),
    };
    let mut eq = EquationParams::new(parse_scalar_text(&a.kappa)?, parse_scalar_text(&a.z)?, rhs)?;
    if a.generic {
        eq = eq.undeclared();
    }
    let c0 = if a.c0 == "beta" { Scalar::Padic(solve_beta(ctx, &eq)?) } else { parse_scalar_text(&a.c0)? };
    let mut free = BTreeMap::new();
    for item in &a.free {
        let (n, v) =
            item.split_once('=').ok_or_else(|| CliError::usage(format!("--free expects n=value, got `{item}`")))?;
        let n: i64 = n.trim().parse().map_err(|_| CliError::usage(format!("bad exponent in `{item}`")))?;
        free.insert(n, parse_scalar_text(v.trim())?);
    }
    let cen = term_solver(ctx, &eq, &c0, settings.order, &free)?;
    let passed = cen.obstructed.is_empty();
    let rows: Vec<Vec<String>> =
        cen.rows.iter().map(|r| vec![r.n.to_string(), opt(r.pivot_valuation), r.status.name().to_string()]).collect();
    let table = render(&["n", "v(n - kappa)", "status"], &rows);
    let mut fields = census_to_json(&cen);
    fields["kappa"] = json!(a.kappa);
    fields["z"] = json!(a.z);
    fields["rhs"] = json!(a.rhs);
    fields["passed"] = json!(passed);
    Ok(Output { value: object(settings, "census", fields), table, passed })
}

#[derive(Clone, Debug)]
pub struct InstabilityArgs {
    pub kappa: u64,
    pub alpha: String,
    pub alpha0: String,
    pub z: String,
    pub z0: String,
    pub eta: String,
    pub eta0: String,
    pub rows: u32,
    pub grid: bool,
    pub jobs: usize,
}

struct Case {
    alpha: String,
    alpha0: String,
    z: String,
    z0: String,
    eta: String,
    eta0: String,
}

fn witness(settings: &Settings, kappa: u64, rows: u32, c: &Case) -> CliResult<(InstabilityWitness, Value)> {
    let ctx = &settings.ctx;
    let params = WitnessParams {
        kappa,
        alpha: parse_scalar_text(&c.alpha)?,
        alpha0: parse_scalar_text(&c.alpha0)?,
        z: parse_scalar_text(&c.z)?,
        z0: parse_scalar_text(&c.z0)?,
        eta: parse_scalar_text(&c.eta)?.to_padic(ctx)?,
        eta0: parse_scalar_text(&c.eta0)?.to_padic(ctx)?,
        order: settings.order,
        table_rows: rows,
    };
    let w = instability_witness(ctx, &params)?;
    let mut v = witness_to_json(&w);
    for (k, s) in
        [("alpha", &c.alpha), ("alpha0", &c.alpha0), ("z", &c.z), ("z0", &c.z0), ("eta", &c.eta), ("eta0", &c.eta0)]
    {
        v[k] = json!(s);
    }
    if w.scenario == Scenario::ZPerturbed {
        if let (Some(z), Some(z0)) = (params.z.as_rational(), params.z0.as_rational()) {
            v["law"] = law_to_json(&valuation_law(ctx.p(), &z, &z0, rows)?);
        }
    }
    v["verdict"] = json!(match (w.scenario, w.first_bad_exponent) {
        (_, Some(_)) => "witness",
        (Scenario::Unperturbed, None) => "congruent",
        (_, None) => "inconclusive at truncation",
    });
    Ok((w, v))
}

/// `(z, z0)` pairs `(p, 2p), (p, p^2), (p^2, 2p^2)` with `alpha = alpha0 = 1`
/// and `alpha` pairs `(1, 2), (1, p + 1)` with `z = z0 = 0`.
fn grid_cases(p: u64) -> Vec<Case> {
    let case = |a: u64, a0: u64, z: u64, z0: u64| Case {
        alpha: a.to_string(),
        alpha0: a0.to_string(),
        z: z.to_string(),
        z0: z0.to_string(),
        eta: "1".into(),
        eta0: "1".into(),
    };
    vec![
        case(1, 1, p, 2 * p),
        case(1, 1, p, p * p),
        case(1, 1, p * p, 2 * p * p),
        case(1, 2, 0, 0),
        case(1, p + 1, 0, 0),
    ]
}

pub fn instability(settings: &Settings, a: &InstabilityArgs) -> CliResult<Output> {
    let cases = if a.grid {
        grid_cases(settings.ctx.p())
    } else {
        vec![Case {
            alpha: a.alpha.clone(),
            alpha0: a.alpha0.clone(),
            z: a.z.clone(),
            z0: a.z0.clone(),
            eta: a.eta.clone(),
            eta0: a.eta0.clone(),
        }]
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let results: Vec<(InstabilityWitness, Value)> =
        pool.install(|| cases.par_iter().map(|c| witness(settings, a.kappa, a.rows, c)).collect::<CliResult<_>>())?;
    let passed = results.iter().all(|(w, _)| w.scenario == Scenario::Unperturbed || w.first_bad_exponent.is_some());
    let rows: Vec<Vec<String>> = results
        .iter()
        .zip(&cases)
        .map(|((w, v), c)| {
            vec![
                c.alpha.clone(),
                c.alpha0.clone(),
                c.z.clone(),
                c.z0.clone(),
                w.scenario.name().to_string(),
                opt(w.first_bad_exponent),
                opt(w.constant_valuation()),
                v["verdict"].as_str().unwrap_or_default().to_string(),
            ]
        })
        .collect();
    let mut table = render(&["alpha", "alpha0", "z", "z0", "scenario", "first bad n", "v(b_n diff)", "verdict"], &rows);
    if !a.grid {
        let w = &results[0].0;
        if !w.valuation_table.is_empty() {
            let t: Vec<Vec<String>> =
                w.valuation_table.iter().map(|r| vec![r.n.to_string(), r.valuation.to_string()]).collect();
            table.push('\n');
            table.push_str(&render(&["n", "valuation"], &t));
        }
    }
    let witnesses: Vec<Value> = results.into_iter().map(|(_, v)| v).collect();
    let fields = json!({ "kappa": a.kappa, "witnesses": witnesses, "passed": passed });
    Ok(Output { value: object(settings, "instability", fields), table, passed })
}

pub fn fixtures_cmd(dir: Option<&std::path::Path>, order: usize, check: bool) -> CliResult<Output> {
    let dir = fixtures::fixture_dir(dir);
    let (files, passed) = if check {
        let bad = fixtures::check_all(&dir, order)?;
        let ok = bad.is_empty();
        (bad, ok)
    } else {
        (fixtures::write_all(&dir, order)?, true)
    };
    let mode = if check { "check" } else { "write" };
    let key = if check { "mismatched" } else { "written" };
    let value = json!({
        "command": "fixtures",
        "mode": mode,
        "order": order,
        key: files,
        "passed": passed,
    });
    let rows: Vec<Vec<String>> = files.iter().map(|f| vec![f.clone()]).collect();
    Ok(Output { value, table: render(&[key], &rows), passed })
}
