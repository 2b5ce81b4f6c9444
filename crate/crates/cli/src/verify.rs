//! Named end-to-end cases, each compared against a bundled expected record.

use expsumlab_core::expsum::{power_sum_table, scaled_degree_check, Polynomial, VarietySpec};
use expsumlab_core::ffield::build_field;
use expsumlab_core::lfun::{exp_power_sums, reconstruct, LSeries};
use expsumlab_core::padic::{robba_index, DiffSystemSpec, RadiusProfile};
use expsumlab_core::predict::{betti_degree, fermat_report, BettiSpec, CurveSpec};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::job::{FieldSpec, Overrides, PredictSpec};
use crate::report::{align, Report, Status};
use crate::row;
use crate::run::{compare, profile_for};

pub const CASES: [&str; 10] = [
    "newton-degenerate",
    "torus-linear",
    "kloosterman",
    "sl2-trace",
    "a3-betti",
    "b3-betti",
    "fermat-discrepancy",
    "dwork-radius",
    "robba-index",
    "scale-invariance",
];

fn expected_source(case: &str) -> Option<&'static str> {
    Some(match case {
        "newton-degenerate" => include_str!("../expected/newton-degenerate.json"),
        "torus-linear" => include_str!("../expected/torus-linear.json"),
        "kloosterman" => include_str!("../expected/kloosterman.json"),
        "sl2-trace" => include_str!("../expected/sl2-trace.json"),
        "a3-betti" => include_str!("../expected/a3-betti.json"),
        "b3-betti" => include_str!("../expected/b3-betti.json"),
        "fermat-discrepancy" => include_str!("../expected/fermat-discrepancy.json"),
        "dwork-radius" => include_str!("../expected/dwork-radius.json"),
        "robba-index" => include_str!("../expected/robba-index.json"),
        "scale-invariance" => include_str!("../expected/scale-invariance.json"),
        _ => return None,
    })
}

pub fn expected(case: &str) -> Result<Map<String, Value>, CliError> {
    let src = expected_source(case).ok_or_else(|| unknown(case))?;
    serde_json::from_str(src).map_err(|e| CliError::Other(format!("bundled record for {case}: {e}")))
}

fn unknown(case: &str) -> CliError {
    CliError::Schema(format!("unknown case {case:?}; known cases: all, {}", CASES.join(", ")))
}

pub fn check_case_name(case: &str) -> Result<(), CliError> {
    if case == "all" || CASES.contains(&case) {
        Ok(())
    } else {
        Err(unknown(case))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub key: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub case: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub observed: Map<String, Value>,
}

/// Runs one case and compares every key of its expected record.
pub fn run_case(case: &str) -> Result<CaseOutcome, CliError> {
    let want = expected(case)?;
    let observed = observe(case)?;
    let checks: Vec<Check> = want
        .into_iter()
        .map(|(key, expected)| {
            let got = observed.get(&key).cloned().unwrap_or(Value::Null);
            Check { pass: got == expected, key, expected, observed: got }
        })
        .collect();
    Ok(CaseOutcome { case: case.to_string(), pass: checks.iter().all(|c| c.pass), checks, observed })
}

pub fn verify(case: &str) -> Result<Report, CliError> {
    check_case_name(case)?;
    let names: Vec<&str> = if case == "all" { CASES.to_vec() } else { vec![case] };
    let outcomes = names.iter().map(|c| run_case(c)).collect::<Result<Vec<_>, _>>()?;
    let pass = outcomes.iter().all(|o| o.pass);
    let mut rows = vec![row!["case", "key", "expected", "observed", ""]];
    for o in &outcomes {
        for c in &o.checks {
            let mut want = Vec::new();
            flatten(&c.key, &c.expected, &mut want);
            let mut got = Vec::new();
            flatten(&c.key, &c.observed, &mut got);
            for (key, w) in want {
                let g = got.iter().find(|(k, _)| *k == key).map_or(Value::Null, |(_, v)| v.clone());
                let mark = if g == w { "ok" } else { "FAIL" };
                rows.push(row![o.case, key, compact(&w), compact(&g), mark]);
            }
        }
    }
    let mut text = align(&rows);
    for o in &outcomes {
        text.push_str(&format!("{} {}\n", o.case, if o.pass { "PASS" } else { "FAIL" }));
    }
    let result =
        if case == "all" { json!({ "pass": pass, "cases": outcomes }) } else { serde_json::to_value(&outcomes[0])? };
    Ok(Report { command: "verify", status: if pass { Status::Ok } else { Status::Failed }, result, text, csv: None })
}

/// Leaves of `v` under dotted keys; arrays of objects are indexed.
fn flatten(key: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&format!("{key}.{k}"), x, out)),
        Value::Array(xs) if xs.iter().any(Value::is_object) => {
            xs.iter().enumerate().for_each(|(i, x)| flatten(&format!("{key}[{i}]"), x, out))
        }
        leaf => out.push((key.to_string(), leaf.clone())),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn observe(case: &str) -> Result<Map<String, Value>, CliError> {
    let obj = match case {
        "newton-degenerate" => l_series_case(3, VarietySpec::parse_affine(2, "x^2*y - x")?, 6, None)?,
        "torus-linear" => {
            let gm = l_series_case(5, VarietySpec::parse_torus(1, "x")?, 6, None)?;
            let a1 = l_series_case(5, VarietySpec::parse_affine(1, "x")?, 6, None)?;
            json!({ "torus": gm, "affine_line": a1 })
        }
        "kloosterman" => {
            let curve = PredictSpec::Curve(CurveSpec { g: 0, c: 0, m: 2, d: 2 });
            l_series_case(5, VarietySpec::parse_torus(1, "x + x^-1")?, 6, Some(curve))?
        }
        "sl2-trace" => {
            let v = VarietySpec::Sl2 { coeffs: vec![1.into()] };
            l_series_case(2, v, 8, Some(PredictSpec::Sl2 { n: 1 }))?
        }
        "a3-betti" => arrangement(vec![7, 18], "x*y*z*(x - y)*(y - z)*(z - x)")?,
        "b3-betti" => arrangement(vec![8, 79], "x*y*z*(x + y)*(x - y)*(x + z)*(x - z)*(y + z)*(y - z)")?,
        "fermat-discrepancy" => serde_json::to_value(fermat_report(2)?)?,
        "dwork-radius" => {
            let (prof, _) = profile(3, "pi*x^-2", false)?;
            json!({
                "lambda": strings(prof.samples.iter().map(|s| &s.lambda)),
                "r": strings(prof.samples.iter().map(|s| &s.r)),
                "slopes": strings(prof.slopes().iter()),
                "stabilized": prof.stabilized(),
            })
        }
        "robba-index" => {
            let (plain, _) = profile(3, "1/2*x^-1", false)?;
            let (twisted, _) = profile(3, "1/2*x^-1", true)?;
            let ends = twisted.endpoint_slopes.clone().ok_or_else(|| CliError::Other("no endpoint slopes".into()))?;
            json!({
                "untwisted_r": strings(plain.samples.iter().map(|s| &s.r)),
                "twisted_r": strings(twisted.samples.iter().map(|s| &s.r)),
                "inner_slope": ends.inner.to_string(),
                "outer_slope": ends.outer.to_string(),
                "index": robba_index(&twisted)?.to_string(),
            })
        }
        "scale-invariance" => {
            let cases = [
                (3, VarietySpec::parse_affine(2, "x^2*y - x")?, 2, 6),
                (5, VarietySpec::parse_torus(1, "x + x^-1")?, 2, 6),
                (5, VarietySpec::parse_torus(1, "x + x^-1")?, 3, 6),
            ];
            let mut out = Vec::new();
            for (p, v, c, levels) in cases {
                let base = build_field(p, 1)?;
                let r = scaled_degree_check(&v, &base, &base.from_int(c), levels, None)?;
                out.push(json!({
                    "variety": crate::run::describe(&v),
                    "field": format!("F_{p}"),
                    "c": c,
                    "degree": [r.original.degree(), r.scaled.degree()],
                    "total_degree": [r.original.total_degree(), r.scaled.total_degree()],
                    "twist_matches": r.twist_matches,
                    "consistent": r.consistent(),
                }));
            }
            json!({ "cases": out })
        }
        _ => return Err(unknown(case)),
    };
    match obj {
        Value::Object(m) => Ok(m),
        _ => unreachable!("cases produce objects"),
    }
}

fn strings<T: ToString>(xs: impl Iterator<Item = T>) -> Vec<String> {
    xs.map(|x| x.to_string()).collect()
}

fn l_series_json(l: &LSeries) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("numerator".into(), l.numerator().to_string().into());
    m.insert("denominator".into(), l.denominator().to_string().into());
    m.insert("degree".into(), l.degree().into());
    m.insert("total_degree".into(), l.total_degree().into());
    m.insert("certified_order".into(), l.certified_order().into());
    m
}

fn l_series_case(p: u32, v: VarietySpec, levels: usize, prediction: Option<PredictSpec>) -> Result<Value, CliError> {
    let field = FieldSpec { p, n: 1 };
    let table = power_sum_table(&v, &field.build()?, levels, None)?;
    let l = reconstruct(&exp_power_sums(&table.sequence), None)?;
    let mut m = l_series_json(&l);
    m.insert("field".into(), crate::run::field_label(&field).into());
    m.insert("values".into(), strings(table.sequence.values.iter()).into());
    if let Some(spec) = prediction {
        let c = compare(&spec, &l)?;
        m.insert("predicted_degree".into(), json!(c.prediction.predicted_degree));
        m.insert("predicted_signed".into(), json!(c.prediction.signed_euler));
        m.insert("verdict".into(), serde_json::to_value(&c.verdict)?);
    }
    Ok(Value::Object(m))
}

/// Betti prediction plus `S_1, S_2` of the defining product over `F_5`.
fn arrangement(b: Vec<u64>, f: &str) -> Result<Value, CliError> {
    let d = betti_degree(&BettiSpec { n: 3, b })?;
    let v = VarietySpec::AffineSpace { dim: 3, f: Polynomial::parse(f)? };
    let table = power_sum_table(&v, &build_field(5, 1)?, 2, None)?;
    Ok(json!({
        "degree": d.degree as u64,
        "total_bound": d.total_bound as u64,
        "signed": d.signed as i64,
        "power_sums_f5": table.sequence.records(),
    }))
}

fn profile(p: u32, g: &str, twist: bool) -> Result<(RadiusProfile, usize), CliError> {
    profile_for(&DiffSystemSpec { p, g: g.into(), twist }, &Overrides::default())
}
