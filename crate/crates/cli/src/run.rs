//! The `sum`, `lfun`, `predict`, `radius` and `index` pipelines.

use expsumlab_core::expsum::{power_sum_table, PowerSumRecord, PowerSumTable, VarietySpec};
use expsumlab_core::lfun::{exp_power_sums, reconstruct, LSeries, LSeriesRecord, LfunError, TruncatedSeries};
use expsumlab_core::padic::{radius_profile, robba_index, DiffSystemSpec, RadiusProfile, RadiusRecord};
use expsumlab_core::predict::{fermat_report, newton_degree, FermatReport, Prediction};
use serde::Serialize;

use crate::error::CliError;
use crate::job::{system, FieldSpec, LfunPayload, Overrides, PredictSpec, SumPayload, Task};
use crate::report::{align, CsvTable, Report, Status};
use crate::row;

/// Validates `task` and runs it.
pub fn run_task(task: &Task, ov: &Overrides) -> Result<Report, CliError> {
    task.validate(ov)?;
    match task {
        Task::Sum(s) => sum(s, ov),
        Task::Lfun(l) => lfun(l, ov),
        Task::Predict(p) => predict(p),
        Task::Radius(d) => radius(d, ov, false),
        Task::Index(d) => radius(d, ov, true),
        Task::Verify(v) => crate::verify::verify(&v.case),
    }
}

pub fn field_label(f: &FieldSpec) -> String {
    if f.n == 1 {
        format!("F_{}", f.p)
    } else {
        format!("F_{}^{}", f.p, f.n)
    }
}

pub fn describe(v: &VarietySpec) -> String {
    match v {
        VarietySpec::AffineSpace { dim, f } => format!("A^{dim}, f = {f}"),
        VarietySpec::Torus { dim, f } => format!("G_m^{dim}, f = {f}"),
        VarietySpec::HypersurfaceComplement { dim, g, h, k } => {
            let den = if *k == 1 { format!("({h})") } else { format!("({h})^{k}") };
            format!("A^{dim} minus {{{h} = 0}}, f = ({g})/{den}")
        }
        VarietySpec::Sl2 { coeffs } => {
            let a: Vec<String> = coeffs.iter().map(|c| serde_json::to_string(c).expect("plain value")).collect();
            format!("SL_2, f = sum a_n Tr Sym^n, a = [{}]", a.join(", "))
        }
    }
}

#[derive(Serialize)]
struct SumResult<'a> {
    field: FieldSpec,
    variety: &'a VarietySpec,
    levels: usize,
    power_sums: Vec<PowerSumRecord>,
    /// `S_m` written out in powers of `z = zeta_p`.
    values: Vec<String>,
    /// Points visited per level.
    points: Vec<u64>,
}

fn sum_result<'a>(field: FieldSpec, variety: &'a VarietySpec, table: &PowerSumTable) -> SumResult<'a> {
    SumResult {
        field,
        variety,
        levels: table.sequence.levels(),
        power_sums: table.sequence.records(),
        values: table.sequence.values.iter().map(|s| s.to_string()).collect(),
        points: table.progress.iter().map(|l| u64::try_from(l.points).unwrap_or(u64::MAX)).collect(),
    }
}

fn sums_text(table: &PowerSumTable) -> String {
    let mut rows = vec![row!["m", "S_m", "points", "time"]];
    for (s, l) in table.sequence.values.iter().zip(&table.progress) {
        rows.push(row![l.m, s, l.points, format!("{:.3}s", l.wall_time.as_secs_f64())]);
    }
    align(&rows)
}

fn sums_csv(table: &PowerSumTable) -> CsvTable {
    let p = table.sequence.p;
    let mut header = row!["m", "points"];
    header.extend((0..p - 1).map(|i| format!("c{i}")));
    let rows = table
        .sequence
        .records()
        .into_iter()
        .zip(&table.progress)
        .map(|(r, l)| {
            let mut row = row![r.m, l.points];
            row.extend(r.coords);
            row
        })
        .collect();
    CsvTable { header, rows }
}

fn sum(s: &SumPayload, ov: &Overrides) -> Result<Report, CliError> {
    let base = s.field.build()?;
    let table = power_sum_table(&s.variety, &base, s.levels, ov.budget.map(u128::from))?;
    let text = format!("{} over {}\n\n{}", describe(&s.variety), field_label(&s.field), sums_text(&table));
    Ok(Report {
        command: "sum",
        status: Status::Ok,
        result: serde_json::to_value(sum_result(s.field, &s.variety, &table))?,
        text,
        csv: Some(sums_csv(&table)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictionCheck {
    pub spec: PredictSpec,
    pub prediction: Prediction,
    pub observed_degree: i64,
    pub observed_total_degree: usize,
    pub verdict: Verdict,
}

/// Match when `deg Q - deg P` equals the signed Euler characteristic and the
/// total degree respects the bound, if there is one.
pub fn compare(spec: &PredictSpec, l: &LSeries) -> Result<PredictionCheck, CliError> {
    let prediction = spec.prediction()?;
    let degree_ok = l.degree() as i128 == prediction.signed_euler;
    let total_ok = prediction.total_bound.is_none_or(|b| l.total_degree() as i128 <= b);
    Ok(PredictionCheck {
        spec: spec.clone(),
        prediction,
        observed_degree: l.degree(),
        observed_total_degree: l.total_degree(),
        verdict: if degree_ok && total_ok { Verdict::Match } else { Verdict::Mismatch },
    })
}

#[derive(Serialize)]
struct LfunResult<'a> {
    #[serde(flatten)]
    sums: SumResult<'a>,
    l_series: LSeriesRecord,
    numerator: String,
    denominator: String,
    degree: i64,
    total_degree: usize,
    certified_order: usize,
    bounds_from: BoundsFrom,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<PredictionCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsFrom {
    Job,
    Prediction,
    Sweep,
}

/// Degree bounds come from the job, else from the prediction (a polynomial
/// or a reciprocal polynomial of the predicted degree), else from the sweep.
/// A prediction that does not fit falls back to the sweep so that the
/// comparison can still report a mismatch.
fn reconstruct_for(job: &LfunPayload, s: &TruncatedSeries) -> Result<(LSeries, BoundsFrom), CliError> {
    if let Some([dp, dq]) = job.bounds {
        return Ok((reconstruct(s, Some((dp, dq)))?, BoundsFrom::Job));
    }
    if let Some(p) = &job.prediction {
        let d = p.prediction()?.signed_euler;
        let bounds = if d < 0 { (d.unsigned_abs(), 0) } else { (0, d as u128) };
        if let (Ok(dp), Ok(dq)) = (usize::try_from(bounds.0), usize::try_from(bounds.1)) {
            match reconstruct(s, Some((dp, dq))) {
                Ok(l) => return Ok((l, BoundsFrom::Prediction)),
                Err(LfunError::NoFit { .. } | LfunError::InsufficientOrder { .. } | LfunError::NotNormalized) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok((reconstruct(s, None)?, BoundsFrom::Sweep))
}

pub fn l_series_text(l: &LSeries) -> Vec<Vec<String>> {
    vec![
        row!["P", l.numerator()],
        row!["Q", l.denominator()],
        row!["degree", l.degree()],
        row!["total degree", l.total_degree()],
        row!["certified order", l.certified_order()],
    ]
}

fn lfun(job: &LfunPayload, ov: &Overrides) -> Result<Report, CliError> {
    let base = job.field.build()?;
    let table = power_sum_table(&job.variety, &base, job.levels, ov.budget.map(u128::from))?;
    let (l, bounds_from) = reconstruct_for(job, &exp_power_sums(&table.sequence))?;
    let check = job.prediction.as_ref().map(|p| compare(p, &l)).transpose()?;
    let mut rows = l_series_text(&l);
    if let Some(c) = &check {
        rows.push(row!["predicted degree", c.prediction.predicted_degree]);
        rows.push(row!["predicted signed", c.prediction.signed_euler]);
        if let Some(b) = c.prediction.total_bound {
            rows.push(row!["total bound", b]);
        }
        rows.push(row!["bounds from", serde_json::to_value(bounds_from)?.as_str().unwrap_or_default()]);
        rows.push(row!["verdict", serde_json::to_value(&c.verdict)?.as_str().unwrap_or_default()]);
    }
    let text = format!(
        "{} over {}\n\n{}\nL = P/Q\n{}",
        describe(&job.variety),
        field_label(&job.field),
        sums_text(&table),
        align(&rows)
    );
    let status = match &check {
        Some(c) if c.verdict == Verdict::Mismatch => Status::Mismatch,
        _ => Status::Ok,
    };
    let result = LfunResult {
        sums: sum_result(job.field, &job.variety, &table),
        l_series: l.record(),
        numerator: l.numerator().to_string(),
        denominator: l.denominator().to_string(),
        degree: l.degree(),
        total_degree: l.total_degree(),
        certified_order: l.certified_order(),
        bounds_from,
        prediction: check,
    };
    Ok(Report { command: "lfun", status, result: serde_json::to_value(result)?, text, csv: Some(sums_csv(&table)) })
}

#[derive(Serialize)]
struct NewtonDetail {
    normalized_volume: String,
    degenerate: bool,
}

#[derive(Serialize)]
struct PredictResult<'a> {
    spec: &'a PredictSpec,
    prediction: Prediction,
    #[serde(skip_serializing_if = "Option::is_none")]
    newton: Option<NewtonDetail>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fermat: Option<FermatReport>,
}

fn predict(spec: &PredictSpec) -> Result<Report, CliError> {
    let prediction = spec.prediction()?;
    let newton = match spec {
        PredictSpec::Newton(s) => {
            let r = newton_degree(s)?;
            Some(NewtonDetail { normalized_volume: r.normalized_volume.to_string(), degenerate: r.degenerate })
        }
        _ => None,
    };
    let fermat = match spec {
        PredictSpec::Fermat { n } => Some(fermat_report(*n)?),
        _ => None,
    };
    let mut rows = vec![row!["predicted degree", prediction.predicted_degree], row!["signed", prediction.signed_euler]];
    if let Some(b) = prediction.total_bound {
        rows.push(row!["total bound", b]);
    }
    if let Some(n) = &newton {
        rows.push(row!["normalized volume", n.normalized_volume]);
        rows.push(row!["degenerate hull", n.degenerate]);
    }
    if let Some(f) = &fermat {
        rows.push(row!["chern", f.chern]);
        rows.push(row!["newton", f.newton]);
        rows.push(row!["n^n (n+1)", f.closed_form]);
        rows.push(row!["discrepancy", f.discrepancy]);
    }
    let result = PredictResult { spec, prediction, newton, fermat };
    Ok(Report {
        command: "predict",
        status: Status::Ok,
        result: serde_json::to_value(result)?,
        text: format!("{}\n", align(&rows).trim_end()),
        csv: None,
    })
}

#[derive(Serialize)]
struct Slopes {
    inner: String,
    outer: String,
}

#[derive(Serialize)]
pub struct RadiusResult<'a> {
    system: &'a DiffSystemSpec,
    /// The connection form after any twist.
    g: String,
    s_max: usize,
    profile: Vec<RadiusRecord>,
    slopes: Vec<String>,
    endpoint_slopes: Option<Slopes>,
    stabilized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<String>,
}

pub fn profile_for(d: &DiffSystemSpec, ov: &Overrides) -> Result<(RadiusProfile, usize), CliError> {
    let g = system(d)?;
    let s_max = ov.s_max()?;
    Ok((radius_profile(&g, &ov.grid()?, s_max)?, s_max))
}

fn radius(d: &DiffSystemSpec, ov: &Overrides, with_index: bool) -> Result<Report, CliError> {
    let g = system(d)?;
    let (profile, s_max) = profile_for(d, ov)?;
    let index = if with_index { Some(robba_index(&profile)?.to_string()) } else { None };
    let records = profile.records();
    let mut rows = vec![row!["lambda", "r", "stabilized", "raw at s_max", "oscillation", "pole on circle"]];
    for r in &records {
        rows.push(row![r.lambda, r.r, r.stabilized, r.raw_at_smax, r.oscillation, r.pole_on_circle]);
    }
    let mut tail = Vec::new();
    if let Some(s) = &profile.endpoint_slopes {
        tail.push(row!["inner slope", s.inner]);
        tail.push(row!["outer slope", s.outer]);
    }
    if let Some(i) = &index {
        tail.push(row!["index", i]);
    }
    let twist = if d.twist { " + pi*x^-2" } else { "" };
    let text =
        format!("d/dx - g, g = {}{twist}, p = {}, s_max = {s_max}\n\n{}\n{}", d.g, d.p, align(&rows), align(&tail));
    let csv = CsvTable {
        header: row!["lambda", "r", "stabilized", "raw_at_smax", "oscillation", "pole_on_circle"],
        rows: records
            .iter()
            .map(|r| row![r.lambda, r.r, r.stabilized, r.raw_at_smax, r.oscillation, r.pole_on_circle])
            .collect(),
    };
    let result = RadiusResult {
        system: d,
        g: g.to_string(),
        s_max,
        slopes: profile.slopes().iter().map(|s| s.to_string()).collect(),
        endpoint_slopes: profile
            .endpoint_slopes
            .as_ref()
            .map(|s| Slopes { inner: s.inner.to_string(), outer: s.outer.to_string() }),
        stabilized: profile.stabilized(),
        profile: records,
        index,
    };
    Ok(Report {
        command: if with_index { "index" } else { "radius" },
        status: Status::Ok,
        result: serde_json::to_value(result)?,
        text,
        csv: Some(csv),
    })
}
