//! Job files: a command name, its payload and optional overrides.

use std::path::Path;
use std::sync::Arc;

use expsumlab_core::expsum::VarietySpec;
use expsumlab_core::ffield::{build_field, FieldCtx};
use expsumlab_core::padic::{default_grid, DiffSystemSpec, RationalFunctionPi, DEFAULT_S_MAX};
use expsumlab_core::predict::{
    betti_prediction, chern_prediction, curve_prediction, fermat_report, newton_prediction, sl2_prediction, BettiSpec,
    ChernSpec, CurveSpec, NewtonSpec, Prediction,
};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Sum,
    Lfun,
    Predict,
    Radius,
    Index,
    Verify,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<String>>,
}

impl JobSpec {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        Ok(serde_json::from_value(read_json(path)?)?)
    }
}

/// Reads a JSON document from `path`, or from stdin when `path` is `-`.
pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::io("<stdin>", e))?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?
    };
    Ok(serde_json::from_str(&text)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub n: u32,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<FieldCtx>, CliError> {
        Ok(build_field(self.p, self.n)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumPayload {
    pub field: FieldSpec,
    pub variety: VarietySpec,
    pub levels: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LfunPayload {
    pub field: FieldSpec,
    pub variety: VarietySpec,
    pub levels: usize,
    /// `[deg P, deg Q]`; swept when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prediction: Option<PredictSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PredictSpec {
    Chern(ChernSpec),
    Curve(CurveSpec),
    Betti(BettiSpec),
    Newton(NewtonSpec),
    /// `SL_2` with `f` of symmetric-power order `n`.
    Sl2 {
        n: u64,
    },
    /// The Fermat hypersurface of degree `n + 1` in `P^n`.
    Fermat {
        n: u32,
    },
}

impl PredictSpec {
    pub fn prediction(&self) -> Result<Prediction, CliError> {
        Ok(match self {
            PredictSpec::Chern(s) => chern_prediction(s)?,
            PredictSpec::Curve(s) => curve_prediction(s)?,
            PredictSpec::Betti(s) => betti_prediction(s)?,
            PredictSpec::Newton(s) => newton_prediction(s)?,
            PredictSpec::Sl2 { n } => {
                if *n == 0 {
                    return Err(CliError::Schema("sl2 needs n >= 1".into()));
                }
                sl2_prediction(*n)
            }
            PredictSpec::Fermat { n } => {
                let r = fermat_report(*n)?;
                Prediction { predicted_degree: r.chern.abs(), signed_euler: r.chern, total_bound: None }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPayload {
    /// A case name, or `all`.
    pub case: String,
}

/// Budget and precision settings; flags take precedence over job files.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub budget: Option<u64>,
    pub s_max: Option<usize>,
    pub grid: Option<Vec<String>>,
}

impl Overrides {
    /// `self` wins where both are set.
    pub fn or(self, other: Overrides) -> Overrides {
        Overrides {
            budget: self.budget.or(other.budget),
            s_max: self.s_max.or(other.s_max),
            grid: self.grid.or(other.grid),
        }
    }

    pub fn s_max(&self) -> Result<usize, CliError> {
        match self.s_max {
            Some(0) => Err(CliError::Schema("s_max must be at least 1".into())),
            Some(s) => Ok(s),
            None => Ok(DEFAULT_S_MAX),
        }
    }

    pub fn grid(&self) -> Result<Vec<BigRational>, CliError> {
        let Some(grid) = &self.grid else { return Ok(default_grid()) };
        if grid.is_empty() {
            return Err(CliError::Schema("empty lambda grid".into()));
        }
        grid.iter()
            .map(|s| s.trim().parse::<BigRational>().map_err(|e| CliError::Schema(format!("grid value {s:?}: {e}"))))
            .collect()
    }
}

/// A job whose payload has been checked against its command.
#[derive(Debug, Clone)]
pub enum Task {
    Sum(SumPayload),
    Lfun(LfunPayload),
    Predict(PredictSpec),
    Radius(DiffSystemSpec),
    Index(DiffSystemSpec),
    Verify(VerifyPayload),
}

impl Task {
    pub fn parse(command: Command, payload: Value) -> Result<Self, CliError> {
        Ok(match command {
            Command::Sum => Task::Sum(serde_json::from_value(payload)?),
            Command::Lfun => Task::Lfun(serde_json::from_value(payload)?),
            Command::Predict => Task::Predict(serde_json::from_value(payload)?),
            Command::Radius => Task::Radius(serde_json::from_value(payload)?),
            Command::Index => Task::Index(serde_json::from_value(payload)?),
            Command::Verify => Task::Verify(serde_json::from_value(payload)?),
        })
    }

    /// Everything that can be checked without enumerating points or
    /// iterating symbols.
    pub fn validate(&self, ov: &Overrides) -> Result<(), CliError> {
        match self {
            Task::Sum(s) => check_variety(&s.field, &s.variety, s.levels),
            Task::Lfun(l) => {
                check_variety(&l.field, &l.variety, l.levels)?;
                if let Some([dp, dq]) = l.bounds {
                    if dp + dq + 1 > l.levels {
                        return Err(CliError::Schema(format!(
                            "bounds ({dp}, {dq}) need at least {} levels, job has {}",
                            dp + dq + 1,
                            l.levels
                        )));
                    }
                }
                if let Some(p) = &l.prediction {
                    p.prediction()?;
                }
                Ok(())
            }
            Task::Predict(p) => p.prediction().map(|_| ()),
            Task::Radius(d) | Task::Index(d) => {
                system(d)?;
                ov.s_max()?;
                ov.grid()?;
                Ok(())
            }
            Task::Verify(v) => crate::verify::check_case_name(&v.case),
        }
    }
}

pub fn system(d: &DiffSystemSpec) -> Result<RationalFunctionPi, CliError> {
    Ok(d.build()?)
}

fn check_variety(field: &FieldSpec, v: &VarietySpec, levels: usize) -> Result<(), CliError> {
    field.build()?;
    if levels == 0 {
        return Err(CliError::Schema("levels must be at least 1".into()));
    }
    Ok(v.validate()?)
}
