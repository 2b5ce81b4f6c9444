use std::sync::Arc;

use super::{power_sum_table_in, ExpSumError, FqValue, PowerSumSequence, Tower, VarietySpec};
use crate::ffield::{FieldCtx, FieldError, FqElem};
use crate::lfun::{exp_power_sums, reconstruct, LSeries};

/// L-series of `f` and of `c f`, reconstructed from the same number of terms.
#[derive(Debug, Clone)]
pub struct ScaleReport {
    pub c: FqValue,
    pub original: LSeries,
    pub scaled: LSeries,
    pub original_sums: PowerSumSequence,
    pub scaled_sums: PowerSumSequence,
    /// Degree and total degree agree.
    pub degrees_match: bool,
    /// `S_m(c f) = galois_twist(S_m(f), c)` for every `m`; `None` unless `c`
    /// lies in the prime field.
    pub twist_matches: Option<bool>,
}

impl ScaleReport {
    pub fn consistent(&self) -> bool {
        self.degrees_match && self.twist_matches != Some(false)
    }
}

/// Computes `S_1..S_M` for `f` and `c f`, reconstructs both L-series and
/// compares their degrees.
pub fn scaled_degree_check(
    v: &VarietySpec,
    base: &Arc<FieldCtx>,
    c: &FqElem,
    levels: usize,
    budget: Option<u128>,
) -> Result<ScaleReport, ExpSumError> {
    if c.is_zero() {
        return Err(FieldError::DivisionByZero.into());
    }
    let tower = Tower::new(base);
    let scaled_v = v.scaled(c)?;
    let original_sums = power_sum_table_in(v, &tower, levels, budget)?.sequence;
    let scaled_sums = power_sum_table_in(&scaled_v, &tower, levels, budget)?.sequence;
    let original = reconstruct(&exp_power_sums(&original_sums), None)?;
    let scaled = reconstruct(&exp_power_sums(&scaled_sums), None)?;
    let degrees_match = original.degree() == scaled.degree() && original.total_degree() == scaled.total_degree();
    let twist_matches = match c.as_prime() {
        Some(u) => {
            let mut ok = true;
            for (a, b) in original_sums.values.iter().zip(&scaled_sums.values) {
                ok &= a.galois_twist(u as i64)? == *b;
            }
            Some(ok)
        }
        None => None,
    };
    Ok(ScaleReport {
        c: FqValue::from_elem(c),
        original,
        scaled,
        original_sums,
        scaled_sums,
        degrees_match,
        twist_matches,
    })
}
