//! Exponential sums `S_m(f) = sum_{x in X(k_m)} psi(Tr_{k_m/F_p} f(x))`
//! by exhaustive enumeration over `k_m = F_{q^m}`.
//!
//! Each level is built directly as `F_{p^{nm}}` over `F_p`; coefficients of
//! `f`, which live in the base field `F_q = F_{p^n}`, are carried in through
//! a root of the base modulus found by search. The sum does not depend on
//! which root is used.

mod enumerate;
mod poly;
mod scale;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{CyclotomicInt, FieldCtx, FieldError, FqElem, LogField, ZERO_LOG};
use crate::lfun::LfunError;
use enumerate::{count_sl2, Combine, Sweep};
use poly::CompiledPoly;
pub use poly::{FqValue, Polynomial, Term};
pub use scale::{scaled_degree_check, ScaleReport};

/// Default ceiling on point evaluations for one table.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum ExpSumError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed variety: {0}")]
    Malformed(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("level must be at least 1")]
    BadLevel,
    #[error("job needs about {needed} point evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("L-series reconstruction failed: {0}")]
    Reconstruction(#[from] LfunError),
}

/// A variety `X` with a regular function `f` on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VarietySpec {
    /// `A^dim`, `f` a polynomial.
    AffineSpace { dim: usize, f: Polynomial },
    /// `G_m^dim`, `f` a Laurent polynomial.
    Torus { dim: usize, f: Polynomial },
    /// `A^dim \ {h = 0}`, `f = g / h^k`.
    HypersurfaceComplement {
        dim: usize,
        g: Polynomial,
        h: Polynomial,
        #[serde(default = "one")]
        k: u32,
    },
    /// `SL_2`, `f(A) = sum_{n=1}^N coeffs[n-1] Tr(Sym^n A)`.
    Sl2 { coeffs: Vec<FqValue> },
}

fn one() -> u32 {
    1
}

impl VarietySpec {
    pub fn parse_affine(dim: usize, f: &str) -> Result<Self, ExpSumError> {
        Ok(VarietySpec::AffineSpace { dim, f: Polynomial::parse(f)? })
    }

    pub fn parse_torus(dim: usize, f: &str) -> Result<Self, ExpSumError> {
        Ok(VarietySpec::Torus { dim, f: Polynomial::parse(f)? })
    }

    pub fn validate(&self) -> Result<(), ExpSumError> {
        let check_arity = |p: &Polynomial, dim: usize| {
            if p.arity() > dim {
                Err(ExpSumError::Malformed(format!("{p} has more than {dim} variables")))
            } else {
                Ok(())
            }
        };
        match self {
            VarietySpec::AffineSpace { dim, f } => {
                check_arity(f, *dim)?;
                if f.has_negative_exponent() {
                    return Err(ExpSumError::Malformed(
                        "negative exponent on affine space: f has a pole; use torus or hypersurface_complement".into(),
                    ));
                }
            }
            VarietySpec::Torus { dim, f } => check_arity(f, *dim)?,
            VarietySpec::HypersurfaceComplement { dim, g, h, .. } => {
                check_arity(g, *dim)?;
                check_arity(h, *dim)?;
                if g.has_negative_exponent() || h.has_negative_exponent() {
                    return Err(ExpSumError::Malformed("g and h must be polynomials".into()));
                }
            }
            VarietySpec::Sl2 { .. } => {}
        }
        Ok(())
    }

    /// The same variety with `f` replaced by `c * f`.
    pub fn scaled(&self, c: &FqElem) -> Result<Self, ExpSumError> {
        let base = c.ctx();
        Ok(match self {
            VarietySpec::AffineSpace { dim, f } => VarietySpec::AffineSpace { dim: *dim, f: f.scaled(c)? },
            VarietySpec::Torus { dim, f } => VarietySpec::Torus { dim: *dim, f: f.scaled(c)? },
            VarietySpec::HypersurfaceComplement { dim, g, h, k } => {
                VarietySpec::HypersurfaceComplement { dim: *dim, g: g.scaled(c)?, h: h.clone(), k: *k }
            }
            VarietySpec::Sl2 { coeffs } => VarietySpec::Sl2 {
                coeffs: coeffs
                    .iter()
                    .map(|a| Ok(FqValue::from_elem(&(&a.to_elem(base)? * c))))
                    .collect::<Result<_, ExpSumError>>()?,
            },
        })
    }

    /// Upper bound on point evaluations at level `m` (field of order `big_q`).
    fn work_at(&self, big_q: u128) -> u128 {
        match self {
            VarietySpec::AffineSpace { dim, .. } | VarietySpec::HypersurfaceComplement { dim, .. } => {
                big_q.saturating_pow(*dim as u32)
            }
            VarietySpec::Torus { dim, .. } => (big_q - 1).saturating_pow(*dim as u32),
            VarietySpec::Sl2 { .. } => big_q.saturating_pow(3),
        }
    }

    /// Estimated point evaluations for levels `1..=levels`.
    pub fn estimated_work(&self, base: &FieldCtx, levels: usize) -> u128 {
        (1..=levels as u32)
            .map(|m| self.work_at((base.order() as u128).saturating_pow(m)))
            .fold(0u128, |a, b| a.saturating_add(b))
    }
}

/// `S_1..S_M` for one `(X, f)` over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumSequence {
    pub p: u32,
    /// `q = p^n`.
    pub n: u32,
    /// `values[m - 1] = S_m`.
    pub values: Vec<CyclotomicInt>,
}

/// One JSON record of a power-sum table: the canonical `zeta`-coordinates of
/// `S_m`, as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumRecord {
    pub m: usize,
    pub coords: Vec<String>,
}

impl PowerSumSequence {
    pub fn levels(&self) -> usize {
        self.values.len()
    }

    pub fn records(&self) -> Vec<PowerSumRecord> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, s)| PowerSumRecord { m: i + 1, coords: s.coords().iter().map(|c| c.to_string()).collect() })
            .collect()
    }

    pub fn from_records(p: u32, n: u32, records: &[PowerSumRecord]) -> Result<Self, ExpSumError> {
        let mut values = Vec::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if r.m != i + 1 || r.coords.len() != (p - 1) as usize {
                return Err(ExpSumError::Malformed(format!("bad power-sum record {}", r.m)));
            }
            let coords = r
                .coords
                .iter()
                .map(|c| c.parse::<BigInt>().map_err(|e| ExpSumError::Malformed(e.to_string())))
                .collect::<Result<_, _>>()?;
            values.push(CyclotomicInt::from_coords(p, coords));
        }
        Ok(PowerSumSequence { p, n, values })
    }

    /// Every conjugate of `S_m` is a sum of `#X(k_m)` roots of unity, so its
    /// absolute value is at most that count (checked in `f64`).
    pub fn within_conjugate_bound(&self, point_counts: &[u128]) -> bool {
        self.values.iter().zip(point_counts).all(|(s, &n)| {
            let bound = n as f64 * (1.0 + 1e-9) + 1e-6;
            s.conjugate_abs().into_iter().all(|a| a <= bound)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProgress {
    pub m: usize,
    /// Points of `X(k_m)` visited (points where `f` is defined).
    pub points: u128,
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct PowerSumTable {
    pub sequence: PowerSumSequence,
    pub progress: Vec<LevelProgress>,
}

/// One level of the tower: the field `F_{q^m}` and the image of the base
/// field's generator in it.
#[derive(Debug)]
pub struct Level {
    pub field: LogField,
    base: Arc<FieldCtx>,
    beta: u32,
}

impl Level {
    /// Builds `F_{p^{nm}}` and embeds `F_q` via the smallest root (by code)
    /// of the base modulus.
    pub fn new(base: &Arc<FieldCtx>, m: u32) -> Result<Self, ExpSumError> {
        Self::with_root(base, m, 0)
    }

    /// As [`Level::new`] but using the `which`-th root of the base modulus.
    pub fn with_root(base: &Arc<FieldCtx>, m: u32, which: usize) -> Result<Self, ExpSumError> {
        if m == 0 {
            return Err(ExpSumError::BadLevel);
        }
        let field = LogField::new(base.p(), base.degree() * m)?;
        let roots = field.roots_of(base.modulus());
        let beta = *roots.get(which).ok_or(FieldError::NoRoot)?;
        Ok(Level { field, base: Arc::clone(base), beta })
    }

    pub fn root_count(&self) -> usize {
        self.field.roots_of(self.base.modulus()).len()
    }

    /// Log of the image of a base-field value.
    pub fn embed(&self, v: &FqValue) -> Result<u32, ExpSumError> {
        let x = v.to_elem(&self.base)?;
        Ok(self.embed_elem(&x))
    }

    pub fn embed_elem(&self, x: &FqElem) -> u32 {
        let f = &self.field;
        x.coeffs().iter().rev().fold(ZERO_LOG, |acc, &c| f.add(f.mul(acc, self.beta), f.from_int(c as i64)))
    }

    /// Counts of points per trace value of `f` and the number of points.
    fn counts(&self, v: &VarietySpec) -> Result<Vec<u64>, ExpSumError> {
        v.validate()?;
        let embed = |c: &FqValue| self.embed(c);
        let field = &self.field;
        Ok(match v {
            VarietySpec::AffineSpace { dim, f } | VarietySpec::Torus { dim, f } => {
                let polys = [CompiledPoly::compile(f, *dim, field, embed)?];
                let affine = matches!(v, VarietySpec::AffineSpace { .. });
                Sweep { field, polys: &polys, dim: *dim, affine, combine: Combine::Single }.count()
            }
            VarietySpec::HypersurfaceComplement { dim, g, h, k } => {
                let polys =
                    [CompiledPoly::compile(g, *dim, field, embed)?, CompiledPoly::compile(h, *dim, field, embed)?];
                let qm1 = field.group_order() as i64;
                let neg_k = (-(*k as i64)).rem_euclid(qm1) as u32;
                Sweep { field, polys: &polys, dim: *dim, affine: true, combine: Combine::Quotient { neg_k } }.count()
            }
            VarietySpec::Sl2 { coeffs } => {
                let a: Vec<u32> = coeffs.iter().map(embed).collect::<Result<_, _>>()?;
                let qm1 = field.group_order();
                let trace_value: Vec<u16> = (0..qm1)
                    .chain(std::iter::once(ZERO_LOG))
                    .map(|t| {
                        let s = sym_trace_log(field, t, a.len());
                        let f =
                            a.iter().zip(&s[1..]).fold(ZERO_LOG, |acc, (&an, &sn)| field.add(acc, field.mul(an, sn)));
                        field.trace(f)
                    })
                    .collect();
                count_sl2(field, &trace_value)
            }
        })
    }
}

/// Levels of the tower over a fixed base field, built on demand and shared.
#[derive(Debug)]
pub struct Tower {
    base: Arc<FieldCtx>,
    levels: Mutex<HashMap<u32, Arc<Level>>>,
}

impl Tower {
    pub fn new(base: &Arc<FieldCtx>) -> Self {
        Tower { base: Arc::clone(base), levels: Mutex::new(HashMap::new()) }
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn level(&self, m: u32) -> Result<Arc<Level>, ExpSumError> {
        if let Some(l) = self.levels.lock().expect("tower cache").get(&m) {
            return Ok(Arc::clone(l));
        }
        let level = Arc::new(Level::new(&self.base, m)?);
        self.levels.lock().expect("tower cache").insert(m, Arc::clone(&level));
        Ok(level)
    }
}

/// `s_n = Tr(Sym^n A)` for `n = 0..=max_order`, from `t = Tr(A)` and
/// `det A = 1`: `s_0 = 1, s_1 = t, s_n = t s_{n-1} - s_{n-2}`.
pub fn sym_trace(t: &FqElem, max_order: usize) -> Vec<FqElem> {
    let ctx = t.ctx();
    let mut s = vec![ctx.one()];
    if max_order >= 1 {
        s.push(t.clone());
    }
    for n in 2..=max_order {
        let next = &(t * &s[n - 1]) - &s[n - 2];
        s.push(next);
    }
    s
}

fn sym_trace_log(field: &LogField, t: u32, max_order: usize) -> Vec<u32> {
    let mut s = vec![0u32];
    if max_order >= 1 {
        s.push(t);
    }
    for n in 2..=max_order {
        let next = field.sub(field.mul(t, s[n - 1]), s[n - 2]);
        s.push(next);
    }
    s
}

/// `#X(k_m)`.
pub fn count_points(v: &VarietySpec, base: &Arc<FieldCtx>, m: u32) -> Result<u128, ExpSumError> {
    if m == 0 {
        return Err(ExpSumError::BadLevel);
    }
    v.validate()?;
    let big_q = (base.order() as u128).pow(m);
    Ok(match v {
        VarietySpec::AffineSpace { dim, .. } => big_q.pow(*dim as u32),
        VarietySpec::Torus { dim, .. } => (big_q - 1).pow(*dim as u32),
        VarietySpec::Sl2 { .. } => big_q.pow(3) - big_q,
        VarietySpec::HypersurfaceComplement { dim, h, .. } => {
            let probe = VarietySpec::HypersurfaceComplement { dim: *dim, g: Polynomial::zero(), h: h.clone(), k: 1 };
            let level = Level::new(base, m)?;
            level.counts(&probe)?.iter().map(|&c| c as u128).sum()
        }
    })
}

/// `S_m(f)` exactly.
pub fn power_sum(v: &VarietySpec, base: &Arc<FieldCtx>, m: u32) -> Result<CyclotomicInt, ExpSumError> {
    let level = Level::new(base, m)?;
    power_sum_at(v, &level)
}

/// `S_m(f)` on an already built level (lets callers pick the embedding).
pub fn power_sum_at(v: &VarietySpec, level: &Level) -> Result<CyclotomicInt, ExpSumError> {
    let counts = level.counts(v)?;
    Ok(CyclotomicInt::from_counts(level.field.p(), &counts))
}

/// `S_1..S_M`, refusing up front when the work estimate exceeds `budget`
/// (default [`DEFAULT_BUDGET`]).
pub fn power_sum_table(
    v: &VarietySpec,
    base: &Arc<FieldCtx>,
    levels: usize,
    budget: Option<u128>,
) -> Result<PowerSumTable, ExpSumError> {
    power_sum_table_in(v, &Tower::new(base), levels, budget)
}

pub fn power_sum_table_in(
    v: &VarietySpec,
    tower: &Tower,
    levels: usize,
    budget: Option<u128>,
) -> Result<PowerSumTable, ExpSumError> {
    if levels == 0 {
        return Err(ExpSumError::BadLevel);
    }
    v.validate()?;
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let needed = v.estimated_work(tower.base(), levels);
    if needed > budget {
        return Err(ExpSumError::BudgetExceeded { needed, budget });
    }
    let p = tower.base().p();
    let mut values = Vec::with_capacity(levels);
    let mut progress = Vec::with_capacity(levels);
    for m in 1..=levels {
        let start = Instant::now();
        let level = tower.level(m as u32)?;
        let counts = level.counts(v)?;
        let points = counts.iter().map(|&c| c as u128).sum();
        values.push(CyclotomicInt::from_counts(p, &counts));
        let wall_time = start.elapsed();
        log::info!("level {m}: {points} points in {wall_time:?}");
        progress.push(LevelProgress { m, points, wall_time });
    }
    Ok(PowerSumTable { sequence: PowerSumSequence { p, n: tower.base().degree(), values }, progress })
}

#[cfg(test)]
mod tests;
