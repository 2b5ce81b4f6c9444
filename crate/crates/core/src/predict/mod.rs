//! Degree predictions from topology: a Chern integral on `P^n`, the curve
//! formula, Milnor-fiber Betti numbers, Newton-polytope volumes and `SL_2`.
//!
//! Every prediction comes with a signed Euler characteristic alongside the
//! non-negative degree, since the sign depends on whether `L` is a
//! polynomial or the reciprocal of one.

mod volume;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use volume::{affine_dimension, hull_volume};

/// Largest torus dimension accepted by [`newton_degree`].
pub const MAX_NEWTON_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredictError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("value does not fit in 128 bits")]
    Overflow,
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, PredictError> {
    Err(PredictError::Invalid(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub predicted_degree: i128,
    pub signed_euler: i128,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_bound: Option<i128>,
}

/// `P^n` with line bundles `O(d_i)` carrying multiplicities `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernSpec {
    pub n: u32,
    pub d: Vec<u64>,
    pub e: Vec<u64>,
}

/// `(-1)^n [h^n] (1+h)^{n+1} / ((1 + E h) prod (1 + d_i h))`, `E = sum e_i d_i`.
pub fn chern_degree(s: &ChernSpec) -> Result<BigInt, PredictError> {
    Ok(chern_coefficient(s)? * if s.n.is_multiple_of(2) { 1 } else { -1 })
}

/// The bare coefficient `[h^n]` of the series above.
pub fn chern_coefficient(s: &ChernSpec) -> Result<BigInt, PredictError> {
    if s.n == 0 {
        return invalid("n must be at least 1");
    }
    if s.d.len() != s.e.len() {
        return invalid("d and e must have the same length");
    }
    if s.d.contains(&0) {
        return invalid("degrees d_i must be positive");
    }
    let n = s.n as usize;
    // (1+h)^{n+1} truncated at h^n
    let mut series: Vec<BigInt> = (0..=n).map(|k| binomial(n as u64 + 1, k as u64)).collect();
    let big_e: BigInt = s.d.iter().zip(&s.e).map(|(&d, &e)| BigInt::from(d) * e).sum();
    let mut divide_by = |a: BigInt| {
        // multiply by 1/(1 + a h) = sum (-a)^k h^k
        for k in 1..=n {
            let prev = series[k - 1].clone();
            series[k] -= &a * prev;
        }
    };
    divide_by(big_e);
    for &d in &s.d {
        divide_by(BigInt::from(d));
    }
    Ok(series.swap_remove(n))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn to_i128(x: &BigInt) -> Result<i128, PredictError> {
    x.to_i128().ok_or(PredictError::Overflow)
}

pub fn chern_prediction(s: &ChernSpec) -> Result<Prediction, PredictError> {
    let raw = chern_coefficient(s)?;
    Ok(Prediction { predicted_degree: to_i128(&raw.abs())?, signed_euler: to_i128(&raw)?, total_bound: None })
}

/// Smooth affine curve `V` with a finite map `f` of degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    /// Genus of the compactification.
    pub g: u64,
    /// Punctures of `V` not lying over infinity.
    pub c: u64,
    /// Number of points of `f^{-1}(infinity)`.
    pub m: u64,
    /// Degree of `f`.
    pub d: u64,
}

/// `2g + c + m + d - 2`.
pub fn curve_degree(s: &CurveSpec) -> Result<u64, PredictError> {
    if s.d == 0 || s.m == 0 {
        return invalid("curve needs d >= 1 and m >= 1");
    }
    Ok(2 * s.g + s.c + s.m + s.d - 2)
}

/// The curve's L-series is a polynomial, so the signed value is negative.
pub fn curve_prediction(s: &CurveSpec) -> Result<Prediction, PredictError> {
    let d = curve_degree(s)? as i128;
    Ok(Prediction { predicted_degree: d, signed_euler: -d, total_bound: None })
}

/// Reduced Betti numbers `b_1..b_{n-1}` of the Milnor fiber of a
/// homogeneous polynomial in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiSpec {
    pub n: u32,
    pub b: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiDegree {
    pub degree: u128,
    pub total_bound: u128,
    /// `sum (-1)^{i+1} b_i`.
    pub signed: i128,
}

pub fn betti_degree(s: &BettiSpec) -> Result<BettiDegree, PredictError> {
    if s.n < 1 || s.b.len() != (s.n - 1) as usize {
        return invalid(format!("expected {} Betti numbers for n = {}", s.n.saturating_sub(1), s.n));
    }
    let mut signed: i128 = 0;
    let mut total: u128 = 0;
    for (i, &b) in s.b.iter().enumerate() {
        // entry i holds b_{i+1}, whose sign is (-1)^{i+2}
        signed += if i % 2 == 0 { b as i128 } else { -(b as i128) };
        total += b as u128;
    }
    Ok(BettiDegree { degree: signed.unsigned_abs(), total_bound: total, signed })
}

pub fn betti_prediction(s: &BettiSpec) -> Result<Prediction, PredictError> {
    let b = betti_degree(s)?;
    Ok(Prediction {
        predicted_degree: b.degree as i128,
        signed_euler: b.signed,
        total_bound: Some(b.total_bound as i128),
    })
}

/// Support of a Laurent polynomial on the torus `G_m^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewtonSpec {
    pub n: usize,
    pub support: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonReport {
    /// `n! Vol(conv(support + {0}))`.
    pub normalized_volume: BigRational,
    /// The hull is lower dimensional; the volume is reported as zero.
    pub degenerate: bool,
}

pub fn newton_degree(s: &NewtonSpec) -> Result<NewtonReport, PredictError> {
    if s.n == 0 || s.n > MAX_NEWTON_DIM {
        return invalid(format!("torus dimension must be between 1 and {MAX_NEWTON_DIM}"));
    }
    if s.support.is_empty() {
        return invalid("empty support");
    }
    if let Some(v) = s.support.iter().find(|v| v.len() != s.n) {
        return invalid(format!("exponent vector {v:?} does not have {} entries", s.n));
    }
    let mut pts: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); s.n]];
    pts.extend(s.support.iter().map(|v| v.iter().map(|&x| BigRational::from_integer(x.into())).collect()));
    let factorial: BigInt = (1..=s.n as u64).product();
    Ok(match hull_volume(&pts) {
        Some(v) => NewtonReport { normalized_volume: v * BigRational::from_integer(factorial), degenerate: false },
        None => NewtonReport { normalized_volume: BigRational::zero(), degenerate: true },
    })
}

/// Sign `(-1)^n`: the cohomology sits in the middle degree.
pub fn newton_prediction(s: &NewtonSpec) -> Result<Prediction, PredictError> {
    let r = newton_degree(s)?;
    if !r.normalized_volume.is_integer() {
        return invalid(format!("normalized volume {} is not an integer", r.normalized_volume));
    }
    let d = to_i128(&r.normalized_volume.to_integer())?;
    Ok(Prediction { predicted_degree: d, signed_euler: if s.n.is_multiple_of(2) { d } else { -d }, total_bound: None })
}

/// `L` of `sum_{n <= N} a_n Tr Sym^n` on `SL_2` is `2N`: cohomology of
/// dimensions `N - 1` and `N + 1`.
pub fn sl2_degree(top_order: u64) -> u64 {
    2 * top_order
}

pub fn sl2_prediction(top_order: u64) -> Prediction {
    let d = sl2_degree(top_order) as i128;
    Prediction { predicted_degree: d, signed_euler: -d, total_bound: None }
}

/// The Fermat hypersurface `x_0^{n+1} + ... + x_n^{n+1}` evaluated three
/// ways: the Chern integral, the Newton volume of its torus chart, and the
/// closed form `n^n (n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatReport {
    pub n: u32,
    pub chern: i128,
    pub newton: i128,
    pub closed_form: i128,
    /// The closed form disagrees with the other two.
    pub discrepancy: bool,
}

pub fn fermat_support(n: u32) -> Vec<Vec<i64>> {
    let n = n as usize;
    let mut support = vec![vec![-1; n]];
    for i in 0..n {
        let mut v = vec![-1; n];
        v[i] = n as i64;
        support.push(v);
    }
    support
}

pub fn fermat_report(n: u32) -> Result<FermatReport, PredictError> {
    let ones = vec![1; n as usize + 1];
    let chern = to_i128(&chern_degree(&ChernSpec { n, d: ones.clone(), e: ones })?)?;
    let newton = newton_prediction(&NewtonSpec { n: n as usize, support: fermat_support(n) })?.predicted_degree;
    let closed_form =
        (n as i128).checked_pow(n).and_then(|x| x.checked_mul(n as i128 + 1)).ok_or(PredictError::Overflow)?;
    Ok(FermatReport { n, chern, newton, closed_form, discrepancy: closed_form != chern || closed_form != newton })
}

#[cfg(test)]
mod tests;
