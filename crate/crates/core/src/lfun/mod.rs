//! `L_f(t) = exp(sum S_m t^m / m)` as a truncated series over `Q(zeta_p)`,
//! and its reconstruction as a certified rational function `P/Q`.

mod poly;
mod series;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::CyclotomicRat;
pub use poly::CycloPoly;
pub use series::{exp_power_sums, exp_sums, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfunError {
    #[error("bounds ({dp}, {dq}) need order {needed}, series has order {order}")]
    InsufficientOrder { dp: usize, dq: usize, needed: usize, order: usize },
    #[error("no rational function with deg P <= {dp}, deg Q <= {dq} matches through order {order}")]
    NoFit { dp: usize, dq: usize, order: usize },
    #[error("P(0) != Q(0): series does not start with 1")]
    NotNormalized,
    #[error("reconstruction not certified at order {order}")]
    Uncertified { order: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad L-series record: {0}")]
    BadRecord(String),
}

/// `u P + v Q = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub u: CycloPoly,
    pub v: CycloPoly,
}

/// `P/Q` in lowest terms with `P(0) = Q(0) = 1`, matching its source series
/// through `t^certified_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSeries {
    numerator: CycloPoly,
    denominator: CycloPoly,
    certified_order: usize,
    certificate: BezoutCertificate,
}

impl LSeries {
    pub fn p(&self) -> u32 {
        self.numerator.p()
    }

    /// `P`.
    pub fn numerator(&self) -> &CycloPoly {
        &self.numerator
    }

    /// `Q`.
    pub fn denominator(&self) -> &CycloPoly {
        &self.denominator
    }

    pub fn certified_order(&self) -> usize {
        self.certified_order
    }

    pub fn certificate(&self) -> &BezoutCertificate {
        &self.certificate
    }

    pub fn numerator_degree(&self) -> usize {
        self.numerator.degree().unwrap_or(0)
    }

    pub fn denominator_degree(&self) -> usize {
        self.denominator.degree().unwrap_or(0)
    }

    /// `deg Q - deg P`.
    pub fn degree(&self) -> i64 {
        self.denominator_degree() as i64 - self.numerator_degree() as i64
    }

    /// `deg P + deg Q`.
    pub fn total_degree(&self) -> usize {
        self.denominator_degree() + self.numerator_degree()
    }

    pub fn verify_certificate(&self) -> bool {
        let BezoutCertificate { u, v } = &self.certificate;
        u.mul(&self.numerator).add(&v.mul(&self.denominator)) == CycloPoly::one(self.p())
    }

    pub fn expand(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_rational(&self.numerator, &self.denominator, order).expect("Q(0) = 1")
    }

    /// `S_1..S_order` recovered from `t (P'Q - PQ') / (PQ)`.
    pub fn power_sums(&self, order: usize) -> Vec<CyclotomicRat> {
        let (pp, q) = (&self.numerator, &self.denominator);
        let num = pp.derivative().mul(q).sub(&pp.mul(&q.derivative()));
        let num = CycloPoly::monomial(CyclotomicRat::one(self.p()), 1).mul(&num);
        let ratio = TruncatedSeries::from_rational(&num, &pp.mul(q), order).expect("P(0) Q(0) = 1");
        ratio.coeffs[1..].to_vec()
    }

    pub fn record(&self) -> LSeriesRecord {
        LSeriesRecord {
            p: self.p(),
            numerator: self.numerator.to_record(),
            denominator: self.denominator.to_record(),
            degree: self.degree(),
            total_degree: self.total_degree(),
            certified_order: self.certified_order,
        }
    }
}

/// JSON form of an [`LSeries`]: coefficients indexed `[t-degree][zeta
/// coordinate]` as `[numerator, denominator]` decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSeriesRecord {
    pub p: u32,
    #[serde(rename = "P")]
    pub numerator: Vec<Vec<[String; 2]>>,
    #[serde(rename = "Q")]
    pub denominator: Vec<Vec<[String; 2]>>,
    pub degree: i64,
    pub total_degree: usize,
    pub certified_order: usize,
}

/// Rational reconstruction of `s` with `deg P <= dp`, `deg Q <= dq`.
///
/// Runs extended Euclid on `(t^{M+1}, s)` down to the first remainder of
/// degree `<= dp`, normalizes, strips any common factor and re-checks the
/// expansion through `t^M`. Requires `dp + dq + 1 <= M`, which makes the
/// answer unique.
pub fn pade_reconstruct(s: &TruncatedSeries, dp: usize, dq: usize) -> Result<LSeries, LfunError> {
    let order = s.order();
    let needed = dp + dq + 1;
    if needed > order {
        return Err(LfunError::InsufficientOrder { dp, dq, needed, order });
    }
    let p = s.p;
    let no_fit = LfunError::NoFit { dp, dq, order };
    let series = s.as_poly();
    let (mut r0, mut r1) = (CycloPoly::monomial(CyclotomicRat::one(p), order + 1), series.clone());
    let (mut t0, mut t1) = (CycloPoly::zero(p), CycloPoly::one(p));
    while r1.degree().is_some_and(|d| d > dp) {
        let (q, r) = r0.div_rem(&r1)?;
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t);
    }
    let (mut num, mut den) = (r1, t1);
    if den.degree().is_none_or(|d| d > dq) {
        return Err(no_fit);
    }
    let k = den.t_valuation().expect("nonzero").min(num.t_valuation().unwrap_or(usize::MAX));
    num = num.shift_down(k);
    den = den.shift_down(k);
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(no_fit);
    }
    let d0_inv = d0.inv().map_err(|_| LfunError::DivisionByZero)?;
    num = num.scale(&d0_inv);
    den = den.scale(&d0_inv);

    let g = CycloPoly::gcd(&num, &den)?;
    if g.degree().is_some_and(|d| d > 0) {
        num = num.div_rem(&g)?.0;
        den = den.div_rem(&g)?.0;
        let d0_inv = den.coeff(0).inv().map_err(|_| LfunError::DivisionByZero)?;
        num = num.scale(&d0_inv);
        den = den.scale(&d0_inv);
    }
    if !num.coeff(0).is_one() {
        return Err(LfunError::NotNormalized);
    }
    if den.mul_trunc(&series, order + 1) != num {
        return Err(no_fit);
    }
    let (g, u, v) = CycloPoly::ext_gcd(&num, &den)?;
    if g != CycloPoly::one(p) {
        return Err(no_fit);
    }
    Ok(LSeries { numerator: num, denominator: den, certified_order: order, certificate: BezoutCertificate { u, v } })
}

/// Extra terms demanded beyond `dp + dq + 1` when the degrees are not given.
pub const SWEEP_SLACK: usize = 2;

/// With explicit bounds this is [`pade_reconstruct`]. Otherwise sweeps the
/// total degree `T = dp + dq` upward while `T + 1 + SWEEP_SLACK <= M` and
/// returns the first certified reconstruction.
pub fn reconstruct(s: &TruncatedSeries, bounds: Option<(usize, usize)>) -> Result<LSeries, LfunError> {
    if let Some((dp, dq)) = bounds {
        return pade_reconstruct(s, dp, dq);
    }
    let order = s.order();
    let mut total = 0;
    while total + 1 + SWEEP_SLACK <= order {
        for dp in 0..=total {
            match pade_reconstruct(s, dp, total - dp) {
                Ok(l) => return Ok(l),
                Err(LfunError::NoFit { .. }) | Err(LfunError::NotNormalized) => {}
                Err(e) => return Err(e),
            }
        }
        total += 1;
    }
    Err(LfunError::Uncertified { order })
}

#[cfg(test)]
mod tests;
