use num_rational::BigRational;

use super::{CycloPoly, LfunError};
use crate::expsum::PowerSumSequence;
use crate::ffield::CyclotomicRat;

/// `c_0 + c_1 t + ... + c_M t^M + O(t^{M+1})` over `Q(zeta_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub p: u32,
    pub coeffs: Vec<CyclotomicRat>,
}

impl TruncatedSeries {
    pub fn new(p: u32, coeffs: Vec<CyclotomicRat>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least c_0");
        TruncatedSeries { p, coeffs }
    }

    pub fn from_ints(p: u32, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| CyclotomicRat::from_int(p, c)).collect())
    }

    /// `M`: the coefficients are known through `t^M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn as_poly(&self) -> CycloPoly {
        CycloPoly::new(self.p, self.coeffs.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let prod = self.as_poly().mul_trunc(&other.as_poly(), n);
        Self::new(self.p, (0..n).map(|i| prod.coeff(i)).collect())
    }

    /// Expansion of `num / den` through `t^order`.
    pub fn from_rational(num: &CycloPoly, den: &CycloPoly, order: usize) -> Result<Self, LfunError> {
        let p = num.p();
        let d0 = den.coeff(0).inv().map_err(|_| LfunError::DivisionByZero)?;
        let mut c: Vec<CyclotomicRat> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = num.coeff(k);
            for j in 1..=k.min(den.degree().unwrap_or(0)) {
                acc = &acc - &(&den.coeff(j) * &c[k - j]);
            }
            c.push(&acc * &d0);
        }
        Ok(Self::new(p, c))
    }

    /// `S_1..S_M` with `t L'/L = sum S_m t^m`; needs `c_0` invertible.
    pub fn log_derivative_sums(&self) -> Result<Vec<CyclotomicRat>, LfunError> {
        let m = self.order();
        let tl: Vec<CyclotomicRat> =
            self.coeffs.iter().enumerate().map(|(k, c)| c.scale(&BigRational::from_integer(k.into()))).collect();
        let ratio = Self::from_rational(&CycloPoly::new(self.p, tl), &self.as_poly(), m)?;
        Ok(ratio.coeffs[1..].to_vec())
    }
}

/// `exp(sum_{m <= M} S_m t^m / m)` through `t^M`, by
/// `k c_k = sum_{j=1}^k S_j c_{k-j}`.
pub fn exp_power_sums(s: &PowerSumSequence) -> TruncatedSeries {
    let sums: Vec<CyclotomicRat> = s.values.iter().map(|v| v.to_rat()).collect();
    exp_sums(s.p, &sums)
}

pub fn exp_sums(p: u32, sums: &[CyclotomicRat]) -> TruncatedSeries {
    let mut c = vec![CyclotomicRat::one(p)];
    for k in 1..=sums.len() {
        let mut acc = CyclotomicRat::zero(p);
        for j in 1..=k {
            acc += &(&sums[j - 1] * &c[k - j]);
        }
        c.push(acc.scale(&BigRational::new(1.into(), k.into())));
    }
    TruncatedSeries::new(p, c)
}
