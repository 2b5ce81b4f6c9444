use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::LfunError;
use crate::ffield::CyclotomicRat;

/// Polynomial in `t` over `Q(zeta_p)`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloPoly {
    p: u32,
    coeffs: Vec<CyclotomicRat>,
}

impl CycloPoly {
    pub fn new(p: u32, mut coeffs: Vec<CyclotomicRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CycloPoly { p, coeffs }
    }

    /// From integer coefficients (in `Q`).
    pub fn from_ints(p: u32, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| CyclotomicRat::from_int(p, c)).collect())
    }

    pub fn zero(p: u32) -> Self {
        CycloPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(CyclotomicRat::one(p))
    }

    pub fn constant(c: CyclotomicRat) -> Self {
        Self::new(c.p(), vec![c])
    }

    /// `c t^k`.
    pub fn monomial(c: CyclotomicRat, k: usize) -> Self {
        let p = c.p();
        let mut coeffs = vec![CyclotomicRat::zero(p); k];
        coeffs.push(c);
        Self::new(p, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[CyclotomicRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> CyclotomicRat {
        self.coeffs.get(i).cloned().unwrap_or_else(|| CyclotomicRat::zero(self.p))
    }

    pub fn leading(&self) -> Option<&CyclotomicRat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_trunc(other, usize::MAX)
    }

    /// Product with terms of degree `>= n` dropped.
    pub fn mul_trunc(&self, other: &Self, n: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(n);
        let mut out = vec![CyclotomicRat::zero(self.p); len];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(i, a)| *i < len && !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(self.p, out)
    }

    pub fn scale(&self, c: &CyclotomicRat) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.p, self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigRational::from_integer(i.into())))
                .collect(),
        )
    }

    /// Number of leading zero coefficients (`t`-adic valuation).
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `t^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Self::new(self.p, self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), LfunError> {
        let dd = d.degree().ok_or(LfunError::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv().map_err(|_| LfunError::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let mut q = vec![CyclotomicRat::zero(self.p); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] = &r[k + j] - &(&c * dj);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(self.p, q), Self::new(self.p, r)))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self, LfunError> {
        let lead = self.leading().ok_or(LfunError::DivisionByZero)?;
        Ok(self.scale(&lead.inv().map_err(|_| LfunError::DivisionByZero)?))
    }

    /// `(g, u, v)` with `u a + v b = g`, `g` monic (zero when both are).
    pub fn ext_gcd(a: &Self, b: &Self) -> Result<(Self, Self, Self), LfunError> {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (Self::one(p), Self::zero(p));
        let (mut v0, mut v1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            (r0, r1) = (r1, r);
            (u0, u1) = (u1, u);
            (v0, v1) = (v1, v);
        }
        match r0.leading() {
            None => Ok((r0, u0, v0)),
            Some(lead) => {
                let inv = lead.inv().map_err(|_| LfunError::DivisionByZero)?;
                Ok((r0.scale(&inv), u0.scale(&inv), v0.scale(&inv)))
            }
        }
    }

    pub fn gcd(a: &Self, b: &Self) -> Result<Self, LfunError> {
        Ok(Self::ext_gcd(a, b)?.0)
    }

    /// Coefficient matrix `[t-degree][zeta-coordinate] = (num, den)` as
    /// decimal strings.
    pub fn to_record(&self) -> Vec<Vec<[String; 2]>> {
        self.coeffs
            .iter()
            .map(|c| c.coords().iter().map(|q| [q.numer().to_string(), q.denom().to_string()]).collect())
            .collect()
    }

    pub fn from_record(p: u32, rec: &[Vec<[String; 2]>]) -> Result<Self, LfunError> {
        let parse = |s: &str| s.parse::<num_bigint::BigInt>().map_err(|_| LfunError::BadRecord(s.to_string()));
        let mut coeffs = Vec::with_capacity(rec.len());
        for row in rec {
            if row.len() != (p - 1) as usize {
                return Err(LfunError::BadRecord(format!("{} coordinates, expected {}", row.len(), p - 1)));
            }
            let coords = row
                .iter()
                .map(|[n, d]| {
                    let d = parse(d)?;
                    if d.is_zero() {
                        return Err(LfunError::BadRecord("zero denominator".into()));
                    }
                    Ok(BigRational::new(parse(n)?, d))
                })
                .collect::<Result<_, _>>()?;
            coeffs.push(CyclotomicRat::from_coords(p, coords));
        }
        Ok(Self::new(p, coeffs))
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = match c.as_rational() {
                Some(r) if r < &BigRational::zero() => (true, (-r).to_string()),
                Some(r) => (false, r.to_string()),
                None => (false, format!("({c})")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = body == "1";
            match i {
                0 => write!(f, "{body}")?,
                _ if unit => write!(f, "t")?,
                _ => write!(f, "{body}*t")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
