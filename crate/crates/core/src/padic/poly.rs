use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{PadicError, PiNumber, Valuation};

/// Polynomial in `x` over `Q(pi)`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct PiPoly {
    p: u32,
    coeffs: Vec<PiNumber>,
}

impl PiPoly {
    pub fn new(p: u32, mut coeffs: Vec<PiNumber>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        PiPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(PiNumber::one(p))
    }

    pub fn constant(c: PiNumber) -> Self {
        Self::new(c.p(), vec![c])
    }

    /// `c x^k`.
    pub fn monomial(c: PiNumber, k: usize) -> Self {
        let p = c.p();
        let mut coeffs = vec![PiNumber::zero(p); k];
        coeffs.push(c);
        Self::new(p, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[PiNumber] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> PiNumber {
        self.coeffs.get(i).cloned().unwrap_or_else(|| PiNumber::zero(self.p))
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
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![PiNumber::zero(self.p); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.p, out)
    }

    pub fn scale(&self, c: &PiNumber) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|a| a.scale(q)).collect())
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

    /// `(i, v(a_i))` for the nonzero coefficients.
    pub fn coefficient_valuations(&self) -> Vec<(usize, BigRational)> {
        self.coeffs.iter().enumerate().filter_map(|(i, a)| a.valuation().finite().map(|v| (i, v.clone()))).collect()
    }

    /// `min_i v(a_i) + i lambda`.
    pub fn gauss_valuation(&self, lambda: &BigRational) -> Valuation {
        gauss_from_valuations(&self.coefficient_valuations(), lambda)
    }

    /// Indices attaining the minimum in [`PiPoly::gauss_valuation`].
    pub fn dominant_indices(&self, lambda: &BigRational) -> Vec<usize> {
        let vals = self.coefficient_valuations();
        let Valuation::Finite(min) = gauss_from_valuations(&vals, lambda) else { return Vec::new() };
        vals.iter()
            .filter(|(i, v)| v + BigRational::from_integer((*i).into()) * lambda == min)
            .map(|(i, _)| *i)
            .collect()
    }
}

pub(crate) fn gauss_from_valuations(vals: &[(usize, BigRational)], lambda: &BigRational) -> Valuation {
    vals.iter()
        .map(|(i, v)| v + BigRational::from_integer((*i).into()) * lambda)
        .min()
        .map_or(Valuation::Infinity, Valuation::Finite)
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `num / den` with coefficients in `Q(pi)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunctionPi {
    pub num: PiPoly,
    pub den: PiPoly,
}

impl RationalFunctionPi {
    pub fn new(num: PiPoly, den: PiPoly) -> Result<Self, PadicError> {
        if den.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        Ok(RationalFunctionPi { num, den })
    }

    pub fn polynomial(num: PiPoly) -> Self {
        let p = num.p();
        RationalFunctionPi { num, den: PiPoly::one(p) }
    }

    pub fn zero(p: u32) -> Self {
        Self::polynomial(PiPoly::zero(p))
    }

    /// `c x^k` for any integer `k`.
    pub fn monomial(c: PiNumber, k: i64) -> Self {
        let p = c.p();
        if k >= 0 {
            Self::polynomial(PiPoly::monomial(c, k as usize))
        } else {
            RationalFunctionPi { num: PiPoly::constant(c), den: PiPoly::monomial(PiNumber::one(p), (-k) as usize) }
        }
    }

    pub fn p(&self) -> u32 {
        self.num.p()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFunctionPi { num: self.num.add(&other.num), den: self.den.clone() };
        }
        RationalFunctionPi {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunctionPi { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    /// Parses a Laurent polynomial in `x` with coefficients in `Q(pi)`, such
    /// as `"1/2*x^-1 + pi*x^-2"` or `"3*pi^2 - x"`.
    pub fn parse_laurent(p: u32, src: &str) -> Result<Self, PadicError> {
        let bad = |m: &str| PadicError::Parse(format!("{m} in {src:?}"));
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty expression"));
        }
        let mut terms: Vec<(PiNumber, i64)> = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if terms.is_empty() => (1, rest),
                _ => return Err(bad("expected + or -")),
            };
            // a term ends at the next +/- that does not follow '^'
            let bytes = body.as_bytes();
            let end = (0..bytes.len())
                .find(|&i| i > 0 && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^')
                .unwrap_or(bytes.len());
            let term = &body[..end];
            rest = &body[end..];
            let mut coeff = PiNumber::from_int(p, sign);
            let mut xpow = 0i64;
            for factor in term.split('*') {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<i64>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                match name {
                    "x" => xpow += exp,
                    "pi" => {
                        if exp < 0 {
                            return Err(bad("negative power of pi"));
                        }
                        coeff = &coeff * &PiNumber::pi_pow(p, exp as u32);
                    }
                    num => {
                        let q = parse_rational(num).ok_or_else(|| bad("bad factor"))?;
                        if factor.contains('^') {
                            return Err(bad("powers of numbers are not supported"));
                        }
                        coeff = coeff.scale(&q);
                    }
                }
            }
            terms.push((coeff, xpow));
        }
        let shift = terms.iter().map(|t| t.1).min().unwrap_or(0).min(0);
        let mut num = PiPoly::zero(p);
        for (c, e) in terms {
            num = num.add(&PiPoly::monomial(c, (e - shift) as usize));
        }
        let den = PiPoly::monomial(PiNumber::one(p), (-shift) as usize);
        Ok(RationalFunctionPi { num, den })
    }
}

/// `"3"`, `"-2"`, or `"1/2"`; a lone `/` followed by digits.
fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for RationalFunctionPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunctionPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
