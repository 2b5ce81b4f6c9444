use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A `p`-adic valuation, `+infinity` for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(BigRational),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// Adds a finite shift; infinity absorbs.
    pub fn shift(&self, by: &BigRational) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + by),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// `v_p` of an integer; `None` for zero.
pub fn vp_int(p: u32, n: &BigInt) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p` of a rational.
pub fn vp_rational(p: u32, q: &BigRational) -> Valuation {
    match (vp_int(p, q.numer()), vp_int(p, q.denom())) {
        (Some(a), Some(b)) => Valuation::Finite(BigRational::from_integer((a - b).into())),
        _ => Valuation::Infinity,
    }
}

/// `sum_i a_i pi^i` in `Q[pi]/(pi^{p-1} + p)`. For `p = 2` this is `Q` with
/// `pi = -2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PiNumber {
    p: u32,
    coords: Vec<BigRational>,
}

impl PiNumber {
    pub fn zero(p: u32) -> Self {
        PiNumber { p, coords: vec![BigRational::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, q: BigRational) -> Self {
        let mut x = Self::zero(p);
        x.coords[0] = q;
        x
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(n.into()))
    }

    /// `pi^k`, reduced.
    pub fn pi_pow(p: u32, k: u32) -> Self {
        let d = p - 1;
        // pi^{d} = -p
        let mut x = Self::from_rational(p, BigRational::from_integer((-(p as i64)).into()).pow((k / d) as i32));
        if !k.is_multiple_of(d) {
            x.coords.rotate_right((k % d) as usize);
        }
        x
    }

    pub fn pi(p: u32) -> Self {
        Self::pi_pow(p, 1)
    }

    pub fn from_coords(p: u32, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), (p - 1) as usize);
        PiNumber { p, coords }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        PiNumber { p: self.p, coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// `min_i v_p(a_i) + i/(p-1)`: the `pi^i` have distinct valuations mod 1,
    /// so no cancellation can occur.
    pub fn valuation(&self) -> Valuation {
        let d = BigRational::from_integer((self.p - 1).into());
        self.coords
            .iter()
            .enumerate()
            .map(|(i, a)| vp_rational(self.p, a).shift(&(BigRational::from_integer(i.into()) / &d)))
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "pi-numbers for different primes");
    }
}

impl Add<&PiNumber> for &PiNumber {
    type Output = PiNumber;
    fn add(self, rhs: &PiNumber) -> PiNumber {
        self.assert_same(rhs);
        PiNumber { p: self.p, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&PiNumber> for &PiNumber {
    type Output = PiNumber;
    fn sub(self, rhs: &PiNumber) -> PiNumber {
        self.assert_same(rhs);
        PiNumber { p: self.p, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&PiNumber> for &PiNumber {
    type Output = PiNumber;
    fn mul(self, rhs: &PiNumber) -> PiNumber {
        self.assert_same(rhs);
        let d = self.coords.len();
        let mut out = vec![BigRational::zero(); d];
        let minus_p = BigRational::from_integer((-(self.p as i64)).into());
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let prod = a * b;
                if i + j < d {
                    out[i + j] += prod;
                } else {
                    out[i + j - d] += prod * &minus_p;
                }
            }
        }
        PiNumber { p: self.p, coords: out }
    }
}

impl Neg for &PiNumber {
    type Output = PiNumber;
    fn neg(self) -> PiNumber {
        PiNumber { p: self.p, coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for PiNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*pi")?,
                _ => write!(f, "{a}*pi^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PiNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `v_p(s!) = (s - digit sum of s in base p) / (p - 1)`.
pub fn factorial_valuation(p: u32, s: u64) -> BigRational {
    let mut digits = 0u64;
    let mut n = s;
    while n > 0 {
        digits += n % p as u64;
        n /= p as u64;
    }
    BigRational::new((s - digits).into(), (p - 1).into())
}
