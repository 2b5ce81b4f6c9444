use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Element `sum_{i < p-1} a_i zeta^i` of `Z[zeta_p]`.
///
/// `zeta^{p-1}` is always rewritten as `-(1 + zeta + ... + zeta^{p-2})`, so
/// equal elements have equal coordinates. For `p = 2` there is one coordinate
/// and `zeta = -1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    coords: Vec<BigInt>,
}

/// Same representation over `Q`: the field `Q(zeta_p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicRat {
    p: u32,
    coords: Vec<BigRational>,
}

/// `psi(a) = zeta_p^a` for the character with `psi(1) = zeta_p`.
pub fn additive_character(p: u32, a: u64) -> CyclotomicInt {
    CyclotomicInt::zeta_pow(p, a)
}

/// Folds a length-`p` vector of `zeta^k` coefficients into canonical form.
fn reduce<T>(mut full: Vec<T>) -> Vec<T>
where
    T: Clone + for<'a> std::ops::SubAssign<&'a T>,
{
    let top = full.pop().expect("length p");
    for c in full.iter_mut() {
        *c -= &top;
    }
    full
}

fn convolve<T>(p: u32, a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::SubAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let p = p as usize;
    let mut full = vec![T::zero(); p];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let k = (i + j) % p;
            full[k] = full[k].clone() + x * y;
        }
    }
    reduce(full)
}

fn twist<T>(p: u32, coords: &[T], u: u64) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::SubAssign<&'a T>,
{
    let pu = p as u64;
    let mut full = vec![T::zero(); p as usize];
    for (i, c) in coords.iter().enumerate() {
        let k = ((i as u64 * u) % pu) as usize;
        full[k] = full[k].clone() + c.clone();
    }
    reduce(full)
}

fn check_unit(p: u32, u: i64) -> Result<u64, FieldError> {
    let r = u.rem_euclid(p as i64) as u64;
    if r == 0 {
        Err(FieldError::NotAUnit(u))
    } else {
        Ok(r)
    }
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt { p, coords: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, BigInt::one())
    }

    pub fn from_int(p: u32, n: BigInt) -> Self {
        let mut z = Self::zero(p);
        z.coords[0] = n;
        z
    }

    pub fn zeta_pow(p: u32, a: u64) -> Self {
        let mut full = vec![BigInt::zero(); p as usize];
        full[(a % p as u64) as usize] = BigInt::one();
        CyclotomicInt { p, coords: reduce(full) }
    }

    /// `sum_a counts[a] zeta^a`; the natural output of a character sum.
    pub fn from_counts(p: u32, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        CyclotomicInt { p, coords: reduce(counts.iter().map(|&c| BigInt::from(c)).collect()) }
    }

    /// Takes canonical coordinates as given (length `p - 1`).
    pub fn from_coords(p: u32, coords: Vec<BigInt>) -> Self {
        assert_eq!(coords.len(), (p - 1) as usize);
        CyclotomicInt { p, coords }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// The automorphism `zeta -> zeta^u`.
    pub fn galois_twist(&self, u: i64) -> Result<Self, FieldError> {
        let u = check_unit(self.p, u)?;
        Ok(CyclotomicInt { p: self.p, coords: twist(self.p, &self.coords, u) })
    }

    /// The `p - 1` complex embeddings `zeta -> exp(2 pi i u / p)`, in low precision.
    pub fn conjugate_abs(&self) -> Vec<f64> {
        let p = self.p as f64;
        (1..self.p.max(2))
            .map(|u| {
                let (mut re, mut im) = (0.0f64, 0.0f64);
                for (i, c) in self.coords.iter().enumerate() {
                    let theta = 2.0 * std::f64::consts::PI * (i as f64) * (u as f64) / p;
                    let c: f64 = c.to_string().parse().unwrap_or(f64::INFINITY);
                    re += c * theta.cos();
                    im += c * theta.sin();
                }
                re.hypot(im)
            })
            .collect()
    }

    pub fn to_rat(&self) -> CyclotomicRat {
        CyclotomicRat { p: self.p, coords: self.coords.iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic elements for different primes");
    }
}

impl CyclotomicRat {
    pub fn zero(p: u32) -> Self {
        CyclotomicRat { p, coords: vec![BigRational::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, q: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coords[0] = q;
        z
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(n.into()))
    }

    pub fn from_coords(p: u32, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), (p - 1) as usize);
        CyclotomicRat { p, coords }
    }

    pub fn zeta_pow(p: u32, a: u64) -> Self {
        CyclotomicInt::zeta_pow(p, a).to_rat()
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

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.p)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// `Some` when every coordinate is an integer.
    pub fn to_int(&self) -> Option<CyclotomicInt> {
        if self.coords.iter().all(|c| c.is_integer()) {
            Some(CyclotomicInt { p: self.p, coords: self.coords.iter().map(|c| c.to_integer()).collect() })
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicRat { p: self.p, coords: self.coords.iter().map(|c| c * q).collect() }
    }

    pub fn galois_twist(&self, u: i64) -> Result<Self, FieldError> {
        let u = check_unit(self.p, u)?;
        Ok(CyclotomicRat { p: self.p, coords: twist(self.p, &self.coords, u) })
    }

    /// Field norm down to `Q`: the product of all `p - 1` conjugates.
    pub fn norm(&self) -> BigRational {
        let (_, n) = self.norm_parts();
        n
    }

    /// (product of the non-identity conjugates, norm)
    fn norm_parts(&self) -> (CyclotomicRat, BigRational) {
        let mut others = CyclotomicRat::one(self.p);
        for u in 2..self.p {
            others = &others * &self.galois_twist(u as i64).expect("unit");
        }
        let n = &others * self;
        let n = n.as_rational().expect("the norm is rational").clone();
        (others, n)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (others, n) = self.norm_parts();
        Ok(others.scale(&n.recip()))
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic elements for different primes");
    }
}

macro_rules! ring_ops {
    ($ty:ident, $scalar:ty) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                self.assert_same(rhs);
                $ty { p: self.p, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self.assert_same(rhs);
                $ty { p: self.p, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
            }
        }
        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                self.assert_same(rhs);
                $ty { p: self.p, coords: convolve::<$scalar>(self.p, &self.coords, &rhs.coords) }
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty { p: self.p, coords: self.coords.iter().map(|a| -a).collect() }
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                self.assert_same(rhs);
                for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
                    *a += b;
                }
            }
        }
        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (i, c) in self.coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{}", mag)?,
                        _ if mag.is_one() => write!(f, "z^{}", i)?,
                        _ => write!(f, "{}*z^{}", mag, i)?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    };
}

ring_ops!(CyclotomicInt, BigInt);
ring_ops!(CyclotomicRat, BigRational);

impl Div<&CyclotomicRat> for &CyclotomicRat {
    type Output = CyclotomicRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &CyclotomicRat) -> CyclotomicRat {
        self * &rhs.inv().expect("division by zero in Q(zeta_p)")
    }
}
