use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::fp_poly;
use super::{is_prime, FieldError};

/// `F_p[x]/(modulus)` with the lexicographically smallest monic irreducible
/// modulus of degree `n`, so that every run builds the same basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    /// Monic, lowest degree first, length `n + 1`.
    modulus: Vec<u32>,
}

/// Builds `F_{p^n}`.
///
/// Candidates `x^n + c_{n-1} x^{n-1} + ... + c_0` are ordered
/// lexicographically on `(c_{n-1}, ..., c_0)` and the first irreducible one
/// is taken.
pub fn build_field(p: u32, n: u32) -> Result<Arc<FieldCtx>, FieldError> {
    if !is_prime(p as u64) {
        return Err(FieldError::NotPrime(p as u64));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let count = (p as u64).checked_pow(n).filter(|&c| c <= 1 << 40).ok_or(FieldError::TooLarge { p, n })?;
    let pp = p as u64;
    for k in 0..count {
        let mut m: Vec<u64> = (0..n).map(|i| (k / pp.pow(i)) % pp).collect();
        m.push(1);
        if fp_poly::is_irreducible(&m, pp) {
            let modulus = m.into_iter().map(|c| c as u32).collect();
            return Ok(Arc::new(FieldCtx { p, n, modulus }));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `p^n`.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem { ctx: Arc::clone(self), coeffs: vec![0; self.n as usize] }
    }

    pub fn one(self: &Arc<Self>) -> FqElem {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(self: &Arc<Self>, a: i64) -> FqElem {
        let mut e = self.zero();
        e.coeffs[0] = a.rem_euclid(self.p as i64) as u32;
        e
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(self: &Arc<Self>) -> FqElem {
        if self.n == 1 {
            // modulus x - a: the root is a = -c_0
            return self.from_int(-(self.modulus[0] as i64));
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    /// Element with the given polynomial-basis coordinates (reduced mod p).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[i64]) -> Result<FqElem, FieldError> {
        if coeffs.len() > self.n as usize {
            return Err(FieldError::BadLength { got: coeffs.len(), n: self.n });
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.p as i64) as u32;
        }
        Ok(e)
    }

    /// Element whose coordinates are the base-`p` digits of `code`.
    pub fn from_code(self: &Arc<Self>, mut code: u64) -> FqElem {
        let mut e = self.zero();
        for slot in e.coeffs.iter_mut() {
            *slot = (code % self.p as u64) as u32;
            code /= self.p as u64;
        }
        e
    }

    /// Every element, in code order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |c| self.from_code(c))
    }
}

/// Element of `F_{p^n}` in the polynomial basis of its context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}{:?}", self.ctx.p, self.ctx.n, self.coeffs)
    }
}

impl FqElem {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Base-`p` integer encoding of the coordinates, inverse of
    /// [`FieldCtx::from_code`].
    pub fn code(&self) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.ctx.p as u64 + c as u64)
    }

    /// `Some(a)` when the element lies in the prime subfield.
    pub fn as_prime(&self) -> Option<u32> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_ctx(other)?;
        let p = self.ctx.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        Ok(FqElem { ctx: Arc::clone(&self.ctx), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_ctx(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_ctx(other)?;
        let p = self.ctx.p as u64;
        let n = self.ctx.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        // x^n = -(c_0 + ... + c_{n-1} x^{n-1})
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let m = self.ctx.modulus[i] as u64;
                prod[k - n + i] = (prod[k - n + i] + (p - c) * m) % p;
            }
        }
        prod.truncate(n);
        Ok(FqElem { ctx: Arc::clone(&self.ctx), coeffs: prod.into_iter().map(|c| c as u32).collect() })
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut result = self.ctx.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        result
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.ctx.order() as u128 - 2))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p as u128)
    }

    /// Trace down to the subfield of degree `sub_degree`:
    /// `sum_{i < n/d} x^{p^{i d}}`.
    pub fn trace(&self, sub_degree: u32) -> Result<Self, FieldError> {
        let n = self.ctx.n;
        if sub_degree == 0 || !n.is_multiple_of(sub_degree) {
            return Err(FieldError::NotASubfield { sub: sub_degree, n });
        }
        let step = (self.ctx.p as u128).pow(sub_degree);
        let mut term = self.clone();
        let mut acc = self.clone();
        for _ in 1..n / sub_degree {
            term = term.pow(step);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Absolute trace as an integer in `0..p`.
    pub fn trace_to_prime(&self) -> u32 {
        self.trace(1).ok().and_then(|t| t.as_prime()).expect("absolute trace lies in the prime field")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FqElem> for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                self.$checked(rhs).expect("arithmetic across different fields")
            }
        }
        impl $tr<FqElem> for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: FqElem) -> FqElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        let p = self.ctx.p;
        FqElem { ctx: Arc::clone(&self.ctx), coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect() }
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn prime_field_moduli() {
        assert_eq!(build_field(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(build_field(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(build_field(5, 1).unwrap().order(), 5);
    }

    #[test]
    fn f9_modulus_is_first_rootless_quadratic() {
        // Exhaustive oracle: scan x^2 + c1 x + c0 in (c1, c0) order for no root in F_3.
        let expected =
            (0..9u32).map(|k| (k % 3, k / 3)).find(|&(c0, c1)| (0..3).all(|a| (a * a + c1 * a + c0) % 3 != 0)).unwrap();
        let ctx = build_field(3, 2).unwrap();
        assert_eq!(ctx.modulus(), &[expected.0, expected.1, 1]);
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn f4_is_x2_x_1() {
        assert_eq!(build_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_field(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(build_field(3, 0).unwrap_err(), FieldError::ZeroDegree);
    }

    #[test]
    fn trace_examples() {
        let f4 = build_field(2, 2).unwrap();
        assert!(f4.one().trace(1).unwrap().is_zero());
        let alpha = f4.generator();
        assert_eq!(alpha.trace(1).unwrap(), f4.one());
        let f7 = build_field(7, 1).unwrap();
        for a in 0..7 {
            assert_eq!(f7.from_int(a).trace(1).unwrap(), f7.from_int(a));
        }
        assert_eq!(alpha.trace(3), Err(FieldError::NotASubfield { sub: 3, n: 2 }));
    }

    #[test]
    fn trace_to_intermediate_field_lands_in_subfield() {
        let f = build_field(2, 4).unwrap();
        for x in f.elements() {
            let t = x.trace(2).unwrap();
            // fixed by x -> x^{p^2}
            assert_eq!(t.pow(4), t);
        }
    }

    #[test]
    fn enumeration_and_frobenius() {
        for (p, n) in [(2, 3), (3, 2), (5, 2), (7, 1), (3, 3)] {
            let ctx = build_field(p, n).unwrap();
            let all: Vec<_> = ctx.elements().collect();
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len() as u64, ctx.order());
            let images: HashSet<_> = all.iter().map(|x| x.frobenius()).collect();
            assert_eq!(images.len(), all.len());
            let fixed = all.iter().filter(|x| x.frobenius() == **x).count();
            assert_eq!(fixed, p as usize);
            // Frobenius is additive and multiplicative.
            for a in all.iter().step_by(3) {
                for b in all.iter().step_by(5) {
                    assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
                    assert_eq!((a * b).frobenius(), a.frobenius() * b.frobenius());
                }
            }
        }
    }

    #[test]
    fn trace_is_linear_and_balanced() {
        for (p, n) in [(2, 1), (2, 5), (3, 4), (5, 3), (7, 2), (11, 2), (2, 13), (3, 8)] {
            let ctx = build_field(p, n).unwrap();
            if ctx.order() > 10_000 {
                continue;
            }
            let mut fibers = vec![0u64; p as usize];
            for x in ctx.elements() {
                fibers[x.trace_to_prime() as usize] += 1;
            }
            assert!(fibers.iter().all(|&c| c == ctx.order() / p as u64), "{p}^{n}: {fibers:?}");
            let a = ctx.from_code(ctx.order() / 3);
            let b = ctx.from_code(ctx.order() / 2 + 1);
            let c = ctx.from_int(2);
            let lhs = (&(&c * &a) + &b).trace_to_prime();
            let rhs = (2 * a.trace_to_prime() + b.trace_to_prime()) % p;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_and_code_roundtrip() {
        let ctx = build_field(3, 3).unwrap();
        for x in ctx.elements().skip(1) {
            assert_eq!(&x * &x.inv().unwrap(), ctx.one());
            assert_eq!(ctx.from_code(x.code()), x);
        }
        assert_eq!(ctx.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn cross_context_is_an_error() {
        let a = build_field(3, 2).unwrap().one();
        let b = build_field(3, 1).unwrap().one();
        assert_eq!(a.checked_mul(&b), Err(FieldError::ContextMismatch));
        // Separately built but identical contexts are the same field.
        let c = build_field(3, 2).unwrap().one();
        assert!(a.checked_add(&c).is_ok());
    }
}
