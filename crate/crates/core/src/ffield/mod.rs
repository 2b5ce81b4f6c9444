//! Finite fields `F_{p^n}` in a fixed polynomial basis, and the cyclotomic
//! ring `Z[zeta_p]` where additive character sums take their values.

mod cyclotomic;
mod field;
pub(crate) mod fp_poly;
mod tables;

pub use cyclotomic::{additive_character, CyclotomicInt, CyclotomicRat};
pub use field::{build_field, FieldCtx, FqElem};
pub use tables::{LogField, ZERO_LOG};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{n} is too large for this operation")]
    TooLarge { p: u32, n: u32 },
    #[error("sub-degree {sub} does not divide extension degree {n}")]
    NotASubfield { sub: u32, n: u32 },
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("{0} is not a unit modulo p")]
    NotAUnit(i64),
    #[error("coefficient vector has length {got}, field degree is {n}")]
    BadLength { got: usize, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial has no root in the extension field")]
    NoRoot,
}

/// Deterministic trial-division primality test; the primes here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(15624), vec![2, 3, 7, 31]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(97), vec![97]);
    }
}
