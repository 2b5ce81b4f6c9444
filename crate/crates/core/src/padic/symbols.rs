//! The recurrence for `b_s` in integer arithmetic: with `g = A/D` scaled so
//! that every coefficient of `A` and `D` is an integer combination of powers
//! of `pi`, the numerators `N_s` stay integral and no gcds are needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::gauss_from_valuations;
use super::{PadicError, PiNumber, PiPoly, RationalFunctionPi, Valuation};

/// `sum a_i pi^i` with integer `a_i`.
type IntPi = Vec<BigInt>;
/// Polynomial in `x` with [`IntPi`] coefficients, possibly with zero tail.
type IntPoly = Vec<IntPi>;

fn is_zero(a: &IntPi) -> bool {
    a.iter().all(Zero::is_zero)
}

/// `acc += a * b` in `Z[pi]/(pi^{p-1} + p)`.
fn mul_add(p: u32, acc: &mut IntPi, a: &IntPi, b: &IntPi) {
    let d = acc.len();
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let prod = x * y;
            if i + j < d {
                acc[i + j] += prod;
            } else {
                acc[i + j - d] -= prod * p;
            }
        }
    }
}

fn poly_mul_add(p: u32, acc: &mut IntPoly, a: &IntPoly, b: &IntPoly) {
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !is_zero(x)) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !is_zero(y)) {
            mul_add(p, &mut acc[i + j], x, y);
        }
    }
}

fn derivative(a: &IntPoly) -> IntPoly {
    a.iter().enumerate().skip(1).map(|(i, c)| c.iter().map(|x| x * i).collect()).collect()
}

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(is_zero) {
        a.pop();
    }
    a
}

/// `v_p(n)` for nonzero `n`, by repeated squaring of the divisor.
fn vp_fast(p: &BigInt, n: &BigInt) -> u64 {
    let mut n = n.clone();
    let mut v = 0u64;
    let mut powers = vec![p.clone()];
    loop {
        // climb while divisible by p^{2^k}
        let mut k = 0;
        while k < powers.len() && n.is_multiple_of(&powers[k]) {
            k += 1;
            if k == powers.len() {
                let sq = &powers[k - 1] * &powers[k - 1];
                if sq.bits() > n.bits() {
                    break;
                }
                powers.push(sq);
            }
        }
        if k == 0 {
            return v;
        }
        let k = k - 1;
        n /= &powers[k];
        v += 1u64 << k;
    }
}

/// `v(sum a_i pi^i)` for integer coordinates; `None` for zero.
fn int_pi_valuation(p: u32, pb: &BigInt, a: &IntPi) -> Option<BigRational> {
    let d = (p - 1) as i64;
    a.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| BigRational::new((vp_fast(pb, x) as i64 * d + i as i64).into(), d.into()))
        .min()
}

/// `b_0 .. b_{s_max}` for `d/dx - g`.
#[derive(Debug, Clone)]
pub struct SymbolSequence {
    p: u32,
    den: PiPoly,
    /// `b_s = nums[s] / D^s`
    nums: Vec<IntPoly>,
    num_valuations: Vec<Vec<(usize, BigRational)>>,
}

fn to_int_poly(f: &PiPoly, k: &BigInt) -> IntPoly {
    f.coeffs()
        .iter()
        .map(|c| c.coords().iter().map(|q| (q * BigRational::from_integer(k.clone())).to_integer()).collect())
        .collect()
}

/// `N_0 = 1`, `N_{s+1} = D N_s' + (A - s D') N_s`, which is
/// `b_{s+1} = b_s' + g b_s` for `b_s = N_s / D^s`.
pub fn symbol_sequence(g: &RationalFunctionPi, s_max: usize) -> Result<SymbolSequence, PadicError> {
    if s_max == 0 {
        return Err(PadicError::BadOrder);
    }
    if g.den.is_zero() {
        return Err(PadicError::ZeroDenominator);
    }
    let p = g.p();
    let d = (p - 1) as usize;
    // g = (k A) / (k D) with both sides integral
    let k = g
        .num
        .coeffs()
        .iter()
        .chain(g.den.coeffs())
        .flat_map(|c| c.coords().iter().map(|q| q.denom().clone()))
        .fold(BigInt::one(), |acc, x| acc.lcm(&x));
    let a = to_int_poly(&g.num, &k);
    let dd = to_int_poly(&g.den, &k);
    let ddd = derivative(&dd);
    let pb = BigInt::from(p);
    let mut nums: Vec<IntPoly> = vec![vec![{
        let mut one = vec![BigInt::zero(); d];
        one[0] = BigInt::one();
        one
    }]];
    for s in 0..s_max {
        let n = &nums[s];
        let len = (n.len() + dd.len()).max(n.len() + a.len()).max(1);
        let mut next: IntPoly = vec![vec![BigInt::zero(); d]; len];
        poly_mul_add(p, &mut next, &dd, &derivative(n));
        let mut factor = a.clone();
        factor.resize(factor.len().max(ddd.len()), vec![BigInt::zero(); d]);
        for (f, c) in factor.iter_mut().zip(&ddd) {
            for (x, y) in f.iter_mut().zip(c) {
                *x -= y * s;
            }
        }
        poly_mul_add(p, &mut next, &factor, n);
        nums.push(trim(next));
    }
    let num_valuations = nums
        .iter()
        .map(|n| n.iter().enumerate().filter_map(|(i, c)| int_pi_valuation(p, &pb, c).map(|v| (i, v))).collect())
        .collect();
    let den = PiPoly::new(
        p,
        dd.iter()
            .map(|c| PiNumber::from_coords(p, c.iter().map(|x| BigRational::from_integer(x.clone())).collect()))
            .collect(),
    );
    Ok(SymbolSequence { p, den, nums, num_valuations })
}

impl SymbolSequence {
    pub fn s_max(&self) -> usize {
        self.nums.len() - 1
    }

    /// `D`, scaled so that `g = A/D` has integral coefficients.
    pub fn denominator(&self) -> &PiPoly {
        &self.den
    }

    /// `b_s` as a rational function.
    pub fn term(&self, s: usize) -> RationalFunctionPi {
        let p = self.p;
        let num = PiPoly::new(
            p,
            self.nums[s]
                .iter()
                .map(|c| PiNumber::from_coords(p, c.iter().map(|x| BigRational::from_integer(x.clone())).collect()))
                .collect(),
        );
        let den = (0..s).fold(PiPoly::one(p), |acc, _| acc.mul(&self.den));
        RationalFunctionPi { num, den }
    }

    /// `v_lambda(b_s) = v_lambda(N_s) - s v_lambda(D)`.
    pub fn valuation(&self, s: usize, lambda: &BigRational) -> Valuation {
        let vd = self.den.gauss_valuation(lambda);
        let vd = vd.finite().expect("nonzero denominator");
        gauss_from_valuations(&self.num_valuations[s], lambda).shift(&-(vd * BigRational::from_integer(s.into())))
    }
}
