use std::sync::Arc;

use super::{build_field, prime_factors, FieldCtx, FieldError, FqElem};

/// Log-domain marker for the zero element.
pub const ZERO_LOG: u32 = u32::MAX;

/// Largest field for which lookup tables are built (three `u32` tables).
const MAX_TABLE_ORDER: u64 = 1 << 24;

/// `F_{p^n}` as discrete logarithms to a fixed primitive element `g`.
///
/// An element is `g^k` with `k in 0..Q-1`, or [`ZERO_LOG`]. Multiplication
/// adds exponents; addition goes through the Zech table
/// `zech[k] = log(1 + g^k)`. The absolute trace to `F_p` is tabulated per
/// logarithm. This is the enumeration fast path; [`FqElem`] is the reference
/// arithmetic it is tested against.
#[derive(Debug)]
pub struct LogField {
    ctx: Arc<FieldCtx>,
    qm1: u32,
    /// `exp[k]` is the code of `g^k`.
    exp: Vec<u32>,
    /// `log[code]`, with `log[0] = ZERO_LOG`.
    log: Vec<u32>,
    zech: Vec<u32>,
    trace: Vec<u16>,
    half: u32,
}

impl LogField {
    pub fn new(p: u32, n: u32) -> Result<Self, FieldError> {
        let ctx = build_field(p, n)?;
        Self::from_ctx(ctx)
    }

    pub fn from_ctx(ctx: Arc<FieldCtx>) -> Result<Self, FieldError> {
        let q = ctx.order();
        if q > MAX_TABLE_ORDER {
            return Err(FieldError::TooLarge { p: ctx.p(), n: ctx.degree() });
        }
        let q = q as u32;
        let qm1 = q - 1;
        let g = primitive_element(&ctx);

        // Trace of each basis vector x^i, then trace is linear in coordinates.
        let basis_trace: Vec<u32> =
            (0..ctx.degree()).map(|i| ctx.from_code((ctx.p() as u64).pow(i)).trace_to_prime()).collect();
        let p = ctx.p();
        let trace_of = |coeffs: &[u32]| -> u16 {
            (coeffs.iter().zip(&basis_trace).map(|(&c, &t)| c as u64 * t as u64).sum::<u64>() % p as u64) as u16
        };

        let mut exp = Vec::with_capacity(qm1 as usize);
        let mut trace = Vec::with_capacity(qm1 as usize);
        let mut log = vec![ZERO_LOG; q as usize];
        let mut cur = ctx.one();
        for k in 0..qm1 {
            let code = cur.code() as u32;
            exp.push(code);
            trace.push(trace_of(cur.coeffs()));
            debug_assert_eq!(log[code as usize], ZERO_LOG);
            log[code as usize] = k;
            cur = &cur * &g;
        }
        let mut zech = Vec::with_capacity(qm1 as usize);
        for k in 0..qm1 {
            // code(1 + g^k): bump the constant digit
            let code = exp[k as usize];
            let c0 = code % p;
            let bumped = code - c0 + (c0 + 1) % p;
            zech.push(log[bumped as usize]);
        }
        let half = if p == 2 { 0 } else { qm1 / 2 };
        Ok(LogField { ctx, qm1, exp, log, zech, trace, half })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    /// `Q = p^n`.
    pub fn order(&self) -> u32 {
        self.qm1 + 1
    }

    /// `Q - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u32 {
        self.qm1
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO_LOG || b == ZERO_LOG {
            return ZERO_LOG;
        }
        let s = a + b;
        if s >= self.qm1 {
            s - self.qm1
        } else {
            s
        }
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        debug_assert!(b != ZERO_LOG);
        if a == ZERO_LOG {
            return ZERO_LOG;
        }
        if a >= b {
            a - b
        } else {
            a + self.qm1 - b
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO_LOG {
            return b;
        }
        if b == ZERO_LOG {
            return a;
        }
        let d = if b >= a { b - a } else { b + self.qm1 - a };
        let z = self.zech[d as usize];
        if z == ZERO_LOG {
            ZERO_LOG
        } else {
            self.mul(a, z)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == ZERO_LOG {
            a
        } else {
            self.mul(a, self.half)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `a^e` for any integer exponent (`a` nonzero when `e < 0`).
    #[inline]
    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == ZERO_LOG {
            return if e == 0 { 0 } else { ZERO_LOG };
        }
        ((a as i64 * e).rem_euclid(self.qm1 as i64)) as u32
    }

    /// Absolute trace to `F_p` of the element with logarithm `a`.
    #[inline]
    pub fn trace(&self, a: u32) -> u16 {
        if a == ZERO_LOG {
            0
        } else {
            self.trace[a as usize]
        }
    }

    pub fn from_elem(&self, x: &FqElem) -> u32 {
        assert!(**x.ctx() == *self.ctx, "element from another field");
        self.log[x.code() as usize]
    }

    pub fn to_elem(&self, a: u32) -> FqElem {
        if a == ZERO_LOG {
            self.ctx.zero()
        } else {
            self.ctx.from_code(self.exp[a as usize] as u64)
        }
    }

    /// Logarithm of the prime-field integer `a`.
    pub fn from_int(&self, a: i64) -> u32 {
        let r = a.rem_euclid(self.p() as i64) as usize;
        // prime-field codes are their own value
        self.log[r]
    }

    /// All logarithms `x` with `poly(x) = 0`, where `poly` has prime-field
    /// coefficients (lowest degree first), ascending by element code.
    pub fn roots_of(&self, poly: &[u32]) -> Vec<u32> {
        let coeffs: Vec<u32> = poly.iter().map(|&c| self.from_int(c as i64)).collect();
        let mut roots: Vec<u32> = std::iter::once(ZERO_LOG)
            .chain(0..self.qm1)
            .filter(|&x| {
                let v = coeffs.iter().rev().fold(ZERO_LOG, |acc, &c| self.add(self.mul(acc, x), c));
                v == ZERO_LOG
            })
            .collect();
        roots.sort_by_key(|&x| if x == ZERO_LOG { 0 } else { self.exp[x as usize] });
        roots
    }
}

fn primitive_element(ctx: &Arc<FieldCtx>) -> FqElem {
    let qm1 = ctx.order() - 1;
    let factors = prime_factors(qm1);
    (1..ctx.order())
        .map(|c| ctx.from_code(c))
        .find(|g| factors.iter().all(|&r| g.pow((qm1 / r) as u128) != ctx.one()))
        .expect("the multiplicative group is cyclic")
}
