//! Dense polynomials over `F_p` on plain `u64` coefficient vectors, lowest
//! degree first. Only what irreducibility testing and field reduction need.

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (`m` nonzero).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !r.is_empty() {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

pub(crate) fn pow_poly_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: `m` (monic, degree n) is irreducible iff `x^{p^n} = x mod m`
/// and `gcd(x^{p^{n/r}} - x, m) = 1` for every prime `r | n`.
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[k] = x^{p^k} mod m
    let mut frob = vec![rem(&x, m, p)];
    for k in 1..=n {
        let next = pow_poly_mod(&frob[k - 1], p, m, p);
        frob.push(next);
    }
    if sub(&frob[n], &rem(&x, m, p), p) != Vec::<u64>::new() {
        return false;
    }
    for r in super::prime_factors(n as u64) {
        let k = n / r as usize;
        let diff = sub(&frob[k], &x, p);
        let g = gcd(&diff, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(m: &[u64], p: u64) -> bool {
        (0..p).any(|a| m.iter().rev().fold(0, |acc, &c| (acc * a + c) % p) == 0)
    }

    #[test]
    fn quadratics_over_f3_match_root_test() {
        // A quadratic is irreducible iff it has no root.
        for c0 in 0..3 {
            for c1 in 0..3 {
                let m = [c0, c1, 1];
                assert_eq!(is_irreducible(&m, 3), !has_root(&m, 3), "{m:?}");
            }
        }
    }

    #[test]
    fn known_irreducibles() {
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2)); // x^4+x+1
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2)); // (x^2+x+1)^2
        assert!(is_irreducible(&[1, 1, 0, 1, 1, 0, 0, 0, 1], 2)); // AES
                                                                  // x^4 + 1 over F_3 has no root but factors into quadratics.
        assert!(!has_root(&[1, 0, 0, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 3));
    }
}
