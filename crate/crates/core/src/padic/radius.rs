use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{factorial_valuation, symbol_sequence, GaussWeight, PadicError, RationalFunctionPi, SymbolSequence};

/// One point of a radius profile, `r = -log_p R(rho)` at `rho = p^{-lambda}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusSample {
    pub lambda: BigRational,
    pub r: BigRational,
    /// The estimate from the last two consecutive powers of `p` agrees with
    /// the one from the pair before.
    pub stabilized: bool,
    /// `max(lambda, (v(s!) - v(b_s))/s)` at `s = s_max`.
    pub raw_at_smax: BigRational,
    /// Spread of the running value `max(lambda, (v(s!) - v(b_s))/s)` over the
    /// last `window` indices.
    pub oscillation: BigRational,
    pub window: usize,
    /// The Gauss norm of the denominator is attained by more than one
    /// monomial, so `g` may have a pole on `|x| = rho`.
    pub pole_on_circle: bool,
}

/// `dr/dlambda` at the two ends of the sampled range. `inner` is the end with
/// the smallest radius (largest `lambda`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointSlopes {
    pub inner: BigRational,
    pub outer: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusProfile {
    pub p: u32,
    /// Sorted by increasing `lambda`.
    pub samples: Vec<RadiusSample>,
    /// Present when there are at least two samples.
    pub endpoint_slopes: Option<EndpointSlopes>,
}

impl RadiusProfile {
    pub fn from_samples(p: u32, mut samples: Vec<RadiusSample>) -> Self {
        samples.sort_by(|a, b| a.lambda.cmp(&b.lambda));
        samples.dedup_by(|a, b| a.lambda == b.lambda);
        let endpoint_slopes = (samples.len() >= 2).then(|| {
            let slope = |a: &RadiusSample, b: &RadiusSample| (&b.r - &a.r) / (&b.lambda - &a.lambda);
            let n = samples.len();
            EndpointSlopes { inner: slope(&samples[n - 2], &samples[n - 1]), outer: slope(&samples[0], &samples[1]) }
        });
        RadiusProfile { p, samples, endpoint_slopes }
    }

    pub fn stabilized(&self) -> bool {
        self.samples.iter().all(|s| s.stabilized)
    }

    /// `dr/dlambda` between each adjacent pair of samples.
    pub fn slopes(&self) -> Vec<BigRational> {
        self.samples.windows(2).map(|w| (&w[1].r - &w[0].r) / (&w[1].lambda - &w[0].lambda)).collect()
    }

    pub fn records(&self) -> Vec<RadiusRecord> {
        self.samples
            .iter()
            .map(|s| RadiusRecord {
                lambda: s.lambda.to_string(),
                r: s.r.to_string(),
                stabilized: s.stabilized,
                raw_at_smax: s.raw_at_smax.to_string(),
                oscillation: s.oscillation.to_string(),
                pole_on_circle: s.pole_on_circle,
            })
            .collect()
    }
}

/// Flat form of a [`RadiusSample`] with rationals as strings like `"3/2"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusRecord {
    pub lambda: String,
    pub r: String,
    pub stabilized: bool,
    pub raw_at_smax: String,
    pub oscillation: String,
    pub pole_on_circle: bool,
}

pub const DEFAULT_S_MAX: usize = 200;

pub fn default_grid() -> Vec<BigRational> {
    [(1, 4), (1, 2), (1, 1), (3, 2), (2, 1)]
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

/// Radius profile of `d/dx - g` over the grid of `lambda` values.
///
/// The estimate at each `lambda` is `max(lambda, slope)` where `slope` is the
/// growth of `u(s) = v(s!) - v_lambda(b_s)` between the two largest powers of
/// `p` not exceeding `s_max`: `(u(p^K) - u(p^{K-1})) / (p^K - p^{K-1})`.
/// Using powers of `p` removes the digit-sum wobble of `v(s!)`, and the
/// difference quotient removes the constant offset that keeps `u(s)/s` from
/// ever reaching its limit. A sample is stabilized when the previous pair
/// `(p^{K-2}, p^{K-1})` gives the same value.
pub fn radius_profile(g: &RationalFunctionPi, grid: &[BigRational], s_max: usize) -> Result<RadiusProfile, PadicError> {
    if grid.is_empty() {
        return Err(PadicError::EmptyGrid);
    }
    let seq = symbol_sequence(g, s_max)?;
    radius_profile_of(&seq, g.p(), grid)
}

pub fn radius_profile_of(seq: &SymbolSequence, p: u32, grid: &[BigRational]) -> Result<RadiusProfile, PadicError> {
    let samples = grid
        .par_iter()
        .map(|lambda| radius_sample(seq, p, &GaussWeight::new(lambda.clone())?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RadiusProfile::from_samples(p, samples))
}

fn radius_sample(seq: &SymbolSequence, p: u32, w: &GaussWeight) -> Result<RadiusSample, PadicError> {
    let lambda = &w.lambda;
    let s_max = seq.s_max();
    // u(s), None standing for -infinity (b_s = 0)
    let u = |s: usize| -> Option<BigRational> {
        seq.valuation(s, lambda).finite().map(|v| factorial_valuation(p, s as u64) - v)
    };
    let running = |s: usize| -> BigRational {
        match u(s) {
            Some(x) => (x / BigRational::from_integer(s.into())).max(lambda.clone()),
            None => lambda.clone(),
        }
    };
    let mut powers = vec![1usize];
    while powers.last().expect("nonempty") * (p as usize) <= s_max {
        powers.push(powers.last().expect("nonempty") * p as usize);
    }
    let pair_estimate = |k: usize| -> BigRational {
        let (hi, lo) = (powers[k], powers[k - 1]);
        let est = match (u(hi), u(lo)) {
            (None, _) => return lambda.clone(),
            (Some(a), None) => a / BigRational::from_integer(hi.into()),
            (Some(a), Some(b)) => (a - b) / BigRational::from_integer((hi - lo).into()),
        };
        est.max(lambda.clone())
    };
    let top = powers.len() - 1;
    let (r, stabilized) = match top {
        0 => (running(s_max), false),
        1 => (pair_estimate(1), false),
        _ => {
            let r = pair_estimate(top);
            let stable = r == pair_estimate(top - 1);
            (r, stable)
        }
    };
    let window = s_max.div_ceil(4).max(1);
    let tail: Vec<BigRational> = (s_max + 1 - window..=s_max).map(running).collect();
    let hi = tail.iter().max().expect("window is nonempty");
    let lo = tail.iter().min().expect("window is nonempty");
    let pole_on_circle = seq.denominator().dominant_indices(lambda).len() >= 2;
    Ok(RadiusSample {
        lambda: lambda.clone(),
        r,
        stabilized,
        raw_at_smax: running(s_max),
        oscillation: hi - lo,
        window,
        pole_on_circle,
    })
}

/// Euler characteristic on the closed annulus spanned by the profile:
/// slope at the inner end minus slope at the outer end.
pub fn robba_index(profile: &RadiusProfile) -> Result<BigInt, PadicError> {
    let slopes = profile.endpoint_slopes.as_ref().ok_or(PadicError::TooFewSamples)?;
    let (first, last) = (profile.samples.first(), profile.samples.last());
    let ends_stable = [first, profile.samples.get(1), profile.samples.iter().rev().nth(1), last]
        .into_iter()
        .flatten()
        .all(|s| s.stabilized);
    if !ends_stable {
        return Err(PadicError::NotStabilized);
    }
    let index = &slopes.inner - &slopes.outer;
    if !index.is_integer() {
        return Err(PadicError::NonIntegralIndex(index.to_string()));
    }
    Ok(index.to_integer())
}

/// Gauss valuation in `y` of `sum_{nu=1}^{terms} y^nu / t^{nu+1}` where `|t|`
/// has weight `lambda` and `y` has weight `r_weight > lambda`. The minimum is
/// attained at `nu = 1`, giving `r_weight - 2 lambda`.
pub fn taylor_norm_check(
    p: u32,
    lambda: &BigRational,
    r_weight: &BigRational,
    terms: usize,
) -> Result<BigRational, PadicError> {
    if terms == 0 {
        return Err(PadicError::BadOrder);
    }
    if r_weight <= lambda {
        return Err(PadicError::Invalid(format!("r-weight {r_weight} must exceed lambda {lambda}")));
    }
    let w = GaussWeight::new(lambda.clone())?;
    let mut best: Option<BigRational> = None;
    for nu in 1..=terms {
        let coeff = RationalFunctionPi::monomial(super::PiNumber::one(p), -(nu as i64 + 1));
        let v = super::gauss_valuation(&coeff, &w)?;
        let v = v.finite().expect("monomial is nonzero") + r_weight * BigRational::from_integer(nu.into());
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    Ok(best.expect("at least one term"))
}
