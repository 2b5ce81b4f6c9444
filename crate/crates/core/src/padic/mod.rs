//! Rank-one `p`-adic differential modules `d/dx - g` with `g` rational over
//! `Q(pi)`, `pi^{p-1} = -p`: Gauss norms, radius of convergence profiles and
//! the Robba index. Everything is an exact rational valuation in base `p`.

mod number;
mod poly;
mod radius;
mod symbols;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use number::{factorial_valuation, vp_int, vp_rational, PiNumber, Valuation};
pub use poly::{PiPoly, RationalFunctionPi};
pub use radius::{
    default_grid, radius_profile, radius_profile_of, robba_index, taylor_norm_check, EndpointSlopes, RadiusProfile,
    RadiusRecord, RadiusSample, DEFAULT_S_MAX,
};
pub use symbols::{symbol_sequence, SymbolSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("order must be at least 1")]
    BadOrder,
    #[error("empty lambda grid")]
    EmptyGrid,
    #[error("need at least two samples for endpoint slopes")]
    TooFewSamples,
    #[error("profile has not stabilized at its endpoints")]
    NotStabilized,
    #[error("endpoint slopes differ by {0}, not an integer")]
    NonIntegralIndex(String),
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

/// `rho = p^{-lambda}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussWeight {
    pub lambda: BigRational,
}

impl GaussWeight {
    pub fn new(lambda: BigRational) -> Result<Self, PadicError> {
        Ok(GaussWeight { lambda })
    }
}

/// `v_lambda(num) - v_lambda(den)`; infinite for a zero numerator.
pub fn gauss_valuation(f: &RationalFunctionPi, w: &GaussWeight) -> Result<Valuation, PadicError> {
    let den = f.den.gauss_valuation(&w.lambda);
    let Valuation::Finite(den) = den else { return Err(PadicError::ZeroDenominator) };
    Ok(f.num.gauss_valuation(&w.lambda).shift(&-den))
}

/// `g + pi/x^2`: tensoring with the Dwork module near infinity.
pub fn dwork_twist(g: &RationalFunctionPi) -> RationalFunctionPi {
    g.add(&RationalFunctionPi::monomial(PiNumber::pi(g.p()), -2))
}

/// A rank-one system `d/dx - g` as it appears in job files. `g` is a Laurent
/// polynomial in `x` over `Q(pi)`, e.g. `"1/2*x^-1"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffSystemSpec {
    pub p: u32,
    pub g: String,
    /// Apply [`dwork_twist`] before anything else.
    #[serde(default)]
    pub twist: bool,
}

impl DiffSystemSpec {
    pub fn build(&self) -> Result<RationalFunctionPi, PadicError> {
        if !crate::ffield::is_prime(self.p as u64) {
            return Err(PadicError::Invalid(format!("{} is not prime", self.p)));
        }
        let g = RationalFunctionPi::parse_laurent(self.p, &self.g)?;
        Ok(if self.twist { dwork_twist(&g) } else { g })
    }
}
