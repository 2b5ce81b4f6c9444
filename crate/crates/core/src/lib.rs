//! Exact exponential sums over finite fields and the degree of their L-series.
//!
//! The crate has two halves. The arithmetic side enumerates points of a
//! variety over `F_{q^m}`, accumulates `S_m(f) = sum psi(Tr f(x))` exactly in
//! `Z[zeta_p]`, and reconstructs `L_f(t) = exp(sum S_m t^m / m)` as a
//! certified rational function. The predictive side computes the degrees the
//! topology says to expect (Chern integrals on projective space, the curve
//! formula, Milnor-fiber Betti numbers, Newton polytope volumes) and the
//! p-adic radius profiles whose slopes give the Robba index.
//!
//! ```
//! use expsumlab_core::expsum::{power_sum_table, VarietySpec};
//! use expsumlab_core::ffield::build_field;
//! use expsumlab_core::lfun::{exp_power_sums, reconstruct};
//!
//! let base = build_field(3, 1).unwrap();
//! let f = VarietySpec::parse_affine(2, "x0^2*x1 - x0").unwrap();
//! let table = power_sum_table(&f, &base, 4, None).unwrap();
//! let l = reconstruct(&exp_power_sums(&table.sequence), None).unwrap();
//! assert_eq!((l.degree(), l.total_degree()), (1, 1));
//! ```

pub mod expsum;
pub mod ffield;
pub mod lfun;
pub mod padic;
pub mod predict;
