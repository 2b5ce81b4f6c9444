//! Values computed by an independent brute-force enumeration and frozen here.

use num_bigint::BigInt;

use expsumlab_core::expsum::{power_sum, power_sum_table, VarietySpec};
use expsumlab_core::ffield::{build_field, CyclotomicInt};
use expsumlab_core::lfun::{exp_power_sums, reconstruct, CycloPoly};

fn coords(p: u32, c: &[i64]) -> CyclotomicInt {
    CyclotomicInt::from_coords(p, c.iter().map(|&x| BigInt::from(x)).collect())
}

const A3: &str = "x*y*z*(x - y)*(y - z)*(z - x)";
const B3: &str = "x*y*z*(x + y)*(x - y)*(x + z)*(x - z)*(y + z)*(y - z)";

fn arrangement(expr: &str) -> VarietySpec {
    VarietySpec::AffineSpace { dim: 3, f: expsumlab_core::expsum::Polynomial::parse(expr).unwrap() }
}

#[test]
fn a3_arrangement_first_two_sums() {
    let f5 = build_field(5, 1).unwrap();
    let v = arrangement(A3);
    assert_eq!(power_sum(&v, &f5, 1).unwrap(), coords(5, &[101, 0, 12, 12]));
    assert_eq!(power_sum(&v, &f5, 2).unwrap(), coords(5, &[4645, 0, 0, 0]));
}

#[test]
fn b3_arrangement_first_two_sums() {
    let f5 = build_field(5, 1).unwrap();
    let v = arrangement(B3);
    assert_eq!(power_sum(&v, &f5, 1).unwrap(), coords(5, &[125, 0, 0, 0]));
    assert_eq!(power_sum(&v, &f5, 2).unwrap(), coords(5, &[5425, 0, 0, 0]));
}

#[test]
fn kloosterman_first_two_sums() {
    let f5 = build_field(5, 1).unwrap();
    let v = VarietySpec::parse_torus(1, "x + x^-1").unwrap();
    assert_eq!(power_sum(&v, &f5, 1).unwrap(), coords(5, &[2, 0, 1, 1]));
    assert_eq!(power_sum(&v, &f5, 2).unwrap(), coords(5, &[5, 0, -3, -3]));
}

#[test]
fn kloosterman_l_series_is_quadratic_polynomial() {
    let f5 = build_field(5, 1).unwrap();
    let v = VarietySpec::parse_torus(1, "x + x^-1").unwrap();
    let t = power_sum_table(&v, &f5, 6, None).unwrap();
    let l = reconstruct(&exp_power_sums(&t.sequence), None).unwrap();
    assert_eq!((l.numerator_degree(), l.denominator_degree()), (2, 0));
    // 1 + S_1 t + q t^2
    assert_eq!(l.numerator().coeff(1), t.sequence.values[0].to_rat());
    assert_eq!(l.numerator().coeff(2), expsumlab_core::ffield::CyclotomicRat::from_int(5, 5));
}

#[test]
fn sl2_trace_sums() {
    let f2 = build_field(2, 1).unwrap();
    let v = VarietySpec::Sl2 { coeffs: vec![1.into()] };
    let t = power_sum_table(&v, &f2, 8, None).unwrap();
    let want: Vec<CyclotomicInt> = [2, 12, -40, -16, 352, -576, -1664, 7936].iter().map(|&x| coords(2, &[x])).collect();
    assert_eq!(t.sequence.values, want);
    let l = reconstruct(&exp_power_sums(&t.sequence), None).unwrap();
    assert_eq!(l.numerator(), &CycloPoly::from_ints(2, &[1, 2, 8]));
    assert_eq!(l.denominator(), &CycloPoly::one(2));
    assert_eq!(l.degree(), -2);
}
