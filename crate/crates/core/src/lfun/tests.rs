use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::expsum::PowerSumSequence;
use crate::ffield::CyclotomicInt;

fn ints(p: u32, v: &[i64]) -> PowerSumSequence {
    PowerSumSequence { p, n: 1, values: v.iter().map(|&x| CyclotomicInt::from_int(p, BigInt::from(x))).collect() }
}

#[test]
fn exp_examples() {
    assert_eq!(exp_power_sums(&ints(3, &[3, 9, 27, 81])), TruncatedSeries::from_ints(3, &[1, 3, 9, 27, 81]));
    assert_eq!(exp_power_sums(&ints(3, &[0, 0, 0])), TruncatedSeries::from_ints(3, &[1, 0, 0, 0]));
    assert_eq!(exp_power_sums(&ints(3, &[-1, -1, -1])), TruncatedSeries::from_ints(3, &[1, -1, 0, 0]));
}

#[test]
fn pade_examples() {
    let l = pade_reconstruct(&TruncatedSeries::from_ints(3, &[1, 3, 9, 27, 81]), 0, 1).unwrap();
    assert_eq!(l.numerator(), &CycloPoly::from_ints(3, &[1]));
    assert_eq!(l.denominator(), &CycloPoly::from_ints(3, &[1, -3]));
    assert_eq!((l.degree(), l.total_degree()), (1, 1));

    let l = pade_reconstruct(&TruncatedSeries::from_ints(3, &[1, -1, 0, 0, 0]), 1, 0).unwrap();
    assert_eq!(l.numerator(), &CycloPoly::from_ints(3, &[1, -1]));
    assert_eq!(l.denominator(), &CycloPoly::one(3));
    assert_eq!((l.degree(), l.total_degree()), (-1, 1));

    let l = pade_reconstruct(&TruncatedSeries::from_ints(5, &[1, 1, 2, 4, 8]), 1, 1).unwrap();
    assert_eq!(l.numerator(), &CycloPoly::from_ints(5, &[1, -1]));
    assert_eq!(l.denominator(), &CycloPoly::from_ints(5, &[1, -2]));
    assert_eq!((l.degree(), l.total_degree()), (0, 2));
    assert!(l.verify_certificate());
}

#[test]
fn pade_errors() {
    let s = TruncatedSeries::from_ints(3, &[1, 1, 2, 4, 8]);
    assert!(matches!(pade_reconstruct(&s, 2, 2), Err(LfunError::InsufficientOrder { needed: 5, order: 4, .. })));
    assert!(matches!(pade_reconstruct(&s, 1, 0), Err(LfunError::NoFit { .. })));
    // 2 + t has P(0) = 2
    assert!(matches!(
        pade_reconstruct(&TruncatedSeries::from_ints(3, &[2, 1, 0, 0]), 1, 0),
        Err(LfunError::NotNormalized)
    ));
    assert!(matches!(
        reconstruct(&TruncatedSeries::from_ints(3, &[1, 1, 2]), None),
        Err(LfunError::Uncertified { order: 2 })
    ));
}

#[test]
fn common_factor_is_removed() {
    // (1 - t)(1 + 2t) / ((1 - t)(1 - 3t)), both bounds loose
    let num = CycloPoly::from_ints(3, &[1, 1, -2]);
    let den = CycloPoly::from_ints(3, &[1, -4, 3]);
    let s = TruncatedSeries::from_rational(&num, &den, 8).unwrap();
    let l = pade_reconstruct(&s, 2, 2).unwrap();
    assert_eq!(l.numerator(), &CycloPoly::from_ints(3, &[1, 2]));
    assert_eq!(l.denominator(), &CycloPoly::from_ints(3, &[1, -3]));
}

#[test]
fn sweep_finds_minimal_shape() {
    let s = exp_power_sums(&ints(3, &[3, 9, 27, 81, 243, 729]));
    let l = reconstruct(&s, None).unwrap();
    assert_eq!(l.denominator(), &CycloPoly::from_ints(3, &[1, -3]));
    assert_eq!(l.certified_order(), 6);
    let l = reconstruct(&exp_power_sums(&ints(3, &[0, 0, 0])), None).unwrap();
    assert_eq!(l.total_degree(), 0);
}

#[test]
fn record_round_trip() {
    let l = pade_reconstruct(&TruncatedSeries::from_ints(5, &[1, 1, 2, 4, 8]), 1, 1).unwrap();
    let rec = l.record();
    assert_eq!(rec.numerator[1][0], ["-1".to_string(), "1".to_string()]);
    assert_eq!(CycloPoly::from_record(5, &rec.denominator).unwrap(), *l.denominator());
    assert!(CycloPoly::from_record(5, &[vec![["1".into(), "0".into()]; 4]]).is_err());
}

fn cyclo(p: u32) -> impl Strategy<Value = CyclotomicRat> {
    prop::collection::vec((-3i64..4, 1i64..3), (p - 1) as usize).prop_map(move |v| {
        CyclotomicRat::from_coords(p, v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect())
    })
}

/// Random `P` or `Q` with constant term 1 and nonzero top coefficient.
fn normalized_poly(p: u32, max_deg: usize) -> impl Strategy<Value = CycloPoly> {
    prop::collection::vec(cyclo(p), 0..=max_deg).prop_map(move |tail| {
        let mut c = vec![CyclotomicRat::one(p)];
        c.extend(tail);
        CycloPoly::new(p, c)
    })
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pade_round_trip((num, den) in prime().prop_flat_map(|p| (normalized_poly(p, 2), normalized_poly(p, 2)))) {
        let g = CycloPoly::gcd(&num, &den).unwrap();
        prop_assume!(g.degree() == Some(0));
        let (dp, dq) = (num.degree().unwrap(), den.degree().unwrap());
        let order = dp + dq + 1;
        let s = TruncatedSeries::from_rational(&num, &den, order).unwrap();
        let l = pade_reconstruct(&s, dp, dq).unwrap();
        prop_assert_eq!(l.numerator(), &num);
        prop_assert_eq!(l.denominator(), &den);
        prop_assert!(l.verify_certificate());
        prop_assert_eq!(l.expand(order), s);
    }

    #[test]
    fn log_derivative_identity(sums in prime().prop_flat_map(|p| prop::collection::vec(-6i64..7, 6).prop_map(move |v| (p, v)))) {
        let (p, v) = sums;
        let s = exp_power_sums(&ints(p, &v));
        let recovered: Vec<CyclotomicRat> = s.log_derivative_sums().unwrap();
        let want: Vec<CyclotomicRat> = v.iter().map(|&x| CyclotomicRat::from_int(p, x)).collect();
        prop_assert_eq!(&recovered, &want);
        if let Ok(l) = reconstruct(&s, None) {
            prop_assert_eq!(l.power_sums(6), want);
        }
    }

    #[test]
    fn exp_of_negated_sums_is_inverse(sums in prop::collection::vec(prop::collection::vec(-9i64..10, 2), 1..7)) {
        let p = 3;
        let pos: Vec<CyclotomicRat> = sums.iter().map(|c| CyclotomicRat::from_coords(p, c.iter().map(|&x| BigRational::from_integer(x.into())).collect())).collect();
        let neg: Vec<CyclotomicRat> = pos.iter().map(|x| -x).collect();
        let prod = exp_sums(p, &pos).mul(&exp_sums(p, &neg));
        let mut one = vec![CyclotomicRat::zero(p); sums.len() + 1];
        one[0] = CyclotomicRat::one(p);
        prop_assert_eq!(prod, TruncatedSeries::new(p, one));
    }
}
