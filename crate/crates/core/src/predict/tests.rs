use proptest::prelude::*;

use super::*;

fn chern(n: u32, d: &[u64], e: &[u64]) -> i64 {
    chern_degree(&ChernSpec { n, d: d.to_vec(), e: e.to_vec() }).unwrap().try_into().unwrap()
}

fn newton(n: usize, support: &[&[i64]]) -> NewtonReport {
    newton_degree(&NewtonSpec { n, support: support.iter().map(|v| v.to_vec()).collect() }).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn chern_examples() {
    assert_eq!(chern(1, &[1, 1], &[1, 1]), 2);
    assert_eq!(chern(2, &[1, 1, 1], &[1, 1, 1]), 9);
    assert_eq!(chern(1, &[1], &[2]), 1);
    assert!(chern_degree(&ChernSpec { n: 1, d: vec![1], e: vec![] }).is_err());
    assert!(chern_degree(&ChernSpec { n: 0, d: vec![], e: vec![] }).is_err());
}

/// `chi(P^n minus r general hyperplanes)` by inclusion-exclusion over which
/// hyperplanes a point lies on: a `j`-fold intersection is `P^{n-j}`.
fn chi_hyperplane_complement(n: u32, r: u32) -> i64 {
    let mut chi = 0i64;
    for mask in 0u32..(1 << r) {
        let j = mask.count_ones();
        if j <= n {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            chi += sign * (n - j + 1) as i64;
        }
    }
    chi
}

#[test]
fn chern_without_poles_is_hyperplane_complement_euler_characteristic() {
    for n in 1..=3u32 {
        for r in 0..=6u32 {
            let s = ChernSpec { n, d: vec![1; r as usize], e: vec![0; r as usize] };
            let raw: i64 = chern_coefficient(&s).unwrap().try_into().unwrap();
            assert_eq!(raw, chi_hyperplane_complement(n, r), "n={n} r={r}");
        }
    }
}

#[test]
fn curve_examples() {
    let c = |g, c, m, d| curve_degree(&CurveSpec { g, c, m, d }).unwrap();
    for d in 1..=20 {
        assert_eq!(c(0, 0, 1, d), d - 1);
    }
    assert_eq!(c(0, 0, 2, 2), 2);
    assert_eq!(c(1, 0, 1, 2), 3);
    assert!(curve_degree(&CurveSpec { g: 0, c: 0, m: 0, d: 1 }).is_err());
    assert!(curve_degree(&CurveSpec { g: 0, c: 0, m: 1, d: 0 }).is_err());
    let base = CurveSpec { g: 1, c: 1, m: 1, d: 1 };
    let b = c(1, 1, 1, 1);
    assert!(c(2, 1, 1, 1) > b && c(1, 2, 1, 1) > b && c(1, 1, 2, 1) > b && c(1, 1, 1, 2) > b);
    assert_eq!(curve_prediction(&base).unwrap().signed_euler, -(b as i128));
}

#[test]
fn betti_examples() {
    let b = |v: &[u64]| betti_degree(&BettiSpec { n: 3, b: v.to_vec() }).unwrap();
    assert_eq!((b(&[7, 18]).degree, b(&[7, 18]).total_bound, b(&[7, 18]).signed), (11, 25, -11));
    assert_eq!((b(&[8, 79]).degree, b(&[8, 79]).total_bound), (71, 87));
    assert_eq!((b(&[0, 0]).degree, b(&[0, 0]).total_bound), (0, 0));
    assert!(betti_degree(&BettiSpec { n: 3, b: vec![1] }).is_err());
}

#[test]
fn newton_examples() {
    assert_eq!(newton(1, &[&[1], &[-1]]).normalized_volume, q(2));
    assert_eq!(newton(1, &[&[2]]).normalized_volume, q(2));
    assert_eq!(newton(2, &[&[-1, -1], &[2, -1], &[-1, 2]]).normalized_volume, q(9));
    // unit cube, cross-polytope
    let cube: Vec<Vec<i64>> = (0..8).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
    let r = newton_degree(&NewtonSpec { n: 3, support: cube }).unwrap();
    assert_eq!(r.normalized_volume, q(6));
    let cross = newton(
        4,
        &[
            &[1, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, -1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, -1, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, -1],
        ],
    );
    assert_eq!(cross.normalized_volume, q(16));
}

#[test]
fn degenerate_hull_is_flagged() {
    let r = newton(2, &[&[1, 1], &[2, 2]]);
    assert!(r.degenerate);
    assert_eq!(r.normalized_volume, q(0));
    assert!(newton_degree(&NewtonSpec { n: 5, support: vec![vec![1; 5]] }).is_err());
    assert!(newton_degree(&NewtonSpec { n: 2, support: vec![vec![1]] }).is_err());
}

#[test]
fn sl2_examples() {
    assert_eq!(sl2_degree(1), 2);
    assert_eq!(sl2_degree(2), 4);
    assert_eq!(sl2_degree(0), 0);
}

#[test]
fn fermat_values() {
    let r = fermat_report(1).unwrap();
    assert_eq!((r.chern, r.newton, r.closed_form, r.discrepancy), (2, 2, 2, false));
    let r = fermat_report(2).unwrap();
    assert_eq!((r.chern, r.newton, r.closed_form, r.discrepancy), (9, 9, 12, true));
    for n in 1..=4 {
        let r = fermat_report(n).unwrap();
        assert_eq!(r.chern, (n as i128 + 1).pow(n));
        assert_eq!(r.newton, r.chern);
    }
}

fn support(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..3, n), 1..6)
}

fn with_dim() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), support(n)))
}

fn hull_of(support: &[Vec<i64>]) -> Option<BigRational> {
    let pts: Vec<Vec<BigRational>> = support.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    hull_volume(&pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn volume_scales_under_dilation((n, s) in with_dim(), k in 1i64..=3) {
        let r = newton_degree(&NewtonSpec { n, support: s.clone() }).unwrap();
        let dilated: Vec<Vec<i64>> = s.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        let rk = newton_degree(&NewtonSpec { n, support: dilated }).unwrap();
        prop_assert_eq!(rk.normalized_volume, r.normalized_volume * q(k.pow(n as u32)));
        prop_assert_eq!(rk.degenerate, r.degenerate);
    }

    #[test]
    fn volume_is_translation_invariant((n, s) in with_dim(), shift in prop::collection::vec(-2i64..3, 3)) {
        // translate the hull itself (origin included) and compare volumes;
        // when 0 stays in the translated hull the Newton degree is unchanged
        let mut with_origin = s.clone();
        with_origin.push(vec![0; n]);
        let moved: Vec<Vec<i64>> = with_origin.iter().map(|v| v.iter().zip(&shift).map(|(x, t)| x + t).collect()).collect();
        prop_assert_eq!(hull_of(&with_origin), hull_of(&moved));
        let contains_origin = moved.iter().any(|v| v.iter().all(|&x| x == 0));
        if contains_origin {
            let a = newton_degree(&NewtonSpec { n, support: s.clone() }).unwrap();
            let b = newton_degree(&NewtonSpec { n, support: moved }).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn volume_is_integral_and_nonnegative((n, s) in with_dim()) {
        let r = newton_degree(&NewtonSpec { n, support: s }).unwrap();
        prop_assert!(r.normalized_volume.is_integer());
        prop_assert!(!r.normalized_volume.is_negative());
        prop_assert_eq!(r.degenerate, r.normalized_volume.is_zero());
    }

    #[test]
    fn betti_total_bounds_degree(b in prop::collection::vec(0u64..1000, 0..6)) {
        let r = betti_degree(&BettiSpec { n: b.len() as u32 + 1, b }).unwrap();
        prop_assert!(r.total_bound >= r.degree);
    }
}
