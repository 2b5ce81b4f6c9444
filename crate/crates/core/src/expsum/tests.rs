use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::ffield::{additive_character, build_field};

fn int(p: u32, n: i64) -> CyclotomicInt {
    CyclotomicInt::from_int(p, BigInt::from(n))
}

fn affine(dim: usize, f: &str) -> VarietySpec {
    VarietySpec::parse_affine(dim, f).unwrap()
}

fn torus(dim: usize, f: &str) -> VarietySpec {
    VarietySpec::parse_torus(dim, f).unwrap()
}

/// Slow path: enumerate with `FqElem` arithmetic, no log tables.
fn reference_sum(v: &VarietySpec, level: &Level) -> CyclotomicInt {
    let field = &level.field;
    let ctx = field.ctx().clone();
    let p = ctx.p();
    let coeff = |c: &FqValue| field.to_elem(level.embed(c).unwrap());
    let mut acc = CyclotomicInt::zero(p);
    let mut add = |x: &FqElem| acc += &additive_character(p, x.trace_to_prime() as u64);
    let points = |dim: usize| -> Vec<Vec<FqElem>> {
        let elems: Vec<FqElem> = ctx.elements().collect();
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|pt| {
                    elems.iter().map(move |e| {
                        let mut q = pt.clone();
                        q.push(e.clone());
                        q
                    })
                })
                .collect();
        }
        out
    };
    match v {
        VarietySpec::AffineSpace { dim, f } => {
            for pt in points(*dim) {
                add(&f.eval_reference(&pt, coeff).unwrap());
            }
        }
        VarietySpec::Torus { dim, f } => {
            for pt in points(*dim).into_iter().filter(|pt| pt.iter().all(|x| !x.is_zero())) {
                add(&f.eval_reference(&pt, coeff).unwrap());
            }
        }
        VarietySpec::HypersurfaceComplement { dim, g, h, k } => {
            for pt in points(*dim) {
                let hv = h.eval_reference(&pt, coeff).unwrap_or_else(|| ctx.one());
                if hv.is_zero() {
                    continue;
                }
                let gv = g.eval_reference(&pt, coeff).unwrap_or_else(|| ctx.zero());
                add(&(&gv * &hv.inv().unwrap().pow(*k as u128)));
            }
        }
        VarietySpec::Sl2 { coeffs } => {
            let elems: Vec<FqElem> = ctx.elements().collect();
            let a: Vec<FqElem> = coeffs.iter().map(coeff).collect();
            for x in &elems {
                for y in &elems {
                    for z in &elems {
                        for w in &elems {
                            if &(x * w) - &(y * z) != ctx.one() {
                                continue;
                            }
                            let s = sym_trace(&(x + w), a.len());
                            let f = a.iter().zip(&s[1..]).fold(ctx.zero(), |acc, (an, sn)| &acc + &(an * sn));
                            add(&f);
                        }
                    }
                }
            }
        }
    }
    acc
}

#[test]
fn point_counts() {
    let f3 = build_field(3, 1).unwrap();
    let f4 = build_field(2, 2).unwrap();
    let f2 = build_field(2, 1).unwrap();
    assert_eq!(count_points(&affine(2, "0"), &f3, 1).unwrap(), 9);
    assert_eq!(count_points(&torus(1, "0"), &f4, 1).unwrap(), 3);
    assert_eq!(count_points(&VarietySpec::Sl2 { coeffs: vec![1.into()] }, &f2, 1).unwrap(), 6);
    let v = VarietySpec::HypersurfaceComplement {
        dim: 2,
        g: Polynomial::zero(),
        h: Polynomial::parse("x0*x1 - 1").unwrap(),
        k: 1,
    };
    // the hyperbola xy = 1 has q - 1 points
    assert_eq!(count_points(&v, &f3, 2).unwrap(), 81 - 8);
    assert!(matches!(count_points(&v, &f3, 0), Err(ExpSumError::BadLevel)));
}

#[test]
fn sym_trace_recursion() {
    let f5 = build_field(5, 1).unwrap();
    let t = f5.from_int(2);
    let s = sym_trace(&t, 2);
    assert_eq!(s[0], f5.one());
    assert_eq!(s[1], t);
    assert_eq!(s[2], f5.from_int(3));
    assert_eq!(sym_trace(&f5.from_int(4), 0), vec![f5.one()]);
}

#[test]
fn power_sum_examples() {
    let f3 = build_field(3, 1).unwrap();
    let f5 = build_field(5, 1).unwrap();
    let f2 = build_field(2, 1).unwrap();
    assert_eq!(power_sum(&affine(2, "x^2*y - x"), &f3, 1).unwrap(), int(3, 3));
    assert_eq!(power_sum(&affine(1, "x"), &f5, 1).unwrap(), int(5, 0));
    assert_eq!(power_sum(&torus(1, "x"), &f5, 2).unwrap(), int(5, -1));
    assert_eq!(power_sum(&VarietySpec::Sl2 { coeffs: vec![1.into()] }, &f2, 1).unwrap(), int(2, 2));
}

#[test]
fn power_sum_table_examples() {
    let f3 = build_field(3, 1).unwrap();
    let t = power_sum_table(&affine(2, "x^2*y - x"), &f3, 4, None).unwrap();
    assert_eq!(t.sequence.values, [3, 9, 27, 81].map(|n| int(3, n)));
    assert_eq!(t.progress.iter().map(|l| l.points).collect::<Vec<_>>(), [9, 81, 729, 6561]);
    let t = power_sum_table(&affine(1, "0"), &f3, 2, None).unwrap();
    assert_eq!(t.sequence.values, [3, 9].map(|n| int(3, n)));
    let t = power_sum_table(&torus(1, "x"), &f3, 3, None).unwrap();
    assert_eq!(t.sequence.values, [-1, -1, -1].map(|n| int(3, n)));
    let counts: Vec<u128> = t.progress.iter().map(|l| l.points).collect();
    assert!(t.sequence.within_conjugate_bound(&counts));
}

#[test]
fn budget_is_enforced_before_work() {
    let f5 = build_field(5, 1).unwrap();
    let err = power_sum_table(&affine(3, "x*y*z"), &f5, 6, Some(1_000_000)).unwrap_err();
    match err {
        ExpSumError::BudgetExceeded { needed, budget } => {
            assert_eq!(budget, 1_000_000);
            assert!(needed > 5u128.pow(18));
        }
        e => panic!("unexpected {e}"),
    }
    assert!(matches!(power_sum_table(&affine(1, "x"), &f5, 0, None), Err(ExpSumError::BadLevel)));
}

#[test]
fn malformed_varieties() {
    let f5 = build_field(5, 1).unwrap();
    assert!(matches!(power_sum(&affine(1, "x^-1"), &f5, 1), Err(ExpSumError::Malformed(_))));
    assert!(matches!(power_sum(&affine(1, "x*y"), &f5, 1), Err(ExpSumError::Malformed(_))));
}

#[test]
fn constant_zero_counts_points() {
    let f3 = build_field(3, 1).unwrap();
    let f4 = build_field(2, 2).unwrap();
    let hyp = VarietySpec::HypersurfaceComplement {
        dim: 2,
        g: Polynomial::zero(),
        h: Polynomial::parse("x^2 + y^2 + 1").unwrap(),
        k: 2,
    };
    let cases = [
        (affine(2, "0"), &f3),
        (torus(2, "0"), &f4),
        (hyp, &f3),
        (VarietySpec::Sl2 { coeffs: vec![0.into(), 0.into()] }, &f3),
    ];
    for (v, base) in cases {
        for m in 1..=2 {
            let n = count_points(&v, base, m).unwrap();
            assert_eq!(power_sum(&v, base, m).unwrap(), CyclotomicInt::from_int(base.p(), n.into()), "{v:?} m={m}");
        }
    }
}

#[test]
fn affine_line_splits_as_origin_plus_torus() {
    let f5 = build_field(5, 1).unwrap();
    let f4 = build_field(2, 2).unwrap();
    for (f, base) in [("x^3 + 2*x + 1", &f5), ("x^2 + 3", &f5), ("x^3 + x", &f4), ("1", &f4)] {
        let a1 = affine(1, f);
        let gm = torus(1, f);
        let poly = Polynomial::parse(f).unwrap();
        for m in 1..=3 {
            let level = Level::new(base, m).unwrap();
            let f0 =
                poly.eval_reference(&[level.field.to_elem(ZERO_LOG)], |c| level.field.to_elem(level.embed(c).unwrap()));
            let at_origin = additive_character(base.p(), f0.unwrap().trace_to_prime() as u64);
            assert_eq!(power_sum_at(&a1, &level).unwrap(), &power_sum_at(&gm, &level).unwrap() + &at_origin);
        }
    }
}

#[test]
fn galois_equivariance() {
    let f5 = build_field(5, 1).unwrap();
    let f3 = build_field(3, 1).unwrap();
    let cases = [
        (affine(2, "x^2*y - x + 3*y^3"), &f5),
        (torus(1, "x + x^-1"), &f5),
        (torus(2, "x*y + 2*x^-1 + y^-2"), &f3),
        (VarietySpec::Sl2 { coeffs: vec![1.into(), 2.into()] }, &f3),
        (
            VarietySpec::HypersurfaceComplement {
                dim: 2,
                g: Polynomial::parse("x^2 + y").unwrap(),
                h: Polynomial::parse("x*y - 1").unwrap(),
                k: 1,
            },
            &f5,
        ),
    ];
    for (v, base) in cases {
        for u in 1..base.p() as i64 {
            let scaled = v.scaled(&base.from_int(u)).unwrap();
            for m in 1..=2 {
                let s = power_sum(&v, base, m).unwrap();
                assert_eq!(power_sum(&scaled, base, m).unwrap(), s.galois_twist(u).unwrap(), "{v:?} u={u} m={m}");
            }
        }
    }
}

#[test]
fn embedding_independence() {
    // F_9 and F_25 with genuinely non-prime coefficients
    for (p, n) in [(3, 2), (5, 2), (2, 3)] {
        let base = build_field(p, n).unwrap();
        let g = base.generator();
        let f = Polynomial::new(vec![
            Term { coeff: FqValue::from_elem(&g), exps: vec![2, 1] },
            Term { coeff: FqValue::from_elem(&(&g * &g)), exps: vec![0, 1] },
            Term { coeff: 1.into(), exps: vec![1] },
        ]);
        let v = VarietySpec::AffineSpace { dim: 2, f };
        for m in 1..=2 {
            let first = Level::new(&base, m).unwrap();
            let expected = power_sum_at(&v, &first).unwrap();
            let roots = first.root_count();
            assert_eq!(roots, n as usize);
            for which in 1..roots {
                let level = Level::with_root(&base, m, which).unwrap();
                assert_eq!(power_sum_at(&v, &level).unwrap(), expected, "p={p} n={n} m={m} root {which}");
            }
        }
    }
}

#[test]
fn fast_path_matches_reference() {
    let f9 = build_field(3, 2).unwrap();
    let f4 = build_field(2, 2).unwrap();
    let f7 = build_field(7, 1).unwrap();
    let g9 = FqValue::from_elem(&f9.generator());
    let cases = [
        (
            VarietySpec::AffineSpace {
                dim: 2,
                f: Polynomial::new(vec![
                    Term { coeff: g9.clone(), exps: vec![3, 1] },
                    Term { coeff: 2.into(), exps: vec![0, 2] },
                    Term { coeff: 1.into(), exps: vec![] },
                ]),
            },
            &f9,
            1,
        ),
        (torus(2, "x^-2*y + 3*x*y^-1 + x"), &f7, 1),
        (torus(3, "x*y*z + x^-1 + y^-1 + z^-1"), &f4, 2),
        (affine(3, "x*y + y*z + z^2"), &f4, 1),
        (affine(0, "3"), &f7, 1),
        (
            VarietySpec::HypersurfaceComplement {
                dim: 2,
                g: Polynomial::parse("x^2 - y").unwrap(),
                h: Polynomial::parse("x + y^2 + 1").unwrap(),
                k: 2,
            },
            &f7,
            1,
        ),
        (VarietySpec::Sl2 { coeffs: vec![1.into(), 0.into(), 2.into()] }, &f7, 1),
        (VarietySpec::Sl2 { coeffs: vec![g9.clone()] }, &f9, 1),
        (VarietySpec::Sl2 { coeffs: vec![1.into(), 1.into()] }, &f4, 1),
    ];
    for (v, base, m) in cases {
        let level = Level::new(base, m).unwrap();
        assert_eq!(power_sum_at(&v, &level).unwrap(), reference_sum(&v, &level), "{v:?}");
    }
}

#[test]
fn zero_dimensional_hypersurface_complement_is_a_point() {
    let f3 = build_field(3, 1).unwrap();
    let v = VarietySpec::HypersurfaceComplement { dim: 0, g: Polynomial::zero(), h: Polynomial::constant(1), k: 1 };
    let t = power_sum_table(&v, &f3, 3, None).unwrap();
    assert_eq!(t.sequence.values, [1, 1, 1].map(|n| int(3, n)));
}

#[test]
fn partition_does_not_change_sums() {
    let f5 = build_field(5, 1).unwrap();
    let v = affine(2, "x^3*y + 2*y^2 + x");
    let level = Level::new(&f5, 3).unwrap();
    let mut seen = Vec::new();
    for threads in [1, 2, 5] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        seen.push(pool.install(|| power_sum_at(&v, &level).unwrap()));
    }
    assert!(seen.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn json_round_trip() {
    let src = r#"{"kind": "hypersurface_complement", "dim": 2, "g": "x^2 - y", "h": [{"coeff": 1, "exps": [1, 1]}]}"#;
    let v: VarietySpec = serde_json::from_str(src).unwrap();
    match &v {
        VarietySpec::HypersurfaceComplement { k, .. } => assert_eq!(k, &1),
        _ => panic!(),
    }
    let back: VarietySpec = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
    let sl2: VarietySpec = serde_json::from_str(r#"{"kind": "sl2", "coeffs": [1, [0, 1]]}"#).unwrap();
    assert_eq!(sl2, VarietySpec::Sl2 { coeffs: vec![FqValue::Int(1), FqValue::Coeffs(vec![0, 1])] });
    assert!(serde_json::from_str::<VarietySpec>(r#"{"kind": "torus", "dim": 1, "f": "x", "extra": 1}"#).is_err());

    let f3 = build_field(3, 1).unwrap();
    let seq = power_sum_table(&torus(1, "x"), &f3, 2, None).unwrap().sequence;
    let recs = seq.records();
    assert_eq!(recs[0].coords, ["-1", "0"]);
    assert_eq!(PowerSumSequence::from_records(3, 1, &recs).unwrap(), seq);
}

#[test]
fn scale_check_examples() {
    let f5 = build_field(5, 1).unwrap();
    let f3 = build_field(3, 1).unwrap();
    let r = scaled_degree_check(&torus(1, "x"), &f5, &f5.from_int(2), 4, None).unwrap();
    assert!(r.consistent());
    assert_eq!((r.original.degree(), r.original.total_degree()), (-1, 1));
    assert_eq!((r.scaled.degree(), r.scaled.total_degree()), (-1, 1));
    let r = scaled_degree_check(&affine(2, "x^2*y - x"), &f3, &f3.from_int(2), 4, None).unwrap();
    assert!(r.consistent());
    assert_eq!((r.scaled.degree(), r.scaled.total_degree()), (1, 1));
    let r = scaled_degree_check(&affine(2, "x^2*y - x"), &f3, &f3.one(), 4, None).unwrap();
    assert_eq!(r.original, r.scaled);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_laurent_sums_match_reference(
        terms in prop::collection::vec((0i64..7, -3i64..4, -3i64..4), 1..4),
        m in 1u32..3,
    ) {
        let base: Arc<FieldCtx> = build_field(3, 1).unwrap();
        let f = Polynomial::new(terms.into_iter().map(|(c, a, b)| Term { coeff: c.into(), exps: vec![a, b] }).collect());
        let v = VarietySpec::Torus { dim: 2, f };
        let level = Level::new(&base, m).unwrap();
        prop_assert_eq!(power_sum_at(&v, &level).unwrap(), reference_sum(&v, &level));
    }
}
