//! Exact volume of the convex hull of a finite point set in `Q^k`, by
//! coning from an interior point over facets found by brute force.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Point = Vec<BigRational>;

fn sub(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Row-reduces in place and returns the pivot columns.
fn row_reduce(m: &mut [Point]) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Dimension of the affine span.
pub fn affine_dimension(points: &[Point]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let mut m: Vec<Point> = points[1..].iter().map(|x| sub(x, &points[0])).collect();
    row_reduce(&mut m).len()
}

/// Normal of the hyperplane through `k` affinely independent points in
/// `Q^k`, or `None` if they are dependent.
fn hyperplane_normal(pts: &[&Point]) -> Option<Point> {
    let k = pts[0].len();
    let mut m: Vec<Point> = pts[1..].iter().map(|x| sub(x, pts[0])).collect();
    let pivots = row_reduce(&mut m);
    if pivots.len() != k - 1 {
        return None;
    }
    let free = (0..k).find(|c| !pivots.contains(c)).expect("one free column");
    let mut a = vec![BigRational::zero(); k];
    a[free] = BigRational::from_integer(1.into());
    for (r, &c) in pivots.iter().enumerate() {
        a[c] = -m[r][free].clone();
    }
    Some(a)
}

fn k_subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        k_subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// `k`-dimensional volume of `conv(points)`, which must span `Q^k`.
fn full_volume(points: &[Point]) -> BigRational {
    let k = points[0].len();
    if k == 1 {
        let lo = points.iter().map(|x| &x[0]).min().expect("nonempty");
        let hi = points.iter().map(|x| &x[0]).max().expect("nonempty");
        return hi - lo;
    }
    let n = points.len();
    let kq = BigRational::from_integer(k.into());
    let center: Point = (0..k)
        .map(|j| points.iter().fold(BigRational::zero(), |acc, x| acc + &x[j]) / BigRational::from_integer(n.into()))
        .collect();
    let mut subsets = Vec::new();
    k_subsets(n, k, 0, &mut Vec::new(), &mut subsets);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut total = BigRational::zero();
    for s in subsets {
        let pts: Vec<&Point> = s.iter().map(|&i| &points[i]).collect();
        let Some(a) = hyperplane_normal(&pts) else { continue };
        let b = dot(&a, pts[0]);
        let side: Vec<BigRational> = points.iter().map(|x| dot(&a, x) - &b).collect();
        let pos = side.iter().any(|v| v.is_positive());
        let neg = side.iter().any(|v| v.is_negative());
        if pos && neg {
            continue;
        }
        let on: Vec<usize> = (0..n).filter(|&i| side[i].is_zero()).collect();
        if !seen.insert(on.clone()) {
            continue;
        }
        let j = (0..k).find(|&j| !a[j].is_zero()).expect("nonzero normal");
        let projected: Vec<Point> = on
            .iter()
            .map(|&i| points[i].iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let height = (dot(&a, &center) - &b).abs();
        total += height * full_volume(&dedup(projected)) / (&kq * a[j].abs());
    }
    total
}

fn dedup(points: Vec<Point>) -> Vec<Point> {
    points.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// `Vol_k(conv(points))` for points in `Q^k`; `None` when the hull is lower
/// dimensional.
pub fn hull_volume(points: &[Point]) -> Option<BigRational> {
    let points = dedup(points.to_vec());
    let k = points.first()?.len();
    if k == 0 || affine_dimension(&points) < k {
        return None;
    }
    Some(full_volume(&points))
}
