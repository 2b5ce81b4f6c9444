//! Exhaustive point enumeration with per-trace-value counting.
//!
//! A sum of `psi(Tr f(x))` only depends on how many points land on each
//! trace value `a in F_p`, so workers count into `[u64; p]` and the
//! cyclotomic element is formed once at the end.

use std::ops::Range;

use rayon::prelude::*;

use super::poly::CompiledPoly;
use crate::ffield::{LogField, ZERO_LOG};

/// How the value of `f` is assembled from the compiled polynomials.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Combine {
    /// `f = polys[0]`.
    Single,
    /// `f = polys[0] / polys[1]^k`, points with `polys[1] = 0` skipped.
    Quotient { neg_k: u32 },
}

pub(crate) struct Sweep<'a> {
    pub field: &'a LogField,
    pub polys: &'a [CompiledPoly],
    pub dim: usize,
    /// Coordinates range over all of `F_Q` (true) or over `F_Q^*` (false).
    pub affine: bool,
    pub combine: Combine,
}

const CHUNK: u32 = 1 << 12;

#[derive(Debug, Clone)]
enum Unit {
    /// First coordinate fixed to this value; all others free.
    First(u32),
    /// Single coordinate restricted to a slice of values.
    Slice {
        zero: bool,
        logs: Range<u32>,
    },
    Point,
}

impl<'a> Sweep<'a> {
    fn values(&self) -> Vec<u32> {
        let logs = 0..self.field.group_order();
        if self.affine {
            std::iter::once(ZERO_LOG).chain(logs).collect()
        } else {
            logs.collect()
        }
    }

    fn units(&self) -> Vec<Unit> {
        match self.dim {
            0 => vec![Unit::Point],
            1 => {
                let qm1 = self.field.group_order();
                let mut units = Vec::new();
                let mut start = 0;
                while start < qm1 {
                    let end = (start + CHUNK).min(qm1);
                    units.push(Unit::Slice { zero: self.affine && start == 0, logs: start..end });
                    start = end;
                }
                units
            }
            _ => self.values().into_iter().map(Unit::First).collect(),
        }
    }

    /// Counts of points per trace value; the sum of the counts is the number
    /// of points where `f` is defined.
    pub fn count(&self) -> Vec<u64> {
        let p = self.field.p() as usize;
        self.units()
            .into_par_iter()
            .map(|unit| {
                let mut counts = vec![0u64; p];
                self.run_unit(&unit, &mut counts);
                counts
            })
            .reduce(
                || vec![0u64; p],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }

    #[inline]
    fn finish(&self, vals: &[u32], counts: &mut [u64]) {
        let f = match self.combine {
            Combine::Single => vals[0],
            Combine::Quotient { neg_k } => {
                let h = vals[1];
                if h == ZERO_LOG {
                    return;
                }
                let hk = ((h as u64 * neg_k as u64) % self.field.group_order() as u64) as u32;
                self.field.mul(vals[0], hk)
            }
        };
        counts[self.field.trace(f) as usize] += 1;
    }

    fn run_unit(&self, unit: &Unit, counts: &mut [u64]) {
        let nterms: usize = self.polys.iter().map(|p| p.terms.len()).sum();
        let mut base = vec![0u32; nterms];
        let mut live = vec![true; nterms];
        let mut vals = vec![ZERO_LOG; self.polys.len()];
        match unit {
            Unit::Point => {
                self.outer_state(&[], &mut base, &mut live);
                self.collect(&base, &live, &mut vals);
                self.finish(&vals, counts);
            }
            Unit::Slice { zero, logs } => {
                self.outer_state(&[], &mut base, &mut live);
                self.inner(*zero, logs.clone(), &base, &live, &mut vals, counts);
            }
            Unit::First(x0) => {
                let values = self.values();
                let middle = self.dim - 2;
                let mut idx = vec![0usize; middle];
                let mut outer = vec![0u32; self.dim - 1];
                outer[0] = *x0;
                let qm1 = self.field.group_order();
                loop {
                    for (slot, &i) in outer[1..].iter_mut().zip(&idx) {
                        *slot = values[i];
                    }
                    self.outer_state(&outer, &mut base, &mut live);
                    self.inner(self.affine, 0..qm1, &base, &live, &mut vals, counts);
                    // odometer over the middle coordinates
                    let mut k = 0;
                    loop {
                        if k == middle {
                            return;
                        }
                        idx[k] += 1;
                        if idx[k] < values.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                }
            }
        }
    }

    /// Log of each term with the leading coordinates `outer` substituted
    /// and the last coordinate set to 1; `live = false` when some outer
    /// coordinate is zero under a positive exponent.
    fn outer_state(&self, outer: &[u32], base: &mut [u32], live: &mut [bool]) {
        let qm1 = self.field.group_order() as u64;
        let mut j = 0;
        for poly in self.polys {
            for t in &poly.terms {
                let mut acc = t.coeff as u64;
                let mut alive = true;
                for (i, &x) in outer.iter().enumerate() {
                    if t.exps[i] == 0 {
                        continue;
                    }
                    if x == ZERO_LOG {
                        alive = false;
                        break;
                    }
                    acc += x as u64 * t.steps[i] as u64;
                }
                base[j] = (acc % qm1) as u32;
                live[j] = alive;
                j += 1;
            }
        }
    }

    fn collect(&self, base: &[u32], live: &[bool], vals: &mut [u32]) {
        let mut j = 0;
        for (v, poly) in vals.iter_mut().zip(self.polys) {
            let mut acc = ZERO_LOG;
            for _ in &poly.terms {
                if live[j] {
                    acc = self.field.add(acc, base[j]);
                }
                j += 1;
            }
            *v = acc;
        }
    }

    /// Sweeps the last coordinate: optionally its zero value, then the logs
    /// in `logs` with each term's log advanced incrementally.
    #[allow(clippy::too_many_arguments)]
    fn inner(&self, zero: bool, logs: Range<u32>, base: &[u32], live: &[bool], vals: &mut [u32], counts: &mut [u64]) {
        let last = self.dim - 1;
        let qm1 = self.field.group_order();
        if zero {
            let mut j = 0;
            for (v, poly) in vals.iter_mut().zip(self.polys) {
                let mut acc = ZERO_LOG;
                for t in &poly.terms {
                    if live[j] && t.exps[last] == 0 {
                        acc = self.field.add(acc, base[j]);
                    }
                    j += 1;
                }
                *v = acc;
            }
            self.finish(vals, counts);
        }
        let steps: Vec<u32> = self.polys.iter().flat_map(|p| p.terms.iter().map(|t| t.steps[last])).collect();
        let mut cur: Vec<u32> = base
            .iter()
            .zip(&steps)
            .map(|(&b, &s)| ((b as u64 + s as u64 * logs.start as u64) % qm1 as u64) as u32)
            .collect();
        for _ in logs {
            let mut j = 0;
            for (v, poly) in vals.iter_mut().zip(self.polys) {
                let mut acc = ZERO_LOG;
                for _ in 0..poly.terms.len() {
                    if live[j] {
                        acc = self.field.add(acc, cur[j]);
                    }
                    let next = cur[j] + steps[j];
                    cur[j] = if next >= qm1 { next - qm1 } else { next };
                    j += 1;
                }
                *v = acc;
            }
            self.finish(vals, counts);
        }
    }
}

/// `SL_2(F_Q)` enumerated as `(a, b, c)` with `d = (1 + bc)/a` for `a != 0`,
/// plus the stratum `a = 0` where `c = -1/b` and `d` is free. `trace_value`
/// maps the log of `Tr(A)` (with [`ZERO_LOG`] stored at index `Q - 1`) to
/// the absolute trace of `f(A)`.
pub(crate) fn count_sl2(field: &LogField, trace_value: &[u16]) -> Vec<u64> {
    let p = field.p() as usize;
    let qm1 = field.group_order();
    let slot = |x: u32| if x == ZERO_LOG { qm1 as usize } else { x as usize };
    let all: Vec<u32> = std::iter::once(ZERO_LOG).chain(0..qm1).collect();
    let mut counts = (0..qm1)
        .into_par_iter()
        .map(|a| {
            let mut counts = vec![0u64; p];
            for &b in &all {
                for &c in &all {
                    let one_plus_bc = field.add(0, field.mul(b, c));
                    let d = field.div(one_plus_bc, a);
                    let t = field.add(a, d);
                    counts[trace_value[slot(t)] as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; p],
            |mut x, y| {
                for (u, v) in x.iter_mut().zip(y) {
                    *u += v;
                }
                x
            },
        );
    for &d in &all {
        counts[trace_value[slot(d)] as usize] += qm1 as u64;
    }
    counts
}
