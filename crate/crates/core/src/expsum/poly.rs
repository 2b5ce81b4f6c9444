//! Sparse (Laurent) polynomials over the base field, as they appear in job
//! files, and their compiled log-domain form for one extension level.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ExpSumError;
use crate::ffield::{FieldCtx, FqElem, LogField, ZERO_LOG};

/// A base-field coefficient: an integer (prime subfield) or polynomial-basis
/// coordinates of an element of `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FqValue {
    Int(i64),
    Coeffs(Vec<i64>),
}

impl FqValue {
    pub fn to_elem(&self, base: &Arc<FieldCtx>) -> Result<FqElem, ExpSumError> {
        Ok(match self {
            FqValue::Int(a) => base.from_int(*a),
            FqValue::Coeffs(c) => base.from_coeffs(c)?,
        })
    }

    pub fn from_elem(x: &FqElem) -> Self {
        match x.as_prime() {
            Some(a) => FqValue::Int(a as i64),
            None => FqValue::Coeffs(x.coeffs().iter().map(|&c| c as i64).collect()),
        }
    }
}

impl From<i64> for FqValue {
    fn from(a: i64) -> Self {
        FqValue::Int(a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: FqValue,
    /// One exponent per variable; missing trailing entries are zero.
    pub exps: Vec<i64>,
}

/// `sum coeff * x_0^{e_0} ... x_{k}^{e_k}`. Deserializes from a list of
/// terms or from an expression string such as `"x0^2*x1 - x0"`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "Vec<Term>")]
pub struct Polynomial {
    terms: Vec<Term>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyRepr {
    Expr(String),
    Terms(Vec<Term>),
}

impl TryFrom<PolyRepr> for Polynomial {
    type Error = ExpSumError;
    fn try_from(r: PolyRepr) -> Result<Self, ExpSumError> {
        match r {
            PolyRepr::Expr(s) => Polynomial::parse(&s),
            PolyRepr::Terms(terms) => Ok(Polynomial { terms }),
        }
    }
}

impl From<Polynomial> for Vec<Term> {
    fn from(p: Polynomial) -> Self {
        p.terms
    }
}

impl fmt::Display for Polynomial {
    /// Prints in the syntax [`Polynomial::parse`] reads, using `x, y, z, w`
    /// when there are at most four variables. Coordinate-vector coefficients
    /// print as `[c0, c1, ...]`, which only the term-list form can read back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let short = self.arity() <= 4;
        for (i, t) in self.terms.iter().enumerate() {
            let mut vars = Vec::new();
            for (v, &e) in t.exps.iter().enumerate().filter(|(_, &e)| e != 0) {
                let name = if short { ["x", "y", "z", "w"][v].to_string() } else { format!("x{v}") };
                vars.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            let (neg, coeff) = match &t.coeff {
                FqValue::Int(a) if *a < 0 => (true, a.unsigned_abs().to_string()),
                FqValue::Int(a) => (false, a.to_string()),
                FqValue::Coeffs(c) => (false, format!("{c:?}")),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn new(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: impl Into<FqValue>) -> Self {
        Polynomial { terms: vec![Term { coeff: c.into(), exps: vec![] }] }
    }

    /// `c * x_var`.
    pub fn var(var: usize, c: impl Into<FqValue>) -> Self {
        let mut exps = vec![0; var + 1];
        exps[var] = 1;
        Polynomial { terms: vec![Term { coeff: c.into(), exps }] }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of variables mentioned.
    pub fn arity(&self) -> usize {
        self.terms.iter().map(|t| t.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)).max().unwrap_or(0)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.iter().any(|t| t.exps.iter().any(|&e| e < 0))
    }

    /// Parses expressions such as `"3*x0^2*x1 - x0 + x1^-1 + 2"` or
    /// `"x*y*(x - y)^2"`. Variables are `x0, x1, ...` (`x, y, z, w` are
    /// accepted as `x0..x3`); coefficients are integers. Parenthesized groups
    /// are expanded over the integers.
    pub fn parse(src: &str) -> Result<Self, ExpSumError> {
        let words: Vec<&str> = src.split_ascii_whitespace().collect();
        if words.windows(2).any(|w| {
            let (a, b) = (w[0].as_bytes()[w[0].len() - 1], w[1].as_bytes()[0]);
            a.is_ascii_alphanumeric() && b.is_ascii_alphanumeric()
        }) {
            return Err(ExpSumError::Parse(format!("missing operator in {src:?}")));
        }
        let s: Vec<u8> = words.concat().into_bytes();
        let mut parser = Parser { s: &s, pos: 0, src };
        if s.is_empty() {
            return Err(parser.error("empty expression"));
        }
        let sum = parser.expr()?;
        if parser.pos != s.len() {
            return Err(parser.error("unexpected character"));
        }
        let terms =
            sum.0.into_iter().filter(|(_, c)| *c != 0).map(|(exps, c)| Term { coeff: FqValue::Int(c), exps }).collect();
        Ok(Polynomial { terms })
    }

    /// Product over `F_q`; exponent vectors are added.
    pub fn mul(&self, other: &Polynomial, base: &Arc<FieldCtx>) -> Result<Polynomial, ExpSumError> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let c = &a.coeff.to_elem(base)? * &b.coeff.to_elem(base)?;
                let n = a.exps.len().max(b.exps.len());
                let exps =
                    (0..n).map(|i| a.exps.get(i).copied().unwrap_or(0) + b.exps.get(i).copied().unwrap_or(0)).collect();
                terms.push(Term { coeff: FqValue::from_elem(&c), exps });
            }
        }
        Polynomial { terms }.collect_terms(base)
    }

    /// Merges equal monomials and drops zero coefficients.
    pub fn collect_terms(&self, base: &Arc<FieldCtx>) -> Result<Polynomial, ExpSumError> {
        let mut merged: Vec<(Vec<i64>, FqElem)> = Vec::new();
        for t in &self.terms {
            let mut exps = t.exps.clone();
            while exps.last() == Some(&0) {
                exps.pop();
            }
            let c = t.coeff.to_elem(base)?;
            match merged.iter_mut().find(|(e, _)| *e == exps) {
                Some((_, acc)) => *acc = &*acc + &c,
                None => merged.push((exps, c)),
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, c)| Term { coeff: FqValue::from_elem(&c), exps })
            .collect();
        Ok(Polynomial { terms })
    }

    /// Every coefficient multiplied by `c`.
    pub fn scaled(&self, c: &FqElem) -> Result<Polynomial, ExpSumError> {
        let base = c.ctx();
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { coeff: FqValue::from_elem(&(&t.coeff.to_elem(base)? * c)), exps: t.exps.clone() }))
            .collect::<Result<_, ExpSumError>>()?;
        Ok(Polynomial { terms })
    }

    /// Reference evaluation with [`FqElem`] arithmetic at a point of the
    /// field `coeff_map`'s codomain lives in. Used by tests as the slow path.
    pub fn eval_reference(&self, point: &[FqElem], coeff_map: impl Fn(&FqValue) -> FqElem) -> Option<FqElem> {
        let ctx = point.first().map(|x| x.ctx().clone());
        let mut acc: Option<FqElem> = None;
        for t in &self.terms {
            let mut v = coeff_map(&t.coeff);
            for (i, &e) in t.exps.iter().enumerate() {
                let x = &point[i];
                let f = if e >= 0 { x.pow(e as u128) } else { x.inv().ok()?.pow((-e) as u128) };
                v = &v * &f;
            }
            acc = Some(match acc {
                None => v,
                Some(a) => &a + &v,
            });
        }
        Some(acc.unwrap_or_else(|| match ctx {
            Some(c) => c.zero(),
            None => coeff_map(&FqValue::Int(0)),
        }))
    }
}

/// Integer Laurent polynomial kept in first-appearance order.
#[derive(Debug, Clone)]
struct IntPoly(Vec<(Vec<i64>, i64)>);

/// Exponent bound for parenthesized powers.
const MAX_GROUP_POWER: i64 = 64;

impl IntPoly {
    fn monomial(exps: Vec<i64>, c: i64) -> Self {
        IntPoly(vec![(trimmed(exps), c)])
    }

    fn add_term(&mut self, exps: Vec<i64>, c: i64) -> Option<()> {
        let exps = trimmed(exps);
        match self.0.iter_mut().find(|(e, _)| *e == exps) {
            Some((_, acc)) => *acc = acc.checked_add(c)?,
            None => self.0.push((exps, c)),
        }
        Some(())
    }

    fn mul(&self, other: &IntPoly) -> Option<IntPoly> {
        let mut out = IntPoly(Vec::new());
        for (a, ca) in &self.0 {
            for (b, cb) in &other.0 {
                let n = a.len().max(b.len());
                let exps = (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect();
                out.add_term(exps, ca.checked_mul(*cb)?)?;
            }
        }
        Some(out)
    }
}

fn trimmed(mut exps: Vec<i64>) -> Vec<i64> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ExpSumError {
        ExpSumError::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn overflow(&self) -> ExpSumError {
        self.error("coefficient overflow")
    }

    fn expr(&mut self) -> Result<IntPoly, ExpSumError> {
        let mut sum = IntPoly(Vec::new());
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Ok(sum),
            };
            first = false;
            let t = self.term()?;
            for (e, c) in t.0 {
                sum.add_term(e, c * sign).ok_or_else(|| self.overflow())?;
            }
        }
    }

    fn term(&mut self) -> Result<IntPoly, ExpSumError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f).ok_or_else(|| self.overflow())?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<i64, ExpSumError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| self.error("expected an integer"))
    }

    fn exponent(&mut self) -> Result<i64, ExpSumError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let e = self.integer()?;
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self) -> Result<IntPoly, ExpSumError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(IntPoly::monomial(Vec::new(), self.integer()?)),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected )"));
                }
                self.pos += 1;
                if self.peek() != Some(b'^') {
                    return Ok(inner);
                }
                self.pos += 1;
                let e = self.exponent()?;
                if e < 0 {
                    return Err(self.error("negative powers of a group are not supported"));
                }
                if e > MAX_GROUP_POWER {
                    return Err(self.error("power too large"));
                }
                let mut acc = IntPoly::monomial(Vec::new(), 1);
                for _ in 0..e {
                    acc = acc.mul(&inner).ok_or_else(|| self.overflow())?;
                }
                Ok(acc)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                let var = match name {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    "w" => 3,
                    _ => name
                        .strip_prefix('x')
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| self.error(&format!("unknown variable {name:?}")))?,
                };
                let power = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                let mut exps = vec![0; var + 1];
                exps[var] = power;
                Ok(IntPoly::monomial(exps, 1))
            }
            _ => Err(self.error("expected a number, variable or (")),
        }
    }
}

/// One monomial in log form at a fixed level.
#[derive(Debug, Clone)]
pub(crate) struct CompiledTerm {
    pub coeff: u32,
    pub exps: Vec<i64>,
    /// `exps[i] mod (Q - 1)`, the per-step increment of the log.
    pub steps: Vec<u32>,
}

#[derive(Debug, Clone)]
pub(crate) struct CompiledPoly {
    pub terms: Vec<CompiledTerm>,
}

impl CompiledPoly {
    pub fn compile(
        poly: &Polynomial,
        dim: usize,
        field: &LogField,
        embed: impl Fn(&FqValue) -> Result<u32, ExpSumError>,
    ) -> Result<Self, ExpSumError> {
        if poly.arity() > dim {
            return Err(ExpSumError::Malformed(format!(
                "polynomial uses {} variables but the ambient dimension is {dim}",
                poly.arity()
            )));
        }
        let qm1 = field.group_order() as i64;
        let mut terms = Vec::new();
        for t in &poly.terms {
            let coeff = embed(&t.coeff)?;
            if coeff == ZERO_LOG {
                continue;
            }
            let mut exps = t.exps.clone();
            exps.resize(dim, 0);
            let steps = exps.iter().map(|&e| e.rem_euclid(qm1) as u32).collect();
            terms.push(CompiledTerm { coeff, exps, steps });
        }
        Ok(CompiledPoly { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;

    #[test]
    fn parse_forms() {
        let p = Polynomial::parse("x0^2*x1 - x0").unwrap();
        assert_eq!(
            p.terms(),
            &[Term { coeff: FqValue::Int(1), exps: vec![2, 1] }, Term { coeff: FqValue::Int(-1), exps: vec![1] }]
        );
        let k = Polynomial::parse("x + x^-1").unwrap();
        assert_eq!(k.terms()[1].exps, vec![-1]);
        assert!(k.has_negative_exponent());
        let c = Polynomial::parse("-3*y*z^2 + 7").unwrap();
        assert_eq!(c.terms()[0], Term { coeff: FqValue::Int(-3), exps: vec![0, 1, 2] });
        assert_eq!(c.terms()[1], Term { coeff: FqValue::Int(7), exps: vec![] });
        assert_eq!(c.arity(), 3);
        assert_eq!(
            Polynomial::parse("x*(x - y)^2 - x^3").unwrap().to_string(),
            Polynomial::parse("-2*x^2*y + x*y^2").unwrap().to_string()
        );
        assert_eq!(Polynomial::parse("(x + 1)*(x - 1)").unwrap().terms().len(), 2);
        assert_eq!(Polynomial::parse("x - x").unwrap().terms().len(), 0);
        for bad in ["", "x0 ** 2", "q1", "x0^", "x0 +", "(x", "(x + y)^-1", "x)", "2 3"] {
            assert!(Polynomial::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn json_accepts_both_forms() {
        let a: Polynomial = serde_json_like("\"x0*x1\"");
        let b: Polynomial = Polynomial::parse("x0*x1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display_reads_back() {
        for src in ["x^2*y - x", "x + x^-1", "-3*x*z^2 + 7", "x0*x5 - 2*x1^-3"] {
            let p = Polynomial::parse(src).unwrap();
            assert_eq!(p.to_string(), src);
            assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p);
        }
    }

    fn serde_json_like(s: &str) -> Polynomial {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn product_of_linear_forms() {
        let f5 = build_field(5, 1).unwrap();
        let x = Polynomial::var(0, 1);
        let y = Polynomial::var(1, 1);
        let x_minus_y =
            Polynomial::new([x.terms()[0].clone(), Term { coeff: FqValue::Int(-1), exps: vec![0, 1] }].to_vec());
        let prod = x.mul(&y, &f5).unwrap().mul(&x_minus_y, &f5).unwrap();
        // x^2 y - x y^2
        assert_eq!(prod.terms().len(), 2);
        assert_eq!(prod.to_string(), "x^2*y + 4*x*y^2");
    }
}
