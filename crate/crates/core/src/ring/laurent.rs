//! Sparse Laurent expressions in torus characters `a1..ak` and `t`.
//!
//! The `t` exponent is an exact rational so that the substitution
//! `a_i -> a_i * t^(-w_i/q)` can be carried out before integrality is checked.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::truncated::Exactness;
use super::ypoly::YPoly;
use super::yrational::YRational;
use crate::error::{Error, Result};

/// A Laurent monomial `a1^e1 * ... * ak^ek` with coefficient one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn trivial(rank: usize) -> Self {
        Character(vec![0; rank])
    }

    /// The basis character `a_{j+1}`.
    pub fn basis(rank: usize, j: usize) -> Self {
        let mut e = vec![0; rank];
        e[j] = 1;
        Character(e)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Self {
        Character(self.0.iter().map(|e| -e).collect())
    }

    pub fn product(&self, other: &Self) -> Self {
        Character(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Pairing with an integer weight vector.
    pub fn pair(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// Parses `1`, `a1`, `a1^2*a2^-1` (and the same with superscripts).
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let expr = crate::expr::parse(s)?;
        let l = LaurentExpr::from_ast(&expr, rank)?;
        match l.single_term() {
            Some((e, c)) if c.is_one() && e.t.is_zero() => Ok(e.alpha_character()),
            _ => Err(Error::InvalidAction(format!(
                "character {s:?} is not a monomial with coefficient 1"
            ))),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(j, &e)| {
                if e == 1 {
                    format!("a{}", j + 1)
                } else {
                    format!("a{}^{}", j + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({self})")
    }
}

/// Exponent vector of a monomial `a^alpha * t^t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Exponent {
    pub alpha: Vec<i64>,
    pub t: Rational64,
}

impl Exponent {
    pub fn new(alpha: Vec<i64>, t: Rational64) -> Self {
        Exponent { alpha, t }
    }

    pub fn with_int_t(alpha: Vec<i64>, t: i64) -> Self {
        Exponent {
            alpha,
            t: Rational64::from_integer(t),
        }
    }

    pub fn alpha_character(&self) -> Character {
        Character(self.alpha.clone())
    }

    fn add(&self, other: &Self) -> Self {
        Exponent {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect(),
            t: self.t + other.t,
        }
    }

    fn neg(&self) -> Self {
        Exponent {
            alpha: self.alpha.iter().map(|a| -a).collect(),
            t: -self.t,
        }
    }

    fn render(&self, latex: bool) -> String {
        let mut parts = Vec::new();
        for (j, &e) in self.alpha.iter().enumerate() {
            if e == 0 {
                continue;
            }
            parts.push(match (e, latex) {
                (1, false) => format!("a{}", j + 1),
                (1, true) => format!("\\alpha_{{{}}}", j + 1),
                (_, false) => format!("a{}^{}", j + 1, e),
                (_, true) => format!("\\alpha_{{{}}}^{{{}}}", j + 1, e),
            });
        }
        if !self.t.is_zero() {
            let t = self.t;
            parts.push(match (t.is_one(), t.is_integer(), latex) {
                (true, _, _) => "t".to_string(),
                (false, true, false) => format!("t^{}", t.to_integer()),
                (false, true, true) => format!("t^{{{}}}", t.to_integer()),
                (false, false, false) => format!("t^({t})"),
                (false, false, true) => format!("t^{{{}/{}}}", t.numer(), t.denom()),
            });
        }
        parts.join(if latex { "" } else { "*" })
    }

    fn is_unit(&self) -> bool {
        self.t.is_zero() && self.alpha.iter().all(|&e| e == 0)
    }
}

/// Finite sum of monomials `c * a^alpha * t^s` with nonzero coefficients
/// `c` in `Q(y)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentExpr {
    rank: usize,
    terms: BTreeMap<Exponent, YRational>,
}

impl LaurentExpr {
    pub fn zero(rank: usize) -> Self {
        LaurentExpr {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, YRational::one())
    }

    pub fn constant(rank: usize, c: YRational) -> Self {
        Self::monomial(Exponent::with_int_t(vec![0; rank], 0), c)
    }

    pub fn monomial(e: Exponent, c: YRational) -> Self {
        let rank = e.alpha.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentExpr { rank, terms }
    }

    pub fn t_power(rank: usize, e: i64) -> Self {
        Self::monomial(Exponent::with_int_t(vec![0; rank], e), YRational::one())
    }

    pub fn character(ch: &Character) -> Self {
        Self::monomial(Exponent::with_int_t(ch.0.clone(), 0), YRational::one())
    }

    /// `c * ch * t^e`.
    pub fn character_t(ch: &Character, e: i64, c: YRational) -> Self {
        Self::monomial(Exponent::with_int_t(ch.0.clone(), e), c)
    }

    /// Polynomial in `t` with `t`-free coefficients, `coeffs[j]` at `t^j`.
    pub fn from_t_coeffs(rank: usize, coeffs: &[YRational]) -> Self {
        let mut out = Self::zero(rank);
        for (j, c) in coeffs.iter().enumerate() {
            out.add_term(Exponent::with_int_t(vec![0; rank], j as i64), c.clone());
        }
        out
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Exponent, YRational)>) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (e, c) in terms {
            if e.alpha.len() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: e.alpha.len(),
                });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, YRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single_term(&self) -> Option<(&Exponent, &YRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: YRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &YRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentExpr {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `ch * t^e`.
    pub fn shift(&self, ch: &Character, e: Rational64) -> Self {
        let s = Exponent::new(ch.0.clone(), e);
        LaurentExpr {
            rank: self.rank,
            terms: self.terms.iter().map(|(x, c)| (x.add(&s), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.monomial_inverse()? } else { self.clone() };
        let mut acc = Self::one(self.rank);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Inverse of a single-term expression.
    pub fn monomial_inverse(&self) -> Result<Self> {
        match self.single_term() {
            Some((e, c)) => Ok(Self::monomial(e.neg(), c.inv()?)),
            None if self.is_zero() => Err(Error::DivisionByZero),
            None => Err(Error::NotInvertible),
        }
    }

    /// Maps every coefficient, dropping the ones that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&YRational) -> Result<YRational>) -> Result<Self> {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Divides every coefficient by the `y`-polynomial `d`.
    pub fn divide_exact_y(&self, d: &YPoly, mode: Exactness) -> Result<Self> {
        let dq = YRational::from_poly(d.clone());
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let q = c.checked_div(&dq)?;
            if mode == Exactness::Polynomial && c.is_polynomial() && !q.is_polynomial() {
                return Err(Error::InexactDivision {
                    divisor: d.to_string(),
                    coefficient: c.to_string(),
                    position: format!("monomial {}", e.render(false)),
                });
            }
            out.add_term(e.clone(), q);
        }
        Ok(out)
    }

    /// Least common denominator of the `t` exponents (1 when all are integral).
    pub fn t_lattice(&self) -> i64 {
        self.terms
            .keys()
            .fold(1, |acc, e| acc.lcm(e.t.denom()))
    }

    pub fn has_integral_t(&self) -> bool {
        self.terms.keys().all(|e| e.t.is_integer())
    }

    /// Fails on the first fractional `t`-exponent.
    pub fn require_integral_t(&self) -> Result<()> {
        for (e, c) in &self.terms {
            if !e.t.is_integer() {
                return Err(Error::FractionalExponent {
                    exponent: e.t.to_string(),
                    term: Self::monomial(e.clone(), c.clone()).to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|e| e.t.is_zero())
    }

    pub fn is_alpha_free(&self) -> bool {
        self.terms.keys().all(|e| e.alpha.iter().all(|&a| a == 0))
    }

    /// Largest and smallest `t` exponents, `None` for zero.
    pub fn t_range(&self) -> Option<(Rational64, Rational64)> {
        let mut it = self.terms.keys().map(|e| e.t);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Substitutes `t = 1`.
    pub fn at_t_one(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(Exponent::with_int_t(e.alpha.clone(), 0), c.clone());
        }
        out
    }

    /// Substitutes every `a_j = 1`.
    pub fn at_alpha_one(&self) -> LaurentExpr {
        let mut out = Self::zero(0);
        for (e, c) in &self.terms {
            out.add_term(Exponent::new(Vec::new(), e.t), c.clone());
        }
        out
    }

    /// Maps every coefficient through `y -> value`.
    pub fn at_y(&self, value: &num_rational::BigRational) -> Result<Self> {
        self.map_coeffs(|c| c.eval(value).map(|r| YRational::from_rational(&r)))
    }

    /// Applies `a_j -> a_j * t^(-w_j / q)` to every monomial.
    pub fn substitute_scalar(&self, weights: &[i64], q: i64) -> Result<Self> {
        if weights.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: weights.len(),
            });
        }
        if q == 0 {
            return Err(Error::InvalidAction("scalar exponent q must be nonzero".into()));
        }
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let pairing: i64 = e.alpha.iter().zip(weights).map(|(a, w)| a * w).sum();
            let t = e.t - Rational64::new(pairing, q);
            out.add_term(Exponent::new(e.alpha.clone(), t), c.clone());
        }
        Ok(out)
    }

    /// Groups by integral `t` exponent into `t`-free coefficients.
    pub(crate) fn by_t_power(&self) -> Result<BTreeMap<i64, LaurentExpr>> {
        self.require_integral_t()?;
        let mut out: BTreeMap<i64, LaurentExpr> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.t.to_integer();
            out.entry(k)
                .or_insert_with(|| LaurentExpr::zero(self.rank))
                .add_term(Exponent::with_int_t(e.alpha.clone(), 0), c.clone());
        }
        Ok(out)
    }

    pub(crate) fn from_t_groups(rank: usize, groups: &BTreeMap<i64, LaurentExpr>) -> Self {
        let mut out = Self::zero(rank);
        for (&k, g) in groups {
            for (e, c) in &g.terms {
                out.add_term(Exponent::with_int_t(e.alpha.clone(), k), c.clone());
            }
        }
        out
    }

    /// Coefficient of `t^k` as a `t`-free expression.
    pub fn t_coefficient(&self, k: i64) -> LaurentExpr {
        let mut out = Self::zero(self.rank);
        let k = Rational64::from_integer(k);
        for (e, c) in &self.terms {
            if e.t == k {
                out.add_term(Exponent::with_int_t(e.alpha.clone(), 0), c.clone());
            }
        }
        out
    }

    /// `t`-free, `a`-free value as a coefficient, if the expression is one.
    pub fn as_scalar(&self) -> Option<YRational> {
        if self.is_zero() {
            return Some(YRational::zero());
        }
        match self.single_term() {
            Some((e, c)) if e.is_unit() => Some(c.clone()),
            _ => None,
        }
    }

    /// Folds over `(exponent, coefficient)` pairs in exponent order.
    pub fn fold_terms<T>(&self, init: T, mut f: impl FnMut(T, &Exponent, &YRational) -> T) -> T {
        self.terms.iter().fold(init, |acc, (e, c)| f(acc, e, c))
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Descending order reads closer to the usual presentation in t.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.t.cmp(&b.t).then_with(|| b.alpha.cmp(&a.alpha)));
        for (e, c) in terms {
            let mono = e.render(latex);
            let (neg, mag) = if c.is_negative_monomial() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if latex { mag.to_latex() } else { mag.to_string() };
            let coeff = if mag.is_compound() { format!("({coeff})") } else { coeff };
            let term = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) if latex => format!("{coeff}{mono}"),
                (false, false) => format!("{coeff}*{mono}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    /// Evaluates a parsed expression; division is allowed by single terms only.
    pub fn from_ast(expr: &crate::expr::Expr, rank: usize) -> Result<Self> {
        use crate::expr::Expr;
        Ok(match expr {
            Expr::Int(c) => Self::constant(rank, YRational::from_int(c.clone())),
            Expr::Var(v) => match v.as_str() {
                "y" => Self::constant(rank, YRational::y()),
                "t" => Self::t_power(rank, 1),
                "H" => &Self::one(rank) - &Self::t_power(rank, 1),
                other => {
                    let j = crate::expr::alpha_index(other)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {other:?}")))?;
                    if j >= rank {
                        return Err(Error::Parse(format!(
                            "variable {other} exceeds torus rank {rank}"
                        )));
                    }
                    Self::character(&Character::basis(rank, j))
                }
            },
            Expr::Neg(a) => -&Self::from_ast(a, rank)?,
            Expr::Add(a, b) => Self::from_ast(a, rank)?.try_add(&Self::from_ast(b, rank)?)?,
            Expr::Sub(a, b) => Self::from_ast(a, rank)?.try_sub(&Self::from_ast(b, rank)?)?,
            Expr::Mul(a, b) => Self::from_ast(a, rank)?.try_mul(&Self::from_ast(b, rank)?)?,
            Expr::Div(a, b) => {
                let num = Self::from_ast(a, rank)?;
                let den = Self::from_ast(b, rank)?;
                match den.as_scalar() {
                    Some(s) if !s.is_zero() && !den.is_zero() => num.scale(&s.inv()?),
                    _ => num.try_mul(&den.monomial_inverse().map_err(|_| {
                        Error::Parse(format!("cannot divide by non-monomial {den}"))
                    })?)?,
                }
            }
            Expr::Pow(a, e) => {
                let base = Self::from_ast(a, rank)?;
                base.pow(*e).map_err(|_| {
                    Error::Parse(format!("negative power of non-monomial {base}"))
                })?
            }
        })
    }

    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        Self::from_ast(&crate::expr::parse(s)?, rank)
    }
}

impl fmt::Display for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentExpr(rank={}, {})", self.rank, self)
    }
}

impl Add for &LaurentExpr {
    type Output = LaurentExpr;
    fn add(self, rhs: &LaurentExpr) -> LaurentExpr {
        self.try_add(rhs).expect("rank mismatch")
    }
}

impl Sub for &LaurentExpr {
    type Output = LaurentExpr;
    fn sub(self, rhs: &LaurentExpr) -> LaurentExpr {
        self.try_sub(rhs).expect("rank mismatch")
    }
}

impl Mul for &LaurentExpr {
    type Output = LaurentExpr;
    fn mul(self, rhs: &LaurentExpr) -> LaurentExpr {
        self.try_mul(rhs).expect("rank mismatch")
    }
}

impl Neg for &LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        LaurentExpr {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exponents: BTreeMap<String, serde_json::Value>,
    coeff: YRational,
}

#[derive(Serialize, Deserialize)]
struct ExprWire {
    rank: usize,
    terms: Vec<TermWire>,
}

fn rational_string(r: &Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad exponent {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl LaurentExpr {
    fn to_wire(&self) -> ExprWire {
        ExprWire {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut exponents = BTreeMap::new();
                    for (j, a) in e.alpha.iter().enumerate() {
                        exponents.insert(format!("a{}", j + 1), serde_json::Value::from(*a));
                    }
                    exponents.insert("t".into(), serde_json::Value::from(rational_string(&e.t)));
                    TermWire {
                        exponents,
                        coeff: c.clone(),
                    }
                })
                .collect(),
        }
    }

    fn from_wire(w: ExprWire) -> Result<Self> {
        let mut out = Self::zero(w.rank);
        for term in w.terms {
            let mut alpha = vec![0; w.rank];
            let mut t = Rational64::zero();
            for (k, v) in term.exponents {
                if k == "t" {
                    t = match &v {
                        serde_json::Value::String(s) => parse_rational(s)?,
                        serde_json::Value::Number(n) => Rational64::from_integer(
                            n.as_i64().ok_or_else(|| Error::Parse(format!("bad t exponent {n}")))?,
                        ),
                        other => return Err(Error::Parse(format!("bad t exponent {other}"))),
                    };
                } else {
                    let j = crate::expr::alpha_index(&k)
                        .filter(|&j| j < w.rank)
                        .ok_or_else(|| Error::Parse(format!("unknown exponent key {k:?}")))?;
                    alpha[j] = v
                        .as_i64()
                        .ok_or_else(|| Error::Parse(format!("bad exponent for {k}")))?;
                }
            }
            out.add_term(Exponent::new(alpha, t), term.coeff);
        }
        Ok(out)
    }
}

impl Serialize for LaurentExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ExprWire::deserialize(d)?;
        LaurentExpr::from_wire(w).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_multiply_by_adding_exponents() {
        let a = LaurentExpr::parse("a1^2*t", 2).unwrap();
        let b = LaurentExpr::parse("a1^-1*a2*t^3", 2).unwrap();
        assert_eq!(&a * &b, LaurentExpr::parse("a1*a2*t^4", 2).unwrap());
        assert_eq!(
            (&a * &a.monomial_inverse().unwrap()),
            LaurentExpr::one(2)
        );
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = LaurentExpr::parse("(1+y)*t - t - y*t", 0).unwrap();
        assert!(a.is_zero());
        assert_eq!(a.len(), 0);
    }

    #[test]
    fn scalar_substitution_moves_weight_into_t() {
        let e = LaurentExpr::parse("1 - 1/a1", 1).unwrap();
        let s = e.substitute_scalar(&[1], 1).unwrap();
        assert_eq!(s, LaurentExpr::parse("1 - t/a1", 1).unwrap());

        let half = LaurentExpr::parse("a1^-1", 1).unwrap().substitute_scalar(&[1], 2).unwrap();
        assert_eq!(half.t_lattice(), 2);
        assert!(matches!(half.require_integral_t(), Err(Error::FractionalExponent { .. })));
    }

    #[test]
    fn json_round_trip_with_fractional_t() {
        let e = LaurentExpr::parse("3*a1^-2*t + y", 2)
            .unwrap()
            .substitute_scalar(&[1, 0], 2)
            .unwrap();
        let j = serde_json::to_string(&e).unwrap();
        assert!(j.contains(r#""t":"2/1""#), "{j}");
        let back: LaurentExpr = serde_json::from_str(&j).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn character_parsing() {
        assert_eq!(Character::parse("a1^2*a2^-1", 2).unwrap(), Character(vec![2, -1]));
        assert_eq!(Character::parse("a1²·a2⁻¹", 2).unwrap(), Character(vec![2, -1]));
        assert_eq!(Character::parse("1", 3).unwrap(), Character::trivial(3));
        assert!(Character::parse("2*a1", 1).is_err());
        assert!(Character::parse("a1+a2", 2).is_err());
        assert_eq!(Character(vec![2, -1, 0]).to_string(), "a1^2*a2^-1");
    }
}
