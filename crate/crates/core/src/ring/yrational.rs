//! Exact rational functions in `y` over the integers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ypoly::YPoly;
use crate::error::{Error, Result};

/// A rational function `num / den` in `y`.
///
/// Canonical form: `gcd(num, den)` is a unit, the combined integer content of
/// the pair is one, and `den` has positive leading coefficient. Zero is `0/1`.
/// Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YRational {
    num: YPoly,
    den: YPoly,
}

impl Default for YRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl YRational {
    pub fn zero() -> Self {
        YRational {
            num: YPoly::zero(),
            den: YPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        YRational {
            num: YPoly::constant(c),
            den: YPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(YPoly::constant(r.numer().clone()), YPoly::constant(r.denom().clone()))
            .expect("nonzero denominator")
    }

    pub fn y() -> Self {
        Self::from_poly(YPoly::y())
    }

    /// `1 + y`, the recurring normalisation factor.
    pub fn one_plus_y() -> Self {
        Self::from_poly(YPoly::from_i64s(&[1, 1]))
    }

    pub fn from_poly(p: YPoly) -> Self {
        YRational {
            num: p,
            den: YPoly::one(),
        }
    }

    /// Builds and canonicalises `num / den`.
    pub fn new(num: YPoly, den: YPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: YPoly, den: YPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = -&num;
            den = -&den;
        }
        YRational { num, den }
    }

    pub fn numer(&self) -> &YPoly {
        &self.num
    }

    pub fn denom(&self) -> &YPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a polynomial in `y` (rational coefficients allowed).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// True when the value is a polynomial in `y` with integer coefficients.
    pub fn is_integral_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value does not depend on `y`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value as an exact rational, when it does not depend on `y`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(BigRational::new(self.num.coeff(0), self.den.coeff(0)))
    }

    /// The value as an integer, when it is a `y`-free integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_constant()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Evaluates at a rational point; a vanishing denominator is a pole.
    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole(at.to_string()));
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn at_y_zero(&self) -> Result<BigRational> {
        self.eval(&BigRational::zero())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }

    /// True when the rendering needs parentheses as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.term_count() > 1
    }

    /// Numerator is a single term with negative coefficient, so the value
    /// prints naturally after a minus sign.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        self.num.term_count() == 1 && self.num.leading().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Display for YRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &YPoly| {
                if p.term_count() > 1 || p.coeff(0).is_negative() {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for YRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YRational({self})")
    }
}

impl Add for &YRational {
    type Output = YRational;
    fn add(self, rhs: &YRational) -> YRational {
        if self.den == rhs.den {
            if self.den.is_one() {
                return YRational::from_poly(&self.num + &rhs.num);
            }
            return YRational::normalize(&self.num + &rhs.num, self.den.clone());
        }
        YRational::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &YRational {
    type Output = YRational;
    fn sub(self, rhs: &YRational) -> YRational {
        self + &(-rhs)
    }
}

impl Mul for &YRational {
    type Output = YRational;
    fn mul(self, rhs: &YRational) -> YRational {
        if self.den.is_one() && rhs.den.is_one() {
            return YRational::from_poly(&self.num * &rhs.num);
        }
        YRational::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &YRational {
    type Output = YRational;
    /// Panics on division by zero; use [`YRational::checked_div`] otherwise.
    fn div(self, rhs: &YRational) -> YRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &YRational {
    type Output = YRational;
    fn neg(self) -> YRational {
        YRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for YRational {
            type Output = YRational;
            fn $m(self, rhs: YRational) -> YRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for YRational {
    type Output = YRational;
    fn neg(self) -> YRational {
        -&self
    }
}

impl From<i64> for YRational {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<YPoly> for YRational {
    fn from(p: YPoly) -> Self {
        Self::from_poly(p)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: String,
    den: String,
}

impl Serialize for YRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            num: self.num.to_coeff_string(),
            den: self.den.to_coeff_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for YRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let num = YPoly::from_coeff_string(&w.num).map_err(serde::de::Error::custom)?;
        let den = YPoly::from_coeff_string(&w.den).map_err(serde::de::Error::custom)?;
        YRational::new(num, den).map_err(serde::de::Error::custom)
    }
}

/// Binomial coefficient `C(n, k)` for nonnegative `n`, zero outside `0..=n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalised binomial `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigRational::one();
    for i in 0..k {
        acc *= BigRational::new(BigInt::from(n - i), BigInt::from(i + 1));
    }
    acc.to_integer()
}
