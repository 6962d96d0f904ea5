//! Classes in `K(P^n)[y] = Q(y)[t]/((1-t)^(n+1))`.
//!
//! Storage is always the hyperplane basis `H = 1 - t`, in which the reduced
//! representative is the unique polynomial of degree at most `n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::yrational::{binomial, binomial_signed, YRational};
use super::ypoly::YPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    H,
    #[serde(rename = "t")]
    T,
}

/// How strictly [`TruncatedClass::divide_exact_y`] treats the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    /// Division in the field of rational functions; only a zero divisor fails.
    Field,
    /// Every `y`-polynomial coefficient must have a `y`-polynomial quotient.
    Polynomial,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedClass {
    n: usize,
    coeffs: Vec<YRational>,
}

impl TruncatedClass {
    pub fn zero(n: usize) -> Self {
        TruncatedClass {
            n,
            coeffs: vec![YRational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, YRational::one())
    }

    pub fn constant(n: usize, c: YRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = c;
        z
    }

    /// `H^k`, zero when `k > n`.
    pub fn h_power(n: usize, k: usize) -> Self {
        let mut z = Self::zero(n);
        if k <= n {
            z.coeffs[k] = YRational::one();
        }
        z
    }

    /// `t^e` for any integer `e`; negative powers use `t^-1 = sum H^i`.
    pub fn t_power(n: usize, e: i64) -> Self {
        let mut z = Self::zero(n);
        for i in 0..=n as i64 {
            // (1-H)^e = sum_i C(e, i) (-H)^i, generalised binomial for e < 0
            let c = binomial_signed(e, i);
            let c = if i % 2 == 1 { -c } else { c };
            z.coeffs[i as usize] = YRational::from_int(c);
        }
        z
    }

    /// Reduces `sum_i coeffs[i] H^i`, dropping powers above `n`.
    pub fn from_h_coeffs(n: usize, mut coeffs: Vec<YRational>) -> Self {
        coeffs.resize(n + 1, YRational::zero());
        TruncatedClass { n, coeffs }
    }

    pub fn from_h_ints(n: usize, coeffs: &[i64]) -> Self {
        Self::from_h_coeffs(n, coeffs.iter().map(|&c| YRational::from_int(c)).collect())
    }

    /// Reduces `sum_j coeffs[j] t^j` (any length) modulo `(1-t)^(n+1)`.
    pub fn from_t_coeffs(n: usize, coeffs: &[YRational]) -> Self {
        Self::from_t_laurent(n, 0, coeffs)
    }

    pub fn from_t_ints(n: usize, coeffs: &[i64]) -> Self {
        let cs: Vec<_> = coeffs.iter().map(|&c| YRational::from_int(c)).collect();
        Self::from_t_coeffs(n, &cs)
    }

    /// Reduces `sum_j coeffs[j] t^(min_exp + j)`.
    pub fn from_t_laurent(n: usize, min_exp: i64, coeffs: &[YRational]) -> Self {
        let mut out = vec![YRational::zero(); n + 1];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = min_exp + j as i64;
            for (i, slot) in out.iter_mut().enumerate() {
                let b = binomial_signed(e, i as i64);
                if b.is_zero() {
                    continue;
                }
                let b = if i % 2 == 1 { -b } else { b };
                *slot = &*slot + &(c * &YRational::from_int(b));
            }
        }
        TruncatedClass { n, coeffs: out }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients `q_0..q_n` of the reduced form in `H`.
    pub fn h_coeffs(&self) -> &[YRational] {
        &self.coeffs
    }

    pub fn h_coeff(&self, i: usize) -> &YRational {
        &self.coeffs[i]
    }

    /// Coefficients `p_0..p_n` of the reduced form in `t`.
    pub fn t_coeffs(&self) -> Vec<YRational> {
        let mut out = vec![YRational::zero(); self.n + 1];
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            // H^i = (1-t)^i
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let b = binomial(i as i64, j as i64);
                let b = if j % 2 == 1 { -b } else { b };
                *slot = &*slot + &(q * &YRational::from_int(b));
            }
        }
        out
    }

    pub fn coeffs_in(&self, basis: Basis) -> Vec<YRational> {
        match basis {
            Basis::H => self.coeffs.clone(),
            Basis::T => self.t_coeffs(),
        }
    }

    /// Builds a class from coefficients given in either basis.
    pub fn from_basis(n: usize, basis: Basis, coeffs: Vec<YRational>) -> Result<Self> {
        if coeffs.len() != n + 1 {
            return Err(Error::OutOfRange(format!(
                "expected {} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        Ok(match basis {
            Basis::H => Self::from_h_coeffs(n, coeffs),
            Basis::T => Self::from_t_coeffs(n, &coeffs),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(YRational::is_zero)
    }

    /// True when every coefficient is a polynomial in `y`.
    pub fn is_y_polynomial(&self) -> bool {
        self.coeffs.iter().all(YRational::is_polynomial)
    }

    pub fn is_y_free(&self) -> bool {
        self.coeffs.iter().all(YRational::is_constant)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Product in the truncated ring; monomials of `H`-degree above `n` vanish.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = vec![YRational::zero(); self.n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(TruncatedClass { n: self.n, coeffs: out })
    }

    pub fn scale(&self, c: &YRational) -> Self {
        TruncatedClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|q| q * c).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&YRational, &YRational) -> YRational) -> Self {
        TruncatedClass {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; exists iff the constant coefficient is nonzero,
    /// since `H` is nilpotent.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.inv()?;
        let mut out = vec![YRational::zero(); self.n + 1];
        out[0] = inv0.clone();
        for k in 1..=self.n {
            let mut acc = YRational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out[k] = -(&acc * &inv0);
        }
        Ok(TruncatedClass { n: self.n, coeffs: out })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    /// Divides every coefficient by the `y`-polynomial `d`.
    ///
    /// With [`Exactness::Polynomial`], a coefficient that is a polynomial must
    /// stay one; the first offender is reported.
    pub fn divide_exact_y(&self, d: &YPoly, mode: Exactness) -> Result<Self> {
        let dq = YRational::from_poly(d.clone());
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let q = c.checked_div(&dq)?;
            if mode == Exactness::Polynomial && c.is_polynomial() && !q.is_polynomial() {
                return Err(Error::InexactDivision {
                    divisor: d.to_string(),
                    coefficient: c.to_string(),
                    position: format!("H^{i}"),
                });
            }
            coeffs.push(q);
        }
        Ok(TruncatedClass { n: self.n, coeffs })
    }

    /// Evaluates every coefficient at `y = 0`.
    pub fn at_y_zero(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.at_y_zero().map(|r| YRational::from_rational(&r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedClass { n: self.n, coeffs })
    }

    /// Same `H`-coefficients viewed in `P^m`, truncating or zero-padding.
    pub fn rehome(&self, m: usize) -> Self {
        Self::from_h_coeffs(m, self.coeffs.clone())
    }

    pub fn render(&self, basis: Basis) -> String {
        render_class(&self.coeffs_in(basis), basis, false)
    }

    pub fn to_latex(&self, basis: Basis) -> String {
        render_class(&self.coeffs_in(basis), basis, true)
    }

    pub fn to_json_in(&self, basis: Basis) -> serde_json::Value {
        serde_json::to_value(ClassWire {
            n: self.n,
            basis,
            coeffs: self.coeffs_in(basis),
        })
        .expect("serializable")
    }
}

/// Renders `sum c_i v^i` in ascending powers of `v`.
pub(crate) fn render_class(coeffs: &[YRational], basis: Basis, latex: bool) -> String {
    let var = match basis {
        Basis::H => "H",
        Basis::T => "t",
    };
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = match (i, latex) {
            (0, _) => String::new(),
            (1, _) => var.to_string(),
            (_, true) => format!("{var}^{{{i}}}"),
            (_, false) => format!("{var}^{i}"),
        };
        let (neg, mag) = if c.is_negative_monomial() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        let coeff = if latex { mag.to_latex() } else { mag.to_string() };
        let coeff = if mag.is_compound() {
            format!("({coeff})")
        } else {
            coeff
        };
        let term = match (power.is_empty(), mag.is_one()) {
            (true, _) => coeff,
            (false, true) => power,
            (false, false) if latex => format!("{coeff}{power}"),
            (false, false) => format!("{coeff}*{power}"),
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
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for TruncatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Basis::H))
    }
}

impl fmt::Debug for TruncatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedClass(n={}, {})", self.n, self)
    }
}

/// Panicking operators for same-dimension arithmetic; the `try_*` methods
/// report mismatches instead.
impl Add for &TruncatedClass {
    type Output = TruncatedClass;
    fn add(self, rhs: &TruncatedClass) -> TruncatedClass {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &TruncatedClass {
    type Output = TruncatedClass;
    fn sub(self, rhs: &TruncatedClass) -> TruncatedClass {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul for &TruncatedClass {
    type Output = TruncatedClass;
    fn mul(self, rhs: &TruncatedClass) -> TruncatedClass {
        self.try_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &TruncatedClass {
    type Output = TruncatedClass;
    fn neg(self) -> TruncatedClass {
        self.scale(&YRational::from_int(-1))
    }
}

#[derive(Serialize, Deserialize)]
struct ClassWire {
    n: usize,
    basis: Basis,
    coeffs: Vec<YRational>,
}

impl Serialize for TruncatedClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassWire {
            n: self.n,
            basis: Basis::H,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ClassWire::deserialize(d)?;
        TruncatedClass::from_basis(w.n, w.basis, w.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: i64) -> YRational {
        YRational::from_int(c)
    }

    #[test]
    fn one_minus_t_squared_vanishes_on_the_line() {
        let h = TruncatedClass::from_t_ints(1, &[1, -1]);
        assert!((&h * &h).is_zero());
    }

    #[test]
    fn h_squared_survives_in_the_plane() {
        let h = TruncatedClass::h_power(2, 1);
        assert_eq!(&h * &h, TruncatedClass::h_power(2, 2));
    }

    #[test]
    fn cubic_sheaf_reduction() {
        assert_eq!(
            TruncatedClass::from_t_ints(2, &[1, 0, 0, -1]),
            TruncatedClass::from_h_ints(2, &[0, 3, -3])
        );
    }

    #[test]
    fn basis_conversion_examples() {
        let c = TruncatedClass::from_basis(3, Basis::T, vec![int(1), int(-1), int(0), int(0)]).unwrap();
        assert_eq!(c, TruncatedClass::h_power(3, 1));
        assert_eq!(
            TruncatedClass::t_power(2, 1),
            TruncatedClass::from_h_ints(2, &[1, -1])
        );
        assert_eq!(
            TruncatedClass::from_t_ints(3, &[1, 0, -4, 4, -1]),
            TruncatedClass::from_h_ints(3, &[0, 0, 2])
        );
    }

    #[test]
    fn negative_powers_of_t_invert_t() {
        for n in 0..5 {
            let t = TruncatedClass::t_power(n, 1);
            let tinv = TruncatedClass::t_power(n, -1);
            assert_eq!(&t * &tinv, TruncatedClass::one(n));
            assert_eq!(TruncatedClass::t_power(n, -3), tinv.pow(3));
        }
    }

    #[test]
    fn inverse_requires_unit_constant_term() {
        assert_eq!(TruncatedClass::h_power(2, 1).inverse(), Err(Error::NotInvertible));
        let u = TruncatedClass::from_h_ints(3, &[2, 1, 0, 5]);
        assert_eq!(&u * &u.inverse().unwrap(), TruncatedClass::one(3));
    }

    #[test]
    fn divide_by_one_plus_y() {
        let d = YPoly::from_i64s(&[1, 1]);
        let c = TruncatedClass::h_power(2, 1).scale(&YRational::one_plus_y());
        assert_eq!(
            c.divide_exact_y(&d, Exactness::Polynomial).unwrap(),
            TruncatedClass::h_power(2, 1)
        );
        // 1 + y t = (1+y) - y H
        let c = &TruncatedClass::one(1) + &TruncatedClass::t_power(1, 1).scale(&YRational::y());
        assert!(c.divide_exact_y(&d, Exactness::Polynomial).is_err());
        let q = c.divide_exact_y(&d, Exactness::Field).unwrap();
        let expected = TruncatedClass::from_h_coeffs(
            1,
            vec![YRational::one(), -(YRational::y() / YRational::one_plus_y())],
        );
        assert_eq!(q, expected);
        assert_eq!(q.scale(&YRational::one_plus_y()), c);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = TruncatedClass::one(1);
        let b = TruncatedClass::one(2);
        assert_eq!(
            a.try_add(&b),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn rendering_and_json() {
        let c = TruncatedClass::from_h_ints(2, &[0, 3, -3]);
        assert_eq!(c.render(Basis::H), "3*H - 3*H^2");
        assert_eq!(c.render(Basis::T), "3*t - 3*t^2");
        assert_eq!(c.to_latex(Basis::H), "3H - 3H^{2}");
        let mc = TruncatedClass::from_h_coeffs(
            1,
            vec![YRational::one_plus_y(), YRational::y().scale_int(-2)],
        );
        assert_eq!(mc.to_string(), "(1+y) - 2*y*H");
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(
            j,
            r#"{"n":2,"basis":"H","coeffs":[{"num":"0","den":"1"},{"num":"3","den":"1"},{"num":"-3","den":"1"}]}"#
        );
        let back: TruncatedClass = serde_json::from_value(c.to_json_in(Basis::T)).unwrap();
        assert_eq!(back, c);
    }

    trait ScaleInt {
        fn scale_int(&self, c: i64) -> YRational;
    }
    impl ScaleInt for YRational {
        fn scale_int(&self, c: i64) -> YRational {
            self * &YRational::from_int(c)
        }
    }
}
