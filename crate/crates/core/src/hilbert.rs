//! Hilbert series, K-polynomials and Hilbert polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::equivariant::AffineEquivariantClass;
use crate::error::{Error, Result};
use crate::ring::{binomial, LaurentExpr, TorusAction, TruncatedClass, YRational};

pub const DEFAULT_GENERATOR_CAP: usize = 20;

/// Numerator of the Hilbert series of `X ⊂ P^n` over `(1-t)^(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KPolynomial {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl KPolynomial {
    pub fn new(n: usize, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        KPolynomial { n, coeffs }
    }

    pub fn from_i64s(n: usize, coeffs: &[i64]) -> Self {
        Self::new(n, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one(n: usize) -> Self {
        Self::from_i64s(n, &[1])
    }

    /// Parses an expression in `t` (and `H = 1 - t`), e.g. `3H^2 - (t+2)H^3`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Self::from_laurent(n, &LaurentExpr::parse(s, 0)?)
    }

    pub fn from_laurent(n: usize, e: &LaurentExpr) -> Result<Self> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (exp, c) in e.terms() {
            if !exp.t.is_integer() || exp.t.is_negative() {
                return Err(Error::Parse(format!(
                    "K-polynomial has a term t^{}; only nonnegative integer powers are allowed",
                    exp.t
                )));
            }
            let v = c
                .as_integer()
                .ok_or_else(|| Error::Parse(format!("K-polynomial coefficient {c} is not an integer")))?;
            let k = exp.t.to_integer() as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] = v;
        }
        Ok(Self::new(n, coeffs))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_laurent(&self) -> LaurentExpr {
        let cs: Vec<_> = self.coeffs.iter().map(|c| YRational::from_int(c.clone())).collect();
        LaurentExpr::from_t_coeffs(0, &cs)
    }

    /// `self + (1 - t)^(n+1) g`.
    pub fn add_relation_multiple(&self, g: &[i64]) -> Self {
        let mut rel = vec![BigInt::one()];
        for _ in 0..=self.n {
            let mut next = vec![BigInt::zero(); rel.len() + 1];
            for (i, c) in rel.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c;
            }
            rel = next;
        }
        let len = self.coeffs.len().max(rel.len() + g.len());
        let mut out = self.coeffs.clone();
        out.resize(len, BigInt::zero());
        for (i, gi) in g.iter().enumerate() {
            for (j, r) in rel.iter().enumerate() {
                out[i + j] += r * BigInt::from(*gi);
            }
        }
        Self::new(self.n, out)
    }

    pub fn render(&self) -> String {
        let cs: Vec<_> = self.coeffs.iter().map(|c| YRational::from_int(c.clone())).collect();
        let e = LaurentExpr::from_t_coeffs(0, &cs);
        e.to_string()
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for KPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            n: usize,
            coeffs: Vec<String>,
            text: String,
        }
        Wire {
            n: self.n,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            text: self.render(),
        }
        .serialize(s)
    }
}

/// A monomial ideal in `x0..x_{m-1}`, kept minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Drops duplicate and non-minimal generators; order of the survivors is
    /// sorted for a canonical form.
    pub fn new(num_vars: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != num_vars) {
            return Err(Error::DimensionMismatch {
                left: g.len(),
                right: num_vars,
            });
        }
        let mut gens = generators;
        gens.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        gens.dedup();
        let mut kept: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            if !kept.iter().any(|k| divides(k, &g)) {
                kept.push(g);
            }
        }
        kept.sort();
        Ok(MonomialIdeal {
            num_vars,
            generators: kept,
        })
    }

    /// Parses `"x0*x3, x0*x2, x1^2"`; the empty string is the zero ideal.
    pub fn parse(s: &str, num_vars: usize) -> Result<Self> {
        let mut gens = Vec::new();
        for mono in s.split(',') {
            let mono = mono.trim();
            if mono.is_empty() {
                continue;
            }
            let mut e = vec![0u32; num_vars];
            for factor in mono.split('*') {
                let factor = factor.trim();
                if factor == "1" {
                    continue;
                }
                let (var, pow) = match factor.split_once('^') {
                    Some((v, p)) => (
                        v.trim(),
                        p.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let idx: usize = var
                    .strip_prefix('x')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("expected a variable x0..x{}, got {var:?}", num_vars.saturating_sub(1))))?;
                if idx >= num_vars {
                    return Err(Error::Parse(format!(
                        "variable x{idx} out of range for {num_vars} variables"
                    )));
                }
                e[idx] += pow;
            }
            gens.push(e);
        }
        Self::new(num_vars, gens)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Whether the monomial with exponent vector `m` lies in the ideal.
    pub fn contains(&self, m: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, m))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let parts: Vec<String> = g
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            })
            .collect();
        write!(f, "({})", monos.join(", "))
    }
}

fn lcm_into(acc: &[u32], g: &[u32]) -> Vec<u32> {
    acc.iter().zip(g).map(|(a, b)| *a.max(b)).collect()
}

fn subset_sum(gens: &[Vec<u32>], start: usize, lcm: Vec<u32>, sign: i64, acc: &mut BTreeMap<u32, i64>) {
    for i in start..gens.len() {
        let l = lcm_into(&lcm, &gens[i]);
        let deg: u32 = l.iter().sum();
        *acc.entry(deg).or_insert(0) -= sign;
        subset_sum(gens, i + 1, l, -sign, acc);
    }
}

/// `sum_S (-1)^|S| t^deg lcm(S)` over subsets of the generators.
pub fn kpoly_from_monomial_ideal(ideal: &MonomialIdeal) -> Result<KPolynomial> {
    kpoly_from_monomial_ideal_with_cap(ideal, DEFAULT_GENERATOR_CAP)
}

pub fn kpoly_from_monomial_ideal_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<KPolynomial> {
    let gens = &ideal.generators;
    if gens.len() > cap {
        return Err(Error::GeneratorCap {
            count: gens.len(),
            cap,
        });
    }
    let n = ideal.num_vars.saturating_sub(1);
    // one branch per smallest index in the subset; sums are merged in order
    let partials: Vec<BTreeMap<u32, i64>> = (0..gens.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = BTreeMap::new();
            let g = gens[i].clone();
            let deg: u32 = g.iter().sum();
            *acc.entry(deg).or_insert(0) -= 1;
            subset_sum(gens, i + 1, g, -1, &mut acc);
            acc
        })
        .collect();
    let mut total: BTreeMap<u32, i64> = BTreeMap::new();
    total.insert(0, 1);
    for p in partials {
        for (d, c) in p {
            *total.entry(d).or_insert(0) += c;
        }
    }
    let top = total.keys().next_back().copied().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (d, c) in total {
        coeffs[d as usize] = BigInt::from(c);
    }
    Ok(KPolynomial::new(n, coeffs))
}

/// `h_0..h_J` of `K(t) / (1-t)^(n+1) = K(t) sum_j C(n+j, n) t^j`.
pub fn hilbert_series_coefficients(k: &KPolynomial, j_max: usize) -> Vec<BigInt> {
    let n = k.n as i64;
    (0..=j_max)
        .map(|j| {
            k.coeffs
                .iter()
                .enumerate()
                .take(j + 1)
                .fold(BigInt::zero(), |acc, (i, c)| {
                    acc + c * binomial(n + (j - i) as i64, n)
                })
        })
        .collect()
}

/// Number of degree-`j` monomials outside the ideal, for `j = 0..=j_max`.
pub fn count_standard_monomials(ideal: &MonomialIdeal, j_max: usize) -> Vec<u64> {
    fn walk(ideal: &MonomialIdeal, m: &mut Vec<u32>, var: usize, left: u32, count: &mut u64) {
        if var + 1 == m.len() {
            m[var] = left;
            if !ideal.contains(m) {
                *count += 1;
            }
            m[var] = 0;
            return;
        }
        for e in 0..=left {
            m[var] = e;
            walk(ideal, m, var + 1, left - e, count);
        }
        m[var] = 0;
    }
    (0..=j_max)
        .map(|j| {
            if ideal.num_vars == 0 {
                return u64::from(j == 0);
            }
            let mut count = 0;
            let mut m = vec![0u32; ideal.num_vars];
            walk(ideal, &mut m, 0, j as u32, &mut count);
            count
        })
        .collect()
}

/// `[O_X] = K_X(t)` reduced in `K(P^n)`.
pub fn sheaf_class_from_kpoly(k: &KPolynomial) -> TruncatedClass {
    let cs: Vec<_> = k.coeffs.iter().map(|c| YRational::from_int(c.clone())).collect();
    TruncatedClass::from_t_coeffs(k.n, &cs)
}

/// `K_X(t)` read as the `Gamma`-equivariant class of the affine cone.
pub fn gamma_equivariant_sheaf_class(k: &KPolynomial) -> AffineEquivariantClass {
    AffineEquivariantClass::gamma(&TorusAction::trivial(k.n), k.to_laurent())
        .expect("rank 0 expression for the trivial action")
}

/// A polynomial in `m` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertPolynomial {
    /// Ascending coefficients in `m`.
    coeffs: Vec<BigRational>,
    /// Coefficient of `C(m + r, r)` at index `r`.
    binomial_coeffs: Vec<BigRational>,
}

/// `C(m + r, r)` as a polynomial in `m`.
fn binomial_poly(r: usize) -> Vec<BigRational> {
    let mut p = vec![BigRational::one()];
    for j in 1..=r {
        let j = BigRational::from_integer(BigInt::from(j));
        // p *= (m + j) / j
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i] += c * &j;
            next[i + 1] += c.clone();
        }
        for c in next.iter_mut() {
            *c = &*c / &j;
        }
        p = next;
    }
    p
}

impl HilbertPolynomial {
    /// `sum_i q_i C(m + n - i, n - i)`; the class must not involve `y`.
    pub fn from_class(c: &TruncatedClass) -> Result<Self> {
        let n = c.n();
        let mut binomial_coeffs = vec![BigRational::zero(); n + 1];
        for (i, q) in c.h_coeffs().iter().enumerate() {
            let v = q
                .as_constant()
                .ok_or_else(|| Error::YDependent(format!("coefficient {q} of H^{i}")))?;
            binomial_coeffs[n - i] = v;
        }
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (r, b) in binomial_coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (i, c) in binomial_poly(r).iter().enumerate() {
                coeffs[i] += b * c;
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Ok(HilbertPolynomial {
            coeffs,
            binomial_coeffs,
        })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, m: i64) -> BigRational {
        let m = BigRational::from_integer(BigInt::from(m));
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &m + c)
    }

    /// Integer-valued on `lo..=hi`.
    pub fn is_integer_valued_on(&self, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|m| self.eval(m).is_integer())
    }

    /// Ascending powers, e.g. `1 + 3/2*m + 1/2*m^2`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coeff = if mag.is_one() && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{mag}*")
            } else {
                mag.to_string()
            };
            let var = match i {
                0 => String::new(),
                1 => "m".to_string(),
                _ => format!("m^{i}"),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&coeff);
            out.push_str(&var);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// In the basis `C(m + r, r)`, e.g. `3*C(m+1,1) - 3*C(m,0)`.
    pub fn render_binomial(&self) -> String {
        let mut out = String::new();
        for (r, c) in self.binomial_coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let basis = format!("C(m+{r},{r})").replace("m+0", "m");
            let term = if mag.is_one() { basis } else { format!("{mag}*{basis}") };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Leading coefficient times `dim!`, the degree, and the dimension.
    pub fn degree_and_dim(&self) -> Option<(BigInt, usize)> {
        let dim = self.coeffs.len() - 1;
        let lead = self.coeffs.last()?;
        if lead.is_zero() {
            return None;
        }
        let fact: BigInt = (1..=dim).map(BigInt::from).product();
        let d = lead * BigRational::from_integer(fact);
        d.is_integer().then(|| (d.to_integer(), dim))
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            coeffs: Vec<String>,
            text: String,
            binomial: String,
        }
        Wire {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            text: self.render(),
            binomial: self.render_binomial(),
        }
        .serialize(s)
    }
}

/// Everything the `hilbert` front end reports for an ideal.
#[derive(Debug, Clone, Serialize)]
pub struct HilbertReport {
    pub ideal: String,
    pub kpoly: KPolynomial,
    pub series: Vec<String>,
    pub class: TruncatedClass,
    pub hilbert_polynomial: HilbertPolynomial,
}

pub fn hilbert_report(ideal: &MonomialIdeal, j_max: usize, cap: usize) -> Result<HilbertReport> {
    let kpoly = kpoly_from_monomial_ideal_with_cap(ideal, cap)?;
    let series = hilbert_series_coefficients(&kpoly, j_max)
        .iter()
        .map(ToString::to_string)
        .collect();
    let class = sheaf_class_from_kpoly(&kpoly);
    let hilbert_polynomial = HilbertPolynomial::from_class(&class)?;
    Ok(HilbertReport {
        ideal: ideal.to_string(),
        kpoly,
        series,
        class,
        hilbert_polynomial,
    })
}

/// Smallest `j` from which `h_j` must agree with the Hilbert polynomial.
pub fn regularity_bound(k: &KPolynomial) -> usize {
    k.degree().unwrap_or(0)
}
