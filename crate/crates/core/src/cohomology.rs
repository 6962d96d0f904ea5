//! Cohomological counterpart of the transfer formulas: equivariant
//! fundamental classes in `H_T^*(C^(n+1))` and `H_T^*(P^n)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::{self, alpha_index, Expr};
use crate::ring::{LaurentExpr, TorusAction};

/// Polynomial in `a_1..a_k` and `x` with rational coefficients. Exponent
/// vectors have length `k + 1`, the last slot being `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMPoly {
    rank: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl QMPoly {
    pub fn zero(rank: usize) -> Self {
        QMPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: BigRational) -> Self {
        let mut p = Self::zero(rank);
        p.add_term(vec![0; rank + 1], c);
        p
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigRational::one())
    }

    /// `a_{j+1}`.
    pub fn alpha(rank: usize, j: usize) -> Self {
        let mut e = vec![0; rank + 1];
        e[j] = 1;
        let mut p = Self::zero(rank);
        p.add_term(e, BigRational::one());
        p
    }

    pub fn x(rank: usize) -> Self {
        let mut e = vec![0; rank + 1];
        e[rank] = 1;
        let mut p = Self::zero(rank);
        p.add_term(e, BigRational::one());
        p
    }

    /// The linear form `sum_j c_j a_j`.
    pub fn linear_form(c: &[i64]) -> Self {
        let rank = c.len();
        (0..rank).fold(Self::zero(rank), |acc, j| {
            &acc + &Self::alpha(rank, j).scale(&BigRational::from_integer(c[j].into()))
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.rank), |acc, _| &acc * self)
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[self.rank]).max()
    }

    pub fn is_x_free(&self) -> bool {
        self.x_degree().is_none_or(|d| d == 0)
    }

    /// Replaces every `a_j` by `images[j]` and `x` by `x_image`.
    pub fn substitute(&self, images: &[QMPoly], x_image: &QMPoly) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.rank, c.clone());
            for (j, &k) in e[..self.rank].iter().enumerate() {
                term = &term * &images[j].pow(k);
            }
            term = &term * &x_image.pow(e[self.rank]);
            out = &out + &term;
        }
        out
    }

    /// Sets `x = 0`.
    pub fn at_x_zero(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            if e[self.rank] == 0 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    fn from_ast(e: &Expr, rank: usize) -> Result<Self> {
        Ok(match e {
            Expr::Int(v) => Self::constant(rank, BigRational::from_integer(v.clone())),
            Expr::Var(name) if name == "x" => Self::x(rank),
            Expr::Var(name) => match alpha_index(name) {
                Some(j) if j < rank => Self::alpha(rank, j),
                _ => return Err(Error::Parse(format!("unknown variable {name:?} for rank {rank}"))),
            },
            Expr::Neg(a) => -&Self::from_ast(a, rank)?,
            Expr::Add(a, b) => &Self::from_ast(a, rank)? + &Self::from_ast(b, rank)?,
            Expr::Sub(a, b) => &Self::from_ast(a, rank)? - &Self::from_ast(b, rank)?,
            Expr::Mul(a, b) => &Self::from_ast(a, rank)? * &Self::from_ast(b, rank)?,
            Expr::Div(a, b) => {
                let d = Self::from_ast(b, rank)?;
                let c = d
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("can only divide by a nonzero number".into()))?;
                Self::from_ast(a, rank)?.scale(&c.recip())
            }
            Expr::Pow(a, k) => {
                let k = u32::try_from(*k)
                    .map_err(|_| Error::Parse("negative powers are not polynomial".into()))?;
                Self::from_ast(a, rank)?.pow(k)
            }
        })
    }

    /// Parses e.g. `3*a1 - x^2/2`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        Self::from_ast(&expr::parse(s)?, rank)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && e.iter().all(|&k| k == 0) => Some(c.clone()),
            _ => None,
        }
    }

    fn ordered_terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }

    fn monomial_name(&self, e: &[u32], latex: bool) -> String {
        let mut parts = Vec::new();
        for (j, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let v = if j == self.rank {
                "x".to_string()
            } else if latex {
                format!("a_{{{}}}", j + 1)
            } else {
                format!("a{}", j + 1)
            };
            parts.push(match (k, latex) {
                (1, _) => v,
                (_, true) => format!("{v}^{{{k}}}"),
                (_, false) => format!("{v}^{k}"),
            });
        }
        parts.join(if latex { " " } else { "*" })
    }

    fn render(&self, latex: bool) -> String {
        let mut out = String::new();
        for (e, c) in self.ordered_terms() {
            let mono = self.monomial_name(e, latex);
            let mag = c.abs();
            let coeff = if latex && !mag.is_integer() {
                format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            } else {
                mag.to_string()
            };
            let term = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) if latex => format!("{coeff}{mono}"),
                (false, false) => format!("{coeff}*{mono}"),
            };
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

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for QMPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl std::ops::Add for &QMPoly {
    type Output = QMPoly;
    fn add(self, rhs: &QMPoly) -> QMPoly {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Neg for &QMPoly {
    type Output = QMPoly;
    fn neg(self) -> QMPoly {
        self.scale(&-BigRational::one())
    }
}

impl std::ops::Sub for &QMPoly {
    type Output = QMPoly;
    fn sub(self, rhs: &QMPoly) -> QMPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &QMPoly {
    type Output = QMPoly;
    fn mul(self, rhs: &QMPoly) -> QMPoly {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = QMPoly::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

fn ser_terms<S: Serializer>(p: &QMPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.terms.len()))?;
    for (e, c) in &p.terms {
        let mut exps = serde_json::Map::new();
        for (j, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let name = if j == p.rank { "x".to_string() } else { format!("a{}", j + 1) };
            exps.insert(name, k.into());
        }
        seq.serialize_element(&serde_json::json!({"exponents": exps, "coeff": c.to_string()}))?;
    }
    seq.end()
}

impl Serialize for QMPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            rank: usize,
            #[serde(serialize_with = "ser_terms")]
            terms: &'a QMPoly,
            text: String,
        }
        Wire {
            rank: self.rank,
            terms: self,
            text: self.to_string(),
        }
        .serialize(s)
    }
}

/// An element of `H_T^*(P^n) = Q[a][x] / prod_i (b_i - x)` in reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomClass {
    n: usize,
    weights: Vec<Vec<i64>>,
    poly: QMPoly,
}

/// `prod_i (b_i - x)` for the character exponent vectors `b_i`.
fn relation(weights: &[Vec<i64>], rank: usize) -> QMPoly {
    weights.iter().fold(QMPoly::one(rank), |acc, b| {
        &acc * &(&QMPoly::linear_form(b) - &QMPoly::x(rank))
    })
}

impl CohomClass {
    /// Reduces `p` to `x`-degree at most `n`; the relation has leading term
    /// `(-1)^(n+1) x^(n+1)`.
    pub fn reduce(p: &QMPoly, weights: &[Vec<i64>]) -> Result<Self> {
        let rank = p.rank;
        if let Some(b) = weights.iter().find(|b| b.len() != rank) {
            return Err(Error::RankMismatch {
                left: b.len(),
                right: rank,
            });
        }
        if weights.is_empty() {
            return Err(Error::InvalidAction("at least one weight is required".into()));
        }
        let n = weights.len() - 1;
        let rel = relation(weights, rank);
        let monic = if (n + 1).is_multiple_of(2) { rel.clone() } else { -&rel };
        let mut cur = p.clone();
        while let Some(d) = cur.x_degree().filter(|&d| d as usize > n) {
            let mut top = QMPoly::zero(rank);
            for (e, c) in &cur.terms {
                if e[rank] == d {
                    let mut e2 = e.clone();
                    e2[rank] -= n as u32 + 1;
                    top.add_term(e2, c.clone());
                }
            }
            cur = &cur - &(&top * &monic);
        }
        Ok(CohomClass {
            n,
            weights: weights.to_vec(),
            poly: cur,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &QMPoly {
        &self.poly
    }
}

impl fmt::Display for CohomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn action_weights(action: &TorusAction) -> Vec<Vec<i64>> {
    action.characters().iter().map(|c| c.exponents().to_vec()).collect()
}

/// Reduced form of `p` in `H_T^*(P^n)` for the given action.
pub fn coho_reduce(p: &QMPoly, action: &TorusAction) -> Result<CohomClass> {
    CohomClass::reduce(p, &action_weights(action))
}

/// `[X] = [CX]` with `a_j -> a_j - (w_j/q) x`, reduced modulo
/// `prod_i (b_i - x)`.
pub fn coho_affine_to_projective(cx: &QMPoly, action: &TorusAction) -> Result<CohomClass> {
    if cx.rank() != action.rank() {
        return Err(Error::RankMismatch {
            left: cx.rank(),
            right: action.rank(),
        });
    }
    if !cx.is_x_free() {
        return Err(Error::UnexpectedT(cx.to_string()));
    }
    let emb = action.scalar().ok_or(Error::MissingScalarEmbedding)?;
    let rank = cx.rank();
    let x = QMPoly::x(rank);
    let images: Vec<QMPoly> = (0..rank)
        .map(|j| {
            let w = BigRational::new(BigInt::from(emb.weights[j]), BigInt::from(emb.q));
            &QMPoly::alpha(rank, j) - &x.scale(&w)
        })
        .collect();
    CohomClass::reduce(&cx.substitute(&images, &x), &action_weights(action))
}

/// `[CX]` from the reduced form of `[X]` by `x -> 0`.
pub fn coho_projective_to_affine(c: &CohomClass) -> QMPoly {
    c.poly.at_x_zero()
}

/// Degree 0 and degree 1 parts of the Chern character of a K-class with
/// rational coefficients, under `ch(a_j) = e^(a_j)` and `ch(t) = e^x`.
pub fn first_order_chern_character(e: &LaurentExpr) -> Result<(BigRational, QMPoly)> {
    let rank = e.rank();
    let mut c0 = BigRational::zero();
    let mut c1 = QMPoly::zero(rank);
    for (exp, c) in e.terms() {
        let c = c
            .as_constant()
            .ok_or_else(|| Error::YDependent(c.to_string()))?;
        c0 += &c;
        let mut lin: QMPoly = QMPoly::linear_form(&exp.alpha);
        let s = BigRational::new(BigInt::from(*exp.t.numer()), BigInt::from(*exp.t.denom()));
        lin = &lin + &QMPoly::x(rank).scale(&s);
        c1 = &c1 + &lin.scale(&c);
    }
    Ok((c0, c1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::{affine_to_projective_segre, AffineEquivariantClass};
    use crate::ring::{Character, ScalarEmbedding};

    #[test]
    fn hyperplane_substitution() {
        let a = TorusAction::diagonal(1);
        let c = coho_affine_to_projective(&QMPoly::parse("a1", 2).unwrap(), &a).unwrap();
        assert_eq!(c.to_string(), "a1 - x");
        assert_eq!(coho_projective_to_affine(&c).to_string(), "a1");
        let k = coho_affine_to_projective(&QMPoly::parse("7/2", 2).unwrap(), &a).unwrap();
        assert_eq!(k.to_string(), "7/2");
        let z = coho_affine_to_projective(&QMPoly::zero(2), &a).unwrap();
        assert!(coho_projective_to_affine(&z).is_zero());
    }

    #[test]
    fn cone_hypersurface() {
        let a = TorusAction::standard_scalar(2);
        let c = coho_affine_to_projective(&QMPoly::parse("3*a1", 1).unwrap(), &a).unwrap();
        assert_eq!(c.to_string(), "3*a1 - 3*x");
    }

    #[test]
    fn reduction_kills_the_relation() {
        let w = vec![vec![1, 0], vec![0, 1]];
        let r = relation(&w, 2);
        assert!(CohomClass::reduce(&r, &w).unwrap().poly().is_zero());
        let x3 = QMPoly::parse("x^3", 2).unwrap();
        let red = CohomClass::reduce(&x3, &w).unwrap();
        assert!(red.poly().x_degree().unwrap() <= 1);
        // x^2 = (a1 + a2) x - a1 a2, so x^3 = ((a1+a2)^2 - a1 a2) x - (a1 + a2) a1 a2
        let expect = QMPoly::parse("(a1^2 + a1*a2 + a2^2)*x - a1^2*a2 - a1*a2^2", 2).unwrap();
        assert_eq!(red.poly(), &expect);
    }

    #[test]
    fn round_trip_on_low_degree() {
        let a = TorusAction::new(
            2,
            vec![Character(vec![1, 0]), Character(vec![0, 1]), Character(vec![1, 0])],
            Some(ScalarEmbedding { weights: vec![1, 1], q: 1 }),
        )
        .unwrap();
        for s in ["a1 + 2*a2", "a1*a2 - a2^2/3", "5"] {
            let p = QMPoly::parse(s, 2).unwrap();
            let c = coho_affine_to_projective(&p, &a).unwrap();
            assert_eq!(coho_projective_to_affine(&c), p, "{s}");
        }
    }

    #[test]
    fn first_order_matches_k_theory() {
        let a = TorusAction::standard_scalar(1);
        for d in 1..5 {
            let k = AffineEquivariantClass::torus_only(&a, LaurentExpr::parse(&format!("1 - a1^-{d}"), 1).unwrap()).unwrap();
            let projected = affine_to_projective_segre(&k, None).unwrap();
            let (c0, c1) = first_order_chern_character(projected.terms()).unwrap();
            assert!(c0.is_zero());
            let coho = coho_affine_to_projective(&QMPoly::parse(&format!("{d}*a1"), 1).unwrap(), &a).unwrap();
            assert_eq!(&c1, coho.poly());
        }
    }
}
