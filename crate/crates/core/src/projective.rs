//! K-classes and motivic Chern classes of subvarieties of `P^n`, and the
//! genera obtained by pushing forward to a point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{binomial, Basis, LaurentExpr, TruncatedClass, YPoly, YRational};

/// The three K-classes of a subvariety `X` of `P^n`: the structure sheaf
/// `[O_X]`, the pushforward `[X]` of 1 from a resolution, and `mC_0(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTriple {
    pub sheaf: TruncatedClass,
    pub pushforward: TruncatedClass,
    pub motivic0: TruncatedClass,
}

impl ClassTriple {
    /// The triple of a smooth variety, where all three classes agree.
    pub fn smooth(c: TruncatedClass) -> Self {
        ClassTriple {
            sheaf: c.clone(),
            pushforward: c.clone(),
            motivic0: c,
        }
    }

    pub fn n(&self) -> usize {
        self.sheaf.n()
    }
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub chi_y: YRational,
    #[serde(serialize_with = "ser_rational")]
    pub todd: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub arithmetic_genus: BigRational,
    pub dim: usize,
}

fn check_range(what: &str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::OutOfRange(format!("{what} = {v} not in [{lo}, {hi}]")));
    }
    Ok(())
}

/// `[P^k ⊂ P^n] = H^(n-k)`.
pub fn linear_subspace_class(k: usize, n: usize) -> Result<TruncatedClass> {
    check_range("k", k, 0, n)?;
    Ok(TruncatedClass::h_power(n, n - k))
}

/// `prod_i (1 - t^d_i)`, the sheaf class of a complete intersection.
pub fn complete_intersection_class(degrees: &[u32], n: usize) -> Result<TruncatedClass> {
    if degrees.is_empty() {
        return Err(Error::Empty("complete intersection needs at least one degree".into()));
    }
    if degrees.len() > n {
        return Err(Error::OutOfRange(format!(
            "{} equations in P^{n}",
            degrees.len()
        )));
    }
    if degrees.contains(&0) {
        return Err(Error::OutOfRange("degrees must be positive".into()));
    }
    let one = TruncatedClass::one(n);
    Ok(degrees.iter().fold(one.clone(), |acc, &d| {
        &acc * &(&one - &TruncatedClass::t_power(n, d as i64))
    }))
}

fn one_plus_y_pow(k: usize) -> YPoly {
    YPoly::from_i64s(&[1, 1]).pow(k as u32)
}

/// `mC(P^n) = sum_i C(n+1, i) (-y)^i (1+y)^(n-i) H^i`.
pub fn mc_projective_space(n: usize) -> TruncatedClass {
    let coeffs = (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let p = &YPoly::monomial(binomial(n as i64 + 1, i as i64) * sign, i) * &one_plus_y_pow(n - i);
            YRational::from_poly(p)
        })
        .collect();
    TruncatedClass::from_h_coeffs(n, coeffs)
}

/// `mC(P^k ⊂ P^n)`: the class of `P^k` pushed along a linear inclusion.
pub fn mc_linear_subspace(k: usize, n: usize) -> Result<TruncatedClass> {
    check_range("k", k, 0, n)?;
    linear_inclusion_pushforward(&mc_projective_space(k), n)
}

/// `(1 + y t^d)^-1 = sum_k y^k (1 - t^d)^k / (1+y)^(k+1)`, a finite sum since
/// `1 - t^d` lies in the nilpotent ideal `(H)`.
pub fn lambda_y_line_inverse(n: usize, d: i64) -> TruncatedClass {
    let u = &TruncatedClass::one(n) - &TruncatedClass::t_power(n, d);
    let mut out = TruncatedClass::zero(n);
    let mut u_k = TruncatedClass::one(n);
    for k in 0..=n {
        let c = YRational::new(YPoly::monomial(1, k), one_plus_y_pow(k + 1)).expect("nonzero");
        out = &out + &u_k.scale(&c);
        u_k = &u_k * &u;
    }
    out
}

/// `mC` of a smooth degree-`d` hypersurface in `P^n`:
/// `mC(P^n) (1 - t^d) / (1 + y t^d)`.
pub fn mc_smooth_hypersurface(d: u32, n: usize) -> Result<TruncatedClass> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    if n == 0 {
        return Err(Error::OutOfRange("a hypersurface needs n >= 1".into()));
    }
    split_divisor_mc(&SplitBundle::from_degrees(&[d as i64]), &mc_projective_space(n))
}

/// A direct sum of powers of the tautological line bundle, given by the
/// exponent of `t` of each summand (with repetition).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn from_degrees(degrees: &[i64]) -> Self {
        SplitBundle {
            degrees: degrees.to_vec(),
        }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Reads a K-class such as `2t^3 + t^-1`; every term must be a power of
    /// `t` with positive integer multiplicity.
    pub fn from_class(e: &LaurentExpr) -> Result<Self> {
        if e.rank() != 0 {
            return Err(Error::NonSplitBundle("bundle must not involve torus characters".into()));
        }
        let mut degrees = Vec::new();
        for (exp, c) in e.terms() {
            if !exp.t.is_integer() {
                return Err(Error::NonSplitBundle(format!("fractional power t^{}", exp.t)));
            }
            let m = c
                .as_integer()
                .filter(|m| m.is_positive())
                .ok_or_else(|| {
                    Error::NonSplitBundle(format!(
                        "coefficient {c} of t^{} is not a positive integer",
                        exp.t
                    ))
                })?;
            let m: usize = m
                .try_into()
                .map_err(|_| Error::NonSplitBundle("multiplicity too large".into()))?;
            degrees.extend(std::iter::repeat_n(exp.t.to_integer(), m));
        }
        Ok(SplitBundle { degrees })
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::default());
        }
        Self::from_class(&LaurentExpr::parse(s, 0)?)
    }
}

/// `mC` of the zero locus of a transversal section of the split bundle
/// `E = sum t^d_i`: `ambient * prod_i (1 - t^d_i) / (1 + y t^d_i)`.
pub fn split_divisor_mc(bundle: &SplitBundle, ambient: &TruncatedClass) -> Result<TruncatedClass> {
    let n = ambient.n();
    let one = TruncatedClass::one(n);
    let mut out = ambient.clone();
    for &d in bundle.degrees() {
        let euler = &one - &TruncatedClass::t_power(n, d);
        out = &(&out * &euler) * &lambda_y_line_inverse(n, d);
    }
    Ok(out)
}

/// `f_!1 = d - (d-1)H` for a degree-`d` self-map of `P^1`.
pub fn pushforward_self_map_p1(d: u32) -> Result<TruncatedClass> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    let d = d as i64;
    Ok(TruncatedClass::from_h_ints(1, &[d, 1 - d]))
}

/// Pushforward along a degree-`d` map `P^1 -> P^1`: the point class is
/// preserved and `1 ↦ d - (d-1)H`.
pub fn self_map_p1_pushforward(c: &TruncatedClass, d: u32) -> Result<TruncatedClass> {
    if c.n() != 1 {
        return Err(Error::DimensionMismatch { left: c.n(), right: 1 });
    }
    let f1 = pushforward_self_map_p1(d)?;
    Ok(&f1.scale(c.h_coeff(0)) + &TruncatedClass::h_power(1, 1).scale(c.h_coeff(1)))
}

/// `i_! H^j = H^(j + N - n)` for a linear `P^n ⊂ P^N`.
pub fn linear_inclusion_pushforward(c: &TruncatedClass, big_n: usize) -> Result<TruncatedClass> {
    let n = c.n();
    if n > big_n {
        return Err(Error::OutOfRange(format!("cannot push P^{n} into P^{big_n}")));
    }
    let mut coeffs = vec![YRational::zero(); big_n - n];
    coeffs.extend_from_slice(c.h_coeffs());
    Ok(TruncatedClass::from_h_coeffs(big_n, coeffs))
}

/// Pushforward along a map `P^1 -> P^N` of degree `d` onto its image,
/// factored as a degree-`d` self-map followed by a linear inclusion.
pub fn rational_curve_pushforward(c: &TruncatedClass, d: u32, big_n: usize) -> Result<TruncatedClass> {
    linear_inclusion_pushforward(&self_map_p1_pushforward(c, d)?, big_n)
}

/// `[X_d ⊂ P^d] = d H^(d-1) - (d-1) H^d` for the rational normal curve.
pub fn rational_normal_curve_class(d: u32) -> Result<TruncatedClass> {
    rational_curve_pushforward(&TruncatedClass::one(1), d, d as usize)
}

/// `mC(X_d ⊂ P^d)`, the Veronese pushforward of `mC(P^1)`.
pub fn mc_rational_normal_curve(d: u32) -> Result<TruncatedClass> {
    rational_curve_pushforward(&mc_projective_space(1), d, d as usize)
}

/// Additivity of `[X]` over irreducible components.
pub fn union_additive_pushforward(parts: &[TruncatedClass]) -> Result<TruncatedClass> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::Empty("no components".into()))?;
    rest.iter().try_fold(first.clone(), |acc, c| acc.try_add(c))
}

/// `mC_0` of two general linear subspaces of codimensions `k`, `l`:
/// `H^k + H^l - H^(k+l)`.
pub fn mc0_union_two_linear(k: usize, l: usize, n: usize) -> Result<TruncatedClass> {
    check_range("k", k, 1, n)?;
    check_range("l", l, 1, n)?;
    let h = |j| TruncatedClass::h_power(n, j);
    Ok(&(&h(k) + &h(l)) - &h(k + l))
}

/// `∫ sum q_i H^i = sum q_i`.
pub fn integral(c: &TruncatedClass) -> YRational {
    c.h_coeffs().iter().fold(YRational::zero(), |acc, q| &acc + q)
}

pub fn genus_report(mc: &TruncatedClass, dim: usize) -> Result<GenusReport> {
    let chi_y = integral(mc);
    let todd = chi_y.at_y_zero()?;
    let shifted = &todd - &BigRational::one();
    let arithmetic_genus = if dim.is_multiple_of(2) { shifted } else { -shifted };
    Ok(GenusReport {
        chi_y,
        todd,
        arithmetic_genus,
        dim,
    })
}

/// `(codim, degree)`: the lowest nonzero `H`-coefficient and its index.
pub fn degree_codim(c: &TruncatedClass) -> Result<(usize, YRational)> {
    c.h_coeffs()
        .iter()
        .enumerate()
        .find(|(_, q)| !q.is_zero())
        .map(|(i, q)| (i, q.clone()))
        .ok_or(Error::ZeroClass)
}

/// A component of a plane curve, with its full motivic class.
#[derive(Debug, Clone)]
struct Component {
    pushforward: TruncatedClass,
    mc: TruncatedClass,
}

fn plane_line() -> Component {
    Component {
        pushforward: TruncatedClass::h_power(2, 1),
        mc: mc_linear_subspace(1, 2).expect("line in the plane"),
    }
}

fn smooth_conic() -> Component {
    Component {
        pushforward: complete_intersection_class(&[2], 2).expect("conic"),
        mc: mc_smooth_hypersurface(2, 2).expect("conic"),
    }
}

/// Image of `P^1` under a degree-`d` map to the plane which is injective
/// except over points with the given numbers of preimages.
fn rational_plane_curve(d: u32, fibres: &[usize]) -> Component {
    let pushforward = rational_curve_pushforward(&TruncatedClass::one(1), d, 2).expect("d > 0");
    let mut mc = rational_curve_pushforward(&mc_projective_space(1), d, 2).expect("d > 0");
    let point = TruncatedClass::h_power(2, 2);
    for &k in fibres {
        mc = &mc - &point.scale(&YRational::from_int(k as i64 - 1));
    }
    Component { pushforward, mc }
}

/// Union of components, glued at points lying on `m_p` of them:
/// the point is counted `m_p` times in the sum and once in the union.
fn plane_union(parts: &[Component], meetings: &[usize]) -> Component {
    let pushforward = union_additive_pushforward(
        &parts.iter().map(|c| c.pushforward.clone()).collect::<Vec<_>>(),
    )
    .expect("nonempty");
    let mut mc = union_additive_pushforward(&parts.iter().map(|c| c.mc.clone()).collect::<Vec<_>>())
        .expect("nonempty");
    let point = TruncatedClass::h_power(2, 2);
    for &m in meetings {
        mc = &mc - &point.scale(&YRational::from_int(m as i64 - 1));
    }
    Component { pushforward, mc }
}

/// One singular plane cubic with its classes and how they were obtained.
#[derive(Debug, Clone, Serialize)]
pub struct CubicEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub equation: &'static str,
    pub classes: ClassTriple,
    /// Full motivic Chern class; `classes.motivic0` is its `y = 0` slice.
    pub mc: TruncatedClass,
    pub provenance: &'static str,
}

/// The six singular plane cubics, each `[O_X] = 1 - t^3`.
pub fn cubic_catalogue() -> Vec<CubicEntry> {
    let sheaf = complete_intersection_class(&[3], 2).expect("cubic");
    let rows: [(&str, &str, &str, Component, &str); 6] = [
        (
            "nodal",
            "nodal cubic",
            "x^3+y^3+xyz",
            rational_plane_curve(3, &[2]),
            "degree 3 resolution from P^1, two preimages over the node",
        ),
        (
            "cuspidal",
            "cuspidal cubic",
            "x^3+y^2z",
            rational_plane_curve(3, &[]),
            "degree 3 resolution from P^1, injective",
        ),
        (
            "conic_line",
            "conic and intersecting line",
            "x^3+xyz",
            plane_union(&[smooth_conic(), plane_line()], &[2, 2]),
            "conic plus line, two transversal intersection points",
        ),
        (
            "conic_tangent",
            "conic and tangent line",
            "x^2y+y^2z",
            plane_union(&[smooth_conic(), plane_line()], &[2]),
            "conic plus line, one tangency point",
        ),
        (
            "three_lines",
            "three nonconcurrent lines",
            "xyz",
            plane_union(&[plane_line(), plane_line(), plane_line()], &[2, 2, 2]),
            "three lines meeting pairwise in three points",
        ),
        (
            "concurrent_lines",
            "three concurrent lines",
            "x^2y+xy^2",
            plane_union(&[plane_line(), plane_line(), plane_line()], &[3]),
            "three lines through one point",
        ),
    ];
    rows.into_iter()
        .map(|(name, description, equation, comp, provenance)| CubicEntry {
            name,
            description,
            equation,
            classes: ClassTriple {
                sheaf: sheaf.clone(),
                pushforward: comp.pushforward,
                motivic0: comp.mc.at_y_zero().expect("polynomial in y"),
            },
            mc: comp.mc,
            provenance,
        })
        .collect()
}

pub fn cubic(name: &str) -> Result<CubicEntry> {
    cubic_catalogue()
        .into_iter()
        .find(|e| e.name == name || e.name.replace('_', "-") == name)
        .ok_or_else(|| Error::UnknownDescriptor(format!("cubic {name}")))
}

/// Varieties the `class` front end knows how to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyDescriptor {
    /// `P^k ⊂ P^n`.
    Linear { k: usize, n: usize },
    /// Smooth complete intersection of the given degrees.
    CompleteIntersection { degrees: Vec<u32>, n: usize },
    Hypersurface { d: u32, n: usize },
    RationalNormalCurve { d: u32 },
    Cubic(String),
    /// Two general linear subspaces of codimensions `k` and `l`.
    UnionLinear { k: usize, l: usize, n: usize },
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: expected a nonnegative integer, got {s:?}")))
}

impl VarietyDescriptor {
    /// Parses e.g. `["hypersurface", "4", "2"]` or `["ci", "2,3", "4"]`.
    pub fn parse(words: &[&str]) -> Result<Self> {
        let bad = || Error::UnknownDescriptor(words.join(" "));
        let (head, args) = words.split_first().ok_or_else(bad)?;
        let want = |k: usize| if args.len() == k { Ok(()) } else { Err(bad()) };
        match *head {
            "linear" => {
                want(2)?;
                Ok(Self::Linear {
                    k: parse_num(args[0], "k")?,
                    n: parse_num(args[1], "n")?,
                })
            }
            "ci" => {
                want(2)?;
                let degrees = args[0]
                    .split(',')
                    .map(|d| parse_num(d, "degree"))
                    .collect::<Result<Vec<u32>>>()?;
                Ok(Self::CompleteIntersection {
                    degrees,
                    n: parse_num(args[1], "n")?,
                })
            }
            "hypersurface" => {
                want(2)?;
                Ok(Self::Hypersurface {
                    d: parse_num(args[0], "d")?,
                    n: parse_num(args[1], "n")?,
                })
            }
            "rnc" => {
                want(1)?;
                Ok(Self::RationalNormalCurve {
                    d: parse_num(args[0], "d")?,
                })
            }
            "cubic" => {
                want(1)?;
                Ok(Self::Cubic(args[0].to_string()))
            }
            "union-linear" => {
                want(3)?;
                Ok(Self::UnionLinear {
                    k: parse_num(args[0], "k")?,
                    l: parse_num(args[1], "l")?,
                    n: parse_num(args[2], "n")?,
                })
            }
            _ => Err(bad()),
        }
    }

    pub fn build(&self) -> Result<ClassReport> {
        let (name, dim, classes, mc) = match self {
            Self::Linear { k, n } => {
                let c = linear_subspace_class(*k, *n)?;
                (
                    format!("P^{k} in P^{n}"),
                    *k,
                    ClassTriple::smooth(c),
                    Some(mc_linear_subspace(*k, *n)?),
                )
            }
            Self::CompleteIntersection { degrees, n } => {
                let c = complete_intersection_class(degrees, *n)?;
                let bundle = SplitBundle::from_degrees(&degrees.iter().map(|&d| d as i64).collect::<Vec<_>>());
                let mc = split_divisor_mc(&bundle, &mc_projective_space(*n))?;
                (
                    format!("complete intersection {degrees:?} in P^{n}"),
                    n - degrees.len(),
                    ClassTriple::smooth(c),
                    Some(mc),
                )
            }
            Self::Hypersurface { d, n } => {
                let c = complete_intersection_class(&[*d], *n)?;
                (
                    format!("smooth degree {d} hypersurface in P^{n}"),
                    n - 1,
                    ClassTriple::smooth(c),
                    Some(mc_smooth_hypersurface(*d, *n)?),
                )
            }
            Self::RationalNormalCurve { d } => {
                let c = rational_normal_curve_class(*d)?;
                (
                    format!("rational normal curve in P^{d}"),
                    1,
                    ClassTriple::smooth(c),
                    Some(mc_rational_normal_curve(*d)?),
                )
            }
            Self::Cubic(name) => {
                let e = cubic(name)?;
                (e.description.to_string(), 1, e.classes, Some(e.mc))
            }
            Self::UnionLinear { k, l, n } => {
                let mc0 = mc0_union_two_linear(*k, *l, *n)?;
                let push = union_additive_pushforward(&[
                    TruncatedClass::h_power(*n, *k),
                    TruncatedClass::h_power(*n, *l),
                ])?;
                let mc = union_two_linear_mc(*k, *l, *n)?;
                (
                    format!("union of general linear subspaces of codimension {k} and {l} in P^{n}"),
                    n - k.min(l),
                    ClassTriple {
                        sheaf: mc0.clone(),
                        pushforward: push,
                        motivic0: mc0,
                    },
                    Some(mc),
                )
            }
        };
        let genus = match &mc {
            Some(m) => genus_report(m, dim)?,
            None => genus_report(&classes.motivic0, dim)?,
        };
        let degree_codim = degree_codim(&classes.pushforward)?;
        Ok(ClassReport {
            name,
            dim,
            classes,
            mc,
            codim: degree_codim.0,
            degree: degree_codim.1,
            genus,
        })
    }
}

/// Full motivic class of two general linear subspaces of codimension `k`,
/// `l`; their intersection has codimension `k + l` (empty if above `n`).
pub fn union_two_linear_mc(k: usize, l: usize, n: usize) -> Result<TruncatedClass> {
    check_range("k", k, 1, n)?;
    check_range("l", l, 1, n)?;
    let a = mc_linear_subspace(n - k, n)?;
    let b = mc_linear_subspace(n - l, n)?;
    let sum = &a + &b;
    if k + l > n {
        Ok(sum)
    } else {
        Ok(&sum - &mc_linear_subspace(n - k - l, n)?)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub name: String,
    pub dim: usize,
    pub classes: ClassTriple,
    pub mc: Option<TruncatedClass>,
    pub codim: usize,
    pub degree: YRational,
    pub genus: GenusReport,
}

impl ClassReport {
    pub fn render(&self, latex: bool) -> String {
        let show = |c: &TruncatedClass, b: Basis| if latex { c.to_latex(b) } else { c.render(b) };
        let mut out = format!("{}\n", self.name);
        let rows = [
            ("[O_X]", &self.classes.sheaf),
            ("[X]", &self.classes.pushforward),
            ("mC_0", &self.classes.motivic0),
        ];
        for (label, c) in rows {
            out += &format!("  {label:<6} = {}    (t-basis: {})\n", show(c, Basis::H), show(c, Basis::T));
        }
        if let Some(mc) = &self.mc {
            out += &format!("  {:<6} = {}\n", "mC", show(mc, Basis::H));
        }
        out += &format!("  codim = {}, degree = {}\n", self.codim, self.degree);
        out += &format!(
            "  chi_y = {}, todd = {}, arithmetic genus = {}\n",
            if latex { self.genus.chi_y.to_latex() } else { self.genus.chi_y.to_string() },
            self.genus.todd,
            self.genus.arithmetic_genus
        );
        out
    }
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// `χ_y(Z_d ⊂ P^2) = (C(d-1, 2) - 1)(y - 1)`.
pub fn chi_y_plane_curve_closed_form(d: u32) -> YRational {
    let c = binomial(d as i64 - 1, 2) - BigInt::one();
    YRational::from_poly(YPoly::new(vec![-c.clone(), c]))
}

/// `χ_y(Z_d ⊂ P^3) = (C(d-1,3) + 1)(y - 1)^2 + (2C(d-1,3) - 4C(d,3) + 2 - d) y`.
pub fn chi_y_space_surface_closed_form(d: u32) -> YRational {
    let d = d as i64;
    let a = binomial(d - 1, 3) + BigInt::one();
    let b = BigInt::from(2) * binomial(d - 1, 3) - BigInt::from(4) * binomial(d, 3) + BigInt::from(2 - d);
    let sq = YPoly::from_i64s(&[1, -2, 1]).scale(&a);
    let lin = YPoly::monomial(b, 1);
    YRational::from_poly(&sq + &lin)
}

/// `p_a(Z_d ⊂ P^n) = C(d-1, n)`.
pub fn arithmetic_genus_hypersurface(d: u32, n: usize) -> BigRational {
    let c = binomial(d as i64 - 1, n as i64);
    BigRational::from_integer(if c.is_zero() { BigInt::zero() } else { c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, cs: &[i64]) -> TruncatedClass {
        TruncatedClass::from_h_ints(n, cs)
    }

    #[test]
    fn linear_classes() {
        assert_eq!(linear_subspace_class(2, 3).unwrap(), h(3, &[0, 1]));
        assert_eq!(linear_subspace_class(3, 3).unwrap(), TruncatedClass::one(3));
        assert_eq!(linear_subspace_class(1, 3).unwrap(), h(3, &[0, 0, 1]));
        assert!(linear_subspace_class(4, 3).is_err());
    }

    #[test]
    fn complete_intersections() {
        assert_eq!(complete_intersection_class(&[3], 2).unwrap(), h(2, &[0, 3, -3]));
        assert_eq!(
            complete_intersection_class(&[1, 1, 1], 4).unwrap(),
            TruncatedClass::h_power(4, 3)
        );
        assert!(matches!(complete_intersection_class(&[], 2), Err(Error::Empty(_))));
    }

    #[test]
    fn mc_of_projective_space_matches_euler_sequence() {
        // (1 + y t)^(n+1) / (1 + y)
        for n in 0..6 {
            let lhs = mc_projective_space(n);
            let t = TruncatedClass::t_power(n, 1);
            let base = &TruncatedClass::one(n) + &t.scale(&YRational::y());
            let rhs = base
                .pow(n as u32 + 1)
                .divide_exact_y(&YPoly::from_i64s(&[1, 1]), crate::ring::Exactness::Field)
                .unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
        assert_eq!(mc_projective_space(1).render(Basis::H), "(1+y) - 2*y*H");
    }

    #[test]
    fn hypersurface_inverse_agrees_with_series_inverse() {
        for n in 1..5 {
            for d in 1..5 {
                let one = TruncatedClass::one(n);
                let td = TruncatedClass::t_power(n, d);
                let den = &one + &td.scale(&YRational::y());
                let direct = &(&mc_projective_space(n) * &(&one - &td)) * &den.inverse().unwrap();
                assert_eq!(mc_smooth_hypersurface(d as u32, n).unwrap(), direct);
            }
        }
    }

    #[test]
    fn hyperplane_is_a_linear_subspace() {
        for n in 1..6 {
            assert_eq!(
                mc_smooth_hypersurface(1, n).unwrap(),
                mc_linear_subspace(n - 1, n).unwrap()
            );
        }
    }

    #[test]
    fn split_bundles() {
        let line = split_divisor_mc(&SplitBundle::parse("2t").unwrap(), &mc_projective_space(3)).unwrap();
        assert_eq!(line, mc_linear_subspace(1, 3).unwrap());
        let amb = mc_projective_space(2);
        assert_eq!(split_divisor_mc(&SplitBundle::parse("").unwrap(), &amb).unwrap(), amb);
        assert!(matches!(SplitBundle::parse("t - t^2"), Err(Error::NonSplitBundle(_))));
        assert!(matches!(SplitBundle::parse("y*t"), Err(Error::NonSplitBundle(_))));
    }

    #[test]
    fn self_maps_and_inclusions() {
        assert_eq!(pushforward_self_map_p1(1).unwrap(), TruncatedClass::one(1));
        assert_eq!(pushforward_self_map_p1(3).unwrap(), h(1, &[3, -2]));
        let node = linear_inclusion_pushforward(&h(1, &[3, -2]), 2).unwrap();
        assert_eq!(node, h(2, &[0, 3, -2]));
        for d in 2..8u32 {
            let c = rational_normal_curve_class(d).unwrap();
            let mut expect = vec![0i64; d as usize + 1];
            expect[d as usize - 1] = d as i64;
            expect[d as usize] = 1 - d as i64;
            assert_eq!(c, h(d as usize, &expect));
            let g = genus_report(&mc_rational_normal_curve(d).unwrap(), 1).unwrap();
            assert_eq!(g.chi_y, YRational::from_poly(YPoly::from_i64s(&[1, -1])));
            assert!(g.todd.is_one());
        }
    }

    #[test]
    fn union_and_inclusion_exclusion() {
        assert_eq!(mc0_union_two_linear(2, 2, 3).unwrap(), h(3, &[0, 0, 2]));
        assert_eq!(mc0_union_two_linear(1, 1, 2).unwrap(), h(2, &[0, 2, -1]));
        assert_eq!(mc0_union_two_linear(1, 2, 3).unwrap(), h(3, &[0, 1, 1, -1]));
        let lines = vec![TruncatedClass::h_power(2, 1); 3];
        assert_eq!(union_additive_pushforward(&lines).unwrap(), h(2, &[0, 3]));
        assert!(union_additive_pushforward(&[h(1, &[1]), h(2, &[1])]).is_err());
        for (k, l, n) in [(1, 1, 2), (2, 2, 3), (1, 2, 3), (2, 3, 4)] {
            let mc = union_two_linear_mc(k, l, n).unwrap();
            assert_eq!(mc.at_y_zero().unwrap(), mc0_union_two_linear(k, l, n).unwrap());
        }
    }

    #[test]
    fn integrals_and_genera() {
        assert!(integral(&h(1, &[0, 1])).is_one());
        assert!(integral(&h(2, &[0, 3, -2])).is_one());
        let g = genus_report(&mc_projective_space(4), 4).unwrap();
        assert_eq!(g.chi_y, YRational::from_poly(YPoly::from_i64s(&[1, -1, 1, -1, 1])));
        assert!(g.todd.is_one() && g.arithmetic_genus.is_zero());
        for n in 2..6 {
            for d in 1..9u32 {
                let g = genus_report(&mc_smooth_hypersurface(d, n).unwrap(), n - 1).unwrap();
                assert_eq!(g.arithmetic_genus, arithmetic_genus_hypersurface(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn degree_and_codimension() {
        assert_eq!(degree_codim(&h(2, &[0, 3, -3])).unwrap(), (1, YRational::from_int(3)));
        assert_eq!(degree_codim(&TruncatedClass::h_power(5, 3)).unwrap(), (3, YRational::one()));
        assert_eq!(degree_codim(&TruncatedClass::zero(2)), Err(Error::ZeroClass));
    }

    #[test]
    fn conic_two_ways() {
        let veronese = rational_curve_pushforward(&mc_projective_space(1), 2, 2).unwrap();
        assert_eq!(veronese, mc_smooth_hypersurface(2, 2).unwrap());
    }

    #[test]
    fn catalogue_rows() {
        let rows: Vec<_> = cubic_catalogue()
            .into_iter()
            .map(|e| {
                (
                    e.name,
                    e.classes.pushforward.render(Basis::H),
                    e.classes.motivic0.render(Basis::H),
                )
            })
            .collect();
        let want = [
            ("nodal", "3*H - 2*H^2", "3*H - 3*H^2"),
            ("cuspidal", "3*H - 2*H^2", "3*H - 2*H^2"),
            ("conic_line", "3*H - H^2", "3*H - 3*H^2"),
            ("conic_tangent", "3*H - H^2", "3*H - 2*H^2"),
            ("three_lines", "3*H", "3*H - 3*H^2"),
            ("concurrent_lines", "3*H", "3*H - 2*H^2"),
        ];
        for (got, want) in rows.iter().zip(want) {
            assert_eq!((got.0, got.1.as_str(), got.2.as_str()), want);
        }
        // a node glues two points of P^1
        let node = cubic("nodal").unwrap();
        assert_eq!(integral(&node.mc), -YRational::y());
    }

    #[test]
    fn descriptors() {
        let r = VarietyDescriptor::parse(&["rnc", "4"]).unwrap().build().unwrap();
        assert_eq!(r.classes.pushforward.render(Basis::H), "4*H^3 - 3*H^4");
        assert!(r.genus.todd.is_one());
        let r = VarietyDescriptor::parse(&["linear", "1", "3"]).unwrap().build().unwrap();
        assert_eq!(r.classes.sheaf.render(Basis::H), "H^2");
        assert!(VarietyDescriptor::parse(&["quartic"]).is_err());
        assert!(VarietyDescriptor::parse(&["cubic", "smooth"]).unwrap().build().is_err());
    }
}
