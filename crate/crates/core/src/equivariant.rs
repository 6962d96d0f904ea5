//! The Kirwan map and the transfer formulas between torus-equivariant
//! classes of affine cones and of their projectivizations.
//!
//! Affine classes live in `K_{Gamma x T}(C^(n+1))`, Laurent polynomials in
//! the characters `a_j` and the scalar variable `t`, or in `K_T(C^(n+1))`
//! where `t` does not occur. No relation applies on the affine side.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{
    laurent_reduce, EquivariantClass, Exactness, LaurentExpr, ScalarEmbedding, TorusAction,
    TruncatedClass, YPoly, YRational,
};

fn one_plus_y() -> YPoly {
    YPoly::from_i64s(&[1, 1])
}

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct AffineEquivariantClass {
    action: TorusAction,
    /// Whether the scalar factor `Gamma` is part of the group, so that `t`
    /// may occur.
    gamma: bool,
    terms: LaurentExpr,
}

impl AffineEquivariantClass {
    /// A `Gamma x T`-equivariant class.
    pub fn gamma(action: &TorusAction, terms: LaurentExpr) -> Result<Self> {
        if terms.rank() != action.rank() {
            return Err(Error::RankMismatch {
                left: terms.rank(),
                right: action.rank(),
            });
        }
        Ok(AffineEquivariantClass {
            action: action.clone(),
            gamma: true,
            terms,
        })
    }

    /// A class for the torus alone; `t` must not occur.
    pub fn torus_only(action: &TorusAction, terms: LaurentExpr) -> Result<Self> {
        if terms.rank() != action.rank() {
            return Err(Error::RankMismatch {
                left: terms.rank(),
                right: action.rank(),
            });
        }
        if !terms.is_t_free() {
            return Err(Error::UnexpectedT(terms.to_string()));
        }
        Ok(AffineEquivariantClass {
            action: action.clone(),
            gamma: false,
            terms,
        })
    }

    pub fn action(&self) -> &TorusAction {
        &self.action
    }

    pub fn terms(&self) -> &LaurentExpr {
        &self.terms
    }

    pub fn is_gamma_equivariant(&self) -> bool {
        self.gamma
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn same_kind(&self, other: &Self) -> Result<()> {
        if self.action != other.action || self.gamma != other.gamma {
            return Err(Error::ActionMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        Ok(AffineEquivariantClass {
            terms: self.terms.try_add(&other.terms)?,
            ..self.clone()
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        Ok(AffineEquivariantClass {
            terms: self.terms.try_mul(&other.terms)?,
            ..self.clone()
        })
    }

    /// Sets `t = 1`, forgetting the scalar factor.
    pub fn forget_gamma(&self) -> Self {
        AffineEquivariantClass {
            action: self.action.clone(),
            gamma: false,
            terms: self.terms.at_t_one(),
        }
    }

    pub fn to_latex(&self) -> String {
        self.terms.to_latex()
    }
}

impl fmt::Display for AffineEquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

impl fmt::Debug for AffineEquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = if self.gamma { "Gamma x T" } else { "T" };
        write!(f, "AffineEquivariantClass({g}, {})", self.terms)
    }
}

/// `[0]_{Gamma x T} = prod_i (1 - t/b_i)`.
pub fn origin_class_gamma(action: &TorusAction) -> AffineEquivariantClass {
    AffineEquivariantClass::gamma(action, action.relation()).expect("matching rank")
}

/// `[0]_T = prod_i (1 - 1/b_i)`.
pub fn origin_class_torus(action: &TorusAction) -> AffineEquivariantClass {
    AffineEquivariantClass::torus_only(action, action.origin_class()).expect("t-free")
}

/// `κ`: `t` becomes the tautological class and the result is reduced.
pub fn kirwan(c: &AffineEquivariantClass) -> Result<EquivariantClass> {
    laurent_reduce(c.terms(), c.action())
}

/// The pieces of the linear-subspace computation for `P^k ⊂ P^n`, where the
/// cone is spanned by the first `k+1` coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct LinearSubspaceClasses {
    /// `prod_{i<=k+1} (1 + y t/b_i) prod_{i>k+1} (1 - t/b_i)`.
    pub m: AffineEquivariantClass,
    /// `prod_i (1 - t/b_i)`.
    pub r: AffineEquivariantClass,
    /// `(M - (-y)^(k+1) R) / (1+y)` in reduced form.
    pub mc_t: EquivariantClass,
}

pub fn equiv_linear_subspace(k: usize, action: &TorusAction) -> Result<LinearSubspaceClasses> {
    let n = action.n();
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} not in [0, {n}]")));
    }
    let rank = action.rank();
    let m = (0..=n).fold(LaurentExpr::one(rank), |acc, i| {
        let f = if i <= k {
            action.tangent_factor(i)
        } else {
            action.factor(i)
        };
        &acc * &f
    });
    let r = action.relation();
    let sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
    let mul = YRational::from_poly(YPoly::monomial(sign, k + 1));
    let numer = &m - &r.scale(&mul);
    let mc_t = laurent_reduce(&numer, action)?.divide_exact_y(&one_plus_y(), Exactness::Polynomial)?;
    Ok(LinearSubspaceClasses {
        m: AffineEquivariantClass::gamma(action, m)?,
        r: AffineEquivariantClass::gamma(action, r)?,
        mc_t,
    })
}

fn resolve_embedding<'a>(
    action: &'a TorusAction,
    emb: Option<&'a ScalarEmbedding>,
) -> Result<&'a ScalarEmbedding> {
    let emb = emb.or(action.scalar()).ok_or(Error::MissingScalarEmbedding)?;
    // the embedding must act on C^(n+1) as z^q
    action.with_scalar(Some(emb.clone()))?;
    Ok(emb)
}

/// `a_j -> a_j t^(-w_j/q)` followed by `κ`; the result must have integral
/// `t`-exponents.
fn substitute_and_reduce(c: &AffineEquivariantClass, emb: Option<&ScalarEmbedding>) -> Result<EquivariantClass> {
    if c.is_gamma_equivariant() {
        return kirwan(c);
    }
    let emb = resolve_embedding(c.action(), emb)?;
    let sub = c.terms().substitute_scalar(&emb.weights, emb.q)?;
    sub.require_integral_t()?;
    laurent_reduce(&sub, c.action())
}

/// Motivic Segre class of `X` from that of `C_0 X`, applied to a Laurent
/// representative. Classes that are already `Gamma`-equivariant only go
/// through `κ`.
pub fn affine_to_projective_segre(
    ms0: &AffineEquivariantClass,
    emb: Option<&ScalarEmbedding>,
) -> Result<EquivariantClass> {
    substitute_and_reduce(ms0, emb)
}

/// A motivic Segre class `mC / mC(C^(n+1))` as a formal fraction, since the
/// denominator is not invertible in the Laurent ring.
#[derive(Debug, Clone)]
pub struct SegreFraction {
    pub numerator: AffineEquivariantClass,
    pub denominator: AffineEquivariantClass,
}

impl SegreFraction {
    /// `mC_T(C_0 X) / prod_i (1 + y/b_i)`.
    pub fn of_torus_class(mc0: &AffineEquivariantClass) -> Result<Self> {
        if mc0.is_gamma_equivariant() {
            return Err(Error::UnexpectedT(mc0.to_string()));
        }
        let action = mc0.action();
        let den = (0..=action.n()).fold(LaurentExpr::one(action.rank()), |acc, i| {
            &acc * &action.tangent_factor(i)
        });
        Ok(SegreFraction {
            numerator: mc0.clone(),
            denominator: AffineEquivariantClass::torus_only(action, den.at_t_one())?,
        })
    }
}

/// Image of a Segre fraction, again a fraction, now in `K_T(P^n)[y]`.
#[derive(Debug, Clone)]
pub struct ProjectiveSegre {
    pub numerator: EquivariantClass,
    pub denominator: EquivariantClass,
}

impl ProjectiveSegre {
    /// Whether this fraction equals `mc / ambient` (cross-multiplied).
    pub fn equals_ratio(&self, mc: &EquivariantClass, ambient: &EquivariantClass) -> Result<bool> {
        Ok(self.numerator.try_mul(ambient)? == mc.try_mul(&self.denominator)?)
    }
}

/// The substitution is a ring homomorphism, so it applies to numerator and
/// denominator separately.
pub fn affine_to_projective_segre_fraction(
    f: &SegreFraction,
    emb: Option<&ScalarEmbedding>,
) -> Result<ProjectiveSegre> {
    Ok(ProjectiveSegre {
        numerator: substitute_and_reduce(&f.numerator, emb)?,
        denominator: substitute_and_reduce(&f.denominator, emb)?,
    })
}

/// `mC_T(X) = sub(mC_T(C_0 X)) / (1+y)`.
///
/// A `Gamma x T` input already carries `t` and is sent through `κ`; a
/// `T`-only input is substituted with `emb` (or the action's own scalar
/// embedding). A non-polynomial quotient by `1+y` is an error.
pub fn affine_to_projective_mc(
    mc0: &AffineEquivariantClass,
    emb: Option<&ScalarEmbedding>,
) -> Result<EquivariantClass> {
    substitute_and_reduce(mc0, emb)?.divide_exact_y(&one_plus_y(), Exactness::Polynomial)
}

/// `(1+y)(mC_T(X) - χ_y(X) [0]_{Gamma x T})`.
pub fn projective_to_affine_full(mc_t: &EquivariantClass, chi_y: &YRational) -> Result<AffineEquivariantClass> {
    let action = mc_t.action();
    let diff = mc_t.terms() - &action.relation().scale(chi_y);
    AffineEquivariantClass::gamma(action, diff.scale(&YRational::one_plus_y()))
}

/// `(1+y)(mC(X) - χ_y(X) (1-t)^(n+1))` for the scalar action alone.
pub fn projective_to_affine_scalar(mc: &TruncatedClass, chi_y: &YRational) -> Result<AffineEquivariantClass> {
    let n = mc.n();
    let action = TorusAction::trivial(n);
    let mc_t = LaurentExpr::from_t_coeffs(0, &mc.t_coeffs());
    let diff = &mc_t - &action.relation().scale(chi_y);
    AffineEquivariantClass::gamma(&action, diff.scale(&YRational::one_plus_y()))
}

/// The `H`-coefficients of `(1+y) mC(X)` extended by an `(n+1)`-st one so
/// that all coefficients sum to zero.
pub fn scalar_extension_coefficients(mc: &TruncatedClass) -> Vec<YRational> {
    let mut out: Vec<YRational> = mc
        .h_coeffs()
        .iter()
        .map(|q| q * &YRational::one_plus_y())
        .collect();
    let total = out.iter().fold(YRational::zero(), |acc, q| &acc + q);
    out.push(-total);
    out
}

/// `sum_i q_i (1-t)^i` as an unreduced Laurent polynomial in `t`.
pub fn unreduced_from_h(rank: usize, coeffs: &[YRational]) -> LaurentExpr {
    let h = &LaurentExpr::one(rank) - &LaurentExpr::t_power(rank, 1);
    let mut out = LaurentExpr::zero(rank);
    let mut h_i = LaurentExpr::one(rank);
    for q in coeffs {
        out = &out + &h_i.scale(q);
        h_i = &h_i * &h;
    }
    out
}

/// `(1+y)(mC_T(X)|_{t=1} - χ_y(X) [0]_T)`, a class without `t`.
pub fn projective_to_affine_forget(mc_t: &EquivariantClass, chi_y: &YRational) -> Result<AffineEquivariantClass> {
    let action = mc_t.action();
    let diff = &mc_t.at_t_one() - &action.origin_class().scale(chi_y);
    AffineEquivariantClass::torus_only(action, diff.scale(&YRational::one_plus_y()))
}
