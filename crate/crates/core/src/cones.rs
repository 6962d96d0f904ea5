//! Classes of the projective cone `X^ ⊂ P^(n+1)` over `X ⊂ P^n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::hilbert::KPolynomial;
use crate::projective::{integral, mc_projective_space};
use crate::ring::{TruncatedClass, YRational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeResult {
    pub base_class: TruncatedClass,
    pub cone_class: TruncatedClass,
    pub chi_y_base: YRational,
    /// The caller vouched that the base is smooth; otherwise the recursion is
    /// applied through the motivic `χ_y` of a constructible base.
    pub smooth_certified: bool,
}

impl ConeResult {
    pub fn certify_smooth(mut self) -> Self {
        self.smooth_certified = true;
        self
    }
}

/// `q^_i = (1+y) q_i - y q_{i-1}` for `i <= n` and
/// `q^_{n+1} = 1 - y q_n - (1+y) χ_y(X)`.
pub fn projective_cone_mc(mc_x: &TruncatedClass) -> ConeResult {
    let n = mc_x.n();
    let q = mc_x.h_coeffs();
    let y = YRational::y();
    let opy = YRational::one_plus_y();
    let chi = integral(mc_x);
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..=n {
        let mut c = &opy * &q[i];
        if i > 0 {
            c = &c - &(&y * &q[i - 1]);
        }
        out.push(c);
    }
    out.push(&(&YRational::one() - &(&y * &q[n])) - &(&opy * &chi));
    ConeResult {
        base_class: mc_x.clone(),
        cone_class: TruncatedClass::from_h_coeffs(n + 1, out),
        chi_y_base: chi,
        smooth_certified: false,
    }
}

/// `mC_0(X^) = mC_0(X) + (1 - td(X)) H^(n+1)`.
pub fn projective_cone_mc0(mc0_x: &TruncatedClass, todd_x: &BigRational) -> TruncatedClass {
    let n = mc0_x.n();
    let top = YRational::from_rational(&(BigRational::one() - todd_x));
    &mc0_x.rehome(n + 1) + &TruncatedClass::h_power(n + 1, n + 1).scale(&top)
}

/// `[X^] = [X]` with the same `H`-coefficients in `P^(n+1)`.
pub fn projective_cone_pushforward(class_x: &TruncatedClass) -> TruncatedClass {
    class_x.rehome(class_x.n() + 1)
}

/// `[O_X^]` has the same K-polynomial; returns its reductions in `P^n` and in
/// `P^(n+1)`.
pub fn projective_cone_sheaf(k: &KPolynomial) -> (TruncatedClass, TruncatedClass) {
    let cs: Vec<_> = k.coeffs().iter().map(|c| YRational::from_int(c.clone())).collect();
    (
        TruncatedClass::from_t_coeffs(k.n(), &cs),
        TruncatedClass::from_t_coeffs(k.n() + 1, &cs),
    )
}

/// Cohomological analogue: `q^_i = q_i + q_{i-1}` and `q^_{n+1} = q_n + 1`.
pub fn csm_projective_cone(csm_x: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(csm_x.len() + 1);
    for (i, q) in csm_x.iter().enumerate() {
        let prev = if i == 0 { BigInt::from(0) } else { csm_x[i - 1].clone() };
        out.push(q + prev);
    }
    let last = csm_x.last().cloned().unwrap_or_default();
    out.push(last + 1);
    out
}

/// `j^*` along a hyperplane `P^n ⊂ P^(n+1)` avoiding the vertex; `t` pulls
/// back to `t`, so the top `H`-coefficient is dropped.
pub fn hyperplane_restriction(c: &TruncatedClass) -> TruncatedClass {
    c.rehome(c.n().saturating_sub(1))
}

/// `ms(X ⊂ P^n) = mC(X) / mC(P^n)`.
pub fn motivic_segre(mc_x: &TruncatedClass) -> Result<TruncatedClass> {
    mc_x.try_div(&mc_projective_space(mc_x.n()))
}

/// Whether `ms(X) = j^* ms(X^)` for the cone computed by
/// [`projective_cone_mc`].
pub fn segre_pullback_holds(mc_x: &TruncatedClass) -> Result<bool> {
    let cone = projective_cone_mc(mc_x);
    let ms_cone = motivic_segre(&cone.cone_class)?;
    Ok(hyperplane_restriction(&ms_cone) == motivic_segre(mc_x)?)
}

/// `χ_y(X^) = 1 - y χ_y(X)`.
pub fn cone_chi_y(chi_x: &YRational) -> YRational {
    &YRational::one() - &(&YRational::y() * chi_x)
}
