//! Reduced forms in `K_T(P^n)[y]`.
//!
//! The relation `prod_i (1 - t/b_i)` has constant term 1 and top coefficient
//! `(-1)^(n+1) / prod_i b_i`, a unit monomial, so both negative and high
//! powers of `t` can be eliminated and the representative of `t`-degree in
//! `[0, n]` is unique.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::action::TorusAction;
use super::laurent::LaurentExpr;
use super::truncated::{Exactness, TruncatedClass};
use super::ypoly::YPoly;
use super::yrational::YRational;
use crate::error::{Error, Result};

/// An element of `K_T(P^n)[y]` in reduced form.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantClass {
    action: TorusAction,
    terms: LaurentExpr,
}

/// Result of reduction together with the quotient by the relation:
/// `input = reduced + quotient * relation`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub reduced: EquivariantClass,
    pub quotient: LaurentExpr,
}

impl EquivariantClass {
    pub fn action(&self) -> &TorusAction {
        &self.action
    }

    pub fn terms(&self) -> &LaurentExpr {
        &self.terms
    }

    pub fn n(&self) -> usize {
        self.action.n()
    }

    pub fn zero(action: &TorusAction) -> Self {
        EquivariantClass {
            action: action.clone(),
            terms: LaurentExpr::zero(action.rank()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// The class `t = [gamma]_T`.
    pub fn tautological(action: &TorusAction) -> Result<Self> {
        laurent_reduce(&LaurentExpr::t_power(action.rank(), 1), action)
    }

    fn same_action(&self, other: &Self) -> Result<()> {
        if self.action != other.action {
            return Err(Error::ActionMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_action(other)?;
        Ok(EquivariantClass {
            action: self.action.clone(),
            terms: self.terms.try_add(&other.terms)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_action(other)?;
        Ok(EquivariantClass {
            action: self.action.clone(),
            terms: self.terms.try_sub(&other.terms)?,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_action(other)?;
        laurent_reduce(&self.terms.try_mul(&other.terms)?, &self.action)
    }

    pub fn scale(&self, c: &YRational) -> Self {
        EquivariantClass {
            action: self.action.clone(),
            terms: self.terms.scale(c),
        }
    }

    pub fn divide_exact_y(&self, d: &YPoly, mode: Exactness) -> Result<Self> {
        Ok(EquivariantClass {
            action: self.action.clone(),
            terms: self.terms.divide_exact_y(d, mode)?,
        })
    }

    /// Reduced-form coefficient of `t^k`, `0 <= k <= n`.
    pub fn t_coefficient(&self, k: usize) -> LaurentExpr {
        self.terms.t_coefficient(k as i64)
    }

    /// Substitutes `t = 1` into the reduced form.
    pub fn at_t_one(&self) -> LaurentExpr {
        self.terms.at_t_one()
    }

    /// Non-equivariant image: every character set to 1 and the result read in
    /// `K(P^n)`. Exact when the action is trivial.
    pub fn forget_torus(&self) -> TruncatedClass {
        let flat = self.terms.at_alpha_one();
        let mut coeffs = vec![YRational::zero(); self.n() + 1];
        for (e, c) in flat.terms() {
            let k = e.t.to_integer() as usize;
            coeffs[k] = &coeffs[k] + c;
        }
        TruncatedClass::from_t_coeffs(self.n(), &coeffs)
    }

    /// Embeds a non-equivariant class for the given action.
    pub fn from_truncated(c: &TruncatedClass, action: &TorusAction) -> Result<Self> {
        if c.n() != action.n() {
            return Err(Error::DimensionMismatch {
                left: c.n(),
                right: action.n(),
            });
        }
        let expr = LaurentExpr::from_t_coeffs(action.rank(), &c.t_coeffs());
        laurent_reduce(&expr, action)
    }

    pub fn to_latex(&self) -> String {
        self.terms.to_latex()
    }
}

impl fmt::Display for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

impl fmt::Debug for EquivariantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EquivariantClass(n={}, {})", self.n(), self.terms)
    }
}

/// Reduces `p` modulo `prod_i (1 - t/b_i)` to `t`-degree in `[0, n]`.
pub fn laurent_reduce(p: &LaurentExpr, action: &TorusAction) -> Result<EquivariantClass> {
    Ok(laurent_reduce_with_quotient(p, action)?.reduced)
}

pub fn laurent_reduce_with_quotient(p: &LaurentExpr, action: &TorusAction) -> Result<Reduction> {
    if p.rank() != action.rank() {
        return Err(Error::RankMismatch {
            left: p.rank(),
            right: action.rank(),
        });
    }
    let rank = action.rank();
    let n = action.n() as i64;
    let rel = action.relation().by_t_power()?;
    let e = |j: i64| rel.get(&j).cloned().unwrap_or_else(|| LaurentExpr::zero(rank));
    // top coefficient (-1)^(n+1) / prod b_i
    let top = e(n + 1);
    let top_inv = top.monomial_inverse()?;

    let mut groups = p.by_t_power()?;
    let mut quotient: BTreeMap<i64, LaurentExpr> = BTreeMap::new();
    let add_to = |map: &mut BTreeMap<i64, LaurentExpr>, k: i64, v: LaurentExpr| {
        let slot = map.entry(k).or_insert_with(|| LaurentExpr::zero(rank));
        *slot = &*slot + &v;
        if slot.is_zero() {
            map.remove(&k);
        }
    };

    // c t^m with m < 0: since 1 = R - sum_{j>=1} e_j t^j,
    // c t^m = c t^m R - sum_{j>=1} c e_j t^{m+j}.
    while let Some((&m, _)) = groups.iter().next() {
        if m >= 0 {
            break;
        }
        let c = groups.remove(&m).expect("present");
        add_to(&mut quotient, m, c.clone());
        for j in 1..=n + 1 {
            let ej = e(j);
            if ej.is_zero() {
                continue;
            }
            add_to(&mut groups, m + j, -&(&c * &ej));
        }
    }

    // c t^M with M > n: t^{n+1} = top^{-1} (R - sum_{j<=n} e_j t^j).
    while let Some((&m, _)) = groups.iter().next_back() {
        if m <= n {
            break;
        }
        let c = groups.remove(&m).expect("present");
        let lead = &c * &top_inv;
        let shift = m - n - 1;
        add_to(&mut quotient, shift, lead.clone());
        for j in 0..=n {
            let ej = e(j);
            if ej.is_zero() {
                continue;
            }
            add_to(&mut groups, shift + j, -&(&lead * &ej));
        }
    }

    Ok(Reduction {
        reduced: EquivariantClass {
            action: action.clone(),
            terms: LaurentExpr::from_t_groups(rank, &groups),
        },
        quotient: LaurentExpr::from_t_groups(rank, &quotient),
    })
}
