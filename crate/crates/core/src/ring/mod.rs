//! Coefficient rings and the two presentations of `K(P^n)` used throughout.

pub mod action;
pub mod equivariant_class;
pub mod laurent;
pub mod truncated;
pub mod ypoly;
pub mod yrational;

pub use action::{ScalarEmbedding, TorusAction};
pub use equivariant_class::{laurent_reduce, laurent_reduce_with_quotient, EquivariantClass, Reduction};
pub use laurent::{Character, Exponent, LaurentExpr};
pub use truncated::{Basis, Exactness, TruncatedClass};
pub use ypoly::YPoly;
pub use yrational::{binomial, binomial_signed, YRational};
