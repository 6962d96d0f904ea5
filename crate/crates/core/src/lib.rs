//! Motivic Chern classes of projective cones and Gamma-equivariant transfer
//! between affine and projective space in K-theory.

pub mod cohomology;
pub mod cones;
pub mod equivariant;
pub mod error;
pub mod expr;
pub mod hilbert;
pub mod projective;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use ring::*;
