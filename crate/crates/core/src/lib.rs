//! Finite-field polynomial tooling for counting zeros of subspaces of
//! homogeneous polynomials over projective space.

pub mod cli;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod matrix;
pub mod poly;
pub mod polygcd;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
