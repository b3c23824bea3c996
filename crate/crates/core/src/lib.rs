//! Exact decision procedure for integrals of the form `∫ F(t) R(t)^(-p) dt`
//! with `p ∈ {1/2, 1/3, 2/3}`.
//!
//! Everything here is exact: rationals, towers of radical extensions of the
//! rationals, polynomials and rational functions over them. Floating point is
//! only used to choose between conjugate roots.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod antideriv;
pub mod cube_goursat;
pub mod curve;
pub mod error;
pub mod expr;
pub mod field;
mod lazy;
pub mod moebius;
pub mod num;
pub mod pipeline;
pub mod poly;
pub mod ratfun;
pub mod ratint;
pub mod roots;
pub mod sqrt_goursat;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldTower, RadicalUnit};
pub use moebius::{MoebiusMap, ProjectivePoint};
pub use num::Q;
pub use poly::Poly;
pub use ratfun::RationalFunction;
