//! Exact construction and verification of exceptional Meixner and Laguerre
//! polynomials built from Casorati and Wronskian determinants of the
//! classical families.
//!
//! Everything symbolic is computed over the rationals; [`numerics`] is the
//! only place where floating point values appear.

// `!(x < tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod carrier;
pub mod classical_families;
pub mod error;
pub mod exact_core;
pub mod exceptional_laguerre;
pub mod exceptional_meixner;
pub mod numerics;
pub mod pair_combinatorics;
pub mod sweep;

pub use error::{Error, Result};
pub use exact_core::{Poly, PolyMatrix, RatFunc, Rational};
