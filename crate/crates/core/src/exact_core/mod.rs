//! Exact scalar, polynomial and rational-function arithmetic over Q, plus
//! fraction-free determinants and Sturm root counting.

mod matrix;
pub mod operators;
mod poly;
mod ratfunc;
pub mod rational;
mod sturm;
pub mod zpoly;

pub use matrix::{cofactor_det, poly_det, PolyMatrix};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{gen_binomial, parse_rational, pochhammer, Rational};
pub use sturm::{sturm_nonneg_roots, sturm_real_roots};
pub use operators::{
    DiffOperator, FirstOrderDifferenceOp, SecondOrderDiffOp, ShiftOperator, ThreePointOp,
};
