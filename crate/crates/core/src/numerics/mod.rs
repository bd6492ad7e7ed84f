//! High-precision evaluation: Gamma at rational arguments, carrier
//! collapse, certified truncated sums over discrete measures and
//! double-exponential quadrature against the exceptional Laguerre weight.
//!
//! Working precision is `XOPPAK_PRECISION` decimal digits (default 50),
//! carried as `digits * 3.33 + 128` bits.

mod discrete;
mod float;
mod quadrature;

pub use discrete::{discrete_inner, DiscreteMeasure, SumResult};
pub use float::{
    carrier_value, default_precision_bits, gamma_rational, poly_eval, precision_bits, rational_value, to_f64, Ctx, Float,
};
pub use quadrature::{laguerre_inner, QuadResult};

/// A numeric value compared against a closed form.
#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub numeric: f64,
    pub expected: f64,
    pub rel_err: f64,
    /// Truncation bound or quadrature error estimate behind `numeric`.
    pub error_bound: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl NumericCheck {
    pub fn new(numeric: f64, expected: f64, error_bound: f64, tolerance: f64) -> Self {
        let rel_err = (numeric - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
        NumericCheck { numeric, expected, rel_err, error_bound, tolerance, passed: rel_err < tolerance }
    }
}

/// |<p, q>| / (|p| |q|) from the three inner products.
pub fn normalized(pq: f64, pp: f64, qq: f64) -> f64 {
    pq.abs() / (pp.abs() * qq.abs()).sqrt()
}
