use num_traits::{One, Signed, Zero};

use super::float::{gamma_rational, to_f64, Ctx, Float};
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::exact_core::rational::{factorial, int, is_nonpositive_integer, pow_i};
use crate::exact_core::{Poly, Rational};

/// Mass `a^y Gamma(y+g) / y! * num(x) / den(x)` at `x = offset + y`,
/// `y = 0, 1, 2, ...`. Every measure in the crate has this shape.
#[derive(Clone, Debug)]
pub struct DiscreteMeasure {
    pub a: Rational,
    pub g: Rational,
    pub offset: i64,
    pub num: Poly,
    pub den: Poly,
    /// Certification of the tail starts no earlier than this x, nor before
    /// 2 deg(pq) + 8.
    pub crossover: i64,
}

impl DiscreteMeasure {
    /// Exact mass at x.
    pub fn mass(&self, x: i64) -> Result<Carrier> {
        let y = x - self.offset;
        if y < 0 {
            return Err(Error::Domain(format!("x = {x} is below the support")));
        }
        let d = self.den.eval(&int(x));
        if d.is_zero() {
            return Err(Error::Pole(format!("measure denominator vanishes at x = {x}")));
        }
        let q = pow_i(&self.a, y) * self.num.eval(&int(x)) / (d * Rational::from_integer(factorial(y as u32)));
        if q.is_zero() {
            return Ok(Carrier::rational(q));
        }
        Ok(Carrier::gamma(&(&self.g + int(y)))?.scale(&q))
    }
}

#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: Float,
    pub terms_used: usize,
    /// Certified bound on the neglected tail.
    pub tail_bound: f64,
}

impl SumResult {
    pub fn value_f64(&self) -> f64 {
        to_f64(&self.value)
    }
}

const MAX_TERMS: i64 = 200_000;

/// Sum over the support of p(x) q(x) mass(x).
///
/// Terms are exact rationals times the common factor Gamma(g). Once x is
/// past the crossover, past the Fujiwara root bound R of p, q, num and den,
/// and y + g > 0, every later term ratio is at most
/// `|a| max(1, (y+g)/(y+1)) (1 + 1/(x-R))^D` (D the total degree), which is
/// non-increasing in x. With that bound r < 1 the tail after the current
/// term is at most |next| / (1 - r). The sum stops when that bound is
/// below `rel_tol` times the sum of absolute terms, which stays meaningful
/// when the value itself cancels to nearly zero.
pub fn discrete_inner(ctx: &mut Ctx, p: &Poly, q: &Poly, m: &DiscreteMeasure, rel_tol: f64) -> Result<SumResult> {
    if !(rel_tol > 0.0) {
        return Err(Error::Parameter(format!("rel_tol = {rel_tol} must be positive")));
    }
    if m.a.abs() >= Rational::one() {
        return Err(Error::Precondition(format!("|a| = {} gives no geometric decay", m.a.abs())));
    }
    if is_nonpositive_integer(&m.g) {
        return Err(Error::Pole(format!("Gamma({})", m.g)));
    }
    let pq = p * q;
    let polys = [&pq, &m.num, &m.den];
    let big_r = polys.iter().map(|t| t.root_bound()).max().unwrap_or_else(Rational::zero);
    let deg: i64 = pq.degree().unwrap_or(0) as i64 + m.num.degree().unwrap_or(0) as i64 + m.den.degree().unwrap_or(0) as i64;
    let abs_a = m.a.abs();
    let crossover = m.crossover.max(2 * pq.degree().unwrap_or(0) as i64 + 8);
    let tol = Float::from_f64(rel_tol, ctx.p);

    // w_y = a^y (g)_y / y!
    let mut w = Rational::one();
    let mut sum = ctx.int(0);
    let mut abs_sum = ctx.int(0);
    let mut y = 0i64;
    let term_at = |x: i64, w: &Rational| -> Result<Rational> {
        let d = m.den.eval(&int(x));
        if d.is_zero() {
            return Err(Error::Pole(format!("measure denominator vanishes at x = {x}")));
        }
        Ok(w * pq.eval(&int(x)) * m.num.eval(&int(x)) / d)
    };
    let mut term = term_at(m.offset, &w)?;
    loop {
        let x = m.offset + y;
        let tf = ctx.rational(&term);
        abs_sum = ctx.add(&abs_sum, &tf.abs());
        sum = ctx.add(&sum, &tf);
        w = &w * &m.a * (&m.g + int(y)) / int(y + 1);
        let next = term_at(x + 1, &w)?;
        let xr = int(x + 1);
        if x + 1 >= crossover && xr > &big_r + int(1) && (&m.g + int(y + 1)).is_positive() {
            let yr = int(y + 1);
            let gam = ((&m.g + &yr) / (&yr + int(1))).max(Rational::one());
            let r = &abs_a * gam * pow_i(&(Rational::one() + (&xr - &big_r).recip()), deg);
            if r < Rational::one() {
                let bound = next.abs() / (Rational::one() - r);
                let bf = ctx.rational(&bound);
                let lhs = ctx.mul(&tol, &abs_sum);
                if bf.abs_cmp(&lhs).is_some_and(|c| c <= 0) || bound.is_zero() {
                    let scale = gamma_rational(ctx, &m.g)?;
                    let value = ctx.mul(&sum, &scale);
                    let tail = ctx.mul(&bf, &scale);
                    return Ok(SumResult {
                        value,
                        terms_used: (y + 1) as usize,
                        tail_bound: to_f64(&tail).abs(),
                    });
                }
            }
        }
        term = next;
        y += 1;
        if y > MAX_TERMS {
            return Err(Error::Numerical(format!("no certified decay within {MAX_TERMS} terms")));
        }
    }
}
