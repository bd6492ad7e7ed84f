use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{One, Signed, Zero};

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::exact_core::rational::{floor_i64, int, is_nonpositive_integer, pochhammer};
use crate::exact_core::{Poly, Rational};

pub type Float = BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

/// Bits of working precision for `digits` decimal digits.
pub fn precision_bits(digits: usize) -> usize {
    (digits as f64 * 3.33) as usize + 128
}

/// Working precision from `XOPPAK_PRECISION`, in bits.
pub fn default_precision_bits() -> usize {
    let digits = std::env::var("XOPPAK_PRECISION")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&d| d >= 16)
        .unwrap_or(50);
    precision_bits(digits)
}

/// Precision plus the constant cache astro-float needs for ln/exp/pi.
pub struct Ctx {
    pub p: usize,
    pub cc: Consts,
}

impl Ctx {
    pub fn new(p: usize) -> Result<Self> {
        let cc = Consts::new().map_err(|e| Error::Numerical(format!("constant cache: {e:?}")))?;
        Ok(Ctx { p, cc })
    }

    pub fn with_default_precision() -> Result<Self> {
        Ctx::new(default_precision_bits())
    }

    pub fn int(&self, v: i64) -> Float {
        BigFloat::from_i64(v, self.p)
    }

    pub fn add(&self, a: &Float, b: &Float) -> Float {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &Float, b: &Float) -> Float {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &Float, b: &Float) -> Float {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &Float, b: &Float) -> Float {
        a.div(b, self.p, RM)
    }

    pub fn exp(&mut self, a: &Float) -> Float {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &Float) -> Float {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn sqrt(&self, a: &Float) -> Float {
        a.sqrt(self.p, RM)
    }

    pub fn pi(&mut self) -> Float {
        self.cc.pi(self.p, RM)
    }

    fn big(&mut self, v: &num_bigint::BigInt) -> Float {
        BigFloat::parse(&v.to_string(), Radix::Dec, self.p, RM, &mut self.cc)
    }

    pub fn rational(&mut self, q: &Rational) -> Float {
        let n = self.big(q.numer());
        let d = self.big(q.denom());
        self.div(&n, &d)
    }
}

/// A rational number as a float at the context precision.
pub fn rational_value(ctx: &mut Ctx, q: &Rational) -> Float {
    ctx.rational(q)
}

/// Horner evaluation with coefficients converted once by the caller.
pub fn poly_eval(ctx: &Ctx, coeffs: &[Float], x: &Float) -> Float {
    let mut acc = ctx.int(0);
    for c in coeffs.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), c);
    }
    acc
}

/// Nearest f64 (0 on underflow, +-inf on overflow).
pub fn to_f64(x: &Float) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = format!("{x}");
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Gamma(z) for z in (0, 1]:
/// X^z e^{-X} sum_n X^n / (z)_{n+1}, plus Gamma(z, X) <= X^{z-1} e^{-X},
/// with X chosen so the neglected piece is below 2^{-p}.
fn gamma_core(ctx: &mut Ctx, z: &Rational) -> Float {
    if z.is_one() {
        return ctx.int(1);
    }
    let x = (ctx.p as f64 * std::f64::consts::LN_2) as i64 + 16;
    let xf = ctx.int(x);
    let zf = ctx.rational(z);
    let mut term = ctx.div(&ctx.int(1), &zf);
    let mut sum = term.clone();
    let eps = BigFloat::from_f64(2f64.powi(-(ctx.p as i32) - 8), ctx.p);
    let mut n = 0i64;
    loop {
        n += 1;
        let den = ctx.add(&zf, &ctx.int(n));
        term = ctx.div(&ctx.mul(&term, &xf), &den);
        sum = ctx.add(&sum, &term);
        if n > x && ctx.div(&term, &sum).abs_cmp(&eps).is_some_and(|c| c < 0) {
            break;
        }
    }
    // X^z e^{-X} = exp(z ln X - X)
    let lnx = ctx.ln(&xf);
    let e = ctx.sub(&ctx.mul(&zf, &lnx), &xf);
    let pre = ctx.exp(&e);
    ctx.mul(&pre, &sum)
}

/// Gamma(q) for rational q off the poles: reduce to (0, 1] with an exact
/// Pochhammer factor, then evaluate the core series.
pub fn gamma_rational(ctx: &mut Ctx, q: &Rational) -> Result<Float> {
    if is_nonpositive_integer(q) {
        return Err(Error::Pole(format!("Gamma({q})")));
    }
    let fl = floor_i64(q);
    let mut f = q - int(fl);
    let mut m = fl;
    if f.is_zero() {
        f = Rational::one();
        m -= 1;
    }
    let core = gamma_core(ctx, &f);
    let poch = ctx.rational(&pochhammer(&f, m));
    Ok(ctx.mul(&core, &poch))
}

/// Collapses a carrier to a float.
pub fn carrier_value(ctx: &mut Ctx, c: &Carrier) -> Result<Float> {
    let mut v = ctx.rational(c.coeff());
    if c.coeff().is_zero() {
        return Ok(v);
    }
    for (g, e) in c.gammas() {
        let gv = gamma_rational(ctx, g)?;
        let gp = gv.powi(e.unsigned_abs() as usize, ctx.p, RM);
        v = if e > 0 { ctx.mul(&v, &gp) } else { ctx.div(&v, &gp) };
    }
    for (b, r) in c.powers() {
        if !b.is_positive() {
            return Err(Error::Domain(format!("({b})^({r}) with nonpositive base")));
        }
        let bf = ctx.rational(b);
        let lb = ctx.ln(&bf);
        let rf = ctx.rational(r);
        let t = ctx.exp(&ctx.mul(&lb, &rf));
        v = ctx.mul(&v, &t);
    }
    if !c.exp_arg().is_zero() {
        let t = ctx.rational(c.exp_arg());
        let e = ctx.exp(&t);
        v = ctx.mul(&v, &e);
    }
    Ok(v)
}

/// Poly coefficients as floats.
pub(crate) fn coeffs_of(ctx: &mut Ctx, p: &Poly) -> Vec<Float> {
    p.coeffs().iter().map(|c| ctx.rational(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;

    fn close(ctx: &Ctx, a: &Float, b: &Float, tol: f64) -> bool {
        let d = ctx.sub(a, b);
        to_f64(&d).abs() <= tol * to_f64(b).abs().max(1e-300)
    }

    #[test]
    fn gamma_values() {
        let mut ctx = Ctx::new(precision_bits(50)).unwrap();
        let g1 = gamma_rational(&mut ctx, &int(1)).unwrap();
        assert!(close(&ctx, &g1, &ctx.int(1), 1e-45));
        let g6 = gamma_rational(&mut ctx, &int(6)).unwrap();
        assert!(close(&ctx, &g6, &ctx.int(120), 1e-45));
        let pi = ctx.pi();
        let sp = ctx.sqrt(&pi);
        let half = gamma_rational(&mut ctx, &rat(1, 2)).unwrap();
        assert!(close(&ctx, &half, &sp, 1e-45));
        let mhalf = gamma_rational(&mut ctx, &rat(-1, 2)).unwrap();
        let target = ctx.mul(&sp, &ctx.int(-2));
        assert!(close(&ctx, &mhalf, &target, 1e-45));
        // reflection: Gamma(1/3) Gamma(2/3) = 2 pi / sqrt(3)
        let g1 = gamma_rational(&mut ctx, &rat(1, 3)).unwrap();
        let g2 = gamma_rational(&mut ctx, &rat(2, 3)).unwrap();
        let lhs = ctx.mul(&g1, &g2);
        let rhs = ctx.div(&ctx.mul(&pi, &ctx.int(2)), &ctx.sqrt(&ctx.int(3)));
        assert!(close(&ctx, &lhs, &rhs, 1e-45));
        assert!(gamma_rational(&mut ctx, &int(-2)).is_err());
    }

    #[test]
    fn carriers_collapse() {
        let mut ctx = Ctx::new(precision_bits(30)).unwrap();
        let c = &Carrier::power(&int(2), &rat(1, 2)).unwrap() * &Carrier::exp(&int(1));
        let v = to_f64(&carrier_value(&mut ctx, &c).unwrap());
        assert!((v - 2f64.sqrt() * 1f64.exp()).abs() < 1e-14);
        assert_eq!(to_f64(&ctx.rational(&rat(-3, 8))), -0.375);
    }
}
