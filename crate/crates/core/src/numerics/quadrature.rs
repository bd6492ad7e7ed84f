use num_traits::ToPrimitive;

use super::float::{coeffs_of, poly_eval, to_f64, Ctx, Float};
use crate::error::{Error, Result};
use crate::exact_core::rational::int;
use crate::exact_core::Poly;
use crate::exceptional_laguerre::LaguerreExcFamily;

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: Float,
    /// Discretisation estimate (difference of the last two levels) plus
    /// the analytic bounds for the two truncated ends.
    pub abs_error_estimate: f64,
    /// Same quadrature applied to the absolute integrand.
    pub abs_integral: f64,
    pub nodes: usize,
}

impl QuadResult {
    pub fn value_f64(&self) -> f64 {
        to_f64(&self.value)
    }
}

const MAX_LEVELS: usize = 12;

fn abs_sum(v: &[f64]) -> f64 {
    v.iter().map(|c| c.abs()).sum()
}

/// Solves t - e^{-t} = target for t.
fn de_inverse(target: f64) -> f64 {
    let mut t = if target > 0.0 { target } else { -(-target).ln() };
    for _ in 0..100 {
        let e = (-t).exp();
        let step = (t - e - target) / (1.0 + e);
        t -= step;
        if step.abs() < 1e-15 * t.abs().max(1.0) {
            break;
        }
    }
    t
}

/// Integral over (0, oo) of p q x^{α+k} e^{-x} / Omega^2.
///
/// The substitution x = exp(t - e^{-t}) makes the integrand decay double
/// exponentially at both ends, and the trapezoid rule in t is halved until
/// consecutive levels agree to `tol` relative to the absolute integral.
/// [0, eps] and [X, oo) are cut off with explicit bounds: near 0 the
/// integrand is at most S x^{β} / m^2 with m a lower bound for |Omega|,
/// and beyond X = 8 (deg(pq) + α + k + 40) it is at most
/// K x^{s-1} e^{-x}, with Gamma(s, X) <= 2 X^{s-1} e^{-X}.
pub fn laguerre_inner(ctx: &mut Ctx, p: &Poly, q: &Poly, fam: &LaguerreExcFamily, tol: f64) -> Result<QuadResult> {
    if !fam.nonvanishing()? {
        return Err(Error::Pole(format!("Omega has a root in [0, oo) for {}", fam.pair)));
    }
    let beta_q = &fam.alpha + int(fam.k());
    let beta = beta_q.to_f64().unwrap_or(f64::NAN);
    if !(beta > -1.0) {
        return Err(Error::Precondition(format!("alpha + k = {beta_q} must exceed -1")));
    }
    let pq = p * q;
    let om = &fam.omega;
    let pq_f: Vec<f64> = pq.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let om_f: Vec<f64> = om.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let s_pq = abs_sum(&pq_f);
    let d = pq.degree().unwrap_or(0) as f64;
    let m_deg = om.degree().unwrap_or(0);

    // head: eps with eps^{β+1} tiny, m = |Omega(0)| - sum_{i>=1} |w_i| eps^i
    let ln_eps = -(40.0 + tol.recip().ln().max(0.0)) * std::f64::consts::LN_10 / (beta + 1.0);
    let eps = ln_eps.exp();
    let m_low = om_f[0].abs() - om_f.iter().skip(1).enumerate().map(|(i, c)| c.abs() * eps.powi(i as i32 + 1)).sum::<f64>();
    if !(m_low > 0.0) {
        return Err(Error::Numerical("no lower bound for |Omega| near 0".into()));
    }
    let head = if s_pq == 0.0 { 0.0 } else { (s_pq.ln() - 2.0 * m_low.ln() + (beta + 1.0) * ln_eps - (beta + 1.0).ln()).exp() };

    // tail: |Omega(x)| >= x^m L on [X, oo)
    let big_x = (8.0 * (d + beta + 40.0)).max(8.0);
    let lead = om_f[m_deg].abs();
    let lower: f64 = om_f[..m_deg].iter().map(|c| c.abs()).sum::<f64>() / big_x;
    let l = lead - lower;
    if !(l > 0.0) {
        return Err(Error::Numerical("no lower bound for |Omega| at the tail".into()));
    }
    let s = d + beta - 2.0 * m_deg as f64 + 1.0;
    let tail = if s_pq == 0.0 {
        0.0
    } else {
        (s_pq.ln() - 2.0 * l.ln() + 2f64.ln() + (s - 1.0) * big_x.ln() - big_x).exp()
    };

    let t_lo = de_inverse(ln_eps);
    let t_hi = de_inverse(big_x.ln());
    let pq_c = coeffs_of(ctx, &pq);
    let om_c = coeffs_of(ctx, om);
    let beta1 = {
        let b = &beta_q + int(1);
        ctx.rational(&b)
    };
    let one = ctx.int(1);

    // g(t) = pq(x) / Omega(x)^2 * exp((β+1) ln x - x) * (1 + e^{-t})
    let g = |ctx: &mut Ctx, t: &Float| -> Float {
        let u = ctx.exp(&t.neg());
        let lnx = ctx.sub(t, &u);
        let x = ctx.exp(&lnx);
        let num = poly_eval(ctx, &pq_c, &x);
        let o = poly_eval(ctx, &om_c, &x);
        let e = ctx.exp(&ctx.sub(&ctx.mul(&beta1, &lnx), &x));
        let jac = ctx.add(&one, &u);
        ctx.mul(&ctx.div(&num, &ctx.mul(&o, &o)), &ctx.mul(&e, &jac))
    };

    let mut n = ((t_hi - t_lo) * 4.0).ceil().max(8.0) as usize;
    let h0 = (t_hi - t_lo) / n as f64;
    let tlo = Float::from_f64(t_lo, ctx.p);
    let mut h = Float::from_f64(h0, ctx.p);
    let half = Float::from_f64(0.5, ctx.p);
    let mut sum = ctx.int(0);
    let mut asum = ctx.int(0);
    for j in 0..=n {
        let t = ctx.add(&tlo, &ctx.mul(&h, &ctx.int(j as i64)));
        let mut v = g(ctx, &t);
        if j == 0 || j == n {
            v = ctx.mul(&v, &half);
        }
        asum = ctx.add(&asum, &v.abs());
        sum = ctx.add(&sum, &v);
    }
    let mut est = ctx.mul(&sum, &h);
    let mut aest = ctx.mul(&asum, &h);
    let mut nodes = n + 1;
    let mut diff = f64::INFINITY;
    for level in 0..MAX_LEVELS {
        h = ctx.mul(&h, &half);
        let mut odd = ctx.int(0);
        let mut aodd = ctx.int(0);
        for j in 0..n {
            let t = ctx.add(&tlo, &ctx.mul(&h, &ctx.int(2 * j as i64 + 1)));
            let v = g(ctx, &t);
            aodd = ctx.add(&aodd, &v.abs());
            odd = ctx.add(&odd, &v);
        }
        n *= 2;
        nodes += n / 2;
        sum = ctx.add(&sum, &odd);
        asum = ctx.add(&asum, &aodd);
        let new = ctx.mul(&sum, &h);
        aest = ctx.mul(&asum, &h);
        diff = to_f64(&ctx.sub(&new, &est)).abs();
        est = new;
        let scale = to_f64(&aest);
        if level >= 2 && diff + head + tail <= tol * scale {
            break;
        }
    }
    let abs_integral = to_f64(&aest);
    let abs_error_estimate = diff + head + tail;
    if abs_error_estimate > tol * abs_integral {
        return Err(Error::Numerical(format!(
            "quadrature error estimate {abs_error_estimate:e} exceeds {tol:e} relative to {abs_integral:e}"
        )));
    }
    Ok(QuadResult { value: est, abs_error_estimate, abs_integral, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical_families::{laguerre, LaguerreParams};
    use crate::exact_core::rational::rat;
    use crate::exact_core::Rational;
    use crate::numerics::float::precision_bits;
    use crate::pair_combinatorics::PairSpec;

    fn classical(alpha: Rational) -> LaguerreExcFamily {
        LaguerreExcFamily::new(alpha, PairSpec::classical()).unwrap()
    }

    #[test]
    fn gamma_moments() {
        let mut ctx = Ctx::new(precision_bits(40)).unwrap();
        let r = laguerre_inner(&mut ctx, &Poly::one(), &Poly::one(), &classical(rat(1, 2)), 1e-14).unwrap();
        assert!((r.value_f64() - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
        let r = laguerre_inner(&mut ctx, &Poly::one(), &Poly::x(), &classical(int(0)), 1e-14).unwrap();
        assert!((r.value_f64() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn classical_laguerre_norms() {
        let mut ctx = Ctx::new(precision_bits(40)).unwrap();
        for alpha in [rat(1, 2), int(0), rat(-1, 2)] {
            let fam = classical(alpha.clone());
            let gamma = |z: f64| -> f64 {
                // Gamma(n + alpha + 1) for the three alphas, by recurrence
                let mut v = if (z - z.round()).abs() < 1e-12 { 1.0 } else { std::f64::consts::PI.sqrt() };
                let mut w = if (z - z.round()).abs() < 1e-12 { 1.0 } else { 0.5 };
                while w < z - 1e-9 {
                    v *= w;
                    w += 1.0;
                }
                v
            };
            for n in 0..=6 {
                let l = laguerre(n, &LaguerreParams::new(alpha.clone()));
                let r = laguerre_inner(&mut ctx, &l, &l, &fam, 1e-13).unwrap();
                let a = alpha.to_f64().unwrap();
                let mut fact = 1.0;
                for i in 1..=n {
                    fact *= i as f64;
                }
                let exact = gamma(n as f64 + a + 1.0) / fact;
                assert!((r.value_f64() / exact - 1.0).abs() < 1e-10, "alpha={alpha} n={n}");
            }
        }
    }

    #[test]
    fn exceptional_example() {
        let mut ctx = Ctx::new(precision_bits(40)).unwrap();
        let fam = LaguerreExcFamily::new(rat(-3, 2), PairSpec::from_vecs(vec![1], vec![]).unwrap()).unwrap();
        let l0 = fam.l_exc(0).unwrap();
        let r = laguerre_inner(&mut ctx, &l0, &l0, &fam, 1e-12).unwrap();
        assert!((r.value_f64() - 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn refuses_poles() {
        let mut ctx = Ctx::new(precision_bits(20)).unwrap();
        let fam = LaguerreExcFamily::new(int(2), PairSpec::from_vecs(vec![1], vec![]).unwrap()).unwrap();
        assert!(matches!(laguerre_inner(&mut ctx, &Poly::one(), &Poly::one(), &fam, 1e-8), Err(Error::Pole(_))));
    }
}
