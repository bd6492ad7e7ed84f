//! Classical Meixner and Laguerre polynomials, their operators and the
//! identities used by the exceptional constructions.
//!
//! Meixner polynomials use the normalisation
//! `m_n^{a,c}(x) = a^n/(1-a)^n sum_j a^{-j} binom(x, j) binom(-x-c, n-j)`,
//! which differs from the usual tables; everything here is checked against
//! the three-term recurrence rather than external values.

use num_traits::{One, Zero};

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::exact_core::rational::{factorial, gen_binomial, int, is_nonpositive_integer, pochhammer, pow_i};
use crate::exact_core::{DiffOperator, Poly, RatFunc, Rational, ShiftOperator};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeixnerParams {
    pub a: Rational,
    pub c: Rational,
}

impl MeixnerParams {
    /// Parameters for which the Meixner family is a genuine orthogonal
    /// family: `a` outside {0, 1} and `c` outside {0, -1, -2, ...}.
    pub fn new(a: Rational, c: Rational) -> Result<Self> {
        if is_nonpositive_integer(&c) {
            return Err(Error::Parameter(format!("c = {c} is a nonpositive integer")));
        }
        MeixnerParams::formal(a, c)
    }

    /// Only `a` is restricted. Used by the Krawtchouk substitution and by
    /// the reflected parameters that appear in the invariance identities,
    /// where `c` can be any rational.
    pub fn formal(a: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() || a.is_one() {
            return Err(Error::Parameter(format!("a = {a} must differ from 0 and 1")));
        }
        Ok(MeixnerParams { a, c })
    }

    /// `(1/a, c)`, the parameters of the second block of Casorati rows.
    pub fn inverted(&self) -> MeixnerParams {
        MeixnerParams { a: self.a.recip(), c: self.c.clone() }
    }

    pub fn with_c(&self, c: Rational) -> MeixnerParams {
        MeixnerParams { a: self.a.clone(), c }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaguerreParams {
    pub alpha: Rational,
}

impl LaguerreParams {
    pub fn new(alpha: Rational) -> Self {
        LaguerreParams { alpha }
    }
}

/// m_n^{a,c}(x); zero for negative `n`.
pub fn meixner(n: i64, p: &MeixnerParams) -> Poly {
    if n < 0 {
        return Poly::zero();
    }
    let n = n as u32;
    let a = &p.a;
    let top = Poly::linear(-&p.c, int(-1));
    let mut s = Poly::zero();
    let mut ainv = Rational::one();
    for j in 0..=n {
        let t = &Poly::x().binomial(j) * &top.binomial(n - j);
        s = &s + &t.scale(&ainv);
        ainv /= a;
    }
    s.scale(&pow_i(&(a / (Rational::one() - a)), n as i64))
}

/// L_n^alpha(x); zero for negative `n`.
pub fn laguerre(n: i64, p: &LaguerreParams) -> Poly {
    if n < 0 {
        return Poly::zero();
    }
    let top = &p.alpha + int(n);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut jf = Rational::one();
    for j in 0..=n {
        if j > 0 {
            jf *= int(j);
        }
        let sgn = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        coeffs.push(gen_binomial(&top, (n - j) as u32) * sgn / &jf);
    }
    Poly::from_coeffs(coeffs)
}

/// D_{a,c} = x/(a-1) Sh_{-1} - ((1+a)x + ac)/(a-1) Sh_0 + a(x+c)/(a-1) Sh_1,
/// with D_{a,c} m_n = n m_n.
pub fn meixner_op(p: &MeixnerParams) -> ShiftOperator {
    let a = &p.a;
    let inv = (a - Rational::one()).recip();
    let hm1 = Poly::x().scale(&inv);
    let h0 = Poly::linear(a * &p.c, Rational::one() + a).scale(&-&inv);
    let h1 = Poly::linear(p.c.clone(), Rational::one()).scale(&(a * &inv));
    ShiftOperator::three_point(hm1.into(), h0.into(), h1.into())
}

/// D_alpha = -x d^2 - (alpha+1-x) d, with D_alpha L_n = n L_n.
pub fn laguerre_op(p: &LaguerreParams) -> DiffOperator {
    DiffOperator::second_order(
        RatFunc::from_poly(Poly::from_ints(&[0, -1])),
        RatFunc::from_poly(Poly::linear(-(&p.alpha + int(1)), int(1))),
        RatFunc::zero(),
    )
}

/// k_n^{a,N} = m_n^{-a, -N+1}.
pub fn krawtchouk(n: i64, a: &Rational, big_n: i64) -> Result<Poly> {
    if big_n < 1 {
        return Err(Error::Parameter(format!("N = {big_n} must be positive")));
    }
    let p = MeixnerParams::formal(-a, int(1 - big_n))?;
    Ok(meixner(n, &p))
}

/// Norm `<m_n, m_n> = a^n Gamma(n+c) / (n! (1-a)^{2n+c})` as a carrier.
pub fn meixner_norm(n: i64, p: &MeixnerParams) -> Result<Carrier> {
    if n < 0 {
        return Err(Error::Domain(format!("norm of m_{n}")));
    }
    let one = Rational::one();
    let rational = pow_i(&p.a, n) / Rational::from_integer(factorial(n as u32));
    let g = Carrier::gamma(&(&p.c + int(n)))?;
    let w = Carrier::power(&(&one - &p.a), &-(&p.c + int(2 * n)))?;
    Ok((&g * &w).scale(&rational))
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Verifies the classical toolbox exactly for the given indices:
/// the forward difference `m_n(x+1) - m_n(x) = m_{n-1}^{a,c+1}(x)`,
/// `m_n^{1/a,c}(x+1) - a m_n^{1/a,c}(x) = (1-a) m_n^{1/a,c+1}(x)`,
/// the duality between degree and argument at integer points `(n, m)`,
/// the reflection `m_n^{a,c}(x) = (-1)^n m_n^{1/a,c}(-x-c)`, and for
/// Laguerre (with `alpha = c - 1`) `(L_n)' = -L_{n-1}^{alpha+1}` and
/// `L_n^alpha = L_{n-1}^alpha + L_n^{alpha-1}`. The scalar duality is also
/// evaluated at `x0` through the reflection identity.
pub fn check_identities(n: i64, m: i64, p: &MeixnerParams, x0: &Rational) -> Vec<IdentityCheck> {
    let one = Rational::one();
    let a = &p.a;
    let c1 = p.with_c(&p.c + &one);
    let pinv = p.inverted();
    let pinv1 = pinv.with_c(&p.c + &one);
    let mn = meixner(n, p);

    let fwd_diff = &mn.shift_i(1) - &mn == meixner(n - 1, &c1);

    let mi = meixner(n, &pinv);
    let inv_diff = &mi.shift_i(1) - &mi.scale(a) == meixner(n, &pinv1).scale(&(&one - a));

    let duality = {
        let lhs = pow_i(a, m - n)
            * Rational::from_integer(factorial(n as u32))
            * pochhammer(&(&one + &p.c), m - 1)
            * meixner(n, p).eval(&int(m));
        let rhs = pow_i(&(a - &one), m - n)
            * Rational::from_integer(factorial(m as u32))
            * pochhammer(&(&one + &p.c), n - 1)
            * meixner(m, p).eval(&int(n));
        lhs == rhs
    };

    let refl = Poly::linear(-&p.c, int(-1));
    let sign = if n % 2 == 0 { one.clone() } else { -one.clone() };
    let refl_ok = mn == mi.compose(&refl).scale(&sign);
    let refl_point = mn.eval(x0) == mi.eval(&(-x0 - &p.c)) * &sign;

    let lp = LaguerreParams::new(&p.c - &one);
    let lp1 = LaguerreParams::new(p.c.clone());
    let lm1 = LaguerreParams::new(&p.c - int(2));
    let ln = laguerre(n, &lp);
    let deriv_ok = ln.derivative() == -laguerre(n - 1, &lp1);
    let step_ok = ln == &laguerre(n - 1, &lp) + &laguerre(n, &lm1);

    vec![
        IdentityCheck { name: "forward_difference", passed: fwd_diff },
        IdentityCheck { name: "inverse_difference", passed: inv_diff },
        IdentityCheck { name: "degree_argument_duality", passed: duality },
        IdentityCheck { name: "reflection", passed: refl_ok && refl_point },
        IdentityCheck { name: "laguerre_derivative", passed: deriv_ok },
        IdentityCheck { name: "laguerre_alpha_step", passed: step_ok },
    ]
}
