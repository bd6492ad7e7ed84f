use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{content_of, int, Rational};
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, lowest degree first.
/// The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c0 + c1 x`
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Poly::from_coeffs(v.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut r = Rational::zero();
        for c in self.coeffs.iter().rev() {
            r = r * x + c;
        }
        r
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// p(s x + t)
    pub fn compose_affine(&self, s: &Rational, t: &Rational) -> Poly {
        let lin = Poly::linear(t.clone(), s.clone());
        let mut r = Poly::zero();
        for c in self.coeffs.iter().rev() {
            r = &(&r * &lin) + &Poly::constant(c.clone());
        }
        r
    }

    /// p(x + k)
    pub fn shift(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return self.clone();
        }
        self.compose_affine(&Rational::one(), k)
    }

    pub fn shift_i(&self, k: i64) -> Poly {
        self.shift(&int(k))
    }

    /// p(-x)
    pub fn reflect(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn compose(&self, q: &Poly) -> Poly {
        let mut r = Poly::zero();
        for c in self.coeffs.iter().rev() {
            r = &(&r * q) + &Poly::constant(c.clone());
        }
        r
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.lead().ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let inv = dl.recip();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let qlen = rem.len() - d.coeffs.len() + 1;
        let mut q = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.coeffs.len() - 1];
            if top.is_zero() {
                continue;
            }
            let qc = top * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            q[i] = qc;
        }
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(rem)))
    }

    /// Quotient of a division that must be exact.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!("non-exact division, remainder {r}")));
        }
        Ok(q)
    }

    pub fn divides(&self, p: &Poly) -> bool {
        match p.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => p.is_zero(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Splits `p = c * z` with `c > 0` rational and `z` primitive over Z.
    pub fn to_primitive(&self) -> (Rational, ZPoly) {
        match content_of(self.coeffs.iter()) {
            None => (Rational::one(), Vec::new()),
            Some(c) => {
                let z = self.coeffs.iter().map(|q| (q / &c).to_integer()).collect();
                (c, z)
            }
        }
    }

    pub fn from_zpoly(z: &[BigInt]) -> Poly {
        Poly::from_coeffs(z.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, a) = self.to_primitive();
        let (_, b) = other.to_primitive();
        Poly::from_zpoly(&zpoly::gcd(&a, &b)).monic()
    }

    /// Sum of absolute values of the coefficients.
    pub fn abs_sum(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).fold(Rational::zero(), |a, b| a + b)
    }

    /// Cauchy bound: every complex root has modulus below it.
    pub fn cauchy_root_bound(&self) -> Rational {
        match self.lead() {
            None => Rational::zero(),
            Some(l) => {
                let l = l.abs();
                let mut m = Rational::zero();
                for c in &self.coeffs[..self.coeffs.len() - 1] {
                    let r = c.abs() / &l;
                    if r > m {
                        m = r;
                    }
                }
                m + Rational::one()
            }
        }
    }

    /// Fujiwara bound 2 max_i |a_{n-i}/a_n|^{1/i} on the moduli of the
    /// complex roots, rounded up with a margin that absorbs f64 error.
    pub fn root_bound(&self) -> Rational {
        let Some(n) = self.degree() else { return Rational::zero() };
        let ln_lead = ln_abs(&self.coeffs[n]);
        let mut best = f64::NEG_INFINITY;
        for i in 1..=n {
            let c = &self.coeffs[n - i];
            if c.is_zero() {
                continue;
            }
            best = best.max((ln_abs(c) - ln_lead) / i as f64);
        }
        if best == f64::NEG_INFINITY {
            return Rational::zero();
        }
        let b = 2.0 * best.exp() * 1.001 + 1e-6;
        if !b.is_finite() {
            return self.cauchy_root_bound();
        }
        Rational::new(BigInt::from((b * 1024.0).ceil() as i128), BigInt::from(1024))
    }

    /// Rising factorial (p)(p+1)...(p+j-1) as a polynomial.
    pub fn pochhammer(&self, j: u32) -> Poly {
        let mut r = Poly::one();
        for i in 0..j {
            r = &r * &(self + &Poly::constant(int(i as i64)));
        }
        r
    }

    /// binom(p, j) = p(p-1)...(p-j+1)/j! for a polynomial top `p`.
    pub fn binomial(&self, j: u32) -> Poly {
        let mut r = Poly::one();
        for i in 0..j {
            let f = self - &Poly::constant(int(i as i64));
            r = (&r * &f).scale(&super::rational::rat(1, i as i64 + 1));
        }
        r
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.denom().is_one() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(v)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        // Multiply over Z after pulling out contents; far fewer gcds.
        let (ca, a) = self.to_primitive();
        let (cb, b) = o.to_primitive();
        let z = zpoly::mul(&a, &b);
        Poly::from_zpoly(&z).scale(&(ca * cb))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn ln_abs(q: &Rational) -> f64 {
    // ln |n/d| from the bit lengths and leading digits, safe for huge values
    fn ln_big(v: &BigInt) -> f64 {
        let bits = v.bits();
        if bits < 1000 {
            return v.to_f64().unwrap_or(f64::INFINITY).abs().ln();
        }
        let shift = bits - 64;
        let top: BigInt = v >> shift as usize;
        top.to_f64().unwrap_or(0.0).abs().ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(q.numer()) - ln_big(q.denom())
}
