//! Exact scalars carrying symbolic transcendental factors.
//!
//! A [`Carrier`] is `q * prod Gamma(g)^e * prod b^r * exp(t)` with `q`
//! rational. Gamma arguments are normalised into (0, 1) and power exponents
//! into (0, 1) by moving Pochhammer symbols and integer powers into `q`, so
//! two carriers that denote the same number have the same symbolic part and
//! their ratio is an exact rational.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_core::rational::{floor_i64, int, is_nonpositive_integer, pochhammer, pow_i};
use crate::exact_core::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Carrier {
    coeff: Rational,
    gammas: BTreeMap<Rational, i64>,
    powers: BTreeMap<Rational, Rational>,
    exp_arg: Rational,
}

impl Carrier {
    pub fn rational(q: Rational) -> Self {
        Carrier { coeff: q, gammas: BTreeMap::new(), powers: BTreeMap::new(), exp_arg: Rational::zero() }
    }

    pub fn one() -> Self {
        Carrier::rational(Rational::one())
    }

    /// Gamma(q), refused at the poles 0, -1, -2, ...
    pub fn gamma(q: &Rational) -> Result<Self> {
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
        // Gamma(f + m) = Gamma(f) (f)_m, with (f)_m = 1/((f+m)_{-m}) for m < 0.
        let mut c = Carrier::rational(pochhammer(&f, m));
        if !f.is_one() {
            c.gammas.insert(f, 1);
        }
        Ok(c)
    }

    /// `b^e`. A fractional exponent needs `b > 0`.
    pub fn power(b: &Rational, e: &Rational) -> Result<Self> {
        let fl = floor_i64(e);
        let r = e - int(fl);
        if b.is_zero() {
            return if e.is_positive() {
                Ok(Carrier::rational(Rational::zero()))
            } else {
                Err(Error::Pole(format!("0^({e})")))
            };
        }
        let mut c = Carrier::rational(pow_i(b, fl));
        if !r.is_zero() {
            if b.is_negative() {
                return Err(Error::Domain(format!("({b})^({e}) is not real")));
            }
            if !b.is_one() {
                c.powers.insert(b.clone(), r);
            }
        }
        Ok(c)
    }

    /// `exp(t)`
    pub fn exp(t: &Rational) -> Self {
        let mut c = Carrier::one();
        c.exp_arg = t.clone();
        c
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn gammas(&self) -> impl Iterator<Item = (&Rational, i64)> {
        self.gammas.iter().map(|(g, e)| (g, *e))
    }

    pub fn powers(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.powers.iter()
    }

    pub fn exp_arg(&self) -> &Rational {
        &self.exp_arg
    }

    /// True when every symbolic factor has cancelled.
    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero() || (self.gammas.is_empty() && self.powers.is_empty() && self.exp_arg.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coeff)
    }

    /// Every symbolic factor is positive, so the sign is that of `q`.
    pub fn sign(&self) -> i32 {
        crate::exact_core::rational::sign_of(&self.coeff)
    }

    pub fn scale(&self, q: &Rational) -> Carrier {
        let mut c = self.clone();
        c.coeff *= q;
        c
    }

    pub fn powi(&self, e: i64) -> Carrier {
        let mut out = Carrier::rational(pow_i(&self.coeff, e));
        for (g, k) in &self.gammas {
            out.gammas.insert(g.clone(), k * e);
        }
        for (b, r) in &self.powers {
            out = &out * &Carrier::power(b, &(r * int(e))).expect("positive base");
        }
        out.exp_arg = &self.exp_arg * int(e);
        out
    }

    pub fn recip(&self) -> Result<Carrier> {
        if self.coeff.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(self.powi(-1))
    }
}

impl Mul for &Carrier {
    type Output = Carrier;
    fn mul(self, o: &Carrier) -> Carrier {
        let mut out = self.clone();
        out.coeff *= &o.coeff;
        for (g, e) in &o.gammas {
            let v = out.gammas.entry(g.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                out.gammas.remove(g);
            }
        }
        for (b, r) in &o.powers {
            let v = out.powers.entry(b.clone()).or_insert_with(Rational::zero);
            *v += r;
            if *v >= Rational::one() {
                *v -= Rational::one();
                out.coeff *= b;
            }
            if v.is_zero() {
                out.powers.remove(b);
            }
        }
        out.exp_arg += &o.exp_arg;
        out
    }
}

impl Div for &Carrier {
    type Output = Carrier;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Carrier) -> Carrier {
        self * &o.recip().expect("division by a zero carrier")
    }
}

impl Mul for Carrier {
    type Output = Carrier;
    fn mul(self, o: Carrier) -> Carrier {
        &self * &o
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (g, e) in &self.gammas {
            if *e == 1 {
                write!(f, " * Gamma({g})")?;
            } else {
                write!(f, " * Gamma({g})^{e}")?;
            }
        }
        for (b, r) in &self.powers {
            write!(f, " * ({b})^({r})")?;
        }
        if !self.exp_arg.is_zero() {
            write!(f, " * exp({})", self.exp_arg)?;
        }
        Ok(())
    }
}
