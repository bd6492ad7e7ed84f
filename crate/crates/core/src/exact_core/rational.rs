use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. `BigRational` keeps numerator and
/// denominator coprime with a positive denominator after every operation.
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Decimal notation is rejected so that
/// every value entering the library is exact.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parameter(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parameter(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// True for 0, -1, -2, ... (the poles of the Gamma function).
pub fn is_nonpositive_integer(q: &Rational) -> bool {
    is_integer(q) && !q.is_positive()
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if !is_integer(q) {
        return None;
    }
    i64::try_from(q.numer()).ok()
}

pub fn floor_i64(q: &Rational) -> i64 {
    i64::try_from(q.floor().numer()).expect("floor out of i64 range")
}

pub fn ceil_i64(q: &Rational) -> i64 {
    i64::try_from(q.ceil().numer()).expect("ceil out of i64 range")
}

/// Rising factorial q(q+1)...(q+j-1). A negative index is read through
/// (q)_{-j} = 1/((q-j)_j), which is what the duality constants need when
/// an index such as v-u-1 drops to -1.
pub fn pochhammer(q: &Rational, j: i64) -> Rational {
    if j >= 0 {
        let mut r = Rational::one();
        let mut t = q.clone();
        for _ in 0..j {
            r *= &t;
            t += Rational::one();
        }
        r
    } else {
        let base = q - int(-j);
        let d = pochhammer(&base, -j);
        assert!(!d.is_zero(), "pochhammer with negative index hits a pole");
        d.recip()
    }
}

/// Generalised binomial coefficient q(q-1)...(q-j+1)/j!.
pub fn gen_binomial(q: &Rational, j: u32) -> Rational {
    let mut r = Rational::one();
    let mut t = q.clone();
    for i in 1..=j {
        r *= &t;
        r /= int(i as i64);
        t -= Rational::one();
    }
    r
}

pub fn factorial(n: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 2..=n {
        r *= i;
    }
    r
}

pub fn binomial_i(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn pow_i(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

pub fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

pub fn neg_one_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Gcd of numerators over lcm of denominators: the positive rational `c`
/// such that every `q/c` is an integer and those integers are coprime.
pub fn content_of<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    let mut any = false;
    for q in it {
        if q.is_zero() {
            continue;
        }
        any = true;
        g = g.gcd(q.numer());
        l = l.lcm(q.denom());
    }
    any.then(|| Rational::new(g, l))
}
