use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

fn sign(c: &BigInt) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Sturm chain of a primitive integer polynomial. Remainders are negated
/// pseudo-remainders by divisors made to have positive leading
/// coefficient, then divided by their positive content, so only positive
/// rescalings separate the chain from the textbook one.
fn chain(p: &ZPoly) -> Vec<ZPoly> {
    let mut out = vec![p.clone(), zpoly::primitive(&zpoly::derivative(p))];
    loop {
        let n = out.len();
        let b = &out[n - 1];
        if b.len() <= 1 {
            break;
        }
        let a = &out[n - 2];
        let mut r = zpoly::pseudo_rem(a, b);
        // pseudo_rem multiplies by lc(b)^e; fix the sign if that is negative.
        let e = a.len() - b.len() + 1;
        if b.last().unwrap().is_negative() && e % 2 == 1 {
            r = r.iter().map(|c| -c).collect();
        }
        if r.is_empty() {
            break;
        }
        let r: ZPoly = zpoly::primitive(&r).iter().map(|c| -c).collect();
        out.push(r);
    }
    out
}

/// Number of distinct real roots of `p` in the closed half-line [0, +inf).
/// A root exactly at 0 is counted.
pub fn sturm_nonneg_roots(p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("Sturm count of the zero polynomial".into()));
    }
    let (_, mut z) = p.to_primitive();
    let mut at_zero = 0;
    if z[0].is_zero() {
        at_zero = 1;
        let k = z.iter().position(|c| !c.is_zero()).unwrap();
        z.drain(..k);
    }
    if z.len() <= 1 {
        return Ok(at_zero);
    }
    let ch = chain(&z);
    let v0 = variations(ch.iter().map(|q| q.first().map_or(0, sign)));
    let vinf = variations(ch.iter().map(|q| q.last().map_or(0, sign)));
    Ok(at_zero + v0 - vinf)
}

/// Number of distinct real roots over the whole line.
pub fn sturm_real_roots(p: &Poly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("Sturm count of the zero polynomial".into()));
    }
    let (_, z) = p.to_primitive();
    if z.len() <= 1 {
        return Ok(0);
    }
    let ch = chain(&z);
    let vinf = variations(ch.iter().map(|q| q.last().map_or(0, sign)));
    let vminf = variations(ch.iter().map(|q| {
        let s = q.last().map_or(0, sign);
        if q.len() % 2 == 0 {
            -s
        } else {
            s
        }
    }));
    Ok(vminf - vinf)
}
