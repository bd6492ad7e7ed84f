//! Integer-coefficient polynomial kernels used where fraction-free
//! arithmetic pays off: determinants, gcds and Sturm chains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = BigInt::zero();
        if let Some(x) = a.get(i) {
            c += x;
        }
        if let Some(y) = b.get(i) {
            c += y;
        }
        r.push(c);
    }
    trim(&mut r);
    r
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = BigInt::zero();
        if let Some(x) = a.get(i) {
            c += x;
        }
        if let Some(y) = b.get(i) {
            c -= y;
        }
        r.push(c);
    }
    trim(&mut r);
    r
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

pub fn scale(a: &[BigInt], k: &BigInt) -> ZPoly {
    let mut r: ZPoly = a.iter().map(|c| c * k).collect();
    trim(&mut r);
    r
}

/// Quotient of a division known to be exact over the integers.
/// Returns `None` if the division leaves a remainder.
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let lb = b.last().unwrap();
    let qlen = a.len() - b.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (qc, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &qc * bc;
        }
        q[i] = qc;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Pseudo-remainder: the remainder of lc(b)^e * a on division by b, with
/// e = deg a - deg b + 1 exactly (or 0 when deg a < deg b).
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    assert!(!b.is_empty());
    let mut r = a.to_vec();
    trim(&mut r);
    let lb = b.last().unwrap().clone();
    let e = (r.len() + 1).saturating_sub(b.len());
    let mut steps = 0;
    while r.len() >= b.len() {
        steps += 1;
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        trim(&mut r);
    }
    // Top up so the multiplier is exactly lc(b)^e even when the degree
    // dropped by more than one in a step.
    for _ in steps..e {
        for c in r.iter_mut() {
            *c *= &lb;
        }
    }
    r
}

pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the positive content.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let g = content(a);
    if g.is_zero() || g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|c| c / &g).collect()
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut x = primitive(a);
    let mut y = primitive(b);
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    if x.last().is_some_and(|c| c.is_negative()) {
        for c in x.iter_mut() {
            *c = -c.clone();
        }
    }
    x
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    let mut r: ZPoly = a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut r);
    r
}
