//! Finite sets of positive integers, pairs of them, the index data derived
//! from a pair, and the admissibility decision.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact_core::rational::{binomial_i, ceil_i64, int, is_nonpositive_integer, pochhammer};
use crate::exact_core::Rational;

/// Strictly increasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSet {
    elems: Vec<i64>,
}

impl FiniteSet {
    pub fn new(mut elems: Vec<i64>) -> Result<Self> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parameter(format!("repeated element in {elems:?}")));
        }
        if elems.first().is_some_and(|&f| f < 1) {
            return Err(Error::Parameter(format!("non-positive element in {elems:?}")));
        }
        Ok(FiniteSet { elems })
    }

    pub fn empty() -> Self {
        FiniteSet { elems: Vec::new() }
    }

    /// {1, ..., k}
    pub fn segment(k: i64) -> Self {
        FiniteSet { elems: (1..=k).collect() }
    }

    pub fn elems(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, f: i64) -> bool {
        self.elems.binary_search(&f).is_ok()
    }

    /// M_F, with M_∅ = -1.
    pub fn max_elem(&self) -> i64 {
        self.elems.last().copied().unwrap_or(-1)
    }

    /// m_F, with m_∅ = -1.
    pub fn min_elem(&self) -> i64 {
        self.elems.first().copied().unwrap_or(-1)
    }

    pub fn sum(&self) -> i64 {
        self.elems.iter().sum()
    }

    pub fn is_segment(&self) -> bool {
        self.elems.iter().enumerate().all(|(i, &f)| f == i as i64 + 1)
    }

    /// I(F) = {1..M_F} \ {M_F - f : f in F}; I(∅) = ∅.
    pub fn involute(&self) -> FiniteSet {
        let m = self.max_elem();
        if m < 1 {
            return FiniteSet::empty();
        }
        FiniteSet { elems: (1..=m).filter(|g| !self.contains(m - g)).collect() }
    }

    /// (s_F, F_⇓).
    pub fn s_and_down(&self) -> (i64, FiniteSet) {
        let k = self.len() as i64;
        if self.is_empty() {
            return (1, FiniteSet::empty());
        }
        if self.is_segment() {
            return (k + 1, FiniteSet::empty());
        }
        let s = (1..=k).find(|&s| s < self.elems[(s - 1) as usize]).expect("not a segment");
        let down = self.elems[(s - 1) as usize..].iter().map(|f| f - s).collect();
        (s, FiniteSet { elems: down })
    }

    /// V_F = prod_{i<j} (f_j - f_i).
    pub fn vandermonde(&self) -> i64 {
        let mut v = 1;
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                v *= self.elems[j] - self.elems[i];
            }
        }
        v
    }

    /// Every maximal run of consecutive integers has even length.
    pub fn charlier_admissible(&self) -> bool {
        let mut run = 0;
        let mut prev = i64::MIN;
        for &f in &self.elems {
            if f == prev + 1 {
                run += 1;
            } else {
                if run % 2 == 1 {
                    return false;
                }
                run = 1;
            }
            prev = f;
        }
        run % 2 == 0
    }

    /// Sign scan of prod (x - f) over x = 0..=M_F+1; beyond that every
    /// factor is positive.
    pub fn charlier_sign_scan(&self) -> bool {
        (0..=self.max_elem() + 1).all(|x| self.elems.iter().map(|f| x - f).product::<i64>() >= 0)
    }

    pub fn without_last(&self) -> FiniteSet {
        let mut e = self.elems.clone();
        e.pop();
        FiniteSet { elems: e }
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// The pair (F1, F2). Public construction requires at least one nonempty
/// component; the empty pair exists only as the classical base of a
/// Darboux chain (see [`PairSpec::classical`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSpec {
    pub f1: FiniteSet,
    pub f2: FiniteSet,
}

impl PairSpec {
    pub fn new(f1: FiniteSet, f2: FiniteSet) -> Result<Self> {
        if f1.is_empty() && f2.is_empty() {
            return Err(Error::Parameter("both components of the pair are empty".into()));
        }
        Ok(PairSpec { f1, f2 })
    }

    pub fn from_vecs(f1: Vec<i64>, f2: Vec<i64>) -> Result<Self> {
        PairSpec::new(FiniteSet::new(f1)?, FiniteSet::new(f2)?)
    }

    /// The empty pair, for which every exceptional object reduces to the
    /// classical one (Omega = 1, u = 0).
    pub fn classical() -> Self {
        PairSpec { f1: FiniteSet::empty(), f2: FiniteSet::empty() }
    }

    pub fn is_classical(&self) -> bool {
        self.f1.is_empty() && self.f2.is_empty()
    }

    pub fn k1(&self) -> i64 {
        self.f1.len() as i64
    }

    pub fn k2(&self) -> i64 {
        self.f2.len() as i64
    }

    pub fn k(&self) -> i64 {
        self.k1() + self.k2()
    }

    /// u = sum F1 + sum F2 - C(k1+1, 2) - C(k2, 2).
    pub fn u(&self) -> i64 {
        let u = self.f1.sum() + self.f2.sum() - binomial_i(self.k1() + 1, 2) - binomial_i(self.k2(), 2);
        assert!(u >= 0, "u is negative for {self}");
        u
    }

    /// v = u + M_{F1} + 1.
    pub fn v(&self) -> i64 {
        self.u() + self.f1.max_elem() + 1
    }

    /// n belongs to σ = {u, u+1, ...} \ {u + f : f in F1}.
    pub fn in_sigma(&self, n: i64) -> bool {
        let u = self.u();
        n >= u && !self.f1.contains(n - u)
    }

    /// First `count` members of σ in increasing order.
    pub fn sigma(&self, count: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(count);
        let mut n = self.u();
        while out.len() < count {
            if self.in_sigma(n) {
                out.push(n);
            }
            n += 1;
        }
        out
    }

    /// Members of σ not exceeding `max`.
    pub fn sigma_upto(&self, max: i64) -> Vec<i64> {
        (self.u()..=max).filter(|&n| self.in_sigma(n)).collect()
    }

    /// (s_F, F_⇓) with s_F = s_{F1} and F_⇓ = ((F1)_⇓, F2).
    pub fn s_and_down(&self) -> (i64, PairSpec) {
        let (s, d) = self.f1.s_and_down();
        (s, PairSpec { f1: d, f2: self.f2.clone() })
    }

    /// (F1, F2 without its largest element).
    pub fn drop_last_f2(&self) -> Result<PairSpec> {
        if self.f2.is_empty() {
            return Err(Error::Precondition("F2 is empty".into()));
        }
        Ok(PairSpec { f1: self.f1.clone(), f2: self.f2.without_last() })
    }

    /// (I(F1), I(F2)).
    pub fn involute(&self) -> PairSpec {
        PairSpec { f1: self.f1.involute(), f2: self.f2.involute() }
    }

    pub fn index_data(&self) -> PairIndexData {
        let (s, _) = self.s_and_down();
        PairIndexData {
            u: self.u(),
            v: self.v(),
            s,
            sigma_skip: FiniteSet { elems: self.f1.elems.iter().map(|f| f + self.u()).collect() },
        }
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIndexData {
    pub u: i64,
    pub v: i64,
    pub s: i64,
    /// The degrees missing from σ.
    pub sigma_skip: FiniteSet,
}

pub fn u_of(f: &PairSpec) -> i64 {
    f.u()
}

pub fn v_of(f: &PairSpec) -> i64 {
    f.v()
}

pub fn sigma_of(f: &PairSpec, count: usize) -> Vec<i64> {
    f.sigma(count)
}

pub fn involute(f: &FiniteSet) -> FiniteSet {
    f.involute()
}

pub fn s_and_down(f: &PairSpec) -> (i64, PairSpec) {
    f.s_and_down()
}

pub fn vandermonde(f: &FiniteSet) -> i64 {
    f.vandermonde()
}

pub fn charlier_admissible(f: &FiniteSet) -> bool {
    f.charlier_admissible()
}

fn check_c(c: &Rational) -> Result<()> {
    if is_nonpositive_integer(c) {
        return Err(Error::Parameter(format!("c = {c} is a nonpositive integer")));
    }
    Ok(())
}

/// ĉ = max(-[c], 0) with [c] the floor, so that ĉ is the least
/// nonnegative integer making x + c + ĉ > 0 for every x >= 0.
pub fn hat_c(c: &Rational) -> Result<i64> {
    check_c(c)?;
    Ok(if c.is_negative() { ceil_i64(&-c) } else { 0 })
}

/// prod_{F1}(x-f) prod_{F2}(x+c+f) / (x+c)_ĉ
pub fn admissibility_value(c: &Rational, f: &PairSpec, x: i64) -> Result<Rational> {
    let ch = hat_c(c)?;
    let xr = int(x);
    let mut v = Rational::one();
    for g in f.f1.elems() {
        v *= int(x - g);
    }
    for g in f.f2.elems() {
        v *= &xr + c + int(*g);
    }
    Ok(v / pochhammer(&(&xr + c), ch))
}

/// Last point of the finite scan: M_{F1} + ĉ + k + 1.
pub fn admissibility_bound(c: &Rational, f: &PairSpec) -> Result<i64> {
    Ok(f.f1.max_elem() + hat_c(c)? + f.k() + 1)
}

/// Points x of the scan where the admissibility product is negative.
pub fn admissibility_witnesses(c: &Rational, f: &PairSpec) -> Result<Vec<i64>> {
    let bound = admissibility_bound(c, f)?;
    // Beyond the bound each factor must be positive; otherwise the finite
    // scan would not decide the infinite condition.
    let xb = int(bound + 1);
    let ch = hat_c(c)?;
    let positive = f.f1.elems().iter().all(|g| bound + 1 - g > 0)
        && f.f2.elems().iter().all(|g| (&xb + c + int(*g)).is_positive())
        && (ch == 0 || (&xb + c).is_positive());
    if !positive {
        return Err(Error::Inconsistency(format!("admissibility bound {bound} too small for c = {c}, {f}")));
    }
    let mut out = Vec::new();
    for x in 0..=bound {
        if admissibility_value(c, f, x)?.is_negative() {
            out.push(x);
        }
    }
    Ok(out)
}

/// c and F are admissible when the product above is >= 0 on all of N.
pub fn is_admissible(c: &Rational, f: &PairSpec) -> Result<bool> {
    Ok(admissibility_witnesses(c, f)?.is_empty())
}

/// Sign of Gamma(q) for q not a pole: positive for q > 0, otherwise
/// (-1)^{ceil(-q)}.
pub fn gamma_sign(q: &Rational) -> Result<i32> {
    if is_nonpositive_integer(q) {
        return Err(Error::Pole(format!("Gamma({q})")));
    }
    if q.is_positive() {
        return Ok(1);
    }
    Ok(if ceil_i64(&-q) % 2 == 0 { 1 } else { -1 })
}

/// All pairs with elements in 1..=max_elem and |F1| + |F2| <= max_card,
/// excluding the empty pair, in lexicographic order of (F1, F2).
pub fn enumerate_pairs(max_elem: i64, max_card: usize) -> Vec<PairSpec> {
    let subsets: Vec<FiniteSet> = (0u32..(1 << max_elem))
        .map(|mask| FiniteSet { elems: (1..=max_elem).filter(|e| mask >> (e - 1) & 1 == 1).collect() })
        .filter(|s| s.len() <= max_card)
        .collect();
    let mut out = Vec::new();
    for f1 in &subsets {
        for f2 in &subsets {
            if f1.len() + f2.len() > max_card || (f1.is_empty() && f2.is_empty()) {
                continue;
            }
            out.push(PairSpec { f1: f1.clone(), f2: f2.clone() });
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;

    fn pair(a: &[i64], b: &[i64]) -> PairSpec {
        PairSpec::from_vecs(a.to_vec(), b.to_vec()).unwrap()
    }

    fn set(a: &[i64]) -> FiniteSet {
        FiniteSet::new(a.to_vec()).unwrap()
    }

    #[test]
    fn u_examples() {
        assert_eq!(pair(&[1, 2], &[]).u(), 0);
        assert_eq!(pair(&[], &[1]).u(), 1);
        assert_eq!(pair(&[1], &[]).u(), 0);
        assert_eq!(pair(&[1, 2], &[1]).u(), 1);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(pair(&[1], &[]).sigma(4), vec![0, 2, 3, 4]);
        // u = 2 here: C(k2, 2) vanishes for k2 = 1, and deg Omega = u + k1 = 2
        // confirms it (Omega is the single entry m_2^{1/a,c}).
        assert_eq!(pair(&[], &[2]).sigma(3), vec![2, 3, 4]);
        assert_eq!(pair(&[1, 2], &[]).sigma(3), vec![0, 3, 4]);
    }

    #[test]
    fn involution_examples() {
        for k in 2..7 {
            let f1 = FiniteSet::segment(k);
            assert_eq!(f1.involute(), set(&[k]));
            let mut f2: Vec<i64> = (1..=k - 2).collect();
            f2.push(k);
            assert_eq!(set(&f2).involute(), set(&[1, k]));
        }
        assert_eq!(set(&[2]).involute(), set(&[1, 2]));
        assert_eq!(FiniteSet::empty().involute(), FiniteSet::empty());
    }

    #[test]
    fn s_and_down_examples() {
        assert_eq!(FiniteSet::empty().s_and_down(), (1, FiniteSet::empty()));
        assert_eq!(set(&[1, 2]).s_and_down(), (3, FiniteSet::empty()));
        assert_eq!(set(&[1, 3]).s_and_down(), (2, set(&[1])));
        assert_eq!(set(&[2, 5]).s_and_down(), (1, set(&[1, 4])));
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(FiniteSet::empty().vandermonde(), 1);
        assert_eq!(set(&[1, 3]).vandermonde(), 2);
        assert_eq!(set(&[1, 2, 4]).vandermonde(), 6);
    }

    #[test]
    fn hat_c_uses_the_floor() {
        assert_eq!(hat_c(&rat(3, 2)).unwrap(), 0);
        assert_eq!(hat_c(&rat(-7, 2)).unwrap(), 4);
        assert_eq!(hat_c(&rat(-1, 2)).unwrap(), 1);
        assert!(hat_c(&int(-2)).is_err());
        assert!(hat_c(&int(0)).is_err());
    }

    #[test]
    fn hat_c_matches_pochhammer_sign_pattern() {
        // sign((x+c)_ĉ) is (-1)^{ĉ-x} for x <= ĉ and +1 afterwards.
        for c in [rat(-7, 2), rat(-1, 2), rat(-11, 3), rat(-1, 5), rat(5, 2), rat(-9, 4)] {
            let ch = hat_c(&c).unwrap();
            for x in 0..=ch + 5 {
                let p = pochhammer(&(int(x) + &c), ch);
                let expect = if x <= ch && (ch - x) % 2 == 1 { -1 } else { 1 };
                let got = if p.is_positive() { 1 } else { -1 };
                assert_eq!(got, expect, "c = {c}, x = {x}");
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let f = pair(&[1], &[]);
        assert!(!is_admissible(&rat(-7, 2), &f).unwrap());
        assert_eq!(admissibility_witnesses(&rat(-7, 2), &f).unwrap(), vec![0, 3]);
        assert!(is_admissible(&rat(-1, 2), &f).unwrap());
        assert!(is_admissible(&rat(3, 2), &pair(&[1, 2], &[])).unwrap());
    }

    #[test]
    fn charlier_examples() {
        assert!(set(&[1, 2]).charlier_admissible());
        assert!(!set(&[1]).charlier_admissible());
        assert!(set(&[2, 3, 5, 6]).charlier_admissible());
        assert!(FiniteSet::empty().charlier_admissible());
        for s in [set(&[1, 2]), set(&[1]), set(&[2, 3, 5, 6]), set(&[1, 3, 4]), set(&[2, 3, 4, 5])] {
            assert_eq!(s.charlier_admissible(), s.charlier_sign_scan());
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_pairs(5, 4).len(), 385);
        assert!(enumerate_pairs(3, 0).is_empty());
        let e = enumerate_pairs(2, 2);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn validation() {
        assert!(FiniteSet::new(vec![0, 1]).is_err());
        assert!(FiniteSet::new(vec![2, 2]).is_err());
        assert_eq!(FiniteSet::new(vec![3, 1]).unwrap(), set(&[1, 3]));
        assert!(PairSpec::new(FiniteSet::empty(), FiniteSet::empty()).is_err());
    }

    #[test]
    fn gamma_sign_examples() {
        assert_eq!(gamma_sign(&rat(1, 2)).unwrap(), 1);
        assert_eq!(gamma_sign(&rat(-1, 2)).unwrap(), -1);
        assert_eq!(gamma_sign(&rat(-3, 2)).unwrap(), 1);
        assert!(gamma_sign(&int(-1)).is_err());
    }

    #[test]
    fn index_data_consistency() {
        let d = pair(&[1, 3], &[2]).index_data();
        assert_eq!(d.v, d.u + 3 + 1);
        assert_eq!(d.s, 2);
        assert_eq!(d.sigma_skip, set(&[d.u + 1, d.u + 3]));
    }
}
