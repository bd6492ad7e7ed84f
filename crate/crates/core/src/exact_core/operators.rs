//! Linear operators with rational-function coefficients: difference
//! operators on integer shifts and differential operators on derivatives.

use std::collections::BTreeMap;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{int, Rational};
use crate::error::Result;

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    (a * b).exact_div(&g).expect("gcd divides the product")
}

fn clear(terms: &[(RatFunc, Poly)]) -> (Poly, Poly) {
    let mut l = Poly::one();
    for (c, _) in terms {
        l = lcm(&l, c.den());
    }
    let mut n = Poly::zero();
    for (c, p) in terms {
        let m = l.exact_div(c.den()).expect("den divides lcm");
        n = &n + &(&(&m * c.num()) * p);
    }
    (n, l)
}

/// `sum_s c_s(x) Sh_s`, where `(Sh_s f)(x) = f(x+s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperator {
    terms: BTreeMap<i64, RatFunc>,
}

/// Second-order difference operator `h_{-1} Sh_{-1} + h_0 Sh_0 + h_1 Sh_1`.
pub type ThreePointOp = ShiftOperator;
/// Two-term difference operator, as in a Darboux factorisation.
pub type FirstOrderDifferenceOp = ShiftOperator;

impl ShiftOperator {
    pub fn new(terms: impl IntoIterator<Item = (i64, RatFunc)>) -> Self {
        let mut m = BTreeMap::new();
        for (s, c) in terms {
            let e: &mut RatFunc = m.entry(s).or_insert_with(RatFunc::zero);
            *e = &*e + &c;
        }
        m.retain(|_, c: &mut RatFunc| !c.is_zero());
        ShiftOperator { terms: m }
    }

    pub fn three_point(hm1: RatFunc, h0: RatFunc, h1: RatFunc) -> Self {
        ShiftOperator::new([(-1, hm1), (0, h0), (1, h1)])
    }

    pub fn identity() -> Self {
        ShiftOperator::new([(0, RatFunc::constant(int(1)))])
    }

    pub fn coeff(&self, s: i64) -> RatFunc {
        self.terms.get(&s).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    /// Returns `(N, L)` with `self(p) = N / L` and `L` the lcm of the
    /// coefficient denominators.
    pub fn apply_cleared(&self, p: &Poly) -> (Poly, Poly) {
        let t: Vec<(RatFunc, Poly)> = self.terms.iter().map(|(s, c)| (c.clone(), p.shift_i(*s))).collect();
        clear(&t)
    }

    pub fn apply(&self, p: &Poly) -> RatFunc {
        let (n, l) = self.apply_cleared(p);
        RatFunc::new(n, l).expect("lcm of denominators is nonzero")
    }

    /// `L * (self(p) - lambda p)`; zero exactly when `p` is an eigenfunction
    /// with eigenvalue `lambda`.
    pub fn eigen_residual(&self, p: &Poly, lambda: &Rational) -> Poly {
        let (n, l) = self.apply_cleared(p);
        &n - &(&l * &p.scale(lambda))
    }

    /// `self o other`.
    pub fn compose(&self, other: &ShiftOperator) -> ShiftOperator {
        let mut out = Vec::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.push((s + t, a * &b.shift(&int(*s))));
            }
        }
        ShiftOperator::new(out)
    }

    pub fn plus_identity(&self, lambda: &Rational) -> ShiftOperator {
        let mut v: Vec<(i64, RatFunc)> = self.terms.iter().map(|(s, c)| (*s, c.clone())).collect();
        v.push((0, RatFunc::constant(lambda.clone())));
        ShiftOperator::new(v)
    }

    /// Coefficientwise equality of the two operators.
    pub fn same_as(&self, other: &ShiftOperator) -> bool {
        let keys: std::collections::BTreeSet<i64> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter().all(|s| self.coeff(s).same_value(&other.coeff(s)))
    }
}

/// `sum_j c_j(x) d^j/dx^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    coeffs: Vec<RatFunc>,
}

/// `a2 d^2 + a1 d + a0`.
pub type SecondOrderDiffOp = DiffOperator;

impl DiffOperator {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOperator { coeffs }
    }

    pub fn second_order(a2: RatFunc, a1: RatFunc, a0: RatFunc) -> Self {
        DiffOperator::new(vec![a0, a1, a2])
    }

    pub fn coeff(&self, j: usize) -> RatFunc {
        self.coeffs.get(j).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn apply_cleared(&self, p: &Poly) -> (Poly, Poly) {
        let t: Vec<(RatFunc, Poly)> =
            self.coeffs.iter().enumerate().map(|(j, c)| (c.clone(), p.nth_derivative(j))).collect();
        clear(&t)
    }

    pub fn apply(&self, p: &Poly) -> RatFunc {
        let (n, l) = self.apply_cleared(p);
        RatFunc::new(n, l).expect("nonzero denominator")
    }

    pub fn eigen_residual(&self, p: &Poly, lambda: &Rational) -> Poly {
        let (n, l) = self.apply_cleared(p);
        &n - &(&l * &p.scale(lambda))
    }

    /// `self o other`, expanded with the Leibniz rule.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let n = self.coeffs.len() + other.coeffs.len();
        let mut out = vec![RatFunc::zero(); n.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                // d^i (b f^(j)) = sum_l C(i,l) b^(i-l) f^(j+l)
                let mut bd = b.clone();
                let mut ders = vec![bd.clone()];
                for _ in 0..i {
                    bd = bd.derivative();
                    ders.push(bd.clone());
                }
                for l in 0..=i {
                    let binom = super::rational::binomial_i(i as i64, l as i64);
                    let term = (a * &ders[i - l]).scale(&int(binom));
                    out[j + l] = &out[j + l] + &term;
                }
            }
        }
        DiffOperator::new(out)
    }

    pub fn plus_identity(&self, lambda: &Rational) -> DiffOperator {
        let mut c = self.coeffs.clone();
        if c.is_empty() {
            c.push(RatFunc::zero());
        }
        c[0] = &c[0] + &RatFunc::constant(lambda.clone());
        DiffOperator::new(c)
    }

    pub fn same_as(&self, other: &DiffOperator) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|j| self.coeff(j).same_value(&other.coeff(j)))
    }
}

/// Helper for building `p / q` coefficients.
pub fn ratfunc(num: Poly, den: Poly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}
