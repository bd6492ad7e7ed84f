//! Exceptional Laguerre polynomials L_n^{α;F}: Wronskian-type determinants
//! of classical Laguerre polynomials, the second-order differential
//! operator, weight, norms, Darboux factorisation, alternative
//! representation, membership criterion and the limit from Meixner.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::carrier::Carrier;
use crate::classical_families::{laguerre, LaguerreParams, MeixnerParams};
use crate::error::{Error, Result};
use crate::exact_core::rational::{binomial_i, factorial, gen_binomial, int, neg_one_pow, pochhammer};
use crate::exact_core::{poly_det, sturm_nonneg_roots, Poly, PolyMatrix, RatFunc, Rational, SecondOrderDiffOp};
use crate::exceptional_meixner::{fit_constant, AltRep, InvarianceReport, MeixnerExcFamily};
use crate::numerics::{carrier_value, laguerre_inner, normalized, to_f64, Ctx, NumericCheck};
use crate::pair_combinatorics::{is_admissible, PairIndexData, PairSpec};

pub use crate::exact_core::DiffOperator;

fn fact(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u32))
}

fn lag(n: i64, alpha: &Rational) -> Poly {
    laguerre(n, &LaguerreParams::new(alpha.clone()))
}

#[derive(Clone, Debug)]
pub struct LaguerreExcFamily {
    pub alpha: Rational,
    pub pair: PairSpec,
    pub idx: PairIndexData,
    pub omega: Poly,
}

impl LaguerreExcFamily {
    /// The empty pair gives the classical family with Omega = 1.
    pub fn new(alpha: Rational, pair: PairSpec) -> Result<Self> {
        let idx = pair.index_data();
        let mut fam = LaguerreExcFamily { alpha, pair, idx, omega: Poly::one() };
        if !fam.pair.is_classical() {
            fam.omega = poly_det(&PolyMatrix::from_rows(fam.block_rows(fam.k()))?)?;
        }
        Ok(fam)
    }

    pub fn k(&self) -> i64 {
        self.pair.k()
    }

    pub fn u(&self) -> i64 {
        self.idx.u
    }

    /// Rows f in F1: derivatives of L_f^α; rows f in F2: L_f^{α+j}(-x).
    fn block_rows(&self, ncols: i64) -> Vec<Vec<Poly>> {
        let mut rows = Vec::new();
        for &f in self.pair.f1.elems() {
            let p = lag(f, &self.alpha);
            rows.push((0..ncols).map(|j| p.nth_derivative(j as usize)).collect());
        }
        for &f in self.pair.f2.elems() {
            rows.push((0..ncols).map(|j| lag(f, &(&self.alpha + int(j))).reflect()).collect());
        }
        rows
    }

    /// L_n^{α;F}; zero for n outside σ.
    pub fn l_exc(&self, n: i64) -> Result<Poly> {
        if self.pair.is_classical() {
            return Ok(lag(n, &self.alpha));
        }
        let k = self.k();
        let first = lag(n - self.u(), &self.alpha);
        let mut rows = vec![(0..=k).map(|j| first.nth_derivative(j as usize)).collect::<Vec<_>>()];
        rows.extend(self.block_rows(k + 1));
        poly_det(&PolyMatrix::from_rows(rows)?)
    }

    /// Closed-form leading coefficient of L_n for n in σ.
    pub fn leading_coefficient(&self, n: i64) -> Rational {
        let u = self.u();
        let mut num = neg_one_pow(n - u + self.pair.f1.sum());
        num *= int(self.pair.f1.vandermonde() * self.pair.f2.vandermonde());
        for f in self.pair.f1.elems() {
            num *= int(f - n + u);
        }
        let mut den = fact(n - u);
        for f in self.pair.f1.elems().iter().chain(self.pair.f2.elems()) {
            den *= fact(*f);
        }
        num / den
    }

    /// For F1 empty, Omega as det[(-1)^j (L_f^α)^{(j)}(-x)].
    pub fn omega_f2_variant(&self) -> Result<Option<Poly>> {
        if !self.pair.f1.is_empty() || self.pair.is_classical() {
            return Ok(None);
        }
        let k = self.k();
        let rows = self
            .pair
            .f2
            .elems()
            .iter()
            .map(|&f| {
                let p = lag(f, &self.alpha);
                (0..k).map(|j| p.nth_derivative(j as usize).reflect().scale(&neg_one_pow(j))).collect()
            })
            .collect();
        Ok(Some(poly_det(&PolyMatrix::from_rows(rows)?)?))
    }

    /// Checks L_u = (-1)^{C(s,2) + s k1} Omega^{α+s}_{F_⇓}.
    pub fn check_lowering(&self) -> Result<bool> {
        let (s, down) = self.pair.s_and_down();
        let low = LaguerreExcFamily::new(&self.alpha + int(s), down)?;
        let sign = neg_one_pow(binomial_i(s, 2) + s * self.pair.k1());
        Ok(self.l_exc(self.u())? == low.omega.scale(&sign))
    }

    /// Closed-form product for Omega(0).
    pub fn omega_at_zero(&self) -> Rational {
        let al = &self.alpha;
        let (k1, k2) = (self.pair.k1(), self.pair.k2());
        let mut num = Rational::one();
        for fj in [&self.pair.f1, &self.pair.f2] {
            let kj = fj.len() as i64;
            num *= int(fj.vandermonde());
            for i in 1..=kj {
                num *= pochhammer(&(al + int(i)), kj - i + 1);
            }
            for &f in fj.elems() {
                num *= pochhammer(&(al + int(kj + 1)), f - kj);
            }
        }
        let mut den = Rational::one();
        for f in self.pair.f1.elems().iter().chain(self.pair.f2.elems()) {
            den *= fact(*f);
        }
        for i in 1..=k1.min(k2) {
            den *= pochhammer(&(al + int(i)), k1 + k2 - 2 * i + 1);
        }
        for f in self.pair.f1.elems() {
            for g in self.pair.f2.elems() {
                num *= al + int(f + g + 1);
            }
        }
        neg_one_pow(binomial_i(k1, 2)) * num / den
    }

    /// D_F = x d^2 + h1 d + h0, with D_F L_n = -n L_n.
    pub fn operator(&self) -> Result<SecondOrderDiffOp> {
        if self.omega.is_zero() {
            return Err(Error::Precondition("Omega vanishes identically".into()));
        }
        let k = self.k();
        let al = &self.alpha;
        let om = &self.omega;
        let d1 = om.derivative();
        let d2 = d1.derivative();
        let x = Poly::x();
        let h1 = RatFunc::new(
            &(&Poly::linear(al + int(k + 1), int(-1)) * om) - &(&x * &d1).scale(&int(2)),
            om.clone(),
        )?;
        let h0 = RatFunc::new(
            &(&(&Poly::constant(int(-self.pair.k1() - self.u())) * om)
                + &(&Poly::linear(-(al + int(k)), int(1)) * &d1))
                + &(&x * &d2),
            om.clone(),
        )?;
        Ok(SecondOrderDiffOp::second_order(RatFunc::from_poly(x), h1, h0))
    }

    /// Cleared residual of D_F L_n + n L_n.
    pub fn eigen_residual(&self, op: &SecondOrderDiffOp, n: i64) -> Result<Poly> {
        Ok(op.eigen_residual(&self.l_exc(n)?, &int(-n)))
    }

    /// Omega (D_F L_n + n L_n), expanded directly from Omega and its
    /// derivatives; zero iff the eigen-identity holds.
    pub fn eigen_residual_cleared(&self, n: i64) -> Result<Poly> {
        let p = self.l_exc(n)?;
        let k = self.k();
        let al = &self.alpha;
        let om = &self.omega;
        let d1 = om.derivative();
        let d2 = d1.derivative();
        let x = Poly::x();
        let c2 = &x * om;
        let c1 = &(&Poly::linear(al + int(k + 1), int(-1)) * om) - &(&x * &d1).scale(&int(2));
        let c0 = &(&(&Poly::constant(int(n - self.pair.k1() - self.u())) * om)
            + &(&Poly::linear(-(al + int(k)), int(1)) * &d1))
            + &(&x * &d2);
        Ok(&(&(&c2 * &p.nth_derivative(2)) + &(&c1 * &p.derivative())) + &(&c0 * &p))
    }

    /// x^{α+k} e^{-x} / Omega(x)^2 as an exact carrier.
    pub fn weight(&self, x: &Rational) -> Result<Carrier> {
        if !x.is_positive() {
            return Err(Error::Domain(format!("weight needs x > 0, got {x}")));
        }
        let o = self.omega.eval(x);
        if o.is_zero() {
            return Err(Error::Pole(format!("Omega vanishes at x = {x}")));
        }
        let w = &Carrier::power(x, &(&self.alpha + int(self.k())))? * &Carrier::exp(&-x);
        Ok(w.scale(&(&o * &o).recip()))
    }

    /// Omega has no root in [0, oo).
    pub fn nonvanishing(&self) -> Result<bool> {
        Ok(sturm_nonneg_roots(&self.omega)? == 0)
    }

    /// Admissibility of (α+1, F).
    pub fn admissible(&self) -> Result<bool> {
        is_admissible(&(&self.alpha + int(1)), &self.pair)
    }

    /// pi_F(n-u) Gamma(n-u+α+1) / (n-u)!.
    pub fn norm_closed_form(&self, n: i64) -> Result<Carrier> {
        if !self.pair.in_sigma(n) {
            return Err(Error::Domain(format!("n = {n} is not in sigma for {}", self.pair)));
        }
        let y = n - self.u();
        let mut q = fact(y).recip();
        for f in self.pair.f1.elems() {
            q *= int(y - f);
        }
        for f in self.pair.f2.elems() {
            q *= &self.alpha + int(y + f + 1);
        }
        if q.is_zero() {
            return Ok(Carrier::rational(q));
        }
        Ok(Carrier::gamma(&(&self.alpha + int(y + 1)))?.scale(&q))
    }

    /// Squared weighted norm of L_n by quadrature against its closed form.
    pub fn norm_formula(&self, ctx: &mut Ctx, n: i64, rel_tol: f64) -> Result<NumericCheck> {
        if !self.admissible()? {
            return Err(Error::Refused(format!("alpha + 1 = {} and {} are not admissible", &self.alpha + int(1), self.pair)));
        }
        let expected = to_f64(&carrier_value(ctx, &self.norm_closed_form(n)?)?);
        let l = self.l_exc(n)?;
        let q = laguerre_inner(ctx, &l, &l, self, rel_tol * 1e-2)?;
        Ok(NumericCheck::new(q.value_f64(), expected, q.abs_error_estimate, rel_tol))
    }

    /// |<L_n, L_r>| / (|L_n| |L_r|) under the weight.
    pub fn orthogonality(&self, ctx: &mut Ctx, n: i64, r: i64, tol: f64) -> Result<f64> {
        let (pn, pr) = (self.l_exc(n)?, self.l_exc(r)?);
        let nr = laguerre_inner(ctx, &pn, &pr, self, tol)?.value_f64();
        let nn = laguerre_inner(ctx, &pn, &pn, self, tol)?.value_f64();
        let rr = laguerre_inner(ctx, &pr, &pr, self, tol)?.value_f64();
        Ok(normalized(nr, nn, rr))
    }

    /// Darboux factorisation removing the largest element of F2.
    pub fn darboux_pair(&self) -> Result<LaguerreDarboux> {
        let lower = LaguerreExcFamily::new(self.alpha.clone(), self.pair.drop_last_f2()?)?;
        let k = self.k();
        let om = &self.omega;
        let od = &lower.omega;
        let x = Poly::x();
        let a = DiffOperator::new(vec![
            RatFunc::new(&om.derivative() + om, od.clone())?,
            RatFunc::new(-om, od.clone())?,
        ]);
        let b = DiffOperator::new(vec![
            RatFunc::new(&(&x * &od.derivative()) - &od.scale(&(&self.alpha + int(k))), om.clone())?,
            RatFunc::new(-(&x * od), om.clone())?,
        ]);
        let f = self.pair.f2.max_elem();
        Ok(LaguerreDarboux {
            lambda_low: -(&self.alpha + int(f - lower.u() + 1)),
            lambda: -(&self.alpha + int(f - self.u() + 1)),
            index_shift: f - self.pair.k2() + 1,
            a,
            b,
            lower,
        })
    }

    /// Determinant on the involuted pair, equal to L_n up to a constant.
    pub fn alt_determinant(&self, n: i64) -> Result<Poly> {
        let g = self.pair.involute();
        let m = g.k();
        let nv = n - self.idx.v;
        let at = &self.alpha + int(self.pair.f1.max_elem() + self.pair.f2.max_elem() + 2);
        let top = &at + int(nv);
        let mut rows = vec![(0..=m)
            .map(|j| {
                let w = fact(j) * gen_binomial(&top, j as u32);
                (&Poly::x().pow((m - j) as u32) * &lag(nv, &(&at - int(j)))).scale(&w)
            })
            .collect::<Vec<_>>()];
        for &gg in g.f1.elems() {
            rows.push((0..=m).map(|j| lag(gg, &(int(j) - &at)).reflect()).collect());
        }
        for &gg in g.f2.elems() {
            let p = lag(gg, &-&at);
            rows.push((0..=m).map(|j| p.nth_derivative(j as usize)).collect());
        }
        poly_det(&PolyMatrix::from_rows(rows)?)
    }

    pub fn alt_representation(&self, n: i64) -> Result<AltRep> {
        if n < self.idx.v {
            return Err(Error::Precondition(format!("n = {n} is below v = {}", self.idx.v)));
        }
        fit_constant(self.alt_determinant(n)?, self.l_exc(n)?)
    }

    /// p lies in the span of the L_n exactly when
    /// (-2x p' + (x-α-k) p) Omega' + x p Omega'' is divisible by Omega.
    pub fn membership_test(&self, p: &Poly) -> bool {
        let x = Poly::x();
        let om = &self.omega;
        let t = &(&x * &p.derivative()).scale(&int(-2)) + &(&Poly::linear(-(&self.alpha + int(self.k())), int(1)) * p);
        let e = &(&t * &om.derivative()) + &(&(&x * p) * &om.derivative().derivative());
        om.divides(&e)
    }

    /// Omega_F^α(x) against ε Omega_G^{-α-M_{F1}-M_{F2}-2}(-x).
    pub fn invariance_conjecture(&self) -> Result<InvarianceReport> {
        let g = self.pair.involute();
        let ag = -&self.alpha - int(self.pair.f1.max_elem() + self.pair.f2.max_elem() + 2);
        let eps = neg_one_pow(self.u() + self.pair.k1() + self.pair.f1.sum() + g.f1.sum());
        let gfam = LaguerreExcFamily::new(ag, g)?;
        let rhs = gfam.omega.reflect().scale(&eps);
        let discrepancy = &self.omega - &rhs;
        Ok(InvarianceReport { lhs: self.omega.clone(), rhs, discrepancy })
    }

    /// Evaluates the Meixner-to-Laguerre limits at a = 1 - 2^{-t} for each
    /// t, at the points `xs`, exactly, and records the deviations.
    pub fn limit_from_meixner(&self, n: i64, ts: &[u32], xs: &[Rational]) -> Result<LimitReport> {
        if !self.pair.in_sigma(n) {
            return Err(Error::Domain(format!("n = {n} is not in sigma for {}", self.pair)));
        }
        let (k1, k2, k) = (self.pair.k1(), self.pair.k2(), self.k());
        let c = &self.alpha + int(1);
        let sgn_poly = neg_one_pow(binomial_i(k + 1, 2) + self.pair.f2.sum());
        let sgn_omega = neg_one_pow(self.pair.f1.sum());
        let beta = self.u() + k1 * (1 - k2);
        let lt = self.l_exc(n)?;
        let od = self.omega.derivative();
        let od2 = od.derivative();
        let mut rows = Vec::new();
        for &t in ts {
            let a = Rational::one() - Rational::new(1.into(), num_bigint::BigInt::from(2).pow(t));
            let one_m = Rational::one() - &a;
            let fam = MeixnerExcFamily::new(MeixnerParams::formal(a.clone(), c.clone())?, self.pair.clone())?;
            let m = fam.m_exc(n)?;
            let om = &fam.omega;
            let mut diff = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
            let mut size = diff.clone();
            for x in xs {
                let xa = x / &one_m;
                let scale_m = crate::exact_core::rational::pow_i(&(&a - int(1)), n - (k1 + 1) * k2);
                let pw = |e: i64| crate::exact_core::rational::pow_i(&one_m, e);
                let pairs = [
                    (scale_m * m.eval(&xa), &sgn_poly * lt.eval(x)),
                    (pw(beta) * om.eval(&xa), &sgn_omega * self.omega.eval(x)),
                    (
                        pw(beta - 1) * (om.eval(&(&xa + int(1))) - om.eval(&xa)),
                        &sgn_omega * od.eval(x),
                    ),
                    (
                        pw(beta - 2) * (om.eval(&(&xa + int(1))) - om.eval(&xa) * int(2) + om.eval(&(&xa - int(1)))),
                        &sgn_omega * od2.eval(x),
                    ),
                ];
                for (i, (val, target)) in pairs.into_iter().enumerate() {
                    diff[i] = diff[i].clone().max((val - &target).abs());
                    size[i] = size[i].clone().max(target.abs());
                }
            }
            let dev: Vec<f64> = diff
                .iter()
                .zip(&size)
                .map(|(d, s)| {
                    let s = if s.is_zero() { Rational::one() } else { s.clone() };
                    (d / s).to_f64().unwrap_or(f64::INFINITY)
                })
                .collect();
            rows.push(LimitRow { t, poly: dev[0], omega: dev[1], omega_diff: dev[2], omega_diff2: dev[3] });
        }
        Ok(LimitReport { n, rows })
    }
}

/// A_F, B_F and the lower family; B A = D_low + lambda_low and
/// A B = D + lambda.
#[derive(Clone, Debug)]
pub struct LaguerreDarboux {
    pub a: DiffOperator,
    pub b: DiffOperator,
    pub lower: LaguerreExcFamily,
    pub lambda_low: Rational,
    pub lambda: Rational,
    /// L_n = A(L^{low}_{n - index_shift}).
    pub index_shift: i64,
}

impl LaguerreDarboux {
    pub fn check_ba(&self) -> Result<bool> {
        Ok(self.b.compose(&self.a).same_as(&self.lower.operator()?.plus_identity(&self.lambda_low)))
    }

    pub fn check_ab(&self, upper: &LaguerreExcFamily) -> Result<bool> {
        Ok(self.a.compose(&self.b).same_as(&upper.operator()?.plus_identity(&self.lambda)))
    }

    pub fn check_on_cubic(&self, upper: &LaguerreExcFamily) -> Result<bool> {
        let p = Poly::from_coeffs(vec![Rational::new(1.into(), 5.into()), int(-2), int(0), int(1)]);
        let lp = RatFunc::from_poly(p.clone());
        let ba = self.b.compose(&self.a).apply(&p);
        let ab = self.a.compose(&self.b).apply(&p);
        let low = &self.lower.operator()?.apply(&p) + &lp.scale(&self.lambda_low);
        let up = &upper.operator()?.apply(&p) + &lp.scale(&self.lambda);
        Ok(ba.same_value(&low) && ab.same_value(&up))
    }

    pub fn check_intertwining(&self, upper: &LaguerreExcFamily, n: i64) -> Result<bool> {
        let lhs = RatFunc::from_poly(upper.l_exc(n)?);
        Ok(self.a.apply(&self.lower.l_exc(n - self.index_shift)?).same_value(&lhs))
    }
}

/// Deviation at one value of a: max |value - target| over the sample
/// points divided by max |target| (or by 1 when the target vanishes there).
#[derive(Clone, Debug)]
pub struct LimitRow {
    pub t: u32,
    pub poly: f64,
    pub omega: f64,
    pub omega_diff: f64,
    pub omega_diff2: f64,
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub n: i64,
    pub rows: Vec<LimitRow>,
}

impl LimitReport {
    /// Each deviation sequence is non-increasing (exact zeros allowed).
    pub fn decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| {
            let (p, q) = (&w[0], &w[1]);
            q.poly <= p.poly && q.omega <= p.omega && q.omega_diff <= p.omega_diff && q.omega_diff2 <= p.omega_diff2
        })
    }

    pub fn last(&self) -> Option<&LimitRow> {
        self.rows.last()
    }

    /// Ratio of the last two polynomial deviations. Close to 2^{-dt} for a
    /// first-order limit in 1 - a; `None` once the deviation is exactly 0.
    pub fn last_ratio(&self) -> Option<f64> {
        let n = self.rows.len();
        if n < 2 || self.rows[n - 2].poly == 0.0 {
            return None;
        }
        Some(self.rows[n - 1].poly / self.rows[n - 2].poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;

    fn fam(alpha: Rational, f1: &[i64], f2: &[i64]) -> LaguerreExcFamily {
        LaguerreExcFamily::new(alpha, PairSpec::from_vecs(f1.to_vec(), f2.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn first_examples() {
        let f = fam(rat(1, 3), &[1], &[]);
        assert_eq!(f.l_exc(0).unwrap(), Poly::constant(int(-1)));
        assert!(f.l_exc(1).unwrap().is_zero());
        assert_eq!(f.omega, Poly::linear(rat(4, 3), int(-1)));
        assert_eq!(f.omega_at_zero(), rat(4, 3));
        let g = fam(rat(1, 2), &[], &[1]);
        for n in 1..=3 {
            let p = g.l_exc(n).unwrap();
            assert_eq!(p.degree(), Some(n as usize));
            assert_eq!(p.lead(), Some(&g.leading_coefficient(n)));
        }
    }

    #[test]
    fn omega_variants() {
        let f = fam(rat(1, 2), &[1, 3], &[]);
        assert!(f.check_lowering().unwrap());
        assert_eq!(f.omega.degree(), Some((f.u() + 2) as usize));
        let g = fam(rat(-1, 3), &[], &[1, 2]);
        assert_eq!(g.omega_f2_variant().unwrap().unwrap(), g.omega);
        assert!(g.check_lowering().unwrap());
        for (a, f1, f2) in [(rat(1, 2), vec![1], vec![1]), (rat(-1, 2), vec![], vec![2]), (rat(2, 7), vec![1, 3], vec![2])] {
            let h = fam(a, &f1, &f2);
            assert_eq!(h.omega.eval(&int(0)), h.omega_at_zero());
        }
    }

    #[test]
    fn operator_examples() {
        let f = fam(rat(-3, 2), &[1], &[]);
        let op = f.operator().unwrap();
        for n in [0, 2, 3] {
            assert!(f.eigen_residual(&op, n).unwrap().is_zero());
        }
        let g = fam(rat(1, 3), &[1], &[2]);
        let op = g.operator().unwrap();
        for n in g.pair.sigma_upto(g.u() + 4) {
            assert!(g.eigen_residual(&op, n).unwrap().is_zero(), "n = {n}");
        }
        assert!(!op.eigen_residual(&g.l_exc(g.u()).unwrap(), &int(1)).is_zero());
        for n in g.pair.sigma(4) {
            assert!(g.eigen_residual_cleared(n).unwrap().is_zero());
        }
    }

    #[test]
    fn weight_and_nonvanishing() {
        let f = fam(rat(-3, 2), &[1], &[]);
        assert!(f.admissible().unwrap());
        assert!(f.nonvanishing().unwrap());
        assert!(&f.alpha + int(f.k()) > int(-1));
        for x in [rat(1, 2), int(1), int(10)] {
            assert_eq!(f.weight(&x).unwrap().sign(), 1);
        }
        let g = fam(rat(-7, 2), &[1], &[]);
        assert!(g.nonvanishing().unwrap());
        assert!(!g.admissible().unwrap());
        assert!(fam(int(2), &[1], &[]).weight(&int(3)).is_err());
    }

    #[test]
    fn norm_closed_form_example() {
        let f = fam(rat(-3, 2), &[1], &[]);
        // (-1) Gamma(-1/2) = 2 Gamma(1/2)
        let v = f.norm_closed_form(0).unwrap();
        assert_eq!(v, Carrier::gamma(&rat(1, 2)).unwrap().scale(&int(2)));
    }

    #[test]
    fn norms_by_quadrature() {
        let mut ctx = Ctx::new(crate::numerics::precision_bits(40)).unwrap();
        for (f, n) in [(fam(rat(-3, 2), &[1], &[]), 0), (fam(rat(-3, 2), &[1], &[]), 2), (fam(rat(1, 2), &[], &[1]), 1)] {
            let chk = f.norm_formula(&mut ctx, n, 1e-8).unwrap();
            assert!(chk.passed, "{} n={n}: {chk:?}", f.pair);
        }
        assert!((fam(rat(-3, 2), &[1], &[]).norm_formula(&mut ctx, 0, 1e-8).unwrap().numeric - 3.5449077018).abs() < 1e-9);
        assert!(matches!(fam(rat(-7, 2), &[1], &[]).norm_formula(&mut ctx, 0, 1e-8), Err(Error::Refused(_))));
        let f = fam(rat(1, 3), &[1, 2], &[1]);
        assert!(f.admissible().unwrap());
        let s = f.pair.sigma(3);
        assert!(f.orthogonality(&mut ctx, s[0], s[2], 1e-10).unwrap() < 1e-7);
    }

    #[test]
    fn darboux_examples() {
        for f in [fam(rat(1, 3), &[], &[1]), fam(rat(1, 3), &[1], &[2]), fam(rat(1, 3), &[], &[2])] {
            let d = f.darboux_pair().unwrap();
            assert!(d.check_ba().unwrap(), "{}", f.pair);
            assert!(d.check_ab(&f).unwrap(), "{}", f.pair);
            assert!(d.check_on_cubic(&f).unwrap());
            for n in f.pair.sigma(3) {
                assert!(d.check_intertwining(&f, n).unwrap());
            }
        }
        assert!(fam(rat(1, 3), &[1], &[]).darboux_pair().is_err());
    }

    #[test]
    fn alternative_representation_examples() {
        for (a, f1, f2, extra) in [(rat(-3, 2), vec![1], vec![], 1), (rat(1, 2), vec![], vec![1], 2), (rat(1, 3), vec![1, 2], vec![1], 0)] {
            let f = fam(a, &f1, &f2);
            for n in f.idx.v..=f.idx.v + extra {
                assert!(f.alt_representation(n).unwrap().matches, "{} n={n}", f.pair);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let f = fam(rat(-3, 2), &[1], &[]);
        assert!(f.membership_test(&f.l_exc(f.u()).unwrap()));
        let cubic = Poly::from_ints(&[3, -1, 4, 1]);
        assert!(f.membership_test(&(&(&f.omega * &f.omega) * &cubic)));
        assert!(!f.membership_test(&Poly::x()));
    }

    #[test]
    fn invariance_examples() {
        for a in [rat(1, 2), rat(-3, 2)] {
            assert!(fam(a, &[1], &[]).invariance_conjecture().unwrap().holds());
        }
        assert!(fam(rat(1, 3), &[1, 2], &[]).invariance_conjecture().unwrap().holds());
        assert!(fam(rat(5, 2), &[], &[1, 3]).invariance_conjecture().unwrap().holds());
    }

    #[test]
    fn limits() {
        let xs = [rat(1, 2), int(1), int(2)];
        let ts: Vec<u32> = (4..=10).collect();
        let classical = LaguerreExcFamily::new(rat(1, 2), PairSpec::classical()).unwrap();
        let r = classical.limit_from_meixner(2, &ts, &xs).unwrap();
        assert!(r.decreasing());
        assert!(r.last().unwrap().poly < 1e-2);
        let r = fam(rat(1, 2), &[1], &[]).limit_from_meixner(0, &ts, &xs).unwrap();
        assert!(r.rows.iter().all(|row| row.poly == 0.0));
        let r = fam(rat(1, 2), &[], &[1]).limit_from_meixner(2, &ts, &xs).unwrap();
        assert!(r.decreasing(), "{r:?}");
        assert!(r.last().unwrap().poly < 1e-2);
    }
}
