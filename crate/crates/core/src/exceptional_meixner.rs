//! Exceptional Meixner polynomials m_n^{a,c;F} built from Casorati
//! determinants of classical Meixner polynomials, together with the
//! associated Casoratians, dual family, difference operator, measures,
//! Darboux factorisation and alternative representation.

use num_traits::{One, Zero};

use crate::carrier::Carrier;
use crate::classical_families::{meixner, meixner_op, MeixnerParams};
use crate::error::{Error, Result};
use crate::exact_core::rational::{binomial_i, ceil_i64, factorial, int, neg_one_pow, pow_i, sign_of};
use crate::exact_core::{poly_det, FirstOrderDifferenceOp, Poly, PolyMatrix, RatFunc, Rational, ThreePointOp};
use crate::numerics::{carrier_value, discrete_inner, normalized, to_f64, Ctx, DiscreteMeasure, NumericCheck};
use crate::pair_combinatorics::{gamma_sign, hat_c, is_admissible, PairIndexData, PairSpec};

pub use crate::exact_core::ShiftOperator;

fn fact(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u32))
}

/// (q)_j as the carrier ratio Gamma(q+j)/Gamma(q). For rational `q` the
/// symbolic parts cancel and the result must be rational.
fn poch_by_gammas(q: &Rational, j: i64) -> Result<Rational> {
    let r = &Carrier::gamma(&(q + int(j)))? / &Carrier::gamma(q)?;
    r.as_rational()
        .cloned()
        .ok_or_else(|| Error::Inconsistency(format!("Gamma carriers did not cancel in ({q})_{j}")))
}

#[derive(Clone, Debug)]
pub struct MeixnerExcFamily {
    pub params: MeixnerParams,
    pub pair: PairSpec,
    pub idx: PairIndexData,
    pub omega: Poly,
    pub lambda: Poly,
    f1_rows: Vec<Poly>,
    f2_rows: Vec<Poly>,
}

impl MeixnerExcFamily {
    /// Builds Omega and Lambda. The empty pair gives the classical family
    /// (Omega = 1, Lambda = 0), which is only used as a Darboux base.
    pub fn new(params: MeixnerParams, pair: PairSpec) -> Result<Self> {
        let inv = params.inverted();
        let f1_rows = pair.f1.elems().iter().map(|&f| meixner(f, &params)).collect();
        let f2_rows = pair.f2.elems().iter().map(|&f| meixner(f, &inv)).collect();
        let idx = pair.index_data();
        let mut fam = MeixnerExcFamily {
            params,
            pair,
            idx,
            omega: Poly::one(),
            lambda: Poly::zero(),
            f1_rows,
            f2_rows,
        };
        if !fam.pair.is_classical() {
            let k = fam.k();
            let cols: Vec<i64> = (0..k).collect();
            fam.omega = fam.casorati(&cols)?;
            let mut lcols: Vec<i64> = (0..k - 1).collect();
            lcols.push(k);
            fam.lambda = fam.casorati(&lcols)?;
        }
        Ok(fam)
    }

    pub fn k(&self) -> i64 {
        self.pair.k()
    }

    pub fn u(&self) -> i64 {
        self.idx.u
    }

    /// Rows f in F1: m_f(x+j); rows f in F2: m_f^{1/a,c}(x+j)/a^j.
    fn block_rows(&self, cols: &[i64]) -> Vec<Vec<Poly>> {
        let ainv = self.params.a.recip();
        let mut rows = Vec::new();
        for p in &self.f1_rows {
            rows.push(cols.iter().map(|&j| p.shift_i(j)).collect());
        }
        for p in &self.f2_rows {
            rows.push(cols.iter().map(|&j| p.shift_i(j).scale(&pow_i(&ainv, j))).collect());
        }
        rows
    }

    fn casorati(&self, cols: &[i64]) -> Result<Poly> {
        poly_det(&PolyMatrix::from_rows(self.block_rows(cols))?)
    }

    /// m_n^{a,c;F}: the (k+1)x(k+1) Casorati determinant with first row
    /// m_{n-u}(x+j). Zero for n outside σ.
    pub fn m_exc(&self, n: i64) -> Result<Poly> {
        if self.pair.is_classical() {
            return Ok(meixner(n, &self.params));
        }
        let k = self.k();
        let cols: Vec<i64> = (0..=k).collect();
        let first = meixner(n - self.u(), &self.params);
        let mut rows = vec![cols.iter().map(|&j| first.shift_i(j)).collect::<Vec<_>>()];
        rows.extend(self.block_rows(&cols));
        poly_det(&PolyMatrix::from_rows(rows)?)
    }

    /// The same polynomial from the column-combined determinant with
    /// entries m_{n-u-j}^{a,c+j}, m_{f-j}^{a,c+j} and
    /// ((1-a)/a)^j m_f^{1/a,c+j}.
    pub fn m_exc_combined(&self, n: i64) -> Result<Poly> {
        let k = self.k();
        let mut rows = vec![(0..=k).map(|j| meixner(n - self.u() - j, &self.shifted_c(j))).collect()];
        rows.extend(self.combined_block(k + 1));
        poly_det(&PolyMatrix::from_rows(rows)?)
    }

    /// Omega from the column-combined determinant.
    pub fn omega_combined(&self) -> Result<Poly> {
        if self.pair.is_classical() {
            return Ok(Poly::one());
        }
        poly_det(&PolyMatrix::from_rows(self.combined_block(self.k()))?)
    }

    fn shifted_c(&self, j: i64) -> MeixnerParams {
        self.params.with_c(&self.params.c + int(j))
    }

    fn combined_block(&self, ncols: i64) -> Vec<Vec<Poly>> {
        let one = Rational::one();
        let a = &self.params.a;
        let ratio = (&one - a) / a;
        let mut rows = Vec::new();
        for &f in self.pair.f1.elems() {
            rows.push((0..ncols).map(|j| meixner(f - j, &self.shifted_c(j))).collect());
        }
        for &f in self.pair.f2.elems() {
            rows.push(
                (0..ncols)
                    .map(|j| meixner(f, &self.shifted_c(j).inverted()).scale(&pow_i(&ratio, j)))
                    .collect(),
            );
        }
        rows
    }

    /// Closed-form leading coefficient of m_n for n in σ.
    pub fn leading_coefficient(&self, n: i64) -> Rational {
        let (k1, k2) = (self.pair.k1(), self.pair.k2());
        let a = &self.params.a;
        let u = self.u();
        let e = k2 * (k1 + 1);
        let mut num = neg_one_pow(e) * pow_i(&(a - Rational::one()), e);
        num *= int(self.pair.f1.vandermonde() * self.pair.f2.vandermonde());
        for f in self.pair.f1.elems() {
            num *= int(f - n + u);
        }
        let mut den = pow_i(a, k2 * k1 + binomial_i(k2 + 1, 2)) * fact(n - u);
        for f in self.pair.f1.elems().iter().chain(self.pair.f2.elems()) {
            den *= fact(*f);
        }
        num / den
    }

    /// Closed-form leading coefficient of Omega (degree u + k1). The factor
    /// is (1-a)^{k1 k2}; the Casorati determinant disagrees with (a-1)^{k1 k2}
    /// whenever k1 k2 is odd.
    pub fn omega_leading_coefficient(&self) -> Rational {
        let (k1, k2, k) = (self.pair.k1(), self.pair.k2(), self.k());
        let a = &self.params.a;
        let mut num = int(self.pair.f1.vandermonde() * self.pair.f2.vandermonde());
        num *= pow_i(a, binomial_i(k2, 2) - k2 * (k - 1));
        num *= pow_i(&(Rational::one() - a), k1 * k2);
        let mut den = Rational::one();
        for f in self.pair.f1.elems().iter().chain(self.pair.f2.elems()) {
            den *= fact(*f);
        }
        num / den
    }

    /// Checks m_u = ((1-a)/a)^{s k2} Omega^{a,c+s}_{F_⇓}.
    pub fn check_lowering(&self) -> Result<bool> {
        let (s, down) = self.pair.s_and_down();
        let low = MeixnerExcFamily::new(self.shifted_c(s), down)?;
        let a = &self.params.a;
        let factor = pow_i(&((Rational::one() - a) / a), s * self.pair.k2());
        Ok(self.m_exc(self.u())? == low.omega.scale(&factor))
    }

    fn scalar_det(&self, n: i64, cols: &[i64]) -> Result<Rational> {
        let inv = self.params.inverted();
        let mut rows = Vec::new();
        for &f in self.pair.f1.elems() {
            rows.push(cols.iter().map(|&j| Poly::constant(meixner(n + j, &self.params).eval(&int(f)))).collect());
        }
        for &f in self.pair.f2.elems() {
            rows.push(
                cols.iter()
                    .map(|&j| Poly::constant(meixner(n + j, &inv).eval(&int(f)) * neg_one_pow(j)))
                    .collect(),
            );
        }
        let d = poly_det(&PolyMatrix::from_rows(rows)?)?;
        Ok(d.coeff(0) * neg_one_pow(n * self.pair.k2()))
    }

    /// (Phi_n, Psi_n): Casorati-type determinants in the degree variable.
    pub fn phi_psi(&self, n: i64) -> Result<(Rational, Rational)> {
        let k = self.k();
        let cols: Vec<i64> = (0..k).collect();
        let mut lcols: Vec<i64> = (0..k - 1).collect();
        lcols.push(k);
        Ok((self.scalar_det(n, &cols)?, self.scalar_det(n, &lcols)?))
    }

    pub fn duality_constants(&self) -> DualityConstants<'_> {
        DualityConstants { fam: self }
    }

    /// Dual polynomial q_n: the (k+1)x(k+1) determinant divided exactly by
    /// (-1)^{n k2} prod(x-f-u) prod(x+c+f-u).
    pub fn q_dual(&self, n: i64) -> Result<Poly> {
        let k = self.k();
        let u = self.u();
        let inv = self.params.inverted();
        let mut rows = vec![(0..=k).map(|j| meixner(n + j, &self.params).shift_i(-u)).collect::<Vec<_>>()];
        for &f in self.pair.f1.elems() {
            rows.push((0..=k).map(|j| Poly::constant(meixner(n + j, &self.params).eval(&int(f)))).collect());
        }
        for &f in self.pair.f2.elems() {
            rows.push(
                (0..=k)
                    .map(|j| Poly::constant(meixner(n + j, &inv).eval(&int(f)) * neg_one_pow(j)))
                    .collect(),
            );
        }
        let num = poly_det(&PolyMatrix::from_rows(rows)?)?;
        let mut den = Poly::constant(neg_one_pow(n * self.pair.k2()));
        for &f in self.pair.f1.elems() {
            den = &den * &Poly::linear(int(-f - u), int(1));
        }
        for &f in self.pair.f2.elems() {
            den = &den * &Poly::linear(&self.params.c + int(f - u), int(1));
        }
        num.exact_div(&den)
            .map_err(|_| Error::Inconsistency(format!("dual polynomial q_{n} is not a polynomial for {}", self.pair)))
    }

    /// q_u(v) = kappa xi_u zeta_v m_v(u), exactly.
    pub fn duality_check(&self, u: i64, v: i64) -> Result<bool> {
        if u < 0 {
            return Err(Error::Domain(format!("u = {u} is negative")));
        }
        if !self.pair.in_sigma(v) {
            return Err(Error::Domain(format!("v = {v} is not in sigma for {}", self.pair)));
        }
        let dc = self.duality_constants();
        let lhs = self.q_dual(u)?.eval(&int(v));
        let rhs = dc.kappa()? * dc.xi(u)? * dc.zeta(v)? * self.m_exc(v)?.eval(&int(u));
        Ok(lhs == rhs)
    }

    /// The second-order difference operator D_F with D_F m_n = n m_n.
    pub fn operator(&self) -> Result<ThreePointOp> {
        if self.pair.is_classical() {
            return Ok(meixner_op(&self.params));
        }
        if self.omega.is_zero() {
            return Err(Error::Precondition("Omega vanishes identically".into()));
        }
        let a = &self.params.a;
        let c = &self.params.c;
        let k = self.k();
        let am1 = a - Rational::one();
        let om = &self.omega;
        let om1 = om.shift_i(1);
        let hm1 = RatFunc::new(&Poly::x() * &om1, om.scale(&am1))?;
        let g = RatFunc::new(
            &Poly::linear(c + int(k - 1), int(1)).scale(a) * &self.lambda,
            om.scale(&am1),
        )?;
        let base = Poly::linear(
            -((Rational::one() + a) * int(k) + a * c) / &am1 + int(self.u()),
            -(Rational::one() + a) / &am1,
        );
        let h0 = &RatFunc::from_poly(base) + &(&g.shift(&int(1)) - &g);
        let h1 = RatFunc::new(&Poly::linear(c + int(k), int(1)).scale(a) * om, om1.scale(&am1))?;
        Ok(ThreePointOp::three_point(hm1, h0, h1))
    }

    /// Cleared-denominator residual of D_F m_n - n m_n (zero iff exact).
    pub fn eigen_residual(&self, op: &ThreePointOp, n: i64) -> Result<Poly> {
        Ok(op.eigen_residual(&self.m_exc(n)?, &int(n)))
    }

    /// D_F m_n - n m_n multiplied through by (a-1) Omega(x) Omega(x+1),
    /// expanded directly from the coefficients; zero iff the eigen-identity
    /// holds. Much cheaper than the generic operator path.
    pub fn eigen_residual_cleared(&self, n: i64) -> Result<Poly> {
        let p = self.m_exc(n)?;
        if self.pair.is_classical() {
            return Ok(meixner_op(&self.params).eigen_residual(&p, &int(n)));
        }
        let a = &self.params.a;
        let c = &self.params.c;
        let k = self.k();
        let am1 = a - Rational::one();
        let om = &self.omega;
        let om1 = om.shift_i(1);
        let la = &self.lambda;
        let la1 = la.shift_i(1);
        let x = Poly::x();
        let xc = Poly::linear(c + int(k), int(1)).scale(a);
        let xc1 = Poly::linear(c + int(k - 1), int(1)).scale(a);
        let base = Poly::linear(
            -((Rational::one() + a) * int(k) + a * c) + &am1 * int(self.u()) - &am1 * int(n),
            -(Rational::one() + a),
        );
        let oo1 = om * &om1;
        let mid = &(&(&base * &oo1) + &(&(&xc * &la1) * om)) - &(&(&xc1 * la) * &om1);
        let lo = &(&x * &om1) * &om1;
        let hi = &(&xc * om) * om;
        Ok(&(&(&lo * &p.shift_i(-1)) + &(&mid * &p)) + &(&hi * &p.shift_i(1)))
    }

    /// Mass of rho^F at an integer x >= u.
    pub fn rho_mass(&self, x: i64) -> Result<Carrier> {
        let u = self.u();
        if x < u {
            return Err(Error::Domain(format!("rho^F is supported on x >= {u}")));
        }
        let y = x - u;
        let c = &self.params.c;
        let mut q = pow_i(&self.params.a, y) / fact(y);
        for f in self.pair.f1.elems() {
            q *= int(y - f);
        }
        for f in self.pair.f2.elems() {
            q *= c + int(y + f);
        }
        if q.is_zero() {
            return Ok(Carrier::rational(q));
        }
        Ok(Carrier::gamma(&(c + int(y)))?.scale(&q))
    }

    /// Mass of omega_{a,c}^F at an integer x >= 0.
    pub fn omega_mass(&self, x: i64) -> Result<Carrier> {
        let den = self.omega.eval(&int(x)) * self.omega.eval(&int(x + 1));
        if den.is_zero() {
            return Err(Error::Pole(format!("Omega vanishes at x = {} or x = {}", x, x + 1)));
        }
        let q = pow_i(&self.params.a, x) / (fact(x) * den);
        Ok(Carrier::gamma(&(&self.params.c + int(x + self.k())))?.scale(&q))
    }

    /// Exact sign of the omega mass at x.
    pub fn omega_mass_sign(&self, x: i64) -> Result<i32> {
        Ok(self.omega_mass(x)?.sign())
    }

    /// Gamma(n+c+k) Omega(n) Omega(n+1) > 0 for n = 0..=n_max.
    pub fn sign_condition(&self, n_max: i64) -> Result<bool> {
        let c = &self.params.c;
        for n in 0..=n_max {
            let s = sign_of(&(self.omega.eval(&int(n)) * self.omega.eval(&int(n + 1))));
            if s * gamma_sign(&(c + int(n + self.k())))? <= 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Scan length for [`Self::sign_condition`]: beyond it Omega has no
    /// real roots and Gamma(n+c+k) is positive, so the finite scan decides
    /// the infinite condition.
    pub fn sign_condition_bound(&self) -> Result<i64> {
        let spec_bound = self.pair.f1.max_elem() + hat_c(&self.params.c)? + self.k() + 2;
        let root_bound = ceil_i64(&self.omega.root_bound());
        let gamma_bound = ceil_i64(&-(&self.params.c + int(self.k()))) + 1;
        Ok(spec_bound.max(root_bound).max(gamma_bound))
    }

    /// The constant a^{k1-2k} / (1-a)^{c+2r-2u-k} rho^F(r) that the
    /// squared omega-norm of m_r must equal.
    pub fn norm_closed_form(&self, r: i64) -> Result<Carrier> {
        let (k1, k) = (self.pair.k1(), self.k());
        let a = &self.params.a;
        let e = &self.params.c + int(2 * r - 2 * self.u() - k);
        let w = Carrier::power(&(Rational::one() - a), &-e)?;
        Ok(&(&w * &self.rho_mass(r)?) * &Carrier::rational(pow_i(a, k1 - 2 * k)))
    }

    /// The Darboux factorisation obtained by removing the largest element
    /// of F2.
    pub fn darboux_pair(&self) -> Result<MeixnerDarboux> {
        let low_pair = self.pair.drop_last_f2()?;
        let low = MeixnerExcFamily::new(self.params.clone(), low_pair)?;
        let a = &self.params.a;
        let c = &self.params.c;
        let k = self.k();
        let am1 = a - Rational::one();
        let om = &self.omega;
        let ol = &low.omega;
        let ol1 = ol.shift_i(1);
        let op_a = FirstOrderDifferenceOp::new([
            (0, RatFunc::new(om.shift_i(1), ol1.scale(a))?),
            (1, RatFunc::new(-om, ol1.clone())?),
        ]);
        let op_b = FirstOrderDifferenceOp::new([
            (-1, RatFunc::new(&Poly::x().scale(a) * &ol1, om.scale(&am1))?),
            (0, RatFunc::new(-(&Poly::linear(c + int(k - 1), int(1)).scale(a) * ol), om.scale(&am1))?),
        ]);
        let f = self.pair.f2.max_elem();
        Ok(MeixnerDarboux {
            lambda_low: c + int(f - low.u()),
            lambda: c + int(f - self.u()),
            index_shift: f - self.pair.k2() + 1,
            a: op_a,
            b: op_b,
            lower: low,
        })
    }

    /// Determinant built on the involuted pair G = (I(F1), I(F2)), equal
    /// to m_n up to a constant factor for n >= v.
    pub fn alt_determinant(&self, n: i64) -> Result<Poly> {
        let g = self.pair.involute();
        let m = g.k();
        let v = self.idx.v;
        let a = &self.params.a;
        let ct = &self.params.c + int(self.pair.f1.max_elem() + self.pair.f2.max_elem() + 2);
        let top = MeixnerParams::formal(a.clone(), ct.clone())?;
        let refl = MeixnerParams::formal(a.clone(), int(2) - &ct)?;
        let refl_inv = refl.inverted();
        let base = meixner(n - v, &top);
        let mut rows = Vec::new();
        rows.push(
            (0..=m)
                .map(|j| {
                    // r_j(x) = (ct + x - m)_{m-j} (x - j + 1)_j
                    let r = &Poly::linear(&ct - int(m), int(1)).pochhammer((m - j) as u32)
                        * &Poly::linear(int(1 - j), int(1)).pochhammer(j as u32);
                    &r * &base.shift_i(-j)
                })
                .collect::<Vec<_>>(),
        );
        let mx = Poly::linear(int(-1), int(-1));
        for &gg in g.f1.elems() {
            let p = meixner(gg, &refl).compose(&mx);
            rows.push((0..=m).map(|j| p.shift_i(-j).scale(&pow_i(a, j))).collect());
        }
        for &gg in g.f2.elems() {
            let p = meixner(gg, &refl_inv).compose(&mx);
            rows.push((0..=m).map(|j| p.shift_i(-j)).collect());
        }
        // p(-x-1+j) = p∘(-x-1) evaluated at x - j
        poly_det(&PolyMatrix::from_rows(rows)?)
    }

    /// Alternative representation with its fitted constant.
    pub fn alt_representation(&self, n: i64) -> Result<AltRep> {
        if n < self.idx.v {
            return Err(Error::Precondition(format!("n = {n} is below v = {}", self.idx.v)));
        }
        fit_constant(self.alt_determinant(n)?, self.m_exc(n)?)
    }

    /// Omega_F^{a,c}(x) against the reflected Casoratian of the involuted
    /// pair with parameter -c - M_{F1} - M_{F2}.
    pub fn invariance_conjecture(&self) -> Result<InvarianceReport> {
        let g = self.pair.involute();
        let a = &self.params.a;
        let cg = -&self.params.c - int(self.pair.f1.max_elem() + self.pair.f2.max_elem());
        let gfam = MeixnerExcFamily::new(MeixnerParams::formal(a.clone(), cg)?, g)?;
        let ua = |p: &PairSpec| -> Rational {
            let (k1, k2, k) = (p.k1(), p.k2(), p.k());
            pow_i(a, binomial_i(k2, 2) - k2 * (k - 1)) * pow_i(&(Rational::one() - a), k1 * k2)
        };
        let factor = neg_one_pow(self.u() + self.pair.k1()) * ua(&self.pair) / ua(&gfam.pair);
        let rhs = gfam.omega.reflect().scale(&factor);
        let discrepancy = &self.omega - &rhs;
        Ok(InvarianceReport { lhs: self.omega.clone(), rhs, discrepancy })
    }

    /// omega_{a,c}^F as a summable measure on x >= 0.
    pub fn omega_measure(&self) -> Result<DiscreteMeasure> {
        Ok(DiscreteMeasure {
            a: self.params.a.clone(),
            g: &self.params.c + int(self.k()),
            offset: 0,
            num: Poly::one(),
            den: &self.omega * &self.omega.shift_i(1),
            crossover: self.pair.f1.max_elem() + hat_c(&self.params.c)? + self.k() + 8,
        })
    }

    /// rho^F as a summable measure on x >= u.
    pub fn rho_measure(&self) -> Result<DiscreteMeasure> {
        let u = self.u();
        let mut num = Poly::one();
        for &f in self.pair.f1.elems() {
            num = &num * &Poly::linear(int(-u - f), int(1));
        }
        for &f in self.pair.f2.elems() {
            num = &num * &Poly::linear(&self.params.c + int(f - u), int(1));
        }
        Ok(DiscreteMeasure {
            a: self.params.a.clone(),
            g: self.params.c.clone(),
            offset: u,
            num,
            den: Poly::one(),
            crossover: self.pair.f1.max_elem() + hat_c(&self.params.c)? + self.k() + 8,
        })
    }

    fn require_admissible(&self) -> Result<()> {
        if !self.admissible()? {
            return Err(Error::Refused(format!(
                "c = {} and {} are not admissible; the measure may be signed",
                self.params.c, self.pair
            )));
        }
        Ok(())
    }

    /// Squared omega-norm of m_r by certified summation against its
    /// closed form.
    pub fn norm_identity(&self, ctx: &mut Ctx, r: i64, rel_tol: f64) -> Result<NumericCheck> {
        self.require_admissible()?;
        if !self.pair.in_sigma(r) {
            return Err(Error::Domain(format!("r = {r} is not in sigma for {}", self.pair)));
        }
        let m = self.m_exc(r)?;
        let s = discrete_inner(ctx, &m, &m, &self.omega_measure()?, rel_tol * 1e-3)?;
        let expected = to_f64(&carrier_value(ctx, &self.norm_closed_form(r)?)?);
        Ok(NumericCheck::new(s.value_f64(), expected, s.tail_bound, rel_tol))
    }

    /// |<m_n, m_r>_omega| / (|m_n| |m_r|).
    pub fn orthogonality(&self, ctx: &mut Ctx, n: i64, r: i64, rel_tol: f64) -> Result<f64> {
        let w = self.omega_measure()?;
        let (pn, pr) = (self.m_exc(n)?, self.m_exc(r)?);
        let nr = discrete_inner(ctx, &pn, &pr, &w, rel_tol)?.value_f64();
        let nn = discrete_inner(ctx, &pn, &pn, &w, rel_tol)?.value_f64();
        let rr = discrete_inner(ctx, &pr, &pr, &w, rel_tol)?.value_f64();
        Ok(normalized(nr, nn, rr))
    }

    /// |<q_n, q_r>_rho| / (|q_n| |q_r|).
    pub fn dual_orthogonality(&self, ctx: &mut Ctx, n: i64, r: i64, rel_tol: f64) -> Result<f64> {
        let w = self.rho_measure()?;
        let (pn, pr) = (self.q_dual(n)?, self.q_dual(r)?);
        let nr = discrete_inner(ctx, &pn, &pr, &w, rel_tol)?.value_f64();
        let nn = discrete_inner(ctx, &pn, &pn, &w, rel_tol)?.value_f64();
        let rr = discrete_inner(ctx, &pr, &pr, &w, rel_tol)?.value_f64();
        Ok(normalized(nr, nn, rr))
    }

    /// sign((-1)^k Gamma(n+c) Phi_n Phi_{n+1}) = sign(Gamma(n+c+k) Omega(n) Omega(n+1)).
    pub fn phi_sign_matches(&self, n: i64) -> Result<bool> {
        let c = &self.params.c;
        let (p0, _) = self.phi_psi(n)?;
        let (p1, _) = self.phi_psi(n + 1)?;
        let lhs = neg_one_pow(self.k()) * p0 * p1;
        let l = sign_of(&lhs) * gamma_sign(&(c + int(n)))?;
        let rhs = self.omega.eval(&int(n)) * self.omega.eval(&int(n + 1));
        let r = sign_of(&rhs) * gamma_sign(&(c + int(n + self.k())))?;
        Ok(l == r)
    }

    /// True when c and F are admissible.
    pub fn admissible(&self) -> Result<bool> {
        is_admissible(&self.params.c, &self.pair)
    }
}

/// kappa, xi_u and zeta_v of the degree/argument duality.
pub struct DualityConstants<'a> {
    fam: &'a MeixnerExcFamily,
}

impl DualityConstants<'_> {
    pub fn kappa(&self) -> Result<Rational> {
        let p = &self.fam.pair;
        let (k1, k2) = (p.k1(), p.k2());
        let a = &self.fam.params.a;
        let c1 = &self.fam.params.c + int(1);
        let s2 = p.f2.sum();
        let mut num = neg_one_pow(s2) * pow_i(a, k2 * (k1 + 1) + s2);
        let mut den = pow_i(&(a - Rational::one()), k2 * (k1 + 1));
        for &f in p.f1.elems().iter().chain(p.f2.elems()) {
            num *= fact(f);
            den *= poch_by_gammas(&c1, f - 1)?;
        }
        Ok(num / den)
    }

    pub fn xi(&self, u: i64) -> Result<Rational> {
        let p = &self.fam.pair;
        let (k1, k) = (p.k1(), p.k());
        let a = &self.fam.params.a;
        let c1 = &self.fam.params.c + int(1);
        let mut num = pow_i(a, (k1 + 1) * u);
        let mut den = pow_i(&(a - Rational::one()), (k + 1) * u);
        for i in 0..=k {
            num *= poch_by_gammas(&c1, u + i - 1)?;
            den *= fact(u + i);
        }
        Ok(num / den)
    }

    pub fn zeta(&self, v: i64) -> Result<Rational> {
        let p = &self.fam.pair;
        let u = self.fam.u();
        let a = &self.fam.params.a;
        let c = &self.fam.params.c;
        let num = pow_i(&(a - Rational::one()), v) * fact(v - u);
        let mut den = pow_i(a, v) * poch_by_gammas(&(c + int(1)), v - u - 1)?;
        for f in p.f1.elems() {
            den *= int(v - f - u);
        }
        for f in p.f2.elems() {
            den *= c + int(v + f - u);
        }
        Ok(num / den)
    }
}

/// A_F, B_F and the lower family; `lambda_low`/`lambda` are the shifts in
/// B A = D_low + lambda_low and A B = D + lambda.
#[derive(Clone, Debug)]
pub struct MeixnerDarboux {
    pub a: FirstOrderDifferenceOp,
    pub b: FirstOrderDifferenceOp,
    pub lower: MeixnerExcFamily,
    pub lambda_low: Rational,
    pub lambda: Rational,
    /// m_n = A(m^{low}_{n - index_shift}).
    pub index_shift: i64,
}

impl MeixnerDarboux {
    pub fn check_ba(&self) -> Result<bool> {
        let lhs = self.b.compose(&self.a);
        Ok(lhs.same_as(&self.lower.operator()?.plus_identity(&self.lambda_low)))
    }

    pub fn check_ab(&self, upper: &MeixnerExcFamily) -> Result<bool> {
        let lhs = self.a.compose(&self.b);
        Ok(lhs.same_as(&upper.operator()?.plus_identity(&self.lambda)))
    }

    /// Both factorisations applied to a fixed cubic, denominators cleared.
    pub fn check_on_cubic(&self, upper: &MeixnerExcFamily) -> Result<bool> {
        let p = Poly::from_coeffs(vec![Rational::new(1.into(), 5.into()), int(-2), int(0), int(1)]);
        let ba = self.b.compose(&self.a).apply(&p);
        let low = self.lower.operator()?.apply(&p);
        let ab = self.a.compose(&self.b).apply(&p);
        let up = upper.operator()?.apply(&p);
        let lp = RatFunc::from_poly(p.clone());
        Ok(ba.same_value(&(&low + &lp.scale(&self.lambda_low))) && ab.same_value(&(&up + &lp.scale(&self.lambda))))
    }

    pub fn check_intertwining(&self, upper: &MeixnerExcFamily, n: i64) -> Result<bool> {
        let lhs = upper.m_exc(n)?;
        let rhs = self.a.apply(&self.lower.m_exc(n - self.index_shift)?);
        Ok(rhs.same_value(&RatFunc::from_poly(lhs)))
    }
}

/// A determinant matched to a target up to a constant.
#[derive(Clone, Debug)]
pub struct AltRep {
    pub poly: Poly,
    /// `target = constant * poly`, when such a constant exists.
    pub constant: Option<Rational>,
    pub matches: bool,
}

pub(crate) fn fit_constant(poly: Poly, target: Poly) -> Result<AltRep> {
    let constant = match (poly.lead(), target.lead()) {
        (Some(p), Some(t)) if poly.degree() == target.degree() => Some(t / p),
        _ => None,
    };
    let matches = match &constant {
        Some(b) => poly.scale(b) == target,
        None => poly.is_zero() && target.is_zero(),
    };
    Ok(AltRep { poly, constant, matches })
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub lhs: Poly,
    pub rhs: Poly,
    pub discrepancy: Poly,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.discrepancy.is_zero()
    }
}

/// Convenience wrapper over [`MeixnerExcFamily::m_exc`].
pub fn m_exc(n: i64, fam: &MeixnerExcFamily) -> Result<Poly> {
    fam.m_exc(n)
}
