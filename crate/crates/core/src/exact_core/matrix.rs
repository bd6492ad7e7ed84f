use num_bigint::BigInt;
use num_traits::One;

use super::poly::Poly;
use super::rational::{content_of, Rational};
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// Row-major matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        PolyMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn det(&self) -> Result<Poly> {
        poly_det(self)
    }
}

/// Exact determinant by Bareiss elimination over Z[x].
///
/// Every row is first divided by its rational content, which leaves
/// primitive integer polynomials; the determinant picks up the product of
/// the contents. Bareiss then needs only exact integer-polynomial
/// divisions by the previous pivot, keeping coefficient growth polynomial.
pub fn poly_det(m: &PolyMatrix) -> Result<Poly> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut factor = Rational::one();
    let mut a: Vec<Vec<ZPoly>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = &m.entries[i * n..(i + 1) * n];
        let c = match content_of(row.iter().flat_map(|p| p.coeffs().iter())) {
            None => return Ok(Poly::zero()),
            Some(c) => c,
        };
        factor *= &c;
        a.push(
            row.iter()
                .map(|p| p.coeffs().iter().map(|q| (q / &c).to_integer()).collect::<ZPoly>())
                .collect(),
        );
    }
    let mut negate = false;
    let mut prev: ZPoly = vec![BigInt::one()];
    for k in 0..n - 1 {
        let piv = (k..n).find(|&r| !a[r][k].is_empty());
        let Some(p) = piv else {
            return Ok(Poly::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = zpoly::sub(
                    &zpoly::mul(&a[k][k], &a[i][j]),
                    &zpoly::mul(&a[i][k], &a[k][j]),
                );
                a[i][j] = zpoly::exact_div(&t, &prev).ok_or_else(|| {
                    Error::Inconsistency("Bareiss step left a remainder".into())
                })?;
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let d = Poly::from_zpoly(&a[n - 1][n - 1]).scale(&factor);
    Ok(if negate { -d } else { d })
}

/// Cofactor expansion along the first row. Exponential cost; kept as an
/// independent reference for small matrices.
pub fn cofactor_det(m: &PolyMatrix) -> Result<Poly> {
    if m.rows != m.cols {
        return Err(Error::Dimension("non-square".into()));
    }
    fn rec(rows: &[Vec<Poly>]) -> Poly {
        let n = rows.len();
        if n == 0 {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Poly>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let t = &rows[0][j] * &rec(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    let rows: Vec<Vec<Poly>> =
        (0..m.rows).map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect()).collect();
    Ok(rec(&rows))
}
