use rug::Float;

use super::{PrecComplex, Precision};
use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecMatrix {
    rows: usize,
    cols: usize,
    data: Vec<PrecComplex>,
}

impl PrecMatrix {
    pub fn zeros(p: Precision, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![PrecComplex::zero(p); rows * cols] }
    }

    pub fn identity(p: Precision, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = PrecComplex::one(p);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<PrecComplex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> PrecComplex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[PrecComplex] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, o: &PrecMatrix) -> Result<PrecMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let p = self.data[0].precision();
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = PrecComplex::zero(p);
            for k in 0..self.cols {
                acc += &(&self[(i, k)] * &o[(k, j)]);
            }
            acc
        }))
    }

    pub fn matvec(&self, x: &[PrecComplex]) -> Result<Vec<PrecComplex>> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch(format!("{} columns, vector of {}", self.cols, x.len())));
        }
        let p = x.first().map(|v| v.precision()).unwrap_or(Precision::default());
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = PrecComplex::zero(p);
                for (k, xk) in x.iter().enumerate() {
                    acc += &(&self[(i, k)] * xk);
                }
                acc
            })
            .collect())
    }

    pub fn sub(&self, o: &PrecMatrix) -> Result<PrecMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch("shape mismatch in subtraction".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &o[(i, j)]))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> Float {
        let bits = self.data.first().map(|z| z.re.prec()).unwrap_or(64);
        let mut best = Float::new(bits);
        for i in 0..self.rows {
            let mut s = Float::new(bits);
            for j in 0..self.cols {
                s += self[(i, j)].abs();
            }
            if s > best {
                best = s;
            }
        }
        best
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> Float {
        let bits = self.data.first().map(|z| z.re.prec()).unwrap_or(64);
        let mut best = Float::new(bits);
        for z in &self.data {
            let a = z.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn inverse(&self) -> Result<PrecMatrix> {
        self.require_square()?;
        let n = self.rows;
        let p = self.data[0].precision();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<_> = (0..n)
                .map(|i| if i == j { PrecComplex::one(p) } else { PrecComplex::zero(p) })
                .collect();
            cols.push(solve_linear(self, &e)?);
        }
        Ok(Self::from_fn(n, n, |i, j| cols[j][i].clone()))
    }
}

impl std::ops::Index<(usize, usize)> for PrecMatrix {
    type Output = PrecComplex;
    fn index(&self, (i, j): (usize, usize)) -> &PrecComplex {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PrecMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut PrecComplex {
        &mut self.data[i * self.cols + j]
    }
}

/// Index of the max-modulus entry in column `k` at or below row `k`; lowest row wins ties.
fn pivot_row(a: &PrecMatrix, k: usize) -> (usize, Float) {
    let mut best = k;
    let mut best_abs = a[(k, k)].abs();
    for i in (k + 1)..a.rows {
        let v = a[(i, k)].abs();
        if v > best_abs {
            best = i;
            best_abs = v;
        }
    }
    (best, best_abs)
}

fn swap_rows(a: &mut PrecMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols {
        a.data.swap(r1 * a.cols + j, r2 * a.cols + j);
    }
}

/// Determinant by LU factorisation with partial pivoting.
pub fn det_lu(m: &PrecMatrix) -> Result<PrecComplex> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(PrecComplex::one(Precision::default()));
    }
    let p = m.data[0].precision();
    let mut a = m.clone();
    let mut det = PrecComplex::one(p);
    for k in 0..n {
        let (piv, piv_abs) = pivot_row(&a, k);
        if piv_abs.is_zero() {
            return Ok(PrecComplex::zero(p));
        }
        if piv != k {
            swap_rows(&mut a, piv, k);
            det = -det;
        }
        let inv = a[(k, k)].recip();
        for i in (k + 1)..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] * &inv;
            for j in (k + 1)..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= &t;
            }
        }
        det *= &a[(k, k)];
    }
    Ok(det)
}

/// Solves `a x = b` by LU with partial pivoting.
///
/// A pivot smaller than `10^-(P-5)` times the largest modulus of its original row is reported as
/// [`Error::Singular`].
pub fn solve_linear(a: &PrecMatrix, b: &[PrecComplex]) -> Result<Vec<PrecComplex>> {
    a.require_square()?;
    let n = a.rows;
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!("matrix of order {n}, right-hand side of length {}", b.len())));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = a.data[0].precision();
    let threshold = p.eps_scaled(5);
    let row_scale: Vec<Float> = (0..n)
        .map(|i| {
            let mut s = Float::new(p.bits());
            for j in 0..n {
                let v = a[(i, j)].abs();
                if v > s {
                    s = v;
                }
            }
            s
        })
        .collect();
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut scale = row_scale;
    for k in 0..n {
        let (piv, piv_abs) = pivot_row(&m, k);
        let tol = Float::with_val(p.bits(), &scale[piv] * &threshold);
        if piv_abs.is_zero() || piv_abs <= tol {
            return Err(Error::Singular { column: k, pivot: piv_abs.to_f64() });
        }
        swap_rows(&mut m, piv, k);
        rhs.swap(piv, k);
        scale.swap(piv, k);
        let inv = m[(k, k)].recip();
        for i in (k + 1)..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let f = &m[(i, k)] * &inv;
            for j in (k + 1)..n {
                let t = &f * &m[(k, j)];
                m[(i, j)] -= &t;
            }
            let t = &f * &rhs[k];
            rhs[i] -= &t;
        }
    }
    let mut x = vec![PrecComplex::zero(p); n];
    for k in (0..n).rev() {
        let mut acc = rhs[k].clone();
        for j in (k + 1)..n {
            acc -= &(&m[(k, j)] * &x[j]);
        }
        x[k] = &acc / &m[(k, k)];
    }
    Ok(x)
}
