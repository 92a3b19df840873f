//! Toeplitz+Hankel matrices `{phi_{j-k+r} + w_{j+k+s}}`, their determinants `D_n`, the monic
//! orthogonal polynomials and the norms `h_n = D_{n+1}/D_n`.

use rug::Float;

use crate::error::{Error, Result};
use crate::fourier::LaurentSeries;
use crate::numerics::{det_lu, rel_diff, solve_linear, PrecComplex, PrecMatrix, Precision};

#[derive(Clone, Debug)]
pub struct THSystem {
    pub phi: LaurentSeries,
    pub w: LaurentSeries,
    pub r: i64,
    pub s: i64,
    pub prec: Precision,
}

/// Monic `P_n(z) = z^n + sum_{j<n} a_j z^j` with its norm.
#[derive(Clone, Debug)]
pub struct OrthoPoly {
    pub degree: usize,
    pub coeffs: Vec<PrecComplex>,
    pub h: PrecComplex,
}

impl OrthoPoly {
    /// All `n + 1` coefficients, leading `1` included.
    pub fn full_coeffs(&self) -> Vec<PrecComplex> {
        let mut c = self.coeffs.clone();
        c.push(PrecComplex::one(self.h.precision()));
        c
    }

    pub fn eval(&self, z: &PrecComplex) -> PrecComplex {
        let mut acc = PrecComplex::zero(z.precision());
        for c in self.full_coeffs().iter().rev() {
            acc = &acc * z;
            acc += c;
        }
        acc
    }
}

impl THSystem {
    pub fn new(phi: LaurentSeries, w: LaurentSeries, r: i64, s: i64, prec: Precision) -> Self {
        Self { phi, w, r, s, prec }
    }

    /// Entry `phi_{j-k+r} + w_{j+k+s}`.
    pub fn entry(&self, j: usize, k: usize) -> Result<PrecComplex> {
        let (j, k) = (j as i64, k as i64);
        Ok(self.phi.try_coeff(j - k + self.r)? + self.w.try_coeff(j + k + self.s)?)
    }

    pub fn build_matrix(&self, n: usize) -> Result<PrecMatrix> {
        if n == 0 {
            return Err(Error::InvalidParams("matrix size must be at least 1".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                data.push(self.entry(j, k)?);
            }
        }
        PrecMatrix::from_vec(n, n, data)
    }

    /// `D_n`, with `D_0 = 1`.
    pub fn det(&self, n: usize) -> Result<PrecComplex> {
        if n == 0 {
            return Ok(PrecComplex::one(self.prec));
        }
        det_lu(&self.build_matrix(n)?)
    }

    /// `10^-(P-10) * scale^n`, with `scale` the largest entry modulus of the `n`-matrix.
    fn singular_floor(&self, m: &PrecMatrix) -> Float {
        let scale = m.max_abs().max(&Float::with_val(self.prec.bits(), 1e-300));
        let pow = Float::with_val(self.prec.bits(), rug::ops::Pow::pow(&scale, m.rows() as u32));
        pow * self.prec.eps_scaled(10)
    }

    fn det_checked(&self, n: usize) -> Result<PrecComplex> {
        if n == 0 {
            return Ok(PrecComplex::one(self.prec));
        }
        let m = self.build_matrix(n)?;
        let d = det_lu(&m)?;
        if d.abs() <= self.singular_floor(&m) {
            return Err(Error::SingularDn { n });
        }
        Ok(d)
    }

    /// `h_n = D_{n+1} / D_n`.
    pub fn norm_h(&self, n: usize) -> Result<PrecComplex> {
        let dn = self.det_checked(n)?;
        let dn1 = self.det(n + 1)?;
        Ok(dn1 / dn)
    }

    /// Monic orthogonal polynomial of degree `n` from the `n x n` coefficient system.
    pub fn orthopoly(&self, n: usize) -> Result<OrthoPoly> {
        if n == 0 {
            return Ok(OrthoPoly { degree: 0, coeffs: Vec::new(), h: self.entry(0, 0)? });
        }
        let m = self.build_matrix(n)?;
        let rhs: Vec<PrecComplex> = (0..n).map(|k| self.entry(k, n).map(|e| -e)).collect::<Result<_>>()?;
        let coeffs = solve_linear(&m, &rhs).map_err(|e| match e {
            Error::Singular { .. } => Error::SingularDn { n },
            other => other,
        })?;
        let mut h = self.entry(n, n)?;
        for (j, a) in coeffs.iter().enumerate() {
            h += &(&self.entry(n, j)? * a);
        }
        Ok(OrthoPoly { degree: n, coeffs, h })
    }

    /// Norm from both routes; a relative disagreement above `10^-(P-15)` is an error.
    pub fn norm_h_checked(&self, n: usize) -> Result<PrecComplex> {
        let ratio = self.norm_h(n)?;
        let orth = self.orthopoly(n)?;
        let rel = rel_diff(&ratio, &orth.h);
        if rel > self.prec.eps_scaled(15) {
            return Err(Error::NormMismatch { n, rel: rel.to_f64() });
        }
        Ok(ratio)
    }

    /// Absolute orthogonality defect at index `k` and the row scale `sum_j |M_kj a_j|`.
    pub fn orthogonality_residual(&self, poly: &OrthoPoly, k: usize) -> Result<(Float, Float)> {
        let n = poly.degree;
        let full = poly.full_coeffs();
        let mut acc = PrecComplex::zero(self.prec);
        let mut scale = Float::new(self.prec.bits());
        for (j, a) in full.iter().enumerate() {
            let t = &self.entry(k, j)? * a;
            scale += t.abs();
            acc += &t;
        }
        if k == n {
            acc -= &poly.h;
        }
        Ok((acc.abs(), scale))
    }

    /// Largest scaled residual over `k = 0..=n`.
    pub fn max_scaled_residual(&self, poly: &OrthoPoly) -> Result<Float> {
        let mut worst = Float::new(self.prec.bits());
        for k in 0..=poly.degree {
            let (res, scale) = self.orthogonality_residual(poly, k)?;
            let s = if scale.is_zero() { res } else { res / scale };
            if s > worst {
                worst = s;
            }
        }
        Ok(worst)
    }
}
