//! Trapezoid-rule Laurent coefficients on circles.

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{pairwise_sum, PrecComplex, Precision};
use crate::symbols::AnnulusFunction;

/// The `n` roots of unity `exp(2 pi i j / n)`.
#[derive(Clone, Debug)]
pub struct Twiddles {
    prec: Precision,
    roots: Vec<PrecComplex>,
}

impl Twiddles {
    pub fn new(p: Precision, n: usize) -> Self {
        let one = Float::with_val(p.bits(), 1);
        let roots = (0..n).into_par_iter().map(|j| PrecComplex::root_of_unity(p, j as i64, n as u64, &one)).collect();
        Self { prec: p, roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, j: usize) -> &PrecComplex {
        &self.roots[j]
    }

    /// `(1/n) sum_j v_j exp(-2 pi i j k / n)`.
    pub fn dft(&self, values: &[PrecComplex], k: i64) -> PrecComplex {
        let n = self.roots.len() as i64;
        let terms: Vec<PrecComplex> = values
            .iter()
            .enumerate()
            .map(|(j, v)| v * &self.roots[((-(j as i64) * k).rem_euclid(n)) as usize])
            .collect();
        let s = pairwise_sum(self.prec, &terms);
        s.scale(&Float::with_val(self.prec.bits(), 1.0 / n as f64))
    }

    /// Samples `f` on the circle of radius `radius`.
    pub fn sample(&self, f: &AnnulusFunction, radius: &Float) -> Vec<PrecComplex> {
        self.roots.par_iter().map(|w| f.eval_unchecked(&w.scale(radius))).collect()
    }
}

/// Truncated Laurent series `sum_{|k| <= M} c_k z^k` valid on an annulus.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    coeffs: Vec<PrecComplex>,
    m: usize,
    pub valid_r_i: f64,
    pub valid_r_o: f64,
}

impl LaurentSeries {
    pub fn new(coeffs: Vec<PrecComplex>, valid_r_i: f64, valid_r_o: f64) -> Self {
        assert!(coeffs.len() % 2 == 1, "coefficient array must have odd length");
        let m = coeffs.len() / 2;
        Self { coeffs, m, valid_r_i, valid_r_o }
    }

    pub fn zeros(p: Precision, m: usize) -> Self {
        Self::new(vec![PrecComplex::zero(p); 2 * m + 1], 0.0, f64::INFINITY)
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Coefficient `c_k`, or zero beyond the truncation.
    pub fn coeff(&self, k: i64) -> PrecComplex {
        self.try_coeff(k).unwrap_or_else(|_| PrecComplex::zero(self.coeffs[0].precision()))
    }

    /// Coefficient `c_k`, failing beyond the truncation.
    pub fn try_coeff(&self, k: i64) -> Result<PrecComplex> {
        if k.unsigned_abs() as usize > self.m {
            return Err(Error::TruncationExceeded { index: k, order: self.m });
        }
        Ok(self.coeffs[(k + self.m as i64) as usize].clone())
    }

    pub fn coeff_ref(&self, k: i64) -> &PrecComplex {
        &self.coeffs[(k + self.m as i64) as usize]
    }

    pub fn set_coeff(&mut self, k: i64, v: PrecComplex) {
        let m = self.m as i64;
        self.coeffs[(k + m) as usize] = v;
    }

    /// Horner evaluation in `z` and `1/z` separately.
    pub fn eval(&self, z: &PrecComplex) -> Result<PrecComplex> {
        let r = z.abs_f64();
        if !(self.valid_r_i < r && r < self.valid_r_o) {
            return Err(Error::OutsideAnnulus { modulus: r, r_i: self.valid_r_i, r_o: self.valid_r_o });
        }
        Ok(self.eval_unchecked(z))
    }

    pub fn eval_unchecked(&self, z: &PrecComplex) -> PrecComplex {
        self.eval_range(z, 0, self.m as i64) + self.eval_range(z, -(self.m as i64), -1)
    }

    /// `sum_{k=lo}^{hi} c_k z^k` for either `0 <= lo` or `hi < 0`.
    pub fn eval_range(&self, z: &PrecComplex, lo: i64, hi: i64) -> PrecComplex {
        let p = z.precision();
        if hi < lo {
            return PrecComplex::zero(p);
        }
        if lo >= 0 {
            let mut acc = PrecComplex::zero(p);
            for k in (lo..=hi).rev() {
                acc = &acc * z;
                acc += self.coeff_ref(k);
            }
            if lo > 0 {
                acc *= &z.powi(lo);
            }
            acc
        } else {
            assert!(hi < 0);
            let w = z.recip();
            let mut acc = PrecComplex::zero(p);
            for k in lo..=hi {
                acc = &acc * &w;
                acc += self.coeff_ref(k);
            }
            &acc * &w.powi(-hi)
        }
    }

    pub fn coeffs(&self) -> &[PrecComplex] {
        &self.coeffs
    }

    /// Least-squares fit `|c_k| ~ C r^{|k|}` over `M/2 < |k| <= M`, skipping coefficients below `floor`.
    pub fn decay_fit(&self, floor: f64) -> Option<(f64, f64)> {
        let mut pts = Vec::new();
        for k in (self.m / 2 + 1) as i64..=self.m as i64 {
            for kk in [k, -k] {
                let a = self.coeff_ref(kk).abs().to_f64();
                let la = self.coeff_ref(kk).abs().ln().to_f64();
                if a > floor && la.is_finite() {
                    pts.push((k as f64, la));
                }
            }
        }
        fit_line(&pts).map(|(slope, icpt)| (icpt.exp(), slope.exp()))
    }
}

/// Ordinary least-squares line `y = slope x + intercept`.
pub fn fit_line(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

fn check_nodes(m: usize, n: usize) -> Result<()> {
    if n < 4 * m || !n.is_power_of_two() {
        return Err(Error::NodeCountTooSmall { nodes: n, order: m });
    }
    Ok(())
}

/// Laurent coefficients `c_{-M..M}` from samples at the `N` roots of unity.
pub fn coeffs_from_samples(tw: &Twiddles, samples: &[PrecComplex], m: usize, r_i: f64, r_o: f64) -> Result<LaurentSeries> {
    check_nodes(m, tw.len())?;
    let coeffs = (-(m as i64)..=m as i64).into_par_iter().map(|k| tw.dft(samples, k)).collect();
    Ok(LaurentSeries::new(coeffs, r_i, r_o))
}

/// Trapezoid-rule Fourier coefficients of `f` on the unit circle.
pub fn fourier_coeffs(f: &AnnulusFunction, p: Precision, m: usize, n: usize) -> Result<LaurentSeries> {
    check_nodes(m, n)?;
    if !(f.r_i() < 1.0 && 1.0 < f.r_o()) {
        return Err(Error::OutsideAnnulus { modulus: 1.0, r_i: f.r_i(), r_o: f.r_o() });
    }
    let tw = Twiddles::new(p, n);
    let one = Float::with_val(p.bits(), 1);
    let samples = tw.sample(f, &one);
    coeffs_from_samples(&tw, &samples, m, f.r_i(), f.r_o())
}

/// Laurent coefficient `c_k` of `f` on the circle `|mu| = radius`, by the `n`-point trapezoid rule.
pub fn contour_coefficient(f: &AnnulusFunction, k: i64, radius: &Float, p: Precision, n: usize) -> Result<PrecComplex> {
    let r = radius.to_f64();
    if !(f.r_i() < r && r < f.r_o()) {
        return Err(Error::OutsideAnnulus { modulus: r, r_i: f.r_i(), r_o: f.r_o() });
    }
    let tw = Twiddles::new(p, n);
    let samples = tw.sample(f, radius);
    Ok(coefficient_on_circle(&tw, &samples, k, radius))
}

/// `c_k` from samples on the circle of radius `radius`: `radius^{-k} (1/n) sum_j f_j w_j^{-k}`.
pub fn coefficient_on_circle(tw: &Twiddles, samples: &[PrecComplex], k: i64, radius: &Float) -> PrecComplex {
    let c = tw.dft(samples, k);
    let rk = Float::with_val(radius.prec(), rug::ops::Pow::pow(radius, -(k as i32)));
    c.scale(&rk)
}
