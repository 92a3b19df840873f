//! Boundary magnetization of the zig-zag layered half-plane Ising model.
//!
//! `M_n = (1 - r)^{-3/2} D_n`, where `D_n` is the Toeplitz+Hankel determinant of the phase's symbol
//! pair and offsets (see [`crate::symbols::ising`]).

use rayon::prelude::*;
use rug::Float;

use crate::determinants::THSystem;
use crate::error::{Error, Result};
use crate::fourier::{fit_line, fourier_coeffs, LaurentSeries};
use crate::numerics::{PrecComplex, Precision};
use crate::symbols::ising::{ising_symbols, IsingCase, IsingParams};

#[derive(Clone, Debug)]
pub struct MagnetizationResult {
    pub n: usize,
    pub m_n: PrecComplex,
    pub case: IsingCase,
    pub offsets: (i64, i64),
}

impl MagnetizationResult {
    /// `|Im M_n| / |M_n|`.
    pub fn imag_ratio(&self) -> Float {
        let im = Float::with_val(self.m_n.im.prec(), self.m_n.im.abs_ref());
        im / self.m_n.abs()
    }
}

/// Coefficients and offsets of the magnetization determinant, computed once per parameter set.
#[derive(Clone, Debug)]
pub struct MagnetizationSystem {
    pub params: IsingParams,
    pub case: IsingCase,
    pub system: THSystem,
    prefactor: Float,
}

impl MagnetizationSystem {
    /// Samples `phi` and the Hankel symbol with `nodes` points and keeps `|k| <= m` coefficients.
    /// Below the critical line the geometric part `K a^k` of `w_k` is added exactly.
    pub fn new(params: &IsingParams, m: usize, nodes: usize) -> Result<Self> {
        let p = params.precision();
        let sym = ising_symbols(params)?;
        let phi = fourier_coeffs(&sym.phi, p, m, nodes)?;
        let mut w = fourier_coeffs(&sym.hankel, p, m, nodes)?;
        if let Some((k, a)) = &sym.geometric {
            add_geometric(&mut w, k, a);
        }
        let (r, s) = sym.offsets;
        let b = p.bits();
        let one_minus_r = Float::with_val(b, 1 - &params.r);
        let prefactor = Float::with_val(b, one_minus_r.sqrt_ref()) * &one_minus_r;
        Ok(Self {
            params: params.clone(),
            case: sym.case,
            system: THSystem::new(phi, w, r, s, p),
            prefactor: prefactor.recip(),
        })
    }

    pub fn precision(&self) -> Precision {
        self.params.precision()
    }

    pub fn magnetization(&self, n: usize) -> Result<MagnetizationResult> {
        let d = self.system.det(n)?;
        Ok(MagnetizationResult {
            n,
            m_n: d.scale(&self.prefactor),
            case: self.case,
            offsets: (self.system.r, self.system.s),
        })
    }
}

fn add_geometric(w: &mut LaurentSeries, k: &Float, a: &Float) {
    let mut term = k.clone();
    for idx in 0..=w.order() as i64 {
        let v = w.coeff(idx) + PrecComplex::from_real(term.clone());
        w.set_coeff(idx, v);
        term *= a;
    }
}

/// `M_n` for one `n`, with truncation order `m` and `nodes` quadrature points.
pub fn magnetization(params: &IsingParams, n: usize, m: usize, nodes: usize) -> Result<MagnetizationResult> {
    MagnetizationSystem::new(params, m, nodes)?.magnetization(n)
}

#[derive(Clone, Debug)]
pub struct CriticalityRow {
    pub n: usize,
    pub m_n: PrecComplex,
    /// `M_n - M_{n-1}`; absent for the first row.
    pub increment: Option<PrecComplex>,
}

#[derive(Clone, Debug)]
pub struct CriticalityStudy {
    pub rows: Vec<CriticalityRow>,
    /// `exp` of the least-squares slope of `ln |M_n - M_{n-1}|`, over increments above the noise floor.
    pub fitted_ratio: Option<f64>,
    /// Number of increments entering the fit.
    pub fitted_points: usize,
}

impl CriticalityStudy {
    pub fn last(&self) -> &CriticalityRow {
        self.rows.last().expect("nonempty study")
    }
}

/// Table of `M_n` and its increments for `n_min <= n <= n_max` on the critical line.
pub fn criticality_study(params: &IsingParams, n_min: usize, n_max: usize, m: usize, nodes: usize) -> Result<CriticalityStudy> {
    if params.case() != IsingCase::Critical {
        return Err(Error::InvalidParams(format!("criticality study needs a = 1, got case {}", params.case().label())));
    }
    if n_min < 1 || n_max <= n_min {
        return Err(Error::InvalidParams(format!("need 1 <= n_min < n_max, got {n_min}..{n_max}")));
    }
    let sys = MagnetizationSystem::new(params, m, nodes)?;
    let ms: Vec<PrecComplex> =
        (n_min - 1..=n_max).into_par_iter().map(|n| sys.magnetization(n).map(|r| r.m_n)).collect::<Result<_>>()?;
    let rows: Vec<CriticalityRow> = (n_min..=n_max)
        .map(|n| {
            let k = n - n_min + 1;
            CriticalityRow { n, m_n: ms[k].clone(), increment: Some(&ms[k] - &ms[k - 1]) }
        })
        .collect();
    let floor = sys.precision().eps_scaled(20).to_f64();
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| {
            let inc = r.increment.as_ref()?.abs().to_f64();
            let scale = r.m_n.abs().to_f64().max(1.0);
            (inc > floor * scale).then(|| (r.n as f64, inc.ln()))
        })
        .collect();
    let fitted_ratio = fit_line(&pts).map(|(slope, _)| slope.exp());
    Ok(CriticalityStudy { rows, fitted_ratio, fitted_points: pts.len() })
}
