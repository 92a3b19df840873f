//! Small-norm asymptotics of the Toeplitz+Hankel norms.
//!
//! The engine samples the eight kernels `g_jk` once on `|mu| = r_*` and `|mu| = 1/r_*`; every
//! `R_{1,jk}(0;n)` is then a single Laurent coefficient. On top of these sit the `h^(1,1)` and
//! `h^(0,1)` predictors, the leading-order `P(n)` and `X1^inf`, and the exact offset reductions.

pub mod kernels;
pub mod rhp;
pub mod solvers;

use std::sync::Arc;

use rug::Float;

pub use kernels::{g_kernels, r1jk_zero, ContourConfig, GKernelSet, KernelId, KernelTable};
pub use rhp::{jump_x, w_matrix, wsym_residual, Partial4, RHPData};
pub use solvers::{
    exact_h01_from_data, minor, offset00_residual, offset01_constant_factor, offset01_residual, offset02_lu_crosscheck,
    offset02_residual, solve_offset00, solve_offset01, solve_offset02, ExactH01, Offset00Solution, Offset01Solution,
    Offset02Solution,
};

use crate::error::{Error, Result};
use crate::numerics::{PrecComplex, PrecMatrix, Precision};
use crate::szego::SzegoModel;

/// Default lower bound for the four genericity monitors.
pub const DEFAULT_MONITOR_THRESHOLD: f64 = 1e-30;

/// The four lower-bound quantities that license the `h^(0,1)` predictor.
#[derive(Clone, Debug)]
pub struct Monitors {
    pub values: [Float; 4],
}

impl Monitors {
    pub fn failing(&self, threshold: f64) -> Vec<usize> {
        (0..4).filter(|&k| !(self.values[k] > threshold)).collect()
    }
}

/// `R_{1,jk}(0;n)` for the entries used by the predictors.
#[derive(Clone, Debug)]
pub struct RValues {
    pub r12: PrecComplex,
    pub r14: PrecComplex,
    pub r32: PrecComplex,
    pub r34: PrecComplex,
    pub r32_prev: PrecComplex,
}

/// Kernels, contour samples and the model constants `alpha(0)`, `C_rho(0)`.
#[derive(Clone, Debug)]
pub struct Asymptotics {
    pub kernels: GKernelSet,
    pub table: KernelTable,
    pub alpha0: PrecComplex,
    pub c_rho0: PrecComplex,
}

impl Asymptotics {
    pub fn new(model: Arc<SzegoModel>, cfg: ContourConfig, flip_g23: bool) -> Result<Self> {
        let kernels = g_kernels(model.clone()).with_flipped_g23(flip_g23);
        let table = KernelTable::new(&kernels, cfg)?;
        Ok(Self { alpha0: model.alpha0().clone(), c_rho0: model.c_rho0(), kernels, table })
    }

    pub fn precision(&self) -> Precision {
        self.table.precision()
    }

    pub fn r(&self, id: KernelId, n: i64) -> PrecComplex {
        self.table.r(id, n)
    }

    /// `E(n) = (2/alpha(0)) R_43(n) - C_rho(0) R_23(n)`.
    pub fn energy(&self, n: i64) -> PrecComplex {
        let two = PrecComplex::from_real(Float::with_val(self.precision().bits(), 2));
        &two / &self.alpha0 * self.r(KernelId::G43, n) - &(&self.c_rho0 * &self.r(KernelId::G23, n))
    }

    /// `h^(1,1)_{n-1} ~ -alpha(0) E(n) / E(n-1)`.
    pub fn predict_h11(&self, n: i64) -> Result<PrecComplex> {
        let prev = self.energy(n - 1);
        let floor = self.precision().eps_scaled(5);
        if prev.abs() < floor {
            return Err(Error::DegeneratePredictor(format!("|E({})| = {:e} is below {:e}", n - 1, prev.abs().to_f64(), floor.to_f64())));
        }
        Ok(-(&self.alpha0 * &self.energy(n) / &prev))
    }

    pub fn r_values(&self, n: i64) -> RValues {
        RValues {
            r12: self.r(KernelId::G12, n),
            r14: self.r(KernelId::G14, n),
            r32: self.r(KernelId::G32, n),
            r34: self.r(KernelId::G34, n),
            r32_prev: self.r(KernelId::G32, n - 1),
        }
    }

    pub fn monitors(&self, n: i64) -> Monitors {
        let v = self.r_values(n);
        let a0 = &self.alpha0;
        let m1 = (&v.r32 * &v.r14).abs();
        let m2 = (&v.r32 * &v.r14 - &(&v.r12 * &v.r34)).abs();
        let m3 = (&v.r12 / a0 - &v.r32_prev).abs();
        let m4 = (-(&self.c_rho0 * a0 * &v.r34) - &v.r32 + &v.r32_prev).abs();
        Monitors { values: [m1, m2, m3, m4] }
    }

    /// `F(n)`, with `h^(0,1)_{n-1} ~ -1/F(n)`.
    pub fn f_n(&self, n: i64) -> PrecComplex {
        let v = self.r_values(n);
        let a0 = &self.alpha0;
        let m = &v.r32 * &v.r14;
        let num = &m * &(&self.c_rho0 * a0 * &v.r34 + &v.r32 - &v.r32_prev);
        let den = (&v.r12 - &(a0 * &v.r32_prev)) * (&m - &(&v.r12 * &v.r34));
        num / den
    }

    /// `h^(0,1)_{n-1} ~ -1/F(n)`, refused when a monitor is at or below `threshold`.
    pub fn predict_h01(&self, n: i64, threshold: f64) -> Result<PrecComplex> {
        let mon = self.monitors(n);
        let failing = mon.failing(threshold);
        if !failing.is_empty() {
            let detail: Vec<String> = failing.iter().map(|&k| format!("m{} = {:e}", k + 1, mon.values[k].to_f64())).collect();
            return Err(Error::GenericityFailed(format!("n = {n}: {} (threshold {threshold:e})", detail.join(", "))));
        }
        Ok(-self.f_n(n).recip())
    }

    /// Leading-order `P(n)`.
    pub fn p_matrix(&self, n: i64) -> PrecMatrix {
        let p = self.precision();
        let a0 = &self.alpha0;
        let c0 = &self.c_rho0;
        let r = |id| self.r(id, n);
        let (r12, r14, r23, r43) = (r(KernelId::G12), r(KernelId::G14), r(KernelId::G23), r(KernelId::G43));
        let (r21, r32, r34, r41) = (r(KernelId::G21), r(KernelId::G32), r(KernelId::G34), r(KernelId::G41));
        let z = PrecComplex::zero(p);
        let one = PrecComplex::one(p);
        let ca = c0 * a0;
        let rows: [[PrecComplex; 4]; 4] = [
            [-(&ca * &r14) - &r12, z.clone(), r14.clone(), -a0.clone()],
            [-one.clone(), -(&r23 / a0), z.clone(), -(a0 * &r21)],
            [-(&ca * &r34) - &r32, -a0.recip(), r34, z],
            [-ca, -(&r43 / a0), one, -(a0 * &r41)],
        ];
        PrecMatrix::from_vec(4, 4, rows.into_iter().flatten().collect()).expect("4x4")
    }

    /// Leading-order `X1^inf(n)`: the first-order small-norm terms plus the `1/z` term of `Lambda`.
    ///
    /// Off-diagonal entries are `-R_{1,jk}(0;n+1)` for inner kernels and `-R_{1,jk}(0;n-1)` for
    /// outer ones; entries with no first-order term (`13`, `24`, `31`) are zero.
    pub fn x1inf_leading(&self, n: i64) -> PrecMatrix {
        let p = self.precision();
        let model = &self.kernels.model;
        let a = &model.alpha.ln_coeffs;
        let b = &model.beta.ln_coeffs;
        let mut x = PrecMatrix::zeros(p, 4, 4);
        for id in KernelId::ALL {
            let (i, j) = match id {
                KernelId::G12 => (0, 1),
                KernelId::G14 => (0, 3),
                KernelId::G23 => (1, 2),
                KernelId::G43 => (3, 2),
                KernelId::G21 => (1, 0),
                KernelId::G32 => (2, 1),
                KernelId::G34 => (2, 3),
                KernelId::G41 => (3, 0),
            };
            let shift = if id.side() == crate::szego::Side::Inner { n + 1 } else { n - 1 };
            x[(i, j)] = -self.r(id, shift);
        }
        x[(0, 0)] = -a.coeff(-1);
        x[(1, 1)] = -b.coeff(-1);
        x[(2, 2)] = a.coeff(1);
        x[(3, 3)] = a.coeff(-1) + &b.coeff(-1) - &a.coeff(1);
        x[(3, 1)] = &self.alpha0 * &model.rho.coeffs.coeff(-1);
        x
    }

    /// `RHPData` at leading order: `P(n)`, `X1^inf` with `X31 = 0`, `X32 = -R_32(0;n-1)`, and
    /// `X1^circ = W X1^inf W`. `X2^inf` is left unpopulated.
    pub fn p_asymptotic(&self, n: i64) -> RHPData {
        let p = self.precision();
        let x1 = self.x1inf_leading(n);
        let w = w_matrix(p);
        let xc = w.matmul(&x1).and_then(|m| m.matmul(&w)).expect("4x4");
        let mut d = RHPData::new(self.p_matrix(n));
        d.x1inf = Partial4::from_matrix("X1inf", &x1);
        d.x1circ = Partial4::from_matrix("X1circ", &xc);
        d
    }
}
