//! The eight small-norm jump kernels `g_jk` and their contour integrals `R_{1,jk}(0;n)`.

use std::sync::Arc;

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::fourier::{coefficient_on_circle, Twiddles};
use crate::numerics::{PrecComplex, Precision};
use crate::symbols::AnnulusFunction;
use crate::szego::{Side, SzegoModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelId {
    G12,
    G14,
    G23,
    G43,
    G21,
    G32,
    G34,
    G41,
}

impl KernelId {
    pub const ALL: [KernelId; 8] =
        [KernelId::G12, KernelId::G14, KernelId::G23, KernelId::G43, KernelId::G21, KernelId::G32, KernelId::G34, KernelId::G41];
    pub const INNER: [KernelId; 4] = [KernelId::G12, KernelId::G14, KernelId::G23, KernelId::G43];
    pub const OUTER: [KernelId; 4] = [KernelId::G21, KernelId::G32, KernelId::G34, KernelId::G41];

    /// Inner kernels live on `|z| = r_*`, outer ones on `|z| = 1/r_*`.
    pub fn side(self) -> Side {
        match self {
            KernelId::G12 | KernelId::G14 | KernelId::G23 | KernelId::G43 => Side::Inner,
            _ => Side::Outer,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelId::G12 => "g12",
            KernelId::G14 => "g14",
            KernelId::G23 => "g23",
            KernelId::G43 => "g43",
            KernelId::G21 => "g21",
            KernelId::G32 => "g32",
            KernelId::G34 => "g34",
            KernelId::G41 => "g41",
        }
    }

    fn slot(self) -> usize {
        match self {
            KernelId::G12 | KernelId::G21 => 0,
            KernelId::G14 | KernelId::G32 => 1,
            KernelId::G23 | KernelId::G34 => 2,
            KernelId::G43 | KernelId::G41 => 3,
        }
    }
}

/// The kernel family of a factorizable pair.
#[derive(Clone, Debug)]
pub struct GKernelSet {
    pub model: Arc<SzegoModel>,
    /// Debug switch negating `g23`, used as a fault-injection control.
    pub flip_g23: bool,
}

/// Builds the kernels for the model of `(phi, d phi)`.
pub fn g_kernels(model: Arc<SzegoModel>) -> GKernelSet {
    GKernelSet { model, flip_g23: false }
}

impl GKernelSet {
    pub fn with_flipped_g23(mut self, flip: bool) -> Self {
        self.flip_g23 = flip;
        self
    }

    /// The four kernels of the side of `z`, in `KernelId::INNER` or `KernelId::OUTER` order.
    pub fn eval_side(&self, z: &PrecComplex, side: Side) -> [PrecComplex; 4] {
        let m = &self.model;
        let a0 = m.alpha0();
        let v = m.boundary(z, side);
        let (al, be, alt, c) = (&v.alpha, &v.beta, &v.alpha_tilde, &v.c_rho);
        let zi = z.recip();
        let phi = m.phi.eval_unchecked(z);
        let phi_t = m.phi.eval_unchecked(&zi);
        match side {
            Side::Inner => {
                let w_t = m.w.eval_unchecked(&zi);
                let phi_be = &phi * be;
                let g12 = -(al / &phi_be) - &(&w_t * c / (&phi_be * alt));
                let g14 = &w_t / (&phi_be * alt * a0);
                let mut g23 = -(a0 * &w_t * be / (&phi_t * alt));
                if self.flip_g23 {
                    g23 = -g23;
                }
                let a02 = a0 * a0;
                let g43 = -(&a02 * &(&(al * be / &phi_t) + &(be * &w_t * c / (alt * &phi_t))));
                [g12, g14, g23, g43]
            }
            Side::Outer => {
                let w = m.w.eval_unchecked(z);
                let alt2 = alt * alt;
                let g21 = &w * be / (&phi * al);
                let g32 = -((a0 * &phi_t).recip() * (alt / be - &(&w * &alt2 * be * al * c)));
                let g34 = &w * &alt2 * be * al / (&phi_t * a0 * a0);
                let inner = (alt * be * al * al).recip() - &w * be * c / al;
                let g41 = -(a0 / &phi * inner);
                [g21, g32, g34, g41]
            }
        }
    }

    pub fn eval(&self, id: KernelId, z: &PrecComplex) -> PrecComplex {
        let vals = self.eval_side(z, id.side());
        vals[id.slot()].clone()
    }

    /// `|g23 alpha~ + alpha(0) d~ beta| / |alpha(0) d~ beta|` at an inner point.
    pub fn g23_identity_residual(&self, z: &PrecComplex) -> Float {
        let m = &self.model;
        let v = m.boundary(z, Side::Inner);
        let g23 = self.eval(KernelId::G23, z);
        let target = m.alpha0() * &m.d.eval_unchecked(&z.recip()) * &v.beta;
        (&g23 * &v.alpha_tilde + &target).abs() / target.abs()
    }

    /// One kernel as an annulus function on `(r_0, 1)` or `(1, 1/r_0)`.
    pub fn function(&self, id: KernelId) -> AnnulusFunction {
        let r0 = self.model.r0();
        let me = self.clone();
        let (r_i, r_o) = match id.side() {
            Side::Inner => (r0, 1.0),
            Side::Outer => (1.0, 1.0 / r0),
        };
        AnnulusFunction::new(r_i, r_o, move |z| me.eval(id, z))
    }
}

/// Radii and quadrature size of the contours `|mu| = r_*` and `|mu| = 1/r_*`.
#[derive(Clone, Debug)]
pub struct ContourConfig {
    pub r_star: f64,
    pub nodes: usize,
}

impl ContourConfig {
    /// `r_* = sqrt(r_0)`, or `1/2` when the symbols have no singularity off `{0, inf}`.
    pub fn default_for(model: &SzegoModel, nodes: usize) -> Self {
        let r0 = model.r0();
        Self { r_star: if r0 > 0.0 { r0.sqrt() } else { 0.5 }, nodes }
    }

    pub fn validate(&self, r0: f64) -> Result<()> {
        if !(r0 < self.r_star && self.r_star < 1.0) {
            return Err(Error::InvalidParams(format!("r_* = {} must lie in (r_0, 1) = ({r0}, 1)", self.r_star)));
        }
        if !self.nodes.is_power_of_two() || self.nodes < 16 {
            return Err(Error::NodeCountTooSmall { nodes: self.nodes, order: 4 });
        }
        Ok(())
    }
}

/// Kernel samples on both contours, from which `R_{1,jk}(0;n)` follows for any `n` by one DFT.
#[derive(Clone, Debug)]
pub struct KernelTable {
    pub cfg: ContourConfig,
    prec: Precision,
    tw: Twiddles,
    r_inner: Float,
    r_outer: Float,
    inner: Vec<[PrecComplex; 4]>,
    outer: Vec<[PrecComplex; 4]>,
}

impl KernelTable {
    pub fn new(kernels: &GKernelSet, cfg: ContourConfig) -> Result<Self> {
        cfg.validate(kernels.model.r0())?;
        let p = kernels.model.prec;
        let tw = Twiddles::new(p, cfg.nodes);
        let r_inner = Float::with_val(p.bits(), cfg.r_star);
        let r_outer = Float::with_val(p.bits(), 1) / &r_inner;
        let sample = |radius: &Float, side: Side| -> Vec<[PrecComplex; 4]> {
            (0..cfg.nodes).into_par_iter().map(|j| kernels.eval_side(&tw.root(j).scale(radius), side)).collect()
        };
        let inner = sample(&r_inner, Side::Inner);
        let outer = sample(&r_outer, Side::Outer);
        Ok(Self { cfg, prec: p, tw, r_inner, r_outer, inner, outer })
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// `R_{1,jk}(0;n)`: the coefficient `c_{-n}` of an inner kernel on `|mu| = r_*`, or `c_n` of an
    /// outer kernel on `|mu| = 1/r_*`.
    pub fn r(&self, id: KernelId, n: i64) -> PrecComplex {
        let slot = id.slot();
        match id.side() {
            Side::Inner => {
                let s: Vec<PrecComplex> = self.inner.iter().map(|v| v[slot].clone()).collect();
                coefficient_on_circle(&self.tw, &s, -n, &self.r_inner)
            }
            Side::Outer => {
                let s: Vec<PrecComplex> = self.outer.iter().map(|v| v[slot].clone()).collect();
                coefficient_on_circle(&self.tw, &s, n, &self.r_outer)
            }
        }
    }
}

/// `R_{1,jk}(0;n)` of a single kernel function by direct contour quadrature.
pub fn r1jk_zero(g: &AnnulusFunction, n: i64, side: Side, cfg: &ContourConfig, p: Precision) -> Result<PrecComplex> {
    if n < 1 {
        return Err(Error::InvalidParams(format!("n = {n} must be at least 1")));
    }
    let r = Float::with_val(p.bits(), cfg.r_star);
    match side {
        Side::Inner => crate::fourier::contour_coefficient(g, -n, &r, p, cfg.nodes),
        Side::Outer => crate::fourier::contour_coefficient(g, n, &(Float::with_val(p.bits(), 1) / r), p, cfg.nodes),
    }
}
