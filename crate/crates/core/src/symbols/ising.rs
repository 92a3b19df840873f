//! Zig-zag layered half-plane Ising symbols.
//!
//! With `q in (0,1)` and the boundary parameter `r` (written 𝓇 in the physics literature),
//!
//! ```text
//! phi(z) = |1 - q^2 z| on the circle = sqrt(1 - q^2 z) sqrt(1 - q^2 / z)
//! d(z)   = -(r z - q^2)(q^2 z - 1) / ((z - q^2)(q^2 z - r)),    a = q^2 / r
//! ```
//!
//! and the Hankel symbol and offsets depend on the phase: `a > 1`, `a = 1`, `r = 0`, `a < 1`.

use rug::Float;

use super::AnnulusFunction;
use crate::error::{Error, Result};
use crate::numerics::{PrecComplex, Precision};

/// Tolerance on `|r - q^2|` for the critical locus `a = 1`.
pub const CRITICAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsingCase {
    /// `a > 1`, offsets `(0,2)`, Hankel symbol `z^2 d phi`.
    Above,
    /// `a = 1`, offsets `(0,1)`, Hankel symbol `z d phi`.
    Critical,
    /// `r = 0`, offsets `(0,2)`, Hankel symbol `z^2 d phi`.
    ZeroR,
    /// `a < 1`, offsets `(0,0)`, Hankel symbol `d phi + (1-r)^{3/2} gamma`.
    Below,
}

impl IsingCase {
    pub fn label(self) -> &'static str {
        match self {
            IsingCase::Above => "a>1",
            IsingCase::Critical => "a=1",
            IsingCase::ZeroR => "r=0",
            IsingCase::Below => "a<1",
        }
    }

    pub fn offsets(self) -> (i64, i64) {
        match self {
            IsingCase::Above | IsingCase::ZeroR => (0, 2),
            IsingCase::Critical => (0, 1),
            IsingCase::Below => (0, 0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsingParams {
    pub q: Float,
    pub r: Float,
    prec: Precision,
}

impl IsingParams {
    /// Validates `q in (0,1)` and `r in [0,1)`.
    ///
    /// Negative `r` lies inside the physical band `(-q^2, 1)` but makes `a` negative and the
    /// `r^{-3/2}` factor complex; it is rejected.
    pub fn new(p: Precision, q: &str, r: &str) -> Result<Self> {
        let parse = |s: &str| {
            Float::parse(s)
                .map(|v| Float::with_val(p.bits(), v))
                .map_err(|e| Error::InvalidParams(format!("cannot parse '{s}': {e}")))
        };
        Self::from_floats(p, parse(q)?, parse(r)?)
    }

    pub fn from_floats(p: Precision, q: Float, r: Float) -> Result<Self> {
        if !(q > 0 && q < 1) {
            return Err(Error::InvalidParams(format!("q = {} must lie in (0,1)", q.to_f64())));
        }
        let q2 = Float::with_val(p.bits(), &q * &q);
        if !(r > -q2.clone() && r < 1) {
            return Err(Error::InvalidParams(format!("r = {} must lie in (-q^2, 1)", r.to_f64())));
        }
        if r < 0 {
            return Err(Error::InvalidParams(format!("r = {} < 0 gives a complex c(q); unsupported", r.to_f64())));
        }
        Ok(Self { q, r, prec: p })
    }

    /// Critical parameters `r = q^2`.
    pub fn critical(p: Precision, q: &str) -> Result<Self> {
        let q = Float::with_val(p.bits(), Float::parse(q).map_err(|e| Error::InvalidParams(e.to_string()))?);
        let r = Float::with_val(p.bits(), &q * &q);
        Self::from_floats(p, q, r)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn q2(&self) -> Float {
        Float::with_val(self.prec.bits(), &self.q * &self.q)
    }

    /// `a = q^2 / r`, or `None` when `r = 0`.
    pub fn a(&self) -> Option<Float> {
        if self.r.is_zero() {
            None
        } else {
            Some(self.q2() / &self.r)
        }
    }

    pub fn case(&self) -> IsingCase {
        if self.r.is_zero() {
            return IsingCase::ZeroR;
        }
        let gap = Float::with_val(self.prec.bits(), &self.r - self.q2()).to_f64();
        if gap.abs() <= CRITICAL_TOL {
            IsingCase::Critical
        } else if gap < 0.0 {
            IsingCase::Above
        } else {
            IsingCase::Below
        }
    }

    /// `c(q) = (r^2 - q^4) r^{-3/2} (r - q^4)^{-1/2}`, defined for `a < 1`.
    pub fn c_q(&self) -> Option<Float> {
        if self.case() != IsingCase::Below {
            return None;
        }
        let b = self.prec.bits();
        let q4 = Float::with_val(b, self.q2().square_ref());
        let num = Float::with_val(b, self.r.square_ref()) - &q4;
        let r32 = Float::with_val(b, self.r.sqrt_ref()) * &self.r;
        let den2 = Float::with_val(b, &self.r - &q4).sqrt();
        Some(num / r32 / den2)
    }

    /// Default annulus: halfway between the unit circle and the nearest singularity on each side.
    pub fn default_annulus(&self) -> (f64, f64) {
        let q2 = self.q2().to_f64();
        let mut inner = q2;
        let mut outer = 1.0 / q2;
        if let Some(a) = self.a() {
            let a = a.to_f64();
            if a > 1.0 + CRITICAL_TOL {
                inner = inner.max(1.0 / a);
            } else if a < 1.0 - CRITICAL_TOL {
                outer = outer.min(1.0 / a);
            }
        }
        ((1.0 + inner) / 2.0, (1.0 + outer) / 2.0)
    }
}

/// `q (-i) sqrt(z - q^-2) sqrt(z - q^2) / sqrt(z)` with every square root cut along `[alpha, +inf)`.
pub fn phi_branch_product(q: &Float, z: &PrecComplex) -> PrecComplex {
    let p = z.precision();
    let q2 = PrecComplex::from_real(Float::with_val(p.bits(), q * q));
    let qm2 = q2.recip();
    let minus_i = -PrecComplex::i(p);
    let raw = &minus_i * &(z - &qm2).sqrt_upper() * (z - &q2).sqrt_upper() / z.sqrt_upper();
    raw.scale(q)
}

/// The Ising `phi`: `sqrt(1 - q^2 z) sqrt(1 - q^2/z)`, principal branches, on `q^2 < |z| < q^-2`.
pub fn phi(params: &IsingParams) -> AnnulusFunction {
    let q2 = params.q2();
    let (r_i, r_o) = params.default_annulus();
    AnnulusFunction::new(r_i, r_o, move |z| {
        let one = PrecComplex::one(z.precision());
        let c = PrecComplex::from_real(q2.clone());
        let a = (&one - &(&c * z)).sqrt();
        let b = (&one - &(&c / z)).sqrt();
        a * b
    })
}

/// The base symbol `d(z; q)`, with the removable factor cancelled on the critical locus.
pub fn d(params: &IsingParams) -> AnnulusFunction {
    if params.case() == IsingCase::Critical {
        return d_critical(params);
    }
    let q2 = params.q2();
    let r = params.r.clone();
    let (r_i, r_o) = params.default_annulus();
    AnnulusFunction::new(r_i, r_o, move |z| {
        let c = PrecComplex::from_real(q2.clone());
        let rr = PrecComplex::from_real(r.clone());
        let one = PrecComplex::one(z.precision());
        let num = (&(&rr * z) - &c) * (&(&c * z) - &one);
        let den = (z - &c) * (&(&c * z) - &rr);
        -(num / den)
    })
}

/// Critical `d` with the common factor cancelled: `-(q^2 z - 1)/(z - q^2)`.
fn d_critical(params: &IsingParams) -> AnnulusFunction {
    let q2 = params.q2();
    let (r_i, r_o) = params.default_annulus();
    AnnulusFunction::new(r_i, r_o, move |z| {
        let c = PrecComplex::from_real(q2.clone());
        let one = PrecComplex::one(z.precision());
        -((&(&c * z) - &one) / (z - &c))
    })
}

/// Per-phase symbol data for the magnetization determinant.
#[derive(Clone, Debug)]
pub struct IsingSymbols {
    pub case: IsingCase,
    pub phi: AnnulusFunction,
    /// Multiplier `m` with `w = m phi` (`z^2 d`, `z d`, `z^2 d` or `d`).
    pub multiplier: AnnulusFunction,
    pub hankel: AnnulusFunction,
    /// Coefficient `(1-r)^{3/2} c(q)` and ratio `a` of the exact geometric term `gamma_k`, `a < 1` only.
    pub geometric: Option<(Float, Float)>,
    pub offsets: (i64, i64),
}

/// Symbol pair and offsets for the phase of `params`.
pub fn ising_symbols(params: &IsingParams) -> Result<IsingSymbols> {
    let case = params.case();
    let ph = phi(params);
    let multiplier = match case {
        IsingCase::Critical => d(params).shift(1),
        IsingCase::Above | IsingCase::ZeroR => d(params).shift(2),
        IsingCase::Below => d(params),
    };
    let hankel = multiplier.mul(&ph);
    let geometric = match case {
        IsingCase::Below => {
            let b = params.prec.bits();
            let one_minus_r = Float::with_val(b, 1 - &params.r);
            let f = Float::with_val(b, one_minus_r.sqrt_ref()) * &one_minus_r;
            Some((f * params.c_q().expect("a<1"), params.a().expect("r>0")))
        }
        _ => None,
    };
    Ok(IsingSymbols { case, phi: ph, multiplier, hankel, geometric, offsets: case.offsets() })
}
