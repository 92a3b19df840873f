use rug::Float;

use super::ising::{ising_symbols, IsingParams};
use super::AnnulusFunction;
use crate::error::{Error, Result};
use crate::numerics::{PrecComplex, Precision};

/// A Toeplitz symbol `phi` and Hankel symbol `w`, with the factor `d = w/phi` when available.
#[derive(Clone, Debug)]
pub struct SymbolPair {
    pub name: String,
    pub phi: AnnulusFunction,
    pub d: Option<AnnulusFunction>,
    pub w: AnnulusFunction,
    /// Offsets attached to the family, if it prescribes them.
    pub offsets: Option<(i64, i64)>,
    /// Exact geometric Hankel term `(K, a)` contributing `K a^k` to `w_k` for `k >= 0`.
    pub geometric: Option<(Float, Float)>,
}

impl SymbolPair {
    pub fn from_phi_d(name: impl Into<String>, phi: AnnulusFunction, d: AnnulusFunction) -> Self {
        let w = d.mul(&phi);
        Self { name: name.into(), phi, d: Some(d), w, offsets: None, geometric: None }
    }

    /// Radii of the annulus on which both symbols (and `d`) are analytic.
    pub fn annulus(&self) -> (f64, f64) {
        let mut r_i = self.phi.r_i().max(self.w.r_i());
        let mut r_o = self.phi.r_o().min(self.w.r_o());
        if let Some(d) = &self.d {
            r_i = r_i.max(d.r_i());
            r_o = r_o.min(d.r_o());
        }
        (r_i, r_o)
    }

    /// Overrides every radius, for callers that know a wider analyticity region.
    pub fn with_annulus(mut self, r_i: f64, r_o: f64) -> Self {
        self.phi = self.phi.with_radii(r_i, r_o);
        self.w = self.w.with_radii(r_i, r_o);
        self.d = self.d.map(|d| d.with_radii(r_i, r_o));
        self
    }
}

/// Built-in and user-defined symbol families.
#[derive(Clone, Debug)]
pub enum SymbolFamily {
    /// `phi = 1`, `d = 1`.
    Trivial,
    /// `phi = exp(z/2 + 3/(10 z))`, `d = exp(2(z - 1/z)/5)`; entire away from the origin.
    ExpType,
    /// `phi = (1 - 3z/10)(1 - 3/(10 z))`, `d = (1 - 2/(5z))/(1 - 2z/5)`.
    Rational,
    Ising { q: String, r: String },
    Custom { phi: String, d: Option<String>, w: Option<String>, r_i: f64, r_o: f64 },
}

impl SymbolFamily {
    pub fn build(&self, p: Precision) -> Result<SymbolPair> {
        match self {
            SymbolFamily::Trivial => {
                let one = AnnulusFunction::constant(PrecComplex::one(p));
                Ok(SymbolPair::from_phi_d("trivial", one.clone(), one))
            }
            SymbolFamily::ExpType => {
                let phi = AnnulusFunction::from_expr("exp(z/2 + 3/(10*z))", p, 0.0, f64::INFINITY)?;
                let d = AnnulusFunction::from_expr("exp(2*(z - 1/z)/5)", p, 0.0, f64::INFINITY)?;
                Ok(SymbolPair::from_phi_d("exp", phi, d))
            }
            SymbolFamily::Rational => {
                let phi = AnnulusFunction::from_expr("(1 - 3*z/10)*(1 - 3/(10*z))", p, 0.3, 1.0 / 0.3)?;
                let d = AnnulusFunction::from_expr("(1 - 2/(5*z))/(1 - 2*z/5)", p, 0.4, 2.5)?;
                Ok(SymbolPair::from_phi_d("rational", phi, d))
            }
            SymbolFamily::Ising { q, r } => {
                let params = IsingParams::new(p, q, r)?;
                let s = ising_symbols(&params)?;
                let mut pair = SymbolPair::from_phi_d(format!("ising[{}]", s.case.label()), s.phi, s.multiplier);
                pair.offsets = Some(s.offsets);
                if let Some((k, a)) = s.geometric {
                    let (kk, aa) = (k.clone(), a.clone());
                    let gamma = AnnulusFunction::new(0.0, 1.0 / a.to_f64(), move |z| {
                        let one = PrecComplex::one(z.precision());
                        let az = z.scale(&aa);
                        PrecComplex::from_real(kk.clone()) / (one - az)
                    });
                    pair.w = pair.w.add(&gamma);
                    pair.d = None;
                    pair.geometric = Some((k, a));
                }
                Ok(pair)
            }
            SymbolFamily::Custom { phi, d, w, r_i, r_o } => {
                let phi_f = AnnulusFunction::from_expr(phi, p, *r_i, *r_o)?;
                match (d, w) {
                    (Some(d), None) => {
                        let d_f = AnnulusFunction::from_expr(d, p, *r_i, *r_o)?;
                        Ok(SymbolPair::from_phi_d("custom", phi_f, d_f))
                    }
                    (None, Some(w)) => {
                        let w_f = AnnulusFunction::from_expr(w, p, *r_i, *r_o)?;
                        Ok(SymbolPair { name: "custom".into(), phi: phi_f, d: None, w: w_f, offsets: None, geometric: None })
                    }
                    _ => Err(Error::InvalidParams("custom symbols need exactly one of d or w".into())),
                }
            }
        }
    }
}
