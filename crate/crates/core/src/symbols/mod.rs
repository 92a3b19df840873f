//! Symbols analytic on an annulus around the unit circle, and their circle-level algebra.

pub mod expr;
pub mod families;
pub mod ising;

use std::fmt;
use std::sync::Arc;

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{PrecComplex, Precision};

pub use families::{SymbolFamily, SymbolPair};
pub use ising::{ising_symbols, IsingCase, IsingParams, IsingSymbols};

type EvalFn = dyn Fn(&PrecComplex) -> PrecComplex + Send + Sync;

/// Function analytic on `r_i < |z| < r_o`.
#[derive(Clone)]
pub struct AnnulusFunction {
    f: Arc<EvalFn>,
    r_i: f64,
    r_o: f64,
    winding: Option<i64>,
}

impl fmt::Debug for AnnulusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnnulusFunction")
            .field("r_i", &self.r_i)
            .field("r_o", &self.r_o)
            .field("winding", &self.winding)
            .finish()
    }
}

impl AnnulusFunction {
    pub fn new(r_i: f64, r_o: f64, f: impl Fn(&PrecComplex) -> PrecComplex + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f), r_i, r_o, winding: None }
    }

    pub fn constant(c: PrecComplex) -> Self {
        Self::new(0.0, f64::INFINITY, move |_| c.clone())
    }

    /// `z^k`, analytic on the punctured plane.
    pub fn monomial(k: i64) -> Self {
        Self::new(0.0, f64::INFINITY, move |z| z.powi(k))
    }

    pub fn from_expr(src: &str, p: Precision, r_i: f64, r_o: f64) -> Result<Self> {
        let e = expr::parse(src, p)?;
        Ok(Self::new(r_i, r_o, move |z| e.eval(z)))
    }

    pub fn r_i(&self) -> f64 {
        self.r_i
    }

    pub fn r_o(&self) -> f64 {
        self.r_o
    }

    pub fn cached_winding(&self) -> Option<i64> {
        self.winding
    }

    pub fn contains(&self, z: &PrecComplex) -> bool {
        let m = z.abs_f64();
        self.r_i < m && m < self.r_o
    }

    pub fn eval(&self, z: &PrecComplex) -> Result<PrecComplex> {
        if !self.contains(z) {
            return Err(Error::OutsideAnnulus { modulus: z.abs_f64(), r_i: self.r_i, r_o: self.r_o });
        }
        Ok((self.f)(z))
    }

    /// Evaluation without the annulus check, for callers that already validated their contour.
    pub fn eval_unchecked(&self, z: &PrecComplex) -> PrecComplex {
        (self.f)(z)
    }

    pub fn with_radii(mut self, r_i: f64, r_o: f64) -> Self {
        self.r_i = r_i;
        self.r_o = r_o;
        self
    }

    /// `z -> f(1/z)` on the reflected annulus.
    pub fn tilde(&self) -> Self {
        let f = self.f.clone();
        let r_i = if self.r_o.is_infinite() { 0.0 } else { 1.0 / self.r_o };
        let r_o = if self.r_i == 0.0 { f64::INFINITY } else { 1.0 / self.r_i };
        Self { f: Arc::new(move |z: &PrecComplex| f(&z.recip())), r_i, r_o, winding: self.winding.map(|w| -w) }
    }

    /// Pointwise product on the intersection of the two annuli.
    pub fn mul(&self, o: &AnnulusFunction) -> Self {
        let (f, g) = (self.f.clone(), o.f.clone());
        let winding = match (self.winding, o.winding) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self { f: Arc::new(move |z: &PrecComplex| f(z) * g(z)), r_i: self.r_i.max(o.r_i), r_o: self.r_o.min(o.r_o), winding }
    }

    pub fn add(&self, o: &AnnulusFunction) -> Self {
        let (f, g) = (self.f.clone(), o.f.clone());
        Self { f: Arc::new(move |z: &PrecComplex| f(z) + g(z)), r_i: self.r_i.max(o.r_i), r_o: self.r_o.min(o.r_o), winding: None }
    }

    /// `z^k f(z)`.
    pub fn shift(&self, k: i64) -> Self {
        let f = self.f.clone();
        Self {
            f: Arc::new(move |z: &PrecComplex| f(z) * z.powi(k)),
            r_i: self.r_i,
            r_o: self.r_o,
            winding: self.winding.map(|w| w + k),
        }
    }

    /// Computes and caches the winding number.
    pub fn with_winding(mut self, p: Precision, nodes: usize) -> Result<Self> {
        self.winding = Some(winding_number(&self, p, nodes)?);
        Ok(self)
    }

    /// Samples `f` at the `n` roots of unity.
    pub fn sample_circle(&self, p: Precision, n: usize) -> Vec<PrecComplex> {
        let one = Float::with_val(p.bits(), 1);
        (0..n).map(|j| (self.f)(&PrecComplex::root_of_unity(p, j as i64, n as u64, &one))).collect()
    }
}

const MAX_WINDING_NODES: usize = 1 << 16;

fn check_nonzero(samples: &[PrecComplex], p: Precision) -> Result<()> {
    let max = samples.iter().map(|s| s.abs()).fold(Float::new(p.bits()), |a, b| if b > a { b } else { a });
    let floor = max * p.eps_scaled(10);
    if samples.iter().any(|s| !s.is_finite() || s.abs() <= floor) {
        return Err(Error::ZeroOnCircle);
    }
    Ok(())
}

/// Principal phase increments `arg(f_{j+1}/f_j)` around the circle, or `None` if any reaches `pi/2`.
fn phase_steps(samples: &[PrecComplex], p: Precision) -> Option<Vec<PrecComplex>> {
    let half_pi = Float::with_val(p.bits(), Constant::Pi) / 2u32;
    let n = samples.len();
    let mut steps = Vec::with_capacity(n);
    for j in 0..n {
        let r = (&samples[(j + 1) % n] / &samples[j]).ln();
        if Float::with_val(p.bits(), r.im.abs_ref()) >= half_pi {
            return None;
        }
        steps.push(r);
    }
    Some(steps)
}

/// Winding number of `f` about the origin along the unit circle.
///
/// The node count doubles while any adjacent phase jump reaches `pi/2`.
pub fn winding_number(f: &AnnulusFunction, p: Precision, nodes: usize) -> Result<i64> {
    if !(f.r_i < 1.0 && 1.0 < f.r_o) {
        return Err(Error::OutsideAnnulus { modulus: 1.0, r_i: f.r_i, r_o: f.r_o });
    }
    let mut n = nodes.max(256);
    loop {
        let samples = f.sample_circle(p, n);
        check_nonzero(&samples, p)?;
        if let Some(steps) = phase_steps(&samples, p) {
            let mut total = Float::new(p.bits());
            for s in &steps {
                total += &s.im;
            }
            let two_pi = Float::with_val(p.bits(), Constant::Pi) * 2u32;
            let w = (total / two_pi).to_f64().round() as i64;
            return Ok(w);
        }
        if n >= MAX_WINDING_NODES {
            return Err(Error::PhaseUnresolved { nodes: n });
        }
        n *= 2;
    }
}

/// Continuous logarithm of `f` sampled at the `nodes` roots of unity.
///
/// `L_0` is the principal logarithm at `z = 1`; later samples accumulate principal logarithms of
/// adjacent ratios, so consecutive imaginary parts differ by less than `pi/2`.
pub fn log_on_circle(f: &AnnulusFunction, p: Precision, nodes: usize) -> Result<Vec<PrecComplex>> {
    let samples = f.sample_circle(p, nodes);
    check_nonzero(&samples, p)?;
    let steps = phase_steps(&samples, p).ok_or(Error::PhaseUnresolved { nodes })?;
    let mut total = Float::new(p.bits());
    for s in &steps {
        total += &s.im;
    }
    let two_pi = Float::with_val(p.bits(), Constant::Pi) * 2u32;
    let w = (total / two_pi).to_f64().round() as i64;
    if w != 0 {
        return Err(Error::NonzeroWinding(w));
    }
    let mut out = Vec::with_capacity(nodes);
    let mut cur = samples[0].ln();
    out.push(cur.clone());
    for s in steps.iter().take(nodes - 1) {
        cur += s;
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::from_digits(50)
    }

    #[test]
    fn constant_and_monomial_eval() {
        let c = AnnulusFunction::constant(PrecComplex::one(p()));
        assert_eq!(c.eval(&p().complex(0.0, 1.0)).unwrap(), PrecComplex::one(p()));
        let m = AnnulusFunction::monomial(2);
        assert_eq!(m.eval(&p().complex(2.0, 0.0)).unwrap(), p().complex(4.0, 0.0));
    }

    #[test]
    fn outside_annulus_is_rejected() {
        let f = AnnulusFunction::monomial(1).with_radii(0.5, 2.0);
        assert!(matches!(f.eval(&p().complex(3.0, 0.0)), Err(Error::OutsideAnnulus { .. })));
    }

    #[test]
    fn tilde_is_reciprocal_and_involutive() {
        let f = AnnulusFunction::monomial(1).with_radii(0.25, 4.0);
        let g = f.tilde();
        assert_eq!(g.eval(&p().complex(2.0, 0.0)).unwrap(), p().complex(0.5, 0.0));
        assert_eq!((g.r_i(), g.r_o()), (0.25, 4.0));
        let z = p().complex(0.3, 0.9);
        let back = g.tilde().eval(&z).unwrap();
        assert!((&back - &z).abs() < 1e-45);
    }

    #[test]
    fn winding_of_monomials() {
        for k in [-3i64, 0, 2, 5] {
            assert_eq!(winding_number(&AnnulusFunction::monomial(k), p(), 256).unwrap(), k);
            assert_eq!(winding_number(&AnnulusFunction::monomial(k).tilde(), p(), 256).unwrap(), -k);
        }
    }

    #[test]
    fn winding_doubles_nodes_for_fast_phase() {
        assert_eq!(winding_number(&AnnulusFunction::monomial(100), p(), 256).unwrap(), 100);
    }

    #[test]
    fn zero_on_circle_detected() {
        let f = AnnulusFunction::new(0.5, 2.0, |z| z - &PrecComplex::one(z.precision()));
        assert_eq!(winding_number(&f, p(), 256), Err(Error::ZeroOnCircle));
    }

    #[test]
    fn log_of_exp_is_identity() {
        let f = AnnulusFunction::new(0.0, f64::INFINITY, |z| z.exp());
        let logs = log_on_circle(&f, p(), 256).unwrap();
        let nodes = AnnulusFunction::monomial(1).sample_circle(p(), 256);
        for (l, z) in logs.iter().zip(&nodes) {
            assert!((l - z).abs() < 1e-45);
        }
    }

    #[test]
    fn log_rejects_winding() {
        assert_eq!(log_on_circle(&AnnulusFunction::monomial(1), p(), 256), Err(Error::NonzeroWinding(1)));
    }
}
