//! Szegő functions, the Cauchy transform `C_rho` and the explicit 4x4 model problem `Lambda`.
//!
//! Every Cauchy transform is realized as a split of a Laurent series: for a function `f` on the
//! unit circle with coefficients `c_k`, the interior part is `sum_{k>=0} c_k z^k` and the
//! exterior part `sum_{k<0} c_k z^k`. Boundary values on the circle are the series themselves.

use rug::Float;

use crate::error::{Error, Result};
use crate::fourier::{coeffs_from_samples, LaurentSeries, Twiddles};
use crate::numerics::{PrecComplex, PrecMatrix, Precision};
use crate::symbols::{log_on_circle, AnnulusFunction};

/// Which side of the unit circle a branch lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn of(z: &PrecComplex) -> Result<Side> {
        let m = z.abs_f64();
        if (m - 1.0).abs() < 1e-14 {
            Err(Error::OnCircle)
        } else if m < 1.0 {
            Ok(Side::Inner)
        } else {
            Ok(Side::Outer)
        }
    }
}

/// Multiplicative Wiener-Hopf split of a zero-winding symbol.
#[derive(Clone, Debug)]
pub struct SzegoData {
    pub ln_coeffs: LaurentSeries,
    pub alpha0: PrecComplex,
}

impl SzegoData {
    /// `exp(sum_{k>=0} c_k z^k)`.
    pub fn interior(&self, z: &PrecComplex) -> PrecComplex {
        self.ln_coeffs.eval_range(z, 0, self.ln_coeffs.order() as i64).exp()
    }

    /// `exp(-sum_{k>=1} c_{-k} z^{-k})`.
    pub fn exterior(&self, z: &PrecComplex) -> PrecComplex {
        (-self.ln_coeffs.eval_range(z, -(self.ln_coeffs.order() as i64), -1)).exp()
    }

    /// The branch of the sectionally analytic function on the side containing `z`.
    pub fn eval(&self, z: &PrecComplex) -> Result<PrecComplex> {
        Ok(match Side::of(z)? {
            Side::Inner => self.interior(z),
            Side::Outer => self.exterior(z),
        })
    }
}

/// Splits `f` into interior and exterior Szegő factors from `nodes` circle samples of `log f`.
pub fn szego_split(f: &AnnulusFunction, p: Precision, m: usize, nodes: usize) -> Result<SzegoData> {
    let logs = log_on_circle(f, p, nodes)?;
    let tw = Twiddles::new(p, nodes);
    let ln_coeffs = coeffs_from_samples(&tw, &logs, m, f.r_i(), f.r_o())?;
    let alpha0 = ln_coeffs.coeff(0).exp();
    Ok(SzegoData { ln_coeffs, alpha0 })
}

/// Laurent coefficients of `rho_hat = 1/(beta_- beta_+ tilde-alpha_- alpha_+)` on the circle.
#[derive(Clone, Debug)]
pub struct RhoKernel {
    pub coeffs: LaurentSeries,
}

impl RhoKernel {
    pub fn new(alpha: &SzegoData, beta: &SzegoData, p: Precision, m: usize, nodes: usize) -> Result<Self> {
        let tw = Twiddles::new(p, nodes);
        let samples: Vec<PrecComplex> = (0..nodes)
            .map(|j| {
                let t = tw.root(j);
                let prod = beta.exterior(t) * beta.interior(t) * alpha.interior(&t.recip()) * alpha.interior(t);
                prod.recip()
            })
            .collect();
        Ok(Self { coeffs: coeffs_from_samples(&tw, &samples, m, 0.0, f64::INFINITY)? })
    }

    /// `rho_hat(tau)` reconstructed from its series.
    pub fn eval(&self, tau: &PrecComplex) -> PrecComplex {
        self.coeffs.eval_unchecked(tau)
    }

    /// `C_rho` on a given side: `-sum_{k>=0} rho_k z^k` inside, `sum_{k<=-1} rho_k z^k` outside.
    pub fn c_rho_side(&self, z: &PrecComplex, side: Side) -> PrecComplex {
        let m = self.coeffs.order() as i64;
        match side {
            Side::Inner => -self.coeffs.eval_range(z, 0, m),
            Side::Outer => self.coeffs.eval_range(z, -m, -1),
        }
    }

    pub fn c_rho(&self, z: &PrecComplex) -> Result<PrecComplex> {
        Ok(self.c_rho_side(z, Side::of(z)?))
    }
}

/// `C_rho(z)` for the pair of Szegő splits of `phi` and `d`.
pub fn c_rho(alpha: &SzegoData, beta: &SzegoData, z: &PrecComplex, p: Precision, m: usize, nodes: usize) -> Result<PrecComplex> {
    RhoKernel::new(alpha, beta, p, m, nodes)?.c_rho(z)
}

/// Verifies `d(z) d(1/z) = 1` at 256 circle nodes to `10^-(P-20)`.
pub fn check_factorizable(d: &AnnulusFunction, p: Precision) -> Result<()> {
    let tw = Twiddles::new(p, 256);
    let one = PrecComplex::one(p);
    let mut worst = Float::new(p.bits());
    for j in 0..tw.len() {
        let z = tw.root(j);
        let dev = (d.eval_unchecked(z) * d.eval_unchecked(&z.recip()) - &one).abs();
        if dev > worst {
            worst = dev;
        }
    }
    if worst > p.eps_scaled(20) {
        return Err(Error::ModelNotFactorizable(worst.to_f64()));
    }
    Ok(())
}

/// Values of the sectionally analytic model ingredients at one point.
#[derive(Clone, Debug)]
pub struct BoundaryValues {
    pub alpha: PrecComplex,
    pub beta: PrecComplex,
    pub alpha_tilde: PrecComplex,
    pub c_rho: PrecComplex,
}

/// All data of the model problem for a factorizable pair `(phi, d phi)`.
#[derive(Clone, Debug)]
pub struct SzegoModel {
    pub phi: AnnulusFunction,
    pub d: AnnulusFunction,
    pub w: AnnulusFunction,
    pub alpha: SzegoData,
    pub beta: SzegoData,
    pub rho: RhoKernel,
    pub prec: Precision,
}

impl SzegoModel {
    pub fn new(phi: AnnulusFunction, d: AnnulusFunction, p: Precision, m: usize, nodes: usize) -> Result<Self> {
        check_factorizable(&d, p)?;
        let alpha = szego_split(&phi, p, m, nodes)?;
        let beta = szego_split(&d, p, m, nodes)?;
        let rho = RhoKernel::new(&alpha, &beta, p, m, nodes)?;
        let w = d.mul(&phi);
        Ok(Self { phi, d, w, alpha, beta, rho, prec: p })
    }

    pub fn alpha0(&self) -> &PrecComplex {
        &self.alpha.alpha0
    }

    /// `C_rho(0)`.
    pub fn c_rho0(&self) -> PrecComplex {
        -self.rho.coeffs.coeff(0)
    }

    /// Annulus `r_i < |z| < r_o` shared by the symbols.
    pub fn annulus(&self) -> (f64, f64) {
        (self.phi.r_i().max(self.d.r_i()), self.phi.r_o().min(self.d.r_o()))
    }

    /// `r_0 = max(r_i, 1/r_o)`.
    pub fn r0(&self) -> f64 {
        let (r_i, r_o) = self.annulus();
        r_i.max(1.0 / r_o)
    }

    /// Branch values at `z`; `side` selects the series, so `z` may lie on the circle.
    pub fn boundary(&self, z: &PrecComplex, side: Side) -> BoundaryValues {
        let zi = z.recip();
        match side {
            Side::Inner => BoundaryValues {
                alpha: self.alpha.interior(z),
                beta: self.beta.interior(z),
                alpha_tilde: self.alpha.exterior(&zi),
                c_rho: self.rho.c_rho_side(z, Side::Inner),
            },
            Side::Outer => BoundaryValues {
                alpha: self.alpha.exterior(z),
                beta: self.beta.exterior(z),
                alpha_tilde: self.alpha.interior(&zi),
                c_rho: self.rho.c_rho_side(z, Side::Outer),
            },
        }
    }

    fn lambda_inf_inv(&self) -> PrecMatrix {
        let p = self.prec;
        let mut m = PrecMatrix::zeros(p, 4, 4);
        m[(0, 3)] = PrecComplex::one(p);
        m[(1, 0)] = PrecComplex::one(p);
        m[(2, 2)] = self.alpha0().recip();
        m[(3, 1)] = self.alpha0().clone();
        m
    }

    /// `Lambda` from the branch values `v`, with the inner or outer algebraic form.
    pub fn lambda_from(&self, v: &BoundaryValues, side: Side) -> PrecMatrix {
        let p = self.prec;
        let mut b = PrecMatrix::zeros(p, 4, 4);
        let BoundaryValues { alpha, beta, alpha_tilde, c_rho } = v;
        match side {
            Side::Inner => {
                b[(0, 0)] = -beta.clone();
                b[(1, 2)] = (alpha_tilde * beta * alpha).recip();
                b[(2, 1)] = -alpha_tilde.clone();
                b[(3, 3)] = -alpha.clone();
            }
            Side::Outer => {
                b[(0, 1)] = beta.clone();
                b[(1, 3)] = (beta * alpha_tilde * alpha).recip();
                b[(2, 2)] = alpha_tilde.clone();
                b[(3, 0)] = alpha.clone();
            }
        }
        let mut lower = PrecMatrix::identity(p, 4);
        lower[(1, 0)] = c_rho.clone();
        let inner = lower.matmul(&b).expect("4x4");
        self.lambda_inf_inv().matmul(&inner).expect("4x4")
    }

    /// `Lambda(z)` off the circle.
    pub fn lambda(&self, z: &PrecComplex) -> Result<PrecMatrix> {
        let side = Side::of(z)?;
        Ok(self.lambda_from(&self.boundary(z, side), side))
    }

    /// `J_Lambda(tau)` built from `phi`, `w` and their reflections.
    pub fn jump(&self, tau: &PrecComplex) -> PrecMatrix {
        let p = self.prec;
        let ti = tau.recip();
        let phi = self.phi.eval_unchecked(tau);
        let phi_t = self.phi.eval_unchecked(&ti);
        let w = self.w.eval_unchecked(tau);
        let w_t = self.w.eval_unchecked(&ti);
        let mut j = PrecMatrix::zeros(p, 4, 4);
        j[(0, 3)] = -phi.clone();
        j[(1, 0)] = -(&w / &phi);
        j[(1, 2)] = &phi_t - &(&w * &w_t / &phi);
        j[(2, 1)] = -phi_t.recip();
        j[(3, 0)] = phi.recip();
        j[(3, 2)] = &w_t / &phi;
        j
    }

    /// `||Lambda_+(tau) - Lambda_-(tau) J_Lambda(tau)||_inf`.
    pub fn lambda_jump_residual(&self, tau: &PrecComplex) -> Float {
        self.jump_residual_sides(tau, Side::Inner, Side::Outer)
    }

    /// The same residual with the two branches exchanged; a correct model fails this badly.
    pub fn lambda_jump_residual_swapped(&self, tau: &PrecComplex) -> Float {
        self.jump_residual_sides(tau, Side::Outer, Side::Inner)
    }

    fn jump_residual_sides(&self, tau: &PrecComplex, plus: Side, minus: Side) -> Float {
        let lp = self.lambda_from(&self.boundary(tau, plus), plus);
        let lm = self.lambda_from(&self.boundary(tau, minus), minus);
        let rhs = lm.matmul(&self.jump(tau)).expect("4x4");
        lp.sub(&rhs).expect("4x4").norm_inf()
    }

    /// Largest jump residual over the `nodes` roots of unity.
    pub fn max_jump_residual(&self, nodes: usize) -> Float {
        let tw = Twiddles::new(self.prec, nodes);
        (0..nodes)
            .map(|j| self.lambda_jump_residual(tw.root(j)))
            .fold(Float::new(self.prec.bits()), |a, b| if b > a { b } else { a })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::det_lu;

    fn p() -> Precision {
        Precision::from_digits(50)
    }

    fn trivial() -> SzegoModel {
        let one = AnnulusFunction::constant(PrecComplex::one(p()));
        SzegoModel::new(one.clone(), one, p(), 16, 64).unwrap()
    }

    #[test]
    fn trivial_split() {
        let m = trivial();
        let z = p().complex(0.3, 0.2);
        assert!((&m.alpha.interior(&z) - &PrecComplex::one(p())).abs() < 1e-45);
        assert!((&m.alpha.exterior(&z.recip()) - &PrecComplex::one(p())).abs() < 1e-45);
        assert!((&m.c_rho0() + &PrecComplex::one(p())).abs() < 1e-45);
        assert!(m.rho.c_rho(&p().complex(2.0, 0.0)).unwrap().abs() < 1e-45);
    }

    #[test]
    fn exp_split_is_one_sided() {
        let f = AnnulusFunction::new(0.0, f64::INFINITY, |z| z.exp());
        let s = szego_split(&f, p(), 32, 128).unwrap();
        let z = p().complex(0.4, -0.3);
        assert!((&s.interior(&z) - &z.exp()).abs() < 1e-40);
        assert!((&s.exterior(&z.recip()) - &PrecComplex::one(p())).abs() < 1e-40);
        assert!((&s.alpha0 - &PrecComplex::one(p())).abs() < 1e-40);
    }

    #[test]
    fn on_circle_rejected() {
        let m = trivial();
        assert_eq!(m.rho.c_rho(&PrecComplex::one(p())).unwrap_err(), Error::OnCircle);
        assert!(m.lambda(&p().complex(0.0, 1.0)).is_err());
    }

    #[test]
    fn trivial_lambda_is_identity_outside() {
        let m = trivial();
        let l = m.lambda(&p().complex(3.0, 1.0)).unwrap();
        assert!(l.sub(&PrecMatrix::identity(p(), 4)).unwrap().max_abs() < 1e-45);
        assert!(m.lambda_jump_residual(&PrecComplex::one(p())) < 1e-45);
        let det = det_lu(&m.lambda(&p().complex(0.2, 0.1)).unwrap()).unwrap();
        assert!(det.abs() > 0.5);
    }

    #[test]
    fn non_factorizable_rejected() {
        let d = AnnulusFunction::from_expr("2 + z/10", p(), 0.5, 2.0).unwrap();
        let phi = AnnulusFunction::constant(PrecComplex::one(p()));
        assert!(matches!(SzegoModel::new(phi, d, p(), 16, 64), Err(Error::ModelNotFactorizable(_))));
    }
}
