//! Closed-form offset reductions: the (0,1), (0,0) and (0,2) problems in terms of X-problem
//! data, each with a plug-back residual into its defining linear equations, plus the exact
//! formula for `h^(0,1)_{n-1}`.

use rug::Float;

use super::rhp::RHPData;
use crate::error::{Error, Result};
use crate::numerics::{solve_linear, PrecComplex, PrecMatrix, Precision};

type C = PrecComplex;

/// Rejects `value` when `|value| <= 10^-(P-5) * scale`.
fn require_nonzero(name: &str, value: &C, scale: &Float, p: Precision) -> Result<()> {
    let floor = Float::with_val(p.bits(), scale * p.eps_scaled(5));
    if !value.is_finite() || value.abs() <= floor {
        return Err(Error::GenericConditionFailed(format!("{name} = {:e} is below {:e}", value.abs().to_f64(), floor.to_f64())));
    }
    Ok(())
}

/// `|sum t| / sum |t|`, zero for an all-zero list.
pub fn scaled_residual(terms: &[C]) -> Float {
    let p = terms[0].precision();
    let mut sum = C::zero(p);
    let mut mag = Float::new(p.bits());
    for t in terms {
        sum += t;
        mag += t.abs();
    }
    if mag.is_zero() {
        mag
    } else {
        sum.abs() / mag
    }
}

fn max_f(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

fn p_scale(d: &RHPData) -> Float {
    let m = d.p.max_abs();
    Float::with_val(m.prec(), &m * &m)
}

/// The eight `U1^inf_{j1}, U1^inf_{j3}` entries of the (0,1) reduction.
#[derive(Clone, Debug)]
pub struct Offset01Solution {
    /// `u[j-1] = (U_j1, U_j3)`.
    pub u: [(C, C); 4],
    pub den: C,
}

impl Offset01Solution {
    pub fn get(&self, j: usize, col: usize) -> &C {
        match col {
            1 => &self.u[j - 1].0,
            3 => &self.u[j - 1].1,
            _ => panic!("column must be 1 or 3"),
        }
    }
}

pub fn solve_offset01(d: &RHPData) -> Result<Offset01Solution> {
    let pe = |i, j| d.pe(i, j);
    let x = |i, j| d.x1inf.get(i, j);
    let den = pe(1, 1) * pe(3, 3) - pe(1, 3) * pe(3, 1);
    require_nonzero("P11 P33 - P13 P31", &den, &p_scale(d), d.precision())?;
    let row = |i: usize| -> Result<(C, C)> {
        let s1 = x(i, 2)? * pe(2, 1) + x(i, 4)? * pe(4, 1);
        let s3 = x(i, 2)? * pe(2, 3) + x(i, 4)? * pe(4, 3);
        let ui1 = x(i, 1)? + &((pe(3, 3) * &s1 - pe(3, 1) * &s3) / &den);
        let ui3 = x(i, 3)? + &((pe(1, 1) * &s3 - pe(1, 3) * &s1) / &den);
        Ok((ui1, ui3))
    };
    let r1 = row(1)?;
    let r3 = row(3)?;
    let u21 = (pe(3, 1) * pe(2, 3) - pe(3, 3) * pe(2, 1)) / &den;
    let u23 = (pe(1, 3) * pe(2, 1) - pe(1, 1) * pe(2, 3)) / &den;
    let u41 = (pe(4, 3) * pe(3, 1) - pe(3, 3) * pe(4, 1)) / &den;
    let u43 = (pe(1, 3) * pe(4, 1) - pe(1, 1) * pe(4, 3)) / &den;
    Ok(Offset01Solution { u: [r1, (u21, u23), r3, (u41, u43)], den })
}

/// Constant part `R_0` of the rational factor `R(z) = R_0 + z diag(1,0,1,0)`.
pub fn offset01_constant_factor(d: &RHPData, sol: &Offset01Solution) -> Result<PrecMatrix> {
    let p = d.precision();
    let x = |i, j| d.x1inf.get(i, j);
    let z = C::zero(p);
    let one = C::one(p);
    let rows: [[C; 4]; 4] = [
        [sol.get(1, 1) - x(1, 1)?, -x(1, 2)?.clone(), sol.get(1, 3) - x(1, 3)?, -x(1, 4)?.clone()],
        [sol.get(2, 1).clone(), one.clone(), sol.get(2, 3).clone(), z.clone()],
        [sol.get(3, 1) - x(3, 1)?, -x(3, 2)?.clone(), sol.get(3, 3) - x(3, 3)?, -x(3, 4)?.clone()],
        [sol.get(4, 1).clone(), z, sol.get(4, 3).clone(), one],
    ];
    PrecMatrix::from_vec(4, 4, rows.into_iter().flatten().collect())
}

/// Largest scaled entry of the first and third columns of `R_0 P(n)`, which must vanish.
pub fn offset01_residual(d: &RHPData, sol: &Offset01Solution) -> Result<Float> {
    let r0 = offset01_constant_factor(d, sol)?;
    let mut worst = Float::new(d.precision().bits());
    for i in 0..4 {
        for c in [0usize, 2] {
            let terms: Vec<C> = (0..4).map(|k| &r0[(i, k)] * &d.p[(k, c)]).collect();
            worst = max_f(worst, scaled_residual(&terms));
        }
    }
    Ok(worst)
}

/// The (0,0) reduction: `Yhat_{j4}`, `Y1^inf_{j3}` and the intermediates.
#[derive(Clone, Debug)]
pub struct Offset00Solution {
    pub yhat: [C; 4],
    pub y: [C; 4],
    pub delta_offset00: C,
    pub lambda_offset00: C,
    pub den: C,
}

pub fn solve_offset00(d: &RHPData) -> Result<Offset00Solution> {
    let pe = |i, j| d.pe(i, j);
    let x = |i, j| d.x1inf.get(i, j);
    let x2_34 = d.x2inf.get(3, 4)?;
    let xc43 = d.x1circ.get(4, 3)?;
    let p33 = pe(3, 3);
    let x34 = x(3, 4)?;
    let den = p33 * p33 - x34 * xc43;
    let scale = max_f(p_scale(d), (x34 * xc43).abs());
    require_nonzero("P33^2 - X34 X43circ", &den, &scale, d.precision())?;

    let (x31, x32, x33, x44) = (x(3, 1)?, x(3, 2)?, x(3, 3)?, x(4, 4)?);
    let (x14, x24) = (x(1, 4)?, x(2, 4)?);
    let common = -x2_34.clone() + &(x31 * x14) + &(x32 * x24);
    let pk = x31 * pe(1, 3) + x32 * pe(2, 3);
    let delta = p33 * &(&common + &(x34 * x44)) - &(x34 * &(&pk + &(x34 * pe(4, 3))));
    let lambda = -(xc43 * &(&common + &(x34 * x33) + &(x34 * x44))) + &(p33 * &(&pk + &(x33 * p33) + &(x34 * pe(4, 3))));

    let mut yhat: [C; 4] = std::array::from_fn(|_| C::zero(d.precision()));
    let mut y = yhat.clone();
    for j in [1usize, 2] {
        yhat[j - 1] = (pe(j, 3) * x34 - p33 * x(j, 4)?) / &den;
        y[j - 1] = (xc43 * x(j, 4)? - p33 * pe(j, 3)) / &den;
    }
    yhat[2] = &delta / &den;
    y[2] = &lambda / &den;
    yhat[3] = p33 / &den;
    y[3] = -(xc43 / &den);
    Ok(Offset00Solution { yhat, y, delta_offset00: delta, lambda_offset00: lambda, den })
}

/// Largest scaled residual of the eight defining equations of the (0,0) reduction.
pub fn offset00_residual(d: &RHPData, s: &Offset00Solution) -> Result<Float> {
    let p = d.precision();
    let pe = |i, j| d.pe(i, j);
    let x = |i, j| d.x1inf.get(i, j);
    let x2_34 = d.x2inf.get(3, 4)?;
    let xc43 = d.x1circ.get(4, 3)?;
    let (p33, x34) = (pe(3, 3), x(3, 4)?);
    let one = C::one(p);
    let eqs: Vec<Vec<C>> = vec![
        vec![p33 * &s.yhat[0], x34 * &s.y[0], x(1, 4)?.clone()],
        vec![p33 * &s.yhat[1], x34 * &s.y[1], x(2, 4)?.clone()],
        vec![
            p33 * &s.yhat[2],
            x34 * &s.y[2],
            x2_34.clone(),
            -(x(3, 1)? * x(1, 4)?),
            -(x(3, 2)? * x(2, 4)?),
            -(x34 * x(3, 3)?),
            -(x34 * x(4, 4)?),
        ],
        vec![p33 * &s.yhat[3], x34 * &s.y[3], -one],
        vec![xc43 * &s.yhat[0], p33 * &s.y[0], pe(1, 3).clone()],
        vec![xc43 * &s.yhat[1], p33 * &s.y[1], pe(2, 3).clone()],
        vec![
            xc43 * &s.yhat[2],
            p33 * &s.y[2],
            -(x(3, 1)? * pe(1, 3)),
            -(x(3, 2)? * pe(2, 3)),
            -(x(3, 3)? * p33),
            -(x34 * pe(4, 3)),
        ],
        vec![xc43 * &s.yhat[3], p33 * &s.y[3]],
    ];
    Ok(eqs.iter().map(|e| scaled_residual(e)).fold(Float::new(p.bits()), max_f))
}

/// Helper objects shared by the four (0,2) systems.
#[derive(Clone, Debug)]
pub struct Offset02Helpers {
    pub a: PrecMatrix,
    pub b: PrecMatrix,
    pub c: PrecMatrix,
    pub d: PrecMatrix,
    pub alpha: C,
    pub theta: C,
    pub delta_offset02: C,
    /// The shared 4x4 coefficient matrix.
    pub system: PrecMatrix,
    /// Right-hand sides of the four systems.
    pub rhs: [[C; 4]; 4],
}

/// The (0,2) reduction: `t[j-1] = (T2_j1, T1_j1, T1_j3, T1_j4)`.
#[derive(Clone, Debug)]
pub struct Offset02Solution {
    pub t: [[C; 4]; 4],
    pub helpers: Offset02Helpers,
}

struct Objects<'a> {
    p: &'a PrecMatrix,
    a: &'a PrecMatrix,
    b: &'a PrecMatrix,
    alpha: C,
    theta: C,
    delta: C,
}

impl Objects<'_> {
    fn pe(&self, i: usize, j: usize) -> &C {
        &self.p[(i - 1, j - 1)]
    }
    fn eta(&self, j: usize) -> C {
        self.pe(1, j) / self.pe(1, 1)
    }
    fn rho(&self, j: usize) -> C {
        &self.a[(j - 1, 0)] - &(&self.a[(0, 0)] * self.pe(j, 1) / self.pe(1, 1))
    }
    fn nu(&self, j: usize) -> C {
        &self.b[(0, 0)] * self.pe(1, j) / self.pe(1, 1) - &self.b[(0, j - 1)]
    }
    fn omega(&self, j: usize, k: usize) -> C {
        self.pe(1, j) * self.pe(k, 1) / self.pe(1, 1)
    }
    fn m(&self, j: usize, k: usize) -> C {
        -(&self.alpha * &self.rho(k) * self.nu(j)) - &self.omega(j, k) + self.pe(k, j)
    }
    fn f(&self, j: usize, x: &C, y: &C, z: &C) -> C {
        &self.alpha * &self.nu(j) * (z - &(&self.theta * x)) + &(&self.eta(j) * x) - y
    }

    /// `(F1, F2, F3, F4)` at the right-hand side `(x, y, w, z)`.
    fn solve(&self, rhs: &[C; 4]) -> [C; 4] {
        let [x, y, w, z] = rhs;
        let (m33, m34, m43, m44) = (self.m(3, 3), self.m(3, 4), self.m(4, 3), self.m(4, 4));
        let f3 = self.f(3, x, y, z);
        let f4 = self.f(4, x, w, z);
        let p11 = self.pe(1, 1);
        let b11 = &self.b[(0, 0)];
        let ab = &self.alpha * b11;
        let zt = z - &(&self.theta * x);
        let ca = (self.pe(4, 1) + &(&ab * &self.rho(4))) / (p11 * &self.delta);
        let cb = (self.pe(3, 1) + &(&ab * &self.rho(3))) / (p11 * &self.delta);
        let f1 = x / p11 + &(&ab / p11 * &zt) + &((&ca * &m43 - &cb * &m44) * &f3) + &((&cb * &m34 - &ca * &m33) * &f4);
        let (r3, r4) = (self.rho(3), self.rho(4));
        let f2 = &self.alpha
            * (&zt + &((&r4 * &m43 - &r3 * &m44) / &self.delta * &f3) + &((&r3 * &m34 - &r4 * &m33) / &self.delta * &f4));
        let f3v = (&m44 * &f3 - &m34 * &f4) / &self.delta;
        let f4v = (&m33 * &f4 - &m43 * &f3) / &self.delta;
        [f1, f2, f3v, f4v]
    }
}

pub fn solve_offset02(d: &RHPData) -> Result<Offset02Solution> {
    let prec = d.precision();
    let x1 = d.x1inf.to_matrix()?;
    let x2 = d.x2inf.to_matrix()?;
    let xc = d.x1circ.to_matrix()?;
    let p = &d.p;
    let a = p.matmul(&xc)?;
    let b = x1.matmul(p)?;
    let c = x2.sub(&x1.matmul(&x1)?)?;
    let dm = p.sub(&x1.matmul(&a)?)?;
    let scale = p.max_abs().max(&Float::with_val(prec.bits(), 1e-300));
    let p11 = &p[(0, 0)];
    require_nonzero("P11", p11, &scale, prec)?;
    let alpha_inv = &a[(0, 0)] * &b[(0, 0)] / p11 + &dm[(0, 0)];
    let ab_scale = max_f((&a[(0, 0)] * &b[(0, 0)] / p11).abs(), dm[(0, 0)].abs());
    require_nonzero("alpha^-1", &alpha_inv, &ab_scale, prec)?;
    let mut o = Objects { p, a: &a, b: &b, alpha: alpha_inv.recip(), theta: &a[(0, 0)] / p11, delta: C::zero(prec) };
    let (m33, m34, m43, m44) = (o.m(3, 3), o.m(3, 4), o.m(4, 3), o.m(4, 4));
    let delta = &m34 * &m43 - &m33 * &m44;
    let dscale = max_f((&m34 * &m43).abs(), (&m33 * &m44).abs());
    require_nonzero("Delta", &delta, &dscale, prec)?;
    o.delta = delta.clone();

    let e = |m: &PrecMatrix, i: usize, j: usize| m[(i - 1, j - 1)].clone();
    let system = PrecMatrix::from_vec(
        4,
        4,
        vec![
            e(p, 1, 1), -e(&b, 1, 1), e(p, 3, 1), e(p, 4, 1),
            e(p, 1, 3), -e(&b, 1, 3), e(p, 3, 3), e(p, 4, 3),
            e(p, 1, 4), -e(&b, 1, 4), e(p, 3, 4), e(p, 4, 4),
            e(&a, 1, 1), e(&dm, 1, 1), e(&a, 3, 1), e(&a, 4, 1),
        ],
    )?;
    let cp = c.matmul(p)?;
    let cab = c.matmul(&a)?;
    let rhs = [
        [e(&cp, 1, 1), e(&cp, 1, 3), e(&cp, 1, 4), e(&cab, 1, 1) + &e(&b, 1, 1)],
        [-e(p, 2, 1), -e(p, 2, 3), -e(p, 2, 4), -e(&a, 2, 1)],
        [e(&b, 3, 1), e(&b, 3, 3), e(&b, 3, 4), -e(&dm, 3, 1)],
        [e(&b, 4, 1), e(&b, 4, 3), e(&b, 4, 4), -e(&dm, 4, 1)],
    ];
    let t = [o.solve(&rhs[0]), o.solve(&rhs[1]), o.solve(&rhs[2]), o.solve(&rhs[3])];
    let helpers = Offset02Helpers { alpha: o.alpha.clone(), theta: o.theta.clone(), delta_offset02: delta, a: a.clone(), b: b.clone(), c, d: dm.clone(), system, rhs };
    Ok(Offset02Solution { t, helpers })
}

/// Largest scaled residual of the four systems `S t_j = rhs_j`.
pub fn offset02_residual(s: &Offset02Solution) -> Float {
    let h = &s.helpers;
    let prec = h.alpha.precision();
    let mut worst = Float::new(prec.bits());
    for (t, rhs) in s.t.iter().zip(&h.rhs) {
        for i in 0..4 {
            let mut terms: Vec<C> = (0..4).map(|k| &h.system[(i, k)] * &t[k]).collect();
            terms.push(-rhs[i].clone());
            worst = max_f(worst, scaled_residual(&terms));
        }
    }
    worst
}

/// Largest relative difference between the closed forms and an LU solve of the shared system.
pub fn offset02_lu_crosscheck(s: &Offset02Solution) -> Result<Float> {
    let h = &s.helpers;
    let prec = h.alpha.precision();
    let mut worst = Float::new(prec.bits());
    for (t, rhs) in s.t.iter().zip(&h.rhs) {
        let lu = solve_linear(&h.system, rhs)?;
        let norm = lu.iter().map(|v| v.abs()).fold(Float::new(prec.bits()), max_f);
        for (a, b) in t.iter().zip(&lu) {
            let diff = (a - b).abs();
            let rel = if norm.is_zero() { diff } else { diff / &norm };
            worst = max_f(worst, rel);
        }
    }
    Ok(worst)
}

/// `D^{rs}_{jk} = P_jk P_rs - P_js P_rk`.
pub fn minor(p: &PrecMatrix, r: usize, s: usize, j: usize, k: usize) -> C {
    let e = |a: usize, b: usize| &p[(a - 1, b - 1)];
    e(j, k) * e(r, s) - e(j, s) * e(r, k)
}

/// Intermediates of the exact `h^(0,1)` formula.
#[derive(Clone, Debug)]
pub struct ExactH01 {
    pub h: C,
    pub neg_inv_h: C,
    pub e_n: C,
    pub d33_11: C,
}

/// `h^(0,1)_{n-1}` from `P(n)`, `X1inf_31` and `X1inf_32` by the exact minor formula.
pub fn exact_h01_from_data(d: &RHPData) -> Result<ExactH01> {
    let prec = d.precision();
    let p = &d.p;
    let pe = |i, j| d.pe(i, j);
    let dm = |r, s, j, k| minor(p, r, s, j, k);
    let x31 = d.x1inf.get(3, 1)?;
    let x32 = d.x1inf.get(3, 2)?;
    let pmax = p.max_abs();
    let d33_11 = dm(3, 3, 1, 1);
    let s2 = Float::with_val(prec.bits(), &pmax * &pmax);
    require_nonzero("D^33_11", &d33_11, &s2, prec)?;

    let head = pe(4, 1) * &dm(3, 3, 1, 2) - &(pe(4, 2) * &d33_11) + &(pe(4, 3) * &dm(3, 2, 1, 1));
    let bracket = dm(3, 2, 1, 1) * dm(4, 4, 2, 3) - &(dm(3, 4, 2, 3) * dm(4, 2, 1, 1)) - &(dm(2, 2, 1, 1) * dm(4, 4, 3, 3))
        - &(dm(3, 2, 2, 1) * dm(4, 4, 1, 3))
        + &(pe(1, 4) * pe(4, 1) * &dm(3, 3, 2, 2))
        - &(pe(1, 4) * pe(4, 2) * &dm(3, 3, 2, 1))
        - &(pe(1, 3) * pe(4, 1) * &dm(3, 4, 2, 2))
        + &(pe(1, 3) * pe(4, 2) * &dm(3, 4, 2, 1));
    let e_n = &head + &(x32 * &bracket);
    let s3 = Float::with_val(prec.bits(), &s2 * &pmax);
    require_nonzero("E(n)", &e_n, &s3, prec)?;

    let inner = dm(4, 3, 3, 1) * (pe(3, 3) * &dm(2, 2, 1, 1) + &(pe(3, 1) * &dm(2, 3, 1, 2)) - &(pe(3, 2) * &dm(2, 3, 1, 1)))
        - &(dm(3, 3, 2, 1) * &head);
    let neg_inv_h = x31 + &((pe(3, 1) - x32) / (&e_n * &d33_11) * &inner);
    require_nonzero("-1/h", &neg_inv_h, &Float::with_val(prec.bits(), 1e-300), prec)?;
    let h = -neg_inv_h.recip();
    Ok(ExactH01 { h, neg_inv_h, e_n, d33_11 })
}
