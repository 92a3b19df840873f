//! Riemann-Hilbert data `P(n)`, `X1^inf`, `X2^inf`, `X1^circ` and the W symmetry of the jump.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{PrecComplex, PrecMatrix, Precision};
use crate::symbols::AnnulusFunction;

/// A 4x4 matrix whose entries may be unknown. Indices are 1-based, as in the formulas.
#[derive(Clone, Debug)]
pub struct Partial4 {
    name: &'static str,
    entries: Vec<Option<PrecComplex>>,
}

impl Partial4 {
    pub fn empty(name: &'static str) -> Self {
        Self { name, entries: vec![None; 16] }
    }

    pub fn from_matrix(name: &'static str, m: &PrecMatrix) -> Self {
        Self { name, entries: m.entries().iter().cloned().map(Some).collect() }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn set(&mut self, i: usize, j: usize, v: PrecComplex) {
        self.entries[(i - 1) * 4 + (j - 1)] = Some(v);
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&PrecComplex> {
        self.entries[(i - 1) * 4 + (j - 1)].as_ref().ok_or_else(|| Error::MissingData(format!("{}[{i},{j}]", self.name)))
    }

    /// Fills every unset entry with a seeded value from the unit square.
    pub fn fill_seeded(&mut self, p: Precision, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for e in self.entries.iter_mut() {
            let v = random_complex(&mut rng, p);
            if e.is_none() {
                *e = Some(v);
            }
        }
    }

    pub fn is_set(&self, i: usize, j: usize) -> bool {
        self.entries[(i - 1) * 4 + (j - 1)].is_some()
    }

    /// Population mask, row-major.
    pub fn mask(&self) -> [bool; 16] {
        let mut m = [false; 16];
        for (k, e) in self.entries.iter().enumerate() {
            m[k] = e.is_some();
        }
        m
    }

    pub fn to_matrix(&self) -> Result<PrecMatrix> {
        let mut data = Vec::with_capacity(16);
        for i in 1..=4 {
            for j in 1..=4 {
                data.push(self.get(i, j)?.clone());
            }
        }
        PrecMatrix::from_vec(4, 4, data)
    }
}

/// Data of the X-problem at one `n`.
#[derive(Clone, Debug)]
pub struct RHPData {
    pub p: PrecMatrix,
    pub x1inf: Partial4,
    pub x2inf: Partial4,
    pub x1circ: Partial4,
}

impl RHPData {
    pub fn new(p: PrecMatrix) -> Self {
        Self { p, x1inf: Partial4::empty("X1inf"), x2inf: Partial4::empty("X2inf"), x1circ: Partial4::empty("X1circ") }
    }

    /// Fully populated data with seeded entries; `P` is diagonally shifted by 4 so it is well conditioned.
    pub fn synthetic(p: Precision, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pm = PrecMatrix::from_fn(4, 4, |_, _| random_complex(&mut rng, p));
        for i in 0..4 {
            pm[(i, i)] += &p.complex(4.0, 0.0);
        }
        let mut d = Self::new(pm);
        d.x1inf.fill_seeded(p, seed.wrapping_add(1));
        d.x2inf.fill_seeded(p, seed.wrapping_add(2));
        d.x1circ.fill_seeded(p, seed.wrapping_add(3));
        d
    }

    pub fn precision(&self) -> Precision {
        self.p[(0, 0)].precision()
    }

    /// `P_ij`, 1-based.
    pub fn pe(&self, i: usize, j: usize) -> &PrecComplex {
        &self.p[(i - 1, j - 1)]
    }

    /// `||W P^{-1} W - P||_inf`.
    pub fn w_inverse_defect(&self) -> Result<Float> {
        let w = w_matrix(self.precision());
        let pinv = self.p.inverse()?;
        Ok(w.matmul(&pinv)?.matmul(&w)?.sub(&self.p)?.norm_inf())
    }
}

fn random_complex(rng: &mut ChaCha8Rng, p: Precision) -> PrecComplex {
    let re: f64 = rng.gen_range(-1.0..1.0);
    let im: f64 = rng.gen_range(-1.0..1.0);
    p.complex(re, im)
}

/// The permutation exchanging `1 <-> 2` and `3 <-> 4`.
pub fn w_matrix(p: Precision) -> PrecMatrix {
    let mut w = PrecMatrix::zeros(p, 4, 4);
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
        w[(i, j)] = PrecComplex::one(p);
    }
    w
}

/// The X-problem jump `J_X(z; r, s)`.
pub fn jump_x(phi: &AnnulusFunction, w: &AnnulusFunction, r: i64, s: i64, z: &PrecComplex) -> PrecMatrix {
    let p = z.precision();
    let zi = z.recip();
    let mut j = PrecMatrix::identity(p, 4);
    j[(0, 2)] = z.powi(s - 1) * w.eval_unchecked(&zi);
    j[(0, 3)] = -(z.powi(1 - r) * phi.eval_unchecked(z));
    j[(1, 2)] = z.powi(r - 1) * phi.eval_unchecked(&zi);
    j[(1, 3)] = -(z.powi(1 - s) * w.eval_unchecked(z));
    j
}

/// `||J_X(z)^{-1} - W J_X(1/z) W||_inf` at a point of the unit circle.
pub fn wsym_residual(phi: &AnnulusFunction, w: &AnnulusFunction, r: i64, s: i64, z: &PrecComplex) -> Result<Float> {
    let p = z.precision();
    let wm = w_matrix(p);
    let lhs = jump_x(phi, w, r, s, z).inverse()?;
    let rhs = wm.matmul(&jump_x(phi, w, r, s, &z.recip()))?.matmul(&wm)?;
    Ok(lhs.sub(&rhs)?.norm_inf())
}
