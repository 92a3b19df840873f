//! Arbitrary-precision complex scalars, dense matrices, LU determinant and solve.

mod complex;
mod matrix;

pub use complex::{float_to_decimal, pairwise_sum, PrecComplex};
pub use matrix::{det_lu, solve_linear, PrecMatrix};

use rug::Float;

/// Working precision of a run, fixed in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    bits: u32,
}

const GUARD_BITS: u32 = 32;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

impl Precision {
    pub fn from_digits(digits: u32) -> Self {
        let bits = (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS;
        Self { bits }
    }

    pub(crate) fn from_bits(bits: u32) -> Self {
        Self { bits }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Decimal digits the run was configured with.
    pub fn digits(self) -> u32 {
        (((self.bits - GUARD_BITS.min(self.bits)) as f64) / LOG2_10).floor() as u32
    }

    /// `10^-(digits - offset)` as a float at this precision.
    pub fn eps_scaled(self, offset: i64) -> Float {
        let e = self.digits() as i64 - offset;
        pow10(self, -e)
    }

    pub fn float(self, x: f64) -> Float {
        Float::with_val(self.bits, x)
    }

    pub fn complex(self, re: f64, im: f64) -> PrecComplex {
        PrecComplex::from_f64(self, re, im)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::from_digits(120)
    }
}

/// `10^e` at precision `p`.
pub fn pow10(p: Precision, e: i64) -> Float {
    let ten = Float::with_val(p.bits(), 10);
    Float::with_val(p.bits(), rug::ops::Pow::pow(&ten, e as i32))
}

/// Version string of the linked MPFR library.
pub fn backend_version() -> String {
    // SAFETY: mpfr_get_version returns a pointer to a static NUL-terminated string.
    let raw = unsafe { std::ffi::CStr::from_ptr(gmp_mpfr_sys::mpfr::get_version()) };
    format!("MPFR {}", raw.to_string_lossy())
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: &PrecComplex, b: &PrecComplex) -> Float {
    let d = (a - b).abs();
    let s = a.abs().max(&b.abs());
    if s.is_zero() {
        d
    } else {
        d / s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn p() -> Precision {
        Precision::from_digits(60)
    }

    #[test]
    fn identity_determinant_is_one() {
        let d = det_lu(&PrecMatrix::identity(p(), 3)).unwrap();
        assert_eq!(d, PrecComplex::one(p()));
    }

    #[test]
    fn transposition_has_sign_minus_one() {
        let o = PrecComplex::one(p());
        let z = PrecComplex::zero(p());
        let m = PrecMatrix::from_vec(2, 2, vec![z.clone(), o.clone(), o, z]).unwrap();
        assert_eq!(det_lu(&m).unwrap(), -PrecComplex::one(p()));
    }

    #[test]
    fn zero_column_gives_exact_zero() {
        let m = PrecMatrix::from_fn(3, 3, |i, j| if j == 1 { p().complex(0.0, 0.0) } else { p().complex((i + j) as f64, 1.0) });
        assert!(det_lu(&m).unwrap().is_zero());
    }

    #[test]
    fn non_square_rejected() {
        let m = PrecMatrix::zeros(p(), 2, 3);
        assert_eq!(det_lu(&m), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn diagonal_solve() {
        let m = PrecMatrix::from_fn(2, 2, |i, j| if i == j { p().complex(2.0 * (i as f64 + 1.0), 0.0) } else { p().complex(0.0, 0.0) });
        let x = solve_linear(&m, &[p().complex(2.0, 0.0), p().complex(8.0, 0.0)]).unwrap();
        assert_eq!(x, vec![p().complex(1.0, 0.0), p().complex(2.0, 0.0)]);
    }

    #[test]
    fn singular_solve_reports_error() {
        let m = PrecMatrix::from_fn(2, 2, |_, _| p().complex(1.0, 0.0));
        assert!(matches!(solve_linear(&m, &[p().complex(1.0, 0.0), p().complex(0.0, 0.0)]), Err(Error::Singular { .. })));
    }

    #[test]
    fn sqrt_branches() {
        let z = p().complex(-4.0, 0.0);
        let s = z.sqrt();
        assert!((&s - &p().complex(0.0, 2.0)).abs() < 1e-50);
        let u = p().complex(4.0, -0.0).sqrt_upper();
        assert!((&u - &p().complex(2.0, 0.0)).abs() < 1e-50);
        let w = p().complex(-1.0, -1e-30).sqrt_upper();
        assert!((&w - &p().complex(0.0, 1.0)).abs() < 1e-20);
    }

    #[test]
    fn exp_ln_round_trip() {
        let z = p().complex(0.3, -2.1);
        let back = z.ln().exp();
        assert!((&back - &z).abs() < 1e-55);
    }

    #[test]
    fn precision_digits_round_trip() {
        for d in [50, 60, 120, 200] {
            assert_eq!(Precision::from_digits(d).digits(), d);
        }
    }

    #[test]
    fn backend_reports_mpfr() {
        assert!(backend_version().starts_with("MPFR "));
    }
}
