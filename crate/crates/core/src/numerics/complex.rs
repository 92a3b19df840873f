use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::Precision;

/// Complex number with MPFR real and imaginary parts sharing one precision.
#[derive(Clone, PartialEq)]
pub struct PrecComplex {
    pub re: Float,
    pub im: Float,
}

impl PrecComplex {
    pub fn new(re: Float, im: Float) -> Self {
        debug_assert_eq!(re.prec(), im.prec());
        Self { re, im }
    }

    pub fn zero(p: Precision) -> Self {
        Self::from_f64(p, 0.0, 0.0)
    }

    pub fn one(p: Precision) -> Self {
        Self::from_f64(p, 1.0, 0.0)
    }

    pub fn i(p: Precision) -> Self {
        Self::from_f64(p, 0.0, 1.0)
    }

    pub fn from_f64(p: Precision, re: f64, im: f64) -> Self {
        Self { re: Float::with_val(p.bits(), re), im: Float::with_val(p.bits(), im) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    /// Parses decimal strings for the real and imaginary parts.
    pub fn parse(p: Precision, re: &str, im: &str) -> Option<Self> {
        let re = Float::parse(re).ok()?;
        let im = Float::parse(im).ok()?;
        Some(Self { re: Float::with_val(p.bits(), re), im: Float::with_val(p.bits(), im) })
    }

    /// `r * exp(i*theta)` with `theta = 2*pi*num/den`, evaluated at full precision.
    pub fn root_of_unity(p: Precision, num: i64, den: u64, radius: &Float) -> Self {
        let bits = p.bits();
        let mut theta = Float::with_val(bits, Constant::Pi);
        theta *= 2 * num;
        theta /= den;
        let (s, c) = sin_cos(&theta);
        Self { re: c * radius, im: s * radius }
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.re.prec())
    }

    fn bits(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let b = self.bits();
        Float::with_val(b, self.re.mul_add_ref(&self.re, &Float::with_val(b, &self.im * &self.im)))
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.bits(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Float {
        Float::with_val(self.bits(), self.im.atan2_ref(&self.re))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn recip(&self) -> Self {
        let b = self.bits();
        let d = self.norm_sqr();
        Self {
            re: Float::with_val(b, &self.re / &d),
            im: Float::with_val(b, -Float::with_val(b, &self.im / &d)),
        }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let b = self.bits();
        Self { re: Float::with_val(b, &self.re * s), im: Float::with_val(b, &self.im * s) }
    }

    pub fn exp(&self) -> Self {
        let b = self.bits();
        let m = Float::with_val(b, self.re.exp_ref());
        let (s, c) = sin_cos(&self.im);
        Self { re: c * &m, im: s * &m }
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Self {
        let b = self.bits();
        Self { re: Float::with_val(b, self.abs().ln_ref()), im: self.arg() }
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let b = self.bits();
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let mut t = Float::with_val(b, self.re.abs_ref());
        t += &r;
        t /= 2;
        let t = t.sqrt();
        if self.re >= 0 {
            let im = Float::with_val(b, &self.im / &t) / 2u32;
            Self { re: t, im }
        } else {
            let re = Float::with_val(b, self.im.abs_ref()) / &t / 2u32;
            let im = if self.im < 0 { -t } else { t };
            Self { re, im }
        }
    }

    /// Square root whose argument is taken in [0, 2*pi), so the cut lies on the positive real axis.
    pub fn sqrt_upper(&self) -> Self {
        let b = self.bits();
        let mut a = self.arg();
        if a < 0 {
            a += Float::with_val(b, Constant::Pi) * 2u32;
        }
        a /= 2;
        let m = Float::with_val(b, self.abs().sqrt_ref());
        let (s, c) = sin_cos(&a);
        Self { re: c * &m, im: s * &m }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self.clone();
        let mut acc = PrecComplex::one(self.precision());
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal power `self^e = exp(e * ln self)`.
    pub fn powc(&self, e: &PrecComplex) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        (&self.ln() * e).exp()
    }

    /// Real power of a positive real base, kept real.
    pub fn pow_real(base: &Float, e: &Float) -> Float {
        Float::with_val(base.prec(), base.pow(e))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering of both parts with `digits` significant digits.
    pub fn to_decimal_strings(&self, digits: usize) -> (String, String) {
        (float_to_decimal(&self.re, digits), float_to_decimal(&self.im, digits))
    }
}

fn sin_cos(x: &Float) -> (Float, Float) {
    let mut s = x.clone();
    let mut c = Float::new(x.prec());
    s.sin_cos_mut(&mut c);
    (s, c)
}

/// Decimal scientific string with `digits` significant digits.
pub fn float_to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

impl fmt::Debug for PrecComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for PrecComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal_strings(20);
        write!(f, "({re}, {im})")
    }
}

impl<'a> Add<&'a PrecComplex> for &'a PrecComplex {
    type Output = PrecComplex;
    fn add(self, o: &PrecComplex) -> PrecComplex {
        let b = self.bits();
        PrecComplex { re: Float::with_val(b, &self.re + &o.re), im: Float::with_val(b, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a PrecComplex> for &'a PrecComplex {
    type Output = PrecComplex;
    fn sub(self, o: &PrecComplex) -> PrecComplex {
        let b = self.bits();
        PrecComplex { re: Float::with_val(b, &self.re - &o.re), im: Float::with_val(b, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a PrecComplex> for &'a PrecComplex {
    type Output = PrecComplex;
    fn mul(self, o: &PrecComplex) -> PrecComplex {
        let b = self.bits();
        let re = Float::with_val(b, self.re.mul_sub_ref(&o.re, &Float::with_val(b, &self.im * &o.im)));
        let im = Float::with_val(b, self.re.mul_add_ref(&o.im, &Float::with_val(b, &self.im * &o.re)));
        PrecComplex { re, im }
    }
}

impl<'a> Div<&'a PrecComplex> for &'a PrecComplex {
    type Output = PrecComplex;
    fn div(self, o: &PrecComplex) -> PrecComplex {
        let b = self.bits();
        let d = o.norm_sqr();
        let re = Float::with_val(b, self.re.mul_add_ref(&o.re, &Float::with_val(b, &self.im * &o.im)));
        let im = Float::with_val(b, self.im.mul_sub_ref(&o.re, &Float::with_val(b, &self.re * &o.im)));
        PrecComplex { re: re / &d, im: im / &d }
    }
}

impl Neg for &PrecComplex {
    type Output = PrecComplex;
    fn neg(self) -> PrecComplex {
        PrecComplex { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

impl Neg for PrecComplex {
    type Output = PrecComplex;
    fn neg(self) -> PrecComplex {
        PrecComplex { re: -self.re, im: -self.im }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<PrecComplex> for PrecComplex {
            type Output = PrecComplex;
            fn $m(self, o: PrecComplex) -> PrecComplex {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a PrecComplex> for PrecComplex {
            type Output = PrecComplex;
            fn $m(self, o: &PrecComplex) -> PrecComplex {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<PrecComplex> for &'a PrecComplex {
            type Output = PrecComplex;
            fn $m(self, o: PrecComplex) -> PrecComplex {
                self.$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&PrecComplex> for PrecComplex {
    fn add_assign(&mut self, o: &PrecComplex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&PrecComplex> for PrecComplex {
    fn sub_assign(&mut self, o: &PrecComplex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&PrecComplex> for PrecComplex {
    fn mul_assign(&mut self, o: &PrecComplex) {
        *self = &*self * o;
    }
}

/// Pairwise summation in index order; deterministic for a fixed input order.
pub fn pairwise_sum(p: Precision, xs: &[PrecComplex]) -> PrecComplex {
    match xs.len() {
        0 => PrecComplex::zero(p),
        1 => xs[0].clone(),
        n => {
            let (a, b) = xs.split_at(n / 2);
            let mut s = pairwise_sum(p, a);
            s += &pairwise_sum(p, b);
            s
        }
    }
}
