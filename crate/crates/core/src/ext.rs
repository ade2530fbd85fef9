//! Extended-exponent complex numbers.
//!
//! Escaping orbits overflow `f64` after a handful of iterations. Orbits are
//! iterated in plain `Complex64` until the modulus passes [`WIDE_THRESHOLD`]
//! and in [`ExtComplex`] afterwards, which keeps a normalized mantissa and a
//! separate binary exponent.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Modulus above which orbit iteration switches to [`ExtComplex`].
pub const WIDE_THRESHOLD: f64 = 1e100;

/// Arithmetic needed to evaluate polynomials along an orbit.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_c64(c: Complex64) -> Self;

    fn zero() -> Self {
        Self::from_c64(Complex64::new(0.0, 0.0))
    }

    /// Natural log of the modulus; `-inf` for zero.
    fn ln_abs(self) -> f64;

    fn is_finite(self) -> bool;
}

impl Scalar for Complex64 {
    #[inline]
    fn from_c64(c: Complex64) -> Self {
        c
    }

    #[inline]
    fn ln_abs(self) -> f64 {
        self.norm().ln()
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// A complex number `mantissa * 2^exponent` with the larger mantissa
/// component in `[0.5, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtComplex {
    mantissa: Complex64,
    exponent: i64,
}

impl ExtComplex {
    pub fn new(c: Complex64) -> Self {
        Self::normalized(c, 0)
    }

    fn normalized(m: Complex64, e: i64) -> Self {
        let a = m.re.abs().max(m.im.abs());
        if a == 0.0 || !a.is_finite() {
            return Self {
                mantissa: m,
                exponent: if a == 0.0 { 0 } else { e },
            };
        }
        let (_, shift) = libm::frexp(a);
        Self {
            mantissa: Complex64::new(libm::ldexp(m.re, -shift), libm::ldexp(m.im, -shift)),
            exponent: e + shift as i64,
        }
    }

    pub fn is_zero(self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    /// Converts back to `Complex64`, overflowing to infinity or flushing to zero.
    pub fn to_c64(self) -> Complex64 {
        let e = self.exponent.clamp(-4000, 4000) as i32;
        Complex64::new(
            libm::ldexp(self.mantissa.re, e),
            libm::ldexp(self.mantissa.im, e),
        )
    }

    /// Quotient, used for Newton ratios whose terms overflow separately.
    pub fn div(self, rhs: Self) -> Self {
        Self::normalized(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl From<Complex64> for ExtComplex {
    fn from(c: Complex64) -> Self {
        Self::new(c)
    }
}

impl Add for ExtComplex {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= rhs.exponent {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = small.exponent - big.exponent;
        if shift < -1100 {
            return big;
        }
        let s = shift as i32;
        let aligned = Complex64::new(
            libm::ldexp(small.mantissa.re, s),
            libm::ldexp(small.mantissa.im, s),
        );
        Self::normalized(big.mantissa + aligned, big.exponent)
    }
}

impl Sub for ExtComplex {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ExtComplex {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Mul for ExtComplex {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::normalized(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Scalar for ExtComplex {
    fn from_c64(c: Complex64) -> Self {
        Self::new(c)
    }

    fn ln_abs(self) -> f64 {
        self.mantissa.norm().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    fn is_finite(self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite()
    }
}
