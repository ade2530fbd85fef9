//! The three dynamical worlds and the shared point type.

mod endo;
mod family;
mod henon;
mod marked;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::Mat2;

pub(crate) use endo::escape_radius;
pub use endo::{EndoEscapeData, RegularEndo};
pub use family::DegreeDFamilyParam;
pub use henon::{HenonFactor, HenonInverse, HenonMap};
pub use marked::MarkedPair;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SystemError {
    #[error("family degree must be at least 3, got {0}")]
    FamilyDegree(usize),
    #[error("expected {expected} marked coordinates, got {got}")]
    CoordsLength { expected: usize, got: usize },
    #[error("algebraic degree must be in 2..=16, got {0}")]
    EndoDegree(usize),
    #[error("malformed endomorphism: coordinate degrees {p} and {q} differ from D = {degree}")]
    Malformed { p: usize, q: usize, degree: usize },
    #[error("Hénon map needs at least one factor")]
    NoFactors,
    #[error("Hénon factor {index}: {reason}")]
    BadFactor { index: usize, reason: &'static str },
    #[error("marked pair: {0}")]
    BadPair(&'static str),
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),
}

/// A point of `C^2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x: Complex64,
    pub y: Complex64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
    };

    pub fn new(x: Complex64, y: Complex64) -> Self {
        Self { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    /// Max norm `max(|x|, |y|)`.
    pub fn norm_max(&self) -> f64 {
        self.x.norm().max(self.y.norm())
    }

    pub fn dist_max(&self, other: &Point2) -> f64 {
        (*self - *other).norm_max()
    }

    pub fn is_finite(&self) -> bool {
        self.x.re.is_finite() && self.x.im.is_finite() && self.y.re.is_finite() && self.y.im.is_finite()
    }

    pub fn scale(&self, s: Complex64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }

    /// Lexicographic key on `(re x, im x, re y, im y)`.
    pub fn lex_cmp(&self, other: &Point2) -> std::cmp::Ordering {
        [self.x.re, self.x.im, self.y.re, self.y.im]
            .iter()
            .zip([other.x.re, other.x.im, other.y.re, other.y.im].iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl Add for Point2 {
    type Output = Point2;

    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;

    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;

    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// A polynomial self-map of `C^2` that the Newton and preperiodicity
/// machinery can iterate.
pub trait PlaneMap: Sync {
    fn apply(&self, p: Point2) -> Point2;

    fn jacobian(&self, p: Point2) -> Mat2;

    /// Radius of a max-norm bidisk that contains every bounded orbit.
    fn trapping_radius(&self) -> f64;

    fn iterate(&self, mut p: Point2, n: usize) -> Point2 {
        for _ in 0..n {
            p = self.apply(p);
        }
        p
    }
}
