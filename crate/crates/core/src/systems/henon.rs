use num_complex::Complex64;

use super::endo::escape_radius;
use super::{PlaneMap, Point2, SystemError};
use crate::ext::Scalar;
use crate::linalg::{mat2_mul, Mat2, IDENTITY2};
use crate::poly::Poly;

/// One elementary factor `(x, y) -> (y, p(y) - delta x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HenonFactor {
    p: Poly,
    delta: Complex64,
    dp: Poly,
}

impl HenonFactor {
    pub fn new(p: Poly, delta: Complex64) -> Result<Self, SystemError> {
        Self::checked(p, delta, 0)
    }

    fn checked(p: Poly, delta: Complex64, index: usize) -> Result<Self, SystemError> {
        if p.degree() < 2 {
            return Err(SystemError::BadFactor {
                index,
                reason: "polynomial degree must be at least 2",
            });
        }
        if delta == Complex64::new(0.0, 0.0) {
            return Err(SystemError::BadFactor {
                index,
                reason: "delta must be nonzero",
            });
        }
        if !delta.is_finite() || p.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(SystemError::NonFinite("Hénon factor"));
        }
        let dp = p.derivative();
        Ok(Self { p, delta, dp })
    }

    pub fn poly(&self) -> &Poly {
        &self.p
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    #[inline]
    fn forward<S: Scalar>(&self, x: S, y: S) -> (S, S) {
        (y, self.p.eval(y) - S::from_c64(self.delta) * x)
    }

    #[inline]
    fn backward<S: Scalar>(&self, u: S, v: S) -> (S, S) {
        // (u, v) -> ((p(u) - v) / delta, u)
        let inv = S::from_c64(1.0 / self.delta);
        ((self.p.eval(u) - v) * inv, u)
    }

    fn forward_jacobian(&self, y: Complex64) -> Mat2 {
        [
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [-self.delta, self.dp.eval(y)],
        ]
    }

    fn backward_jacobian(&self, u: Complex64) -> Mat2 {
        let inv = 1.0 / self.delta;
        [
            [self.dp.eval(u) * inv, -inv],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ]
    }

    /// `(degree, lead, low)` controlling escape in `{|y| >= max(|x|, R)}`.
    fn forward_escape(&self) -> (usize, f64, f64) {
        (self.p.degree(), self.p.leading().norm(), self.p.lower_abs_sum() + self.delta.norm())
    }

    /// `(degree, lead, low)` controlling escape in `{|x| >= max(|y|, R)}`
    /// under the inverse factor.
    fn backward_escape(&self) -> (usize, f64, f64) {
        let dn = self.delta.norm();
        (
            self.p.degree(),
            self.p.leading().norm() / dn,
            (self.p.lower_abs_sum() + 1.0) / dn,
        )
    }
}

/// A generalized Hénon map `f = f_m o ... o f_1`; factor 1 acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct HenonMap {
    factors: Vec<HenonFactor>,
}

impl HenonMap {
    pub fn new(factors: Vec<(Poly, Complex64)>) -> Result<Self, SystemError> {
        if factors.is_empty() {
            return Err(SystemError::NoFactors);
        }
        let factors = factors
            .into_iter()
            .enumerate()
            .map(|(i, (p, d))| HenonFactor::checked(p, d, i + 1))
            .collect::<Result<_, _>>()?;
        Ok(Self { factors })
    }

    pub fn single(p: Poly, delta: Complex64) -> Result<Self, SystemError> {
        Self::new(vec![(p, delta)])
    }

    pub fn factors(&self) -> &[HenonFactor] {
        &self.factors
    }

    /// Dynamical degree, the product of the factor degrees.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.p.degree()).product()
    }

    /// Constant Jacobian determinant `prod delta_j`.
    pub fn jacobian_det(&self) -> Complex64 {
        self.factors.iter().map(|f| f.delta).product()
    }

    pub fn eval(&self, pt: Point2) -> Point2 {
        let (x, y) = self.eval_generic(pt.x, pt.y);
        Point2::new(x, y)
    }

    pub fn inverse_eval(&self, pt: Point2) -> Point2 {
        let (x, y) = self.inverse_generic(pt.x, pt.y);
        Point2::new(x, y)
    }

    #[inline]
    pub fn eval_generic<S: Scalar>(&self, mut x: S, mut y: S) -> (S, S) {
        for f in &self.factors {
            (x, y) = f.forward(x, y);
        }
        (x, y)
    }

    #[inline]
    pub fn inverse_generic<S: Scalar>(&self, mut x: S, mut y: S) -> (S, S) {
        for f in self.factors.iter().rev() {
            (x, y) = f.backward(x, y);
        }
        (x, y)
    }

    pub fn inverse_jacobian(&self, pt: Point2) -> Mat2 {
        let (mut x, mut y) = (pt.x, pt.y);
        let mut acc = IDENTITY2;
        for f in self.factors.iter().rev() {
            acc = mat2_mul(&f.backward_jacobian(x), &acc);
            (x, y) = f.backward(x, y);
        }
        let _ = y;
        acc
    }

    /// Per-factor escape triples for the forward region.
    pub(crate) fn forward_escape(&self) -> Vec<(usize, f64, f64)> {
        self.factors.iter().map(HenonFactor::forward_escape).collect()
    }

    /// Per-factor escape triples for the backward region, in the order the
    /// inverse applies them.
    pub(crate) fn backward_escape(&self) -> Vec<(usize, f64, f64)> {
        self.factors.iter().rev().map(HenonFactor::backward_escape).collect()
    }

    /// Filtration radius `R`: outside the bidisk of radius `R`, points of
    /// `{|y| >= |x|}` escape forward and points of `{|x| >= |y|}` escape
    /// backward, each factor at least doubling the dominant coordinate.
    pub fn filtration_radius(&self) -> f64 {
        self.forward_escape()
            .into_iter()
            .chain(self.backward_escape())
            .map(|(k, lead, low)| escape_radius(k, lead, low))
            .fold(2.0, f64::max)
    }

    /// The inverse map as a [`PlaneMap`].
    pub fn inverse(&self) -> HenonInverse {
        HenonInverse(self.clone())
    }
}

impl PlaneMap for HenonMap {
    fn apply(&self, p: Point2) -> Point2 {
        self.eval(p)
    }

    fn jacobian(&self, pt: Point2) -> Mat2 {
        let (mut x, mut y) = (pt.x, pt.y);
        let mut acc = IDENTITY2;
        for f in &self.factors {
            acc = mat2_mul(&f.forward_jacobian(y), &acc);
            (x, y) = f.forward(x, y);
        }
        let _ = x;
        acc
    }

    fn trapping_radius(&self) -> f64 {
        self.filtration_radius()
    }
}

/// `f^{-1}` for a [`HenonMap`] `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct HenonInverse(pub HenonMap);

impl PlaneMap for HenonInverse {
    fn apply(&self, p: Point2) -> Point2 {
        self.0.inverse_eval(p)
    }

    fn jacobian(&self, p: Point2) -> Mat2 {
        self.0.inverse_jacobian(p)
    }

    fn trapping_radius(&self) -> f64 {
        self.0.filtration_radius()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat2_det;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn half() -> HenonMap {
        HenonMap::single(Poly::from_real(&[0.0, 0.0, 1.0]), c(0.5, 0.0)).unwrap()
    }

    #[test]
    fn single_factor_values() {
        let f = half();
        assert_eq!(f.eval(Point2::real(2.0, 3.0)), Point2::real(3.0, 8.0));
        assert_eq!(f.inverse_eval(Point2::real(3.0, 8.0)), Point2::real(2.0, 3.0));
        assert_eq!(f.degree(), 2);
        assert_eq!(f.jacobian_det(), c(0.5, 0.0));
        assert_eq!(f.filtration_radius(), 4.0);
    }

    #[test]
    fn inverse_round_trip_two_factors() {
        let f = HenonMap::new(vec![
            (Poly::from_real(&[0.3, 0.0, 1.0]), c(0.5, 0.2)),
            (Poly::from_real(&[0.0, -1.0, 0.0, 1.0]), c(-0.7, 0.0)),
        ])
        .unwrap();
        assert_eq!(f.degree(), 6);
        let p = Point2::new(c(0.2, -0.4), c(0.9, 0.1));
        let back = f.inverse_eval(f.eval(p));
        assert!(back.dist_max(&p) < 1e-13);
        let fwd = f.eval(f.inverse_eval(p));
        assert!(fwd.dist_max(&p) < 1e-13);
        let j = f.jacobian(p);
        assert!((mat2_det(&j) - f.jacobian_det()).norm() < 1e-13);
        let ji = f.inverse_jacobian(f.eval(p));
        let prod = mat2_mul(&ji, &j);
        assert!((prod[0][0] - 1.0).norm() < 1e-12 && prod[0][1].norm() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_factors() {
        assert!(matches!(
            HenonMap::single(Poly::from_real(&[0.0, 1.0]), c(1.0, 0.0)),
            Err(SystemError::BadFactor { index: 1, .. })
        ));
        assert!(HenonMap::single(Poly::from_real(&[0.0, 0.0, 1.0]), c(0.0, 0.0)).is_err());
        assert_eq!(HenonMap::new(vec![]), Err(SystemError::NoFactors));
    }

    #[test]
    fn inverse_conjugate_to_swapped_henon() {
        // f^{-1} = s o g o s with s the swap and g(x, y) = (y, 2y^2 - 2x)
        let f = half();
        let g = HenonMap::single(Poly::from_real(&[0.0, 0.0, 2.0]), c(2.0, 0.0)).unwrap();
        let p = Point2::new(c(0.4, 0.3), c(-1.1, 0.2));
        let swap = |q: Point2| Point2::new(q.y, q.x);
        assert!(f.inverse_eval(p).dist_max(&swap(g.eval(swap(p)))) < 1e-14);
    }
}
