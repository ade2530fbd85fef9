use num_complex::Complex64;

use super::SystemError;
use crate::poly::{elementary_symmetric, Poly};

/// A parameter `(x_1, ..., x_{d-2}, y)` of the monic-normalized degree-`d`
/// family
///
/// ```text
/// P(z) = z^d / d + sum_{j=2}^{d-1} (-1)^(d-j) sigma_{d-j}(x) z^j / j + y
/// ```
///
/// whose derivative factors as `z (z - x_1) ... (z - x_{d-2})`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeDFamilyParam {
    d: usize,
    coords: Vec<Complex64>,
    y: Complex64,
}

impl DegreeDFamilyParam {
    pub fn new(d: usize, coords: Vec<Complex64>, y: Complex64) -> Result<Self, SystemError> {
        if d < 3 {
            return Err(SystemError::FamilyDegree(d));
        }
        if coords.len() != d - 2 {
            return Err(SystemError::CoordsLength {
                expected: d - 2,
                got: coords.len(),
            });
        }
        if coords.iter().chain([&y]).any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(SystemError::NonFinite("family parameter"));
        }
        Ok(Self { d, coords, y })
    }

    pub fn cubic(x: Complex64, y: Complex64) -> Self {
        Self {
            d: 3,
            coords: vec![x],
            y,
        }
    }

    /// Rebuilds a parameter from the flat vector `(x_1, ..., x_{d-2}, y)`.
    pub fn from_params(d: usize, params: &[Complex64]) -> Result<Self, SystemError> {
        if params.len() + 1 != d {
            return Err(SystemError::CoordsLength {
                expected: d - 1,
                got: params.len(),
            });
        }
        Self::new(d, params[..d - 2].to_vec(), params[d - 2])
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn y(&self) -> Complex64 {
        self.y
    }

    /// Flat parameter vector `(x_1, ..., x_{d-2}, y)`.
    pub fn params(&self) -> Vec<Complex64> {
        let mut v = self.coords.clone();
        v.push(self.y);
        v
    }

    pub fn poly(&self) -> Poly {
        let d = self.d;
        let sigma = elementary_symmetric(&self.coords);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        coeffs[d] = Complex64::new(1.0 / d as f64, 0.0);
        for (j, c) in coeffs.iter_mut().enumerate().take(d).skip(2) {
            let sign = if (d - j) % 2 == 0 { 1.0 } else { -1.0 };
            *c = sigma[d - j] * (sign / j as f64);
        }
        coeffs[0] = self.y;
        Poly::new(coeffs)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poly().eval(z)
    }

    /// Marked critical points `c_1 = 0, c_i = x_{i-1}`.
    pub fn critical_points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.d - 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend_from_slice(&self.coords);
        out
    }

    /// Partial derivatives of `P` with respect to `x_1, ..., x_{d-2}, y`, as
    /// polynomials in `z`.
    pub fn param_partials(&self) -> Vec<Poly> {
        let d = self.d;
        let mut out = Vec::with_capacity(d - 1);
        for l in 0..d - 2 {
            let others: Vec<_> = self
                .coords
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != l)
                .map(|(_, &c)| c)
                .collect();
            // d sigma_k / d x_l = sigma_{k-1}(others)
            let reduced = elementary_symmetric(&others);
            let mut coeffs = vec![Complex64::new(0.0, 0.0); d];
            for (j, c) in coeffs.iter_mut().enumerate().take(d).skip(2) {
                let k = d - j;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                *c = reduced[k - 1] * (sign / j as f64);
            }
            out.push(Poly::new(coeffs));
        }
        out.push(Poly::constant(Complex64::new(1.0, 0.0)));
        out
    }

    /// Derivative of `c_i` with respect to the flat parameter vector.
    pub fn critical_point_gradient(&self, i: usize) -> Vec<Complex64> {
        let mut g = vec![Complex64::new(0.0, 0.0); self.d - 1];
        if i >= 2 {
            g[i - 2] = Complex64::new(1.0, 0.0);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cubic_values() {
        let p = DegreeDFamilyParam::cubic(c(0.0, 0.0), c(0.0, 0.0));
        assert!((p.eval(c(3.0, 0.0)) - c(9.0, 0.0)).norm() < 1e-14);
        let p = DegreeDFamilyParam::cubic(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(p.eval(c(0.0, 0.0)), c(1.0, 0.0));
        let p = DegreeDFamilyParam::cubic(c(2.0, 0.0), c(0.0, 0.0));
        assert!((p.eval(c(2.0, 0.0)) - c(-4.0 / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn critical_points_are_marked() {
        let p = DegreeDFamilyParam::cubic(c(2.0, 0.0), c(5.0, 0.0));
        assert_eq!(p.critical_points(), vec![c(0.0, 0.0), c(2.0, 0.0)]);
        let p = DegreeDFamilyParam::cubic(c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(p.critical_points(), vec![c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(
            DegreeDFamilyParam::new(2, vec![], c(0.0, 0.0)),
            Err(SystemError::FamilyDegree(2))
        );
        assert!(DegreeDFamilyParam::new(4, vec![c(1.0, 0.0)], c(0.0, 0.0)).is_err());
    }

    #[test]
    fn leading_coefficient_is_one_over_d() {
        for d in 3..8 {
            let coords = (0..d - 2).map(|k| c(k as f64 - 1.5, 0.3 * k as f64)).collect();
            let p = DegreeDFamilyParam::new(d, coords, c(0.7, -0.2)).unwrap();
            let poly = p.poly();
            assert_eq!(poly.degree(), d);
            assert_eq!(poly.leading(), c(1.0 / d as f64, 0.0));
            assert_eq!(poly.coeff(1), c(0.0, 0.0));
        }
    }

    #[test]
    fn param_partials_match_finite_differences() {
        let base = DegreeDFamilyParam::new(5, vec![c(0.5, 0.1), c(-1.0, 0.4), c(0.2, -0.7)], c(0.3, 0.3))
            .unwrap();
        let z = c(0.8, -0.6);
        let partials = base.param_partials();
        let h = 1e-6;
        for (l, dp) in partials.iter().enumerate() {
            let mut plus = base.params();
            let mut minus = base.params();
            plus[l] += h;
            minus[l] -= h;
            let fp = DegreeDFamilyParam::from_params(5, &plus).unwrap().eval(z);
            let fm = DegreeDFamilyParam::from_params(5, &minus).unwrap().eval(z);
            let fd = (fp - fm) / (2.0 * h);
            assert!((fd - dp.eval(z)).norm() < 1e-8, "partial {l}");
        }
    }
}
