use num_complex::Complex64;

use super::SystemError;
use crate::poly::Poly;

/// A holomorphic family `P_t(z) = sum_j a_j(t) z^j` together with a marked
/// point `a(t)`, both polynomial in the parameter `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedPair {
    coeffs: Vec<Poly>,
    marked: Poly,
}

impl MarkedPair {
    /// `coeffs[j]` is `a_j` as a polynomial in `t`.
    pub fn new(coeffs: Vec<Poly>, marked: Poly) -> Result<Self, SystemError> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(SystemError::BadPair("degree in z must be at least 2"));
        }
        Ok(Self { coeffs, marked })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `P_t` as a polynomial in `z`.
    pub fn poly_at(&self, t: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a.eval(t)).collect())
    }

    /// `dP_t/dt` as a polynomial in `z`.
    pub fn dt_poly_at(&self, t: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a.derivative().eval(t)).collect())
    }

    pub fn marked_at(&self, t: Complex64) -> Complex64 {
        self.marked.eval(t)
    }

    pub fn marked_derivative_at(&self, t: Complex64) -> Complex64 {
        self.marked.derivative().eval(t)
    }

    /// Whether the `z`-degree of `P_t` drops at `t`.
    pub fn degenerates_at(&self, t: Complex64) -> bool {
        self.coeffs[self.degree()].eval(t) == Complex64::new(0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_with_linear_term() {
        // P_t = z^2 + t z, marked point 0
        let pair = MarkedPair::new(
            vec![Poly::zero(), Poly::from_real(&[0.0, 1.0]), Poly::from_real(&[1.0])],
            Poly::zero(),
        )
        .unwrap();
        assert_eq!(pair.degree(), 2);
        let t = Complex64::new(3.0, 0.0);
        assert_eq!(pair.poly_at(t), Poly::from_real(&[0.0, 3.0, 1.0]));
        assert_eq!(pair.dt_poly_at(t), Poly::from_real(&[0.0, 1.0]));
        assert!(!pair.degenerates_at(t));
    }

    #[test]
    fn linear_family_is_rejected() {
        assert!(MarkedPair::new(vec![Poly::zero(), Poly::from_real(&[1.0])], Poly::zero()).is_err());
    }
}
