//! Dense univariate and bivariate polynomials with complex coefficients.

use num_complex::Complex64;

use crate::ext::Scalar;

/// Highest total degree a [`Poly2`] may carry.
pub const MAX_BIVARIATE_DEGREE: usize = 16;

/// Univariate polynomial, coefficients in ascending order of degree.
///
/// Trailing zero coefficients are trimmed on construction, so
/// `coeffs().last()` is the leading coefficient of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z^d`
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        coeffs[d] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Sum of coefficient moduli below the leading term.
    pub fn lower_abs_sum(&self) -> f64 {
        self.coeffs
            .iter()
            .take(self.degree())
            .map(|c| c.norm())
            .sum()
    }

    #[inline]
    pub fn eval<S: Scalar>(&self, z: S) -> S {
        let mut acc = S::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + S::from_c64(c);
        }
        acc
    }

    /// Value and first derivative in one Horner pass.
    #[inline]
    pub fn eval_with_derivative<S: Scalar>(&self, z: S) -> (S, S) {
        let mut p = S::zero();
        let mut dp = S::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + S::from_c64(c);
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// All roots with multiplicity, by Aberth–Ehrlich iteration started on
    /// the Cauchy-bound circle. Meant for the small degrees of critical-point
    /// equations; the zero polynomial and constants have no roots.
    pub fn roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.leading();
        if d == 1 {
            return vec![-self.coeff(0) / lead];
        }
        let bound = 1.0
            + self.coeffs[..d]
                .iter()
                .map(|c| (c / lead).norm())
                .fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(bound, std::f64::consts::TAU * (k as f64 + 0.25) / d as f64 + 0.4))
            .collect();
        let dp = self.derivative();
        for _ in 0..500 {
            let mut moved: f64 = 0.0;
            for k in 0..d {
                let p = self.eval(z[k]);
                if p == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let r = p / dp.eval(z[k]);
                let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
                let mut w = r / (1.0 - r * s);
                if !w.is_finite() {
                    w = if r.is_finite() { r } else { Complex64::new(1e-8, 0.0) };
                }
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
            if moved < 1e-15 {
                break;
            }
        }
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        z
    }
}

/// Bivariate polynomial stored as a dense table: `table[i][j]` is the
/// coefficient of `x^i y^j`, with `i + j <= degree bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2 {
    table: Vec<Vec<Complex64>>,
    degree: usize,
}

impl Poly2 {
    /// Builds a polynomial from `(i, j, coefficient)` terms; repeated
    /// monomials are summed. Returns `None` when the total degree exceeds
    /// [`MAX_BIVARIATE_DEGREE`].
    pub fn from_terms(terms: &[(usize, usize, Complex64)]) -> Option<Self> {
        let bound = terms.iter().map(|&(i, j, _)| i + j).max().unwrap_or(0);
        if bound > MAX_BIVARIATE_DEGREE {
            return None;
        }
        let mut table = vec![vec![Complex64::new(0.0, 0.0); bound + 1]; bound + 1];
        for &(i, j, c) in terms {
            table[i][j] += c;
        }
        let degree = (0..=bound)
            .rev()
            .find(|&t| (0..=t).any(|i| table[i][t - i] != Complex64::new(0.0, 0.0)))
            .unwrap_or(0);
        Some(Self { table, degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.table
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or_default()
    }

    /// Nonzero terms `(i, j, c)` in lexicographic order.
    pub fn terms(&self) -> Vec<(usize, usize, Complex64)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != Complex64::new(0.0, 0.0) {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// Coefficients of the degree-`t` homogeneous part, ordered
    /// `x^t, x^(t-1) y, ..., y^t`.
    pub fn homogeneous_part(&self, t: usize) -> Vec<Complex64> {
        (0..=t).map(|k| self.coeff(t - k, k)).collect()
    }

    /// Sum of coefficient moduli over monomials of total degree below `t`.
    pub fn abs_sum_below(&self, t: usize) -> f64 {
        self.terms()
            .iter()
            .filter(|&&(i, j, _)| i + j < t)
            .map(|&(_, _, c)| c.norm())
            .sum()
    }

    /// Sum of coefficient moduli over monomials of total degree exactly `t`.
    pub fn abs_sum_at(&self, t: usize) -> f64 {
        self.terms()
            .iter()
            .filter(|&&(i, j, _)| i + j == t)
            .map(|&(_, _, c)| c.norm())
            .sum()
    }

    #[inline]
    pub fn eval<S: Scalar>(&self, x: S, y: S) -> S {
        let mut acc = S::zero();
        for row in self.table.iter().rev() {
            let mut inner = S::zero();
            for &c in row.iter().rev() {
                inner = inner * y + S::from_c64(c);
            }
            acc = acc * x + inner;
        }
        acc
    }

    pub fn partial_x(&self) -> Poly2 {
        let terms: Vec<_> = self
            .terms()
            .into_iter()
            .filter(|&(i, _, _)| i > 0)
            .map(|(i, j, c)| (i - 1, j, c * i as f64))
            .collect();
        Poly2::from_terms(&terms).expect("degree only decreases")
    }

    pub fn partial_y(&self) -> Poly2 {
        let terms: Vec<_> = self
            .terms()
            .into_iter()
            .filter(|&(_, j, _)| j > 0)
            .map(|(i, j, c)| (i, j - 1, c * j as f64))
            .collect();
        Poly2::from_terms(&terms).expect("degree only decreases")
    }
}

/// Elementary symmetric polynomials `sigma_0..=sigma_n` of `xs`.
pub fn elementary_symmetric(xs: &[Complex64]) -> Vec<Complex64> {
    let mut sigma = vec![Complex64::new(0.0, 0.0); xs.len() + 1];
    sigma[0] = Complex64::new(1.0, 0.0);
    for (k, &x) in xs.iter().enumerate() {
        for l in (1..=k + 1).rev() {
            let prev = sigma[l - 1];
            sigma[l] += prev * x;
        }
    }
    sigma
}
