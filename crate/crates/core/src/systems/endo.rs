use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::{PlaneMap, Point2, SystemError};
use crate::ext::Scalar;
use crate::linalg::{DenseMatrix, Mat2};
use crate::poly::{Poly2, MAX_BIVARIATE_DEGREE};

/// Relative threshold on the normalized resultant below which the top
/// homogeneous parts are treated as sharing a root.
const RESULTANT_REL_TOL: f64 = 1e-10;

/// Constants that control escape for a regular endomorphism in the max norm.
///
/// With `H` the top homogeneous part, `min_top <= ||H(u)|| <= max_top` on the
/// unit max-norm sphere, and `lower_sum` bounds the lower-order terms on the
/// closed unit bidisk scaled by `||u||^(D-1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndoEscapeData {
    pub min_top: f64,
    pub max_top: f64,
    pub lower_sum: f64,
    /// Every orbit with max norm above this radius escapes.
    pub radius: f64,
    /// Upper bound on `ln ||h(u)|| - D ln ||u||` outside the radius.
    pub growth_excess: f64,
    /// Whether `min_top` and `max_top` are exact (diagonal top part).
    pub exact: bool,
}

/// A polynomial map `h = (P, Q)` of `C^2` of algebraic degree `D >= 2`.
///
/// Construction succeeds for any pair whose larger degree is in `2..=16`.
/// Regularity (top homogeneous parts without a common nontrivial zero) is
/// tested on demand with [`RegularEndo::regularity_check`]; Green function
/// evaluation refuses non-regular maps.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularEndo {
    p: Poly2,
    q: Poly2,
    degree: usize,
    p_x: Poly2,
    p_y: Poly2,
    q_x: Poly2,
    q_y: Poly2,
}

impl RegularEndo {
    pub fn new(p: Poly2, q: Poly2) -> Result<Self, SystemError> {
        let degree = p.degree().max(q.degree());
        if !(2..=MAX_BIVARIATE_DEGREE).contains(&degree) {
            return Err(SystemError::EndoDegree(degree));
        }
        if p.terms().iter().chain(q.terms().iter()).any(|t| !t.2.is_finite()) {
            return Err(SystemError::NonFinite("endomorphism coefficient"));
        }
        Ok(Self {
            p_x: p.partial_x(),
            p_y: p.partial_y(),
            q_x: q.partial_x(),
            q_y: q.partial_y(),
            p,
            q,
            degree,
        })
    }

    /// `(x^D, y^D)`.
    pub fn power(degree: usize) -> Result<Self, SystemError> {
        let one = Complex64::new(1.0, 0.0);
        let p = Poly2::from_terms(&[(degree, 0, one)]).ok_or(SystemError::EndoDegree(degree))?;
        let q = Poly2::from_terms(&[(0, degree, one)]).ok_or(SystemError::EndoDegree(degree))?;
        Self::new(p, q)
    }

    pub fn p(&self) -> &Poly2 {
        &self.p
    }

    pub fn q(&self) -> &Poly2 {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, pt: Point2) -> Point2 {
        Point2::new(self.p.eval(pt.x, pt.y), self.q.eval(pt.x, pt.y))
    }

    #[inline]
    pub fn eval_generic<S: Scalar>(&self, x: S, y: S) -> (S, S) {
        (self.p.eval(x, y), self.q.eval(x, y))
    }

    /// Decides whether the top homogeneous parts share a nontrivial zero.
    ///
    /// Uses exact fraction-free elimination over the Gaussian integers when
    /// every top coefficient is one, and a normalized floating resultant
    /// otherwise.
    pub fn regularity_check(&self) -> Result<bool, SystemError> {
        let d = self.degree;
        if self.p.degree() != d || self.q.degree() != d {
            return Err(SystemError::Malformed {
                p: self.p.degree(),
                q: self.q.degree(),
                degree: d,
            });
        }
        let a = self.p.homogeneous_part(d);
        let b = self.q.homogeneous_part(d);
        if let Some(exact) = exact_resultant_is_nonzero(&a, &b) {
            return Ok(exact);
        }
        let res = sylvester(&a, &b).determinant().norm();
        let na = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let nb = b.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let scale = na.powi(d as i32) * nb.powi(d as i32);
        Ok(res > RESULTANT_REL_TOL * scale)
    }

    /// Escape constants, or `None` when the map is not regular or the lower
    /// bound on the top part could not be certified.
    pub fn escape_data(&self) -> Option<EndoEscapeData> {
        if !self.regularity_check().ok()? {
            return None;
        }
        let d = self.degree;
        let a = self.p.homogeneous_part(d);
        let b = self.q.homogeneous_part(d);
        let (min_top, max_top, exact) = match diagonal_moduli(&a, &b) {
            Some((lo, hi)) => (lo, hi, true),
            None => {
                let hi = a
                    .iter()
                    .map(|c| c.norm())
                    .sum::<f64>()
                    .max(b.iter().map(|c| c.norm()).sum::<f64>());
                (certified_min_top(&a, &b)?, hi, false)
            }
        };
        let lower_sum = self.p.abs_sum_below(d).max(self.q.abs_sum_below(d));
        let radius = escape_radius(d, min_top, lower_sum);
        let growth_excess = (max_top + lower_sum / radius).ln().max(0.0);
        Some(EndoEscapeData {
            min_top,
            max_top,
            lower_sum,
            radius,
            growth_excess,
            exact,
        })
    }
}

/// Radius beyond which `||h(u)|| >= 2 ||u||` whenever the top part is
/// bounded below by `lead ||u||^D` and the rest above by `low ||u||^(D-1)`.
pub(crate) fn escape_radius(degree: usize, lead: f64, low: f64) -> f64 {
    let a = 2.0 * low / lead;
    let b = (4.0 / lead).powf(1.0 / (degree as f64 - 1.0));
    2.0f64.max(a).max(b)
}

impl PlaneMap for RegularEndo {
    fn apply(&self, p: Point2) -> Point2 {
        self.eval(p)
    }

    fn jacobian(&self, p: Point2) -> Mat2 {
        [
            [self.p_x.eval(p.x, p.y), self.p_y.eval(p.x, p.y)],
            [self.q_x.eval(p.x, p.y), self.q_y.eval(p.x, p.y)],
        ]
    }

    fn trapping_radius(&self) -> f64 {
        self.escape_data().map_or(f64::INFINITY, |e| e.radius)
    }
}

fn sylvester(a: &[Complex64], b: &[Complex64]) -> DenseMatrix {
    let d = a.len() - 1;
    let mut m = DenseMatrix::zeros(2 * d);
    for i in 0..d {
        for (k, &c) in a.iter().enumerate() {
            m.set(i, i + k, c);
        }
        for (k, &c) in b.iter().enumerate() {
            m.set(d + i, i + k, c);
        }
    }
    m
}

/// Returns `Some(nonzero)` when every coefficient is a Gaussian integer small
/// enough to convert exactly.
fn exact_resultant_is_nonzero(a: &[Complex64], b: &[Complex64]) -> Option<bool> {
    const LIMIT: f64 = 9.0e15;
    let to_int = |v: f64| -> Option<BigInt> {
        (v.fract() == 0.0 && v.abs() < LIMIT).then(|| BigInt::from(v as i64))
    };
    let d = a.len() - 1;
    let n = 2 * d;
    let mut re = vec![vec![BigInt::zero(); n]; n];
    let mut im = vec![vec![BigInt::zero(); n]; n];
    for i in 0..d {
        for (row, coeffs) in [(i, a), (d + i, b)] {
            for (k, c) in coeffs.iter().enumerate() {
                re[row][i + k] = to_int(c.re)?;
                im[row][i + k] = to_int(c.im)?;
            }
        }
    }
    Some(!gaussian_bareiss_is_singular(re, im))
}

/// Fraction-free Gaussian elimination over `Z[i]`.
fn gaussian_bareiss_is_singular(mut re: Vec<Vec<BigInt>>, mut im: Vec<Vec<BigInt>>) -> bool {
    let n = re.len();
    let mut prev = (BigInt::from(1), BigInt::zero());
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !(re[r][k].is_zero() && im[r][k].is_zero())) else {
            return true;
        };
        re.swap(k, piv);
        im.swap(k, piv);
        let (pr, pi) = (re[k][k].clone(), im[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                // (a_kk a_ij - a_ik a_kj) / prev
                let (ar, ai) = cmul(&pr, &pi, &re[i][j], &im[i][j]);
                let (br, bi) = cmul(&re[i][k], &im[i][k], &re[k][j], &im[k][j]);
                let (nr, ni) = cdiv_exact(&(ar - br), &(ai - bi), &prev.0, &prev.1);
                re[i][j] = nr;
                im[i][j] = ni;
            }
            re[i][k] = BigInt::zero();
            im[i][k] = BigInt::zero();
        }
        prev = (pr, pi);
    }
    false
}

fn cmul(ar: &BigInt, ai: &BigInt, br: &BigInt, bi: &BigInt) -> (BigInt, BigInt) {
    (ar * br - ai * bi, ar * bi + ai * br)
}

fn cdiv_exact(ar: &BigInt, ai: &BigInt, br: &BigInt, bi: &BigInt) -> (BigInt, BigInt) {
    let den = br * br + bi * bi;
    let (nr, ni) = cmul(ar, ai, br, &(-bi));
    (nr / &den, ni / &den)
}

/// Exact extremes of `||H||` on the unit max-norm sphere when `H` is
/// `(a x^D, b y^D)` or `(a y^D, b x^D)`.
fn diagonal_moduli(a: &[Complex64], b: &[Complex64]) -> Option<(f64, f64)> {
    let d = a.len() - 1;
    let single = |v: &[Complex64]| -> Option<usize> {
        let nz: Vec<usize> = (0..=d).filter(|&k| v[k] != Complex64::new(0.0, 0.0)).collect();
        (nz.len() == 1 && (nz[0] == 0 || nz[0] == d)).then(|| nz[0])
    };
    let (ka, kb) = (single(a)?, single(b)?);
    if ka == kb {
        return None;
    }
    let (ma, mb) = (a[ka].norm(), b[kb].norm());
    Some((ma.min(mb), ma.max(mb)))
}

/// Certified lower bound for `min ||H(u)||` over `||u|| = 1`.
///
/// By homogeneity the sphere reduces to the two closed disks `{(1, w)}` and
/// `{(w, 1)}`, `|w| <= 1`. The minimum over a polar grid, minus a Lipschitz
/// allowance for the grid spacing, is a rigorous bound up to rounding.
fn certified_min_top(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    let d = a.len() - 1;
    // w-derivative of sum_k c_k w^k (or w^(d-k)) on |w| <= 1
    let lip_one = |v: &[Complex64]| -> f64 {
        v.iter()
            .enumerate()
            .map(|(k, c)| c.norm() * k.max(d - k) as f64)
            .sum()
    };
    let lip = lip_one(a).max(lip_one(b));
    for k in [256usize, 1024] {
        let n_rad = k;
        let n_ang = k;
        let step = 1.0 / (2.0 * n_rad as f64) + PI / n_ang as f64;
        let mut min = f64::INFINITY;
        for i in 0..=n_rad {
            let r = i as f64 / n_rad as f64;
            for j in 0..n_ang {
                let w = Complex64::from_polar(r, 2.0 * PI * j as f64 / n_ang as f64);
                let one = Complex64::new(1.0, 0.0);
                let v1 = eval_form(a, one, w).norm().max(eval_form(b, one, w).norm());
                let v2 = eval_form(a, w, one).norm().max(eval_form(b, w, one).norm());
                min = min.min(v1).min(v2);
                if i == 0 {
                    break;
                }
            }
        }
        let bound = min - lip * step;
        if bound > 0.0 {
            return Some(bound * (1.0 - 1e-12));
        }
    }
    None
}

/// `sum_k c_k x^(D-k) y^k`.
fn eval_form(c: &[Complex64], x: Complex64, y: Complex64) -> Complex64 {
    let d = c.len() - 1;
    let mut xp = vec![Complex64::new(1.0, 0.0); d + 1];
    let mut yp = vec![Complex64::new(1.0, 0.0); d + 1];
    for k in 1..=d {
        xp[k] = xp[k - 1] * x;
        yp[k] = yp[k - 1] * y;
    }
    c.iter().enumerate().map(|(k, &ck)| ck * xp[d - k] * yp[k]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p2(terms: &[(usize, usize, f64)]) -> Poly2 {
        let t: Vec<_> = terms.iter().map(|&(i, j, v)| (i, j, c(v, 0.0))).collect();
        Poly2::from_terms(&t).unwrap()
    }

    #[test]
    fn power_map_is_regular_with_exact_constants() {
        let h = RegularEndo::power(2).unwrap();
        assert_eq!(h.regularity_check(), Ok(true));
        let e = h.escape_data().unwrap();
        assert!(e.exact);
        assert_eq!((e.min_top, e.max_top, e.lower_sum), (1.0, 1.0, 0.0));
        assert_eq!(e.radius, 4.0);
    }

    #[test]
    fn shared_top_root_is_detected() {
        // (x^2, xy): both vanish on x = 0
        let h = RegularEndo::new(p2(&[(2, 0, 1.0)]), p2(&[(1, 1, 1.0)])).unwrap();
        assert_eq!(h.regularity_check(), Ok(false));
        assert!(h.escape_data().is_none());
        // (x^2 + y^2, (x + iy)^2) share the direction y = i x
        let q = Poly2::from_terms(&[(2, 0, c(1.0, 0.0)), (1, 1, c(0.0, 2.0)), (0, 2, c(-1.0, 0.0))])
            .unwrap();
        let h = RegularEndo::new(p2(&[(2, 0, 1.0), (0, 2, 1.0)]), q).unwrap();
        assert_eq!(h.regularity_check(), Ok(false));
    }

    #[test]
    fn floating_resultant_path() {
        let h = RegularEndo::new(p2(&[(2, 0, 0.5), (0, 2, 0.25)]), p2(&[(1, 1, 0.3), (0, 2, 0.7)]))
            .unwrap();
        // 0.5 x^2 + 0.25 y^2 and y (0.3 x + 0.7 y): y = 0 gives x = 0, and
        // x = -7/3 y gives 0.5 * 49/9 + 0.25 != 0
        assert_eq!(h.regularity_check(), Ok(true));
        let near = RegularEndo::new(p2(&[(2, 0, 0.5), (0, 2, -0.5)]), p2(&[(1, 1, 0.3), (0, 2, 0.3)]))
            .unwrap();
        // y (0.3 x + 0.3 y) and 0.5 (x - y)(x + y) share x = -y
        assert_eq!(near.regularity_check(), Ok(false));
    }

    #[test]
    fn malformed_degree_is_an_error() {
        let h = RegularEndo::new(p2(&[(2, 0, 1.0)]), p2(&[(0, 1, 1.0)])).unwrap();
        assert!(matches!(h.regularity_check(), Err(SystemError::Malformed { .. })));
    }

    #[test]
    fn certified_minimum_is_a_lower_bound() {
        // (x^2 + y, y^2 + x)
        let h = RegularEndo::new(p2(&[(2, 0, 1.0), (0, 1, 1.0)]), p2(&[(0, 2, 1.0), (1, 0, 1.0)]))
            .unwrap();
        let e = h.escape_data().unwrap();
        assert_eq!((e.min_top, e.max_top), (1.0, 1.0));
        // a genuinely mixed top part
        let h = RegularEndo::new(p2(&[(2, 0, 1.0), (1, 1, 0.5)]), p2(&[(0, 2, 1.0), (1, 1, -0.25)]))
            .unwrap();
        let e = h.escape_data().unwrap();
        assert!(!e.exact);
        assert!(e.min_top > 0.0);
        let a = h.p.homogeneous_part(2);
        let b = h.q.homogeneous_part(2);
        let mut true_min = f64::INFINITY;
        for i in 0..=400 {
            for j in 0..400 {
                let w = Complex64::from_polar(i as f64 / 400.0, 2.0 * PI * j as f64 / 400.0);
                let one = c(1.0, 0.0);
                true_min = true_min
                    .min(eval_form(&a, one, w).norm().max(eval_form(&b, one, w).norm()))
                    .min(eval_form(&a, w, one).norm().max(eval_form(&b, w, one).norm()));
            }
        }
        assert!(e.min_top <= true_min);
        assert!(e.min_top > 0.5 * true_min);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let h = RegularEndo::new(p2(&[(2, 0, 1.0), (0, 1, 1.0), (1, 1, 0.5)]), p2(&[(0, 2, 1.0), (1, 0, 1.0)]))
            .unwrap();
        let pt = Point2::new(c(0.3, 0.2), c(-0.5, 0.1));
        let j = h.jacobian(pt);
        let eps = 1e-6;
        let dx = (h.eval(pt + Point2::new(c(eps, 0.0), c(0.0, 0.0)))
            - h.eval(pt - Point2::new(c(eps, 0.0), c(0.0, 0.0))))
        .scale(c(0.5 / eps, 0.0));
        assert!((dx.x - j[0][0]).norm() < 1e-8);
        assert!((dx.y - j[1][0]).norm() < 1e-8);
    }
}
