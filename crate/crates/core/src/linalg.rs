//! Small dense complex linear algebra. Newton blocks and Sylvester matrices
//! stay below 40x40, so plain partial-pivoting elimination is enough.

use num_complex::Complex64;

/// 2x2 complex matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

pub const IDENTITY2: Mat2 = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Eigenvalues of a 2x2 matrix, larger modulus first.
pub fn eigenvalues2(a: &Mat2) -> [Complex64; 2] {
    let tr = a[0][0] + a[1][1];
    let det = mat2_det(a);
    let disc = (tr * tr - det * 4.0).sqrt();
    let plus = tr + disc;
    let minus = tr - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus } * 0.5;
    let small = if big.norm() > 0.0 {
        det / big
    } else {
        Complex64::new(0.0, 0.0)
    };
    [big, small]
}

/// Dense square matrix in row-major order.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    fn row_inf_norm(&self, i: usize) -> f64 {
        self.data[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Solves `self * x = rhs`; `None` when a pivot vanishes relative to the
    /// row scale.
    pub fn solve(&self, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
        let n = self.n;
        let scale = (0..n).map(|i| self.row_inf_norm(i)).fold(0.0, f64::max);
        if scale == 0.0 || !scale.is_finite() {
            return None;
        }
        let mut a = self.data.clone();
        let mut b = rhs.to_vec();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[i * n + k].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax <= scale * 1e-15 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                b.swap(k, p);
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
                let t = b[k];
                b[i] -= f * t;
            }
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..n {
                s -= a[k * n + j] * x[j];
            }
            x[k] = s / a[k * n + k];
        }
        Some(x)
    }

    /// Determinant by partial-pivoting elimination.
    pub fn determinant(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[i * n + k].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
        det
    }
}
