use std::f64::consts::PI;

use super::{FieldGrid, ProbeError};
use crate::par;

/// Multiplier on the truncation estimate, the larger of the fourth-difference
/// term and the gap between the axis and diagonal stencils.
pub const LAPLACIAN_SAFETY: f64 = 2.0;
/// Pixels this close to the border get no density (the fourth differences
/// need two neighbours on each side).
const MARGIN: usize = 2;

/// Discrete `(1/2pi) Laplacian` of a field restricted to a complex line, in
/// the line's own coordinate `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianReport {
    /// Row-major like the input grid; NaN within two pixels of the border.
    pub density: Vec<f64>,
    /// Per-pixel allowance for negative density: truncation estimate plus
    /// the propagated evaluation error.
    pub tolerance: Vec<f64>,
    pub spacing: f64,
    /// `min(density + tolerance)` over the interior; negative values flag
    /// a subharmonicity violation beyond noise.
    pub min_margin: f64,
    pub worst_index: usize,
    /// Total interior mass `sum density * h^2`.
    pub mass: f64,
    resolution: [usize; 2],
}

impl LaplacianReport {
    pub fn is_subharmonic(&self) -> bool {
        self.min_margin >= 0.0
    }

    /// Mass of the interior pixels whose slice coordinates lie in the disk
    /// of `radius` about `(u0, v0)`.
    pub fn mass_in_disk(&self, grid: &FieldGrid, center: (f64, f64), radius: f64) -> f64 {
        let [cols, rows] = self.resolution;
        let mut cells = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let d = self.density[r * cols + c];
                let (u, v) = grid.slice.coords(r, c);
                if d.is_finite() && (u - center.0).hypot(v - center.1) <= radius {
                    cells.push(d);
                }
            }
        }
        par::ordered_sum(&cells) * self.spacing * self.spacing
    }
}

/// Five-point Laplacian of `grid`, normalized by `1/(2pi)`.
pub fn slice_laplacian(grid: &FieldGrid) -> Result<LaplacianReport, ProbeError> {
    let slice = &grid.slice;
    if !slice.is_complex_line() {
        return Err(ProbeError::NotComplexLine);
    }
    let [cols, rows] = slice.resolution;
    let h = slice.spacing()[0];
    let h2 = h * h;
    let u = |r: usize, c: usize| grid.values[r * cols + c];
    let e = |r: usize, c: usize| grid.error_bounds[r * cols + c];
    // node coordinates and stored values are rounded too
    let floor = 4.0 * f64::EPSILON * grid.values.iter().fold(1.0, |m: f64, v| m.max(v.abs()));
    let cells = par::map_range(rows * cols, |k| {
        let (r, c) = (k / cols, k % cols);
        if r < MARGIN || c < MARGIN || r + MARGIN >= rows || c + MARGIN >= cols {
            return (f64::NAN, f64::NAN);
        }
        let lap = (u(r, c - 1) + u(r, c + 1) + u(r - 1, c) + u(r + 1, c) - 4.0 * u(r, c)) / h2;
        // the diagonal stencil discretizes the same operator at 45 degrees
        let cross = (u(r - 1, c - 1) + u(r - 1, c + 1) + u(r + 1, c - 1) + u(r + 1, c + 1) - 4.0 * u(r, c)) / (2.0 * h2);
        let d4u = u(r, c - 2) - 4.0 * u(r, c - 1) + 6.0 * u(r, c) - 4.0 * u(r, c + 1) + u(r, c + 2);
        let d4v = u(r - 2, c) - 4.0 * u(r - 1, c) + 6.0 * u(r, c) - 4.0 * u(r + 1, c) + u(r + 2, c);
        let truncation = ((d4u.abs() + d4v.abs()) / (12.0 * h2)).max((lap - cross).abs());
        let mut e_max = floor;
        for i in r - 1..=r + 1 {
            for j in c - 1..=c + 1 {
                e_max = e_max.max(e(i, j));
            }
        }
        let tol = (LAPLACIAN_SAFETY * truncation + 8.0 * e_max / h2) / (2.0 * PI);
        (lap / (2.0 * PI), tol)
    });
    let (density, tolerance): (Vec<f64>, Vec<f64>) = cells.into_iter().unzip();
    let mut min_margin = f64::INFINITY;
    let mut worst_index = 0;
    for (k, (d, t)) in density.iter().zip(&tolerance).enumerate() {
        if d.is_finite() && d + t < min_margin {
            min_margin = d + t;
            worst_index = k;
        }
    }
    let interior: Vec<f64> = density.iter().copied().filter(|d| d.is_finite()).collect();
    Ok(LaplacianReport {
        mass: par::ordered_sum(&interior) * h2,
        density,
        tolerance,
        spacing: h,
        min_margin,
        worst_index,
        resolution: [cols, rows],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{GreenError, GreenEstimate};
    use crate::probes::SliceSpec;
    use crate::systems::Point2;

    fn exact(value: f64) -> Result<GreenEstimate, GreenError> {
        Ok(GreenEstimate {
            value,
            error_bound: 0.0,
            iterations_used: 0,
            escaped: value > 0.0,
            tail_bound: 0.0,
        })
    }

    #[test]
    fn harmonic_field_has_no_mass() {
        let line = SliceSpec::complex_line(Point2::ORIGIN, Point2::real(1.0, 0.0), 1.5, 41);
        let grid = FieldGrid::sample(&|p: Point2| exact(p.x.re * 3.0 - p.x.im), &line).unwrap();
        let rep = slice_laplacian(&grid).unwrap();
        assert!(rep.density.iter().filter(|d| d.is_finite()).all(|d| d.abs() < 1e-10));
        assert!(rep.is_subharmonic(), "{} {} {}", rep.min_margin, rep.density[rep.worst_index], rep.tolerance[rep.worst_index]);
        assert_eq!(rep.density.iter().filter(|d| d.is_nan()).count(), 41 * 41 - 37 * 37);
    }

    #[test]
    fn log_plus_carries_unit_mass() {
        let line = SliceSpec::complex_line(Point2::ORIGIN, Point2::real(1.0, 0.0), 2.0, 201);
        let grid = FieldGrid::sample(&|p: Point2| exact(p.x.norm().max(1.0).ln()), &line).unwrap();
        let rep = slice_laplacian(&grid).unwrap();
        assert!((rep.mass - 1.0).abs() < 0.05, "mass {}", rep.mass);
        assert!((rep.mass_in_disk(&grid, (0.0, 0.0), 1.9) - 1.0).abs() < 0.05);
        assert!(rep.is_subharmonic(), "{} at {}", rep.min_margin, rep.worst_index);
    }

    #[test]
    fn real_plane_is_rejected() {
        let s = SliceSpec::real_square(Point2::ORIGIN, 1.0, 9);
        let grid = FieldGrid::sample(&|_: Point2| exact(0.0), &s).unwrap();
        assert_eq!(slice_laplacian(&grid), Err(ProbeError::NotComplexLine));
    }
}
