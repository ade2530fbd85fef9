use super::{FieldGrid, GreenField, ProbeError, SliceSpec};
use crate::par;
use crate::systems::Point2;

/// Discrepancy between two Green fields sampled on the same slice.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub sup_discrepancy: f64,
    /// Riemann sum of `|A - B|` over the slice in the ambient area element.
    pub l1_discrepancy: f64,
    /// Largest `e_A + e_B` over the grid.
    pub combined_error_bound: f64,
    /// First node (row-major) attaining the sup.
    pub argmax_index: usize,
    pub argmax_location: Point2,
    pub grid_a: FieldGrid,
    pub grid_b: FieldGrid,
}

impl ComparisonReport {
    /// Separation is claimed only when the sup exceeds the worst-case bound.
    pub fn separated(&self) -> bool {
        self.sup_discrepancy > self.combined_error_bound
    }

    /// `sup / combined bound`; infinite when the bound is zero and the sup is not.
    pub fn margin_ratio(&self) -> f64 {
        if self.combined_error_bound > 0.0 {
            self.sup_discrepancy / self.combined_error_bound
        } else if self.sup_discrepancy > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

/// Samples both fields on `slice` and measures their discrepancy.
pub fn compare_green<A, B>(a: &A, b: &B, slice: &SliceSpec) -> Result<ComparisonReport, ProbeError>
where
    A: GreenField + ?Sized,
    B: GreenField + ?Sized,
{
    let grid_a = FieldGrid::sample(a, slice)?;
    let grid_b = FieldGrid::sample(b, slice)?;
    compare_grids(grid_a, grid_b)
}

/// Compares two already sampled grids on the same slice.
pub fn compare_grids(grid_a: FieldGrid, grid_b: FieldGrid) -> Result<ComparisonReport, ProbeError> {
    if grid_a.slice != grid_b.slice {
        return Err(ProbeError::SliceMismatch);
    }
    let diffs: Vec<f64> = grid_a
        .values
        .iter()
        .zip(&grid_b.values)
        .map(|(x, y)| (x - y).abs())
        .collect();
    let mut sup = 0.0;
    let mut argmax = 0;
    for (k, &d) in diffs.iter().enumerate() {
        if d > sup {
            sup = d;
            argmax = k;
        }
    }
    let combined = grid_a
        .error_bounds
        .iter()
        .zip(&grid_b.error_bounds)
        .map(|(x, y)| x + y)
        .fold(0.0, f64::max);
    let slice = &grid_a.slice;
    let cols = slice.resolution[0];
    Ok(ComparisonReport {
        sup_discrepancy: sup,
        l1_discrepancy: par::ordered_sum(&diffs) * slice.cell_area(),
        combined_error_bound: combined,
        argmax_index: argmax,
        argmax_location: slice.point(argmax / cols, argmax % cols),
        grid_a,
        grid_b,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvarianceReport {
    /// `max_p |G(F p) - s G(p)| - (e(F p) + s e(p))`; at most zero means
    /// the functional equation holds within the error bounds.
    pub residual: f64,
    /// Sample index attaining the residual.
    pub worst_index: usize,
    /// Largest raw gap `|G(F p) - s G(p)|`.
    pub max_gap: f64,
}

/// Audits `G o F = scale * G` on a finite sample.
pub fn invariance_residual<F, G>(map: F, field: &G, scale: f64, sample: &[Point2]) -> Result<InvarianceReport, ProbeError>
where
    F: Fn(Point2) -> Point2 + Sync + Send,
    G: GreenField + ?Sized,
{
    let rows = par::map_slice(sample, |&p| -> Result<(f64, f64), ProbeError> {
        let image = map(p);
        if !image.is_finite() {
            return Err(ProbeError::NonFinite);
        }
        let at_p = field.estimate(p)?;
        let at_image = field.estimate(image)?;
        let gap = (at_image.value - scale * at_p.value).abs();
        Ok((gap - (at_image.error_bound + scale.abs() * at_p.error_bound), gap))
    });
    let mut report = InvarianceReport {
        residual: f64::NEG_INFINITY,
        worst_index: 0,
        max_gap: 0.0,
    };
    for (k, row) in rows.into_iter().enumerate() {
        let (r, gap) = row?;
        if r > report.residual {
            report.residual = r;
            report.worst_index = k;
        }
        report.max_gap = report.max_gap.max(gap);
    }
    Ok(report)
}
