//! Slice-based probes: Green-function comparison, functional-equation
//! audits, slice Laplacians and bounded-period intersection counts.

mod compare;
mod finiteness;
mod laplacian;

use num_complex::Complex64;
use thiserror::Error;

use crate::bifurcation::BifError;
use crate::green::{green_activity, green_bif, Direction, EndoGreen, EscapeConfig, GreenError, GreenEstimate, HenonGreen, PolyGreen};
use crate::par;
use crate::periodic::PeriodicError;
use crate::systems::{DegreeDFamilyParam, Point2};

pub use compare::{compare_green, compare_grids, invariance_residual, ComparisonReport, InvarianceReport};
pub use finiteness::{common_points_probe, per_pcf_probe, CommonPoint, CommonPointsReport, FinitenessConfig, PcfMatch};
pub use laplacian::{slice_laplacian, LaplacianReport, LAPLACIAN_SAFETY};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbeError {
    #[error(transparent)]
    Green(#[from] GreenError),
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error(transparent)]
    Bifurcation(#[from] BifError),
    #[error("invalid slice: {0}")]
    Slice(&'static str),
    #[error("slice is not a complex line")]
    NotComplexLine,
    #[error("grids cover different slices")]
    SliceMismatch,
    #[error("PCF sample must come from the cubic family")]
    NotCubic,
    #[error("map produced a non-finite image")]
    NonFinite,
}

/// An affine real 2-plane in `C^2`: `origin + u basis[0] + v basis[1]` with
/// `|u| <= extents[0]`, `|v| <= extents[1]`.
///
/// Grid nodes include both endpoints of each axis; row 0 is the top
/// (`v = +extents[1]`) and columns run towards `+u`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceSpec {
    pub origin: Point2,
    pub basis: [Point2; 2],
    pub extents: [f64; 2],
    /// `[columns, rows]`.
    pub resolution: [usize; 2],
}

impl SliceSpec {
    /// The real `(x, y)` square of half-width `half` around `center`.
    pub fn real_square(center: Point2, half: f64, res: usize) -> Self {
        Self {
            origin: center,
            basis: [Point2::real(1.0, 0.0), Point2::real(0.0, 1.0)],
            extents: [half, half],
            resolution: [res, res],
        }
    }

    /// The complex line through `origin` in direction `dir`, as the disk-like
    /// square `|Re s|, |Im s| <= half` of `origin + s dir`.
    pub fn complex_line(origin: Point2, dir: Point2, half: f64, res: usize) -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self {
            origin,
            basis: [dir, dir.scale(i)],
            extents: [half, half],
            resolution: [res, res],
        }
    }

    pub fn validate(&self) -> Result<(), ProbeError> {
        if self.resolution.iter().any(|&r| r < 2) {
            return Err(ProbeError::Slice("resolution must be at least 2 per axis"));
        }
        if self.extents.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return Err(ProbeError::Slice("extents must be positive and finite"));
        }
        if !self.origin.is_finite() || self.basis.iter().any(|b| !b.is_finite()) {
            return Err(ProbeError::Slice("non-finite origin or basis"));
        }
        let [a, b] = self.basis.map(real4);
        let dot = |p: &[f64; 4], q: &[f64; 4]| p.iter().zip(q).map(|(x, y)| x * y).sum::<f64>();
        let (aa, bb, ab) = (dot(&a, &a), dot(&b, &b), dot(&a, &b));
        if !(aa * bb - ab * ab > 1e-12 * aa * bb) || aa == 0.0 || bb == 0.0 {
            return Err(ProbeError::Slice("basis directions must be linearly independent"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.resolution[0] * self.resolution[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid step along each axis, in slice coordinates.
    pub fn spacing(&self) -> [f64; 2] {
        [
            2.0 * self.extents[0] / (self.resolution[0] - 1) as f64,
            2.0 * self.extents[1] / (self.resolution[1] - 1) as f64,
        ]
    }

    /// Slice coordinates `(u, v)` of a node.
    pub fn coords(&self, row: usize, col: usize) -> (f64, f64) {
        let h = self.spacing();
        (-self.extents[0] + h[0] * col as f64, self.extents[1] - h[1] * row as f64)
    }

    pub fn point(&self, row: usize, col: usize) -> Point2 {
        let (u, v) = self.coords(row, col);
        self.origin + self.basis[0] * u + self.basis[1] * v
    }

    /// Area of one grid cell in the ambient metric.
    pub fn cell_area(&self) -> f64 {
        let [a, b] = self.basis.map(real4);
        let dot = |p: &[f64; 4], q: &[f64; 4]| p.iter().zip(q).map(|(x, y)| x * y).sum::<f64>();
        let gram = dot(&a, &a) * dot(&b, &b) - dot(&a, &b).powi(2);
        let h = self.spacing();
        gram.max(0.0).sqrt() * h[0] * h[1]
    }

    /// Whether `basis[1] = i basis[0]` with equal spacing on both axes, so
    /// the slice is a square grid on a complex line.
    pub fn is_complex_line(&self) -> bool {
        let i = Complex64::new(0.0, 1.0);
        let expected = self.basis[0].scale(i);
        let scale = self.basis[0].norm_max();
        let h = self.spacing();
        self.basis[1].dist_max(&expected) <= 1e-12 * scale && (h[0] - h[1]).abs() <= 1e-12 * h[0]
    }
}

fn real4(p: Point2) -> [f64; 4] {
    [p.x.re, p.x.im, p.y.re, p.y.im]
}

/// Values of a field on a slice grid, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    pub slice: SliceSpec,
    pub values: Vec<f64>,
    pub error_bounds: Vec<f64>,
}

impl FieldGrid {
    /// Evaluates `field` at every node, in parallel, in row-major order.
    pub fn sample<G: GreenField + ?Sized>(field: &G, slice: &SliceSpec) -> Result<Self, ProbeError> {
        slice.validate()?;
        let cols = slice.resolution[0];
        let est = par::map_range(slice.len(), |k| field.estimate(slice.point(k / cols, k % cols)));
        let mut values = Vec::with_capacity(est.len());
        let mut error_bounds = Vec::with_capacity(est.len());
        for e in est {
            let e = e?;
            values.push(e.value);
            error_bounds.push(e.error_bound);
        }
        Ok(Self {
            slice: slice.clone(),
            values,
            error_bounds,
        })
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.slice.resolution[0] + col]
    }
}

/// Anything that returns a Green-type estimate at a point of `C^2`.
pub trait GreenField: Sync {
    fn estimate(&self, p: Point2) -> Result<GreenEstimate, GreenError>;
}

impl<F> GreenField for F
where
    F: Fn(Point2) -> Result<GreenEstimate, GreenError> + Sync,
{
    fn estimate(&self, p: Point2) -> Result<GreenEstimate, GreenError> {
        self(p)
    }
}

/// `G_h` of a regular endomorphism.
pub struct EndoField {
    pub green: EndoGreen,
    pub cfg: EscapeConfig,
}

impl GreenField for EndoField {
    fn estimate(&self, p: Point2) -> Result<GreenEstimate, GreenError> {
        self.green.eval(p, &self.cfg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HenonKind {
    Forward,
    Backward,
    Max,
}

/// `G^+`, `G^-` or `G = max(G^+, G^-)` of a Hénon map.
pub struct HenonField {
    pub green: HenonGreen,
    pub kind: HenonKind,
    pub cfg: EscapeConfig,
}

impl GreenField for HenonField {
    fn estimate(&self, p: Point2) -> Result<GreenEstimate, GreenError> {
        match self.kind {
            HenonKind::Forward => self.green.eval(p, Direction::Forward, &self.cfg),
            HenonKind::Backward => self.green.eval(p, Direction::Backward, &self.cfg),
            HenonKind::Max => self.green.eval_max(p, &self.cfg),
        }
    }
}

/// `G_bif` of the cubic family, reading a point as the parameter `(x, y)`.
pub struct BifField {
    pub cfg: EscapeConfig,
}

impl GreenField for BifField {
    fn estimate(&self, p: Point2) -> Result<GreenEstimate, GreenError> {
        green_bif(&DegreeDFamilyParam::cubic(p.x, p.y), &self.cfg)
    }
}

/// Activity function `G_i` of the cubic family on the parameter plane.
pub struct ActivityField {
    pub index: usize,
    pub cfg: EscapeConfig,
}

impl GreenField for ActivityField {
    fn estimate(&self, p: Point2) -> Result<GreenEstimate, GreenError> {
        green_activity(&DegreeDFamilyParam::cubic(p.x, p.y), self.index, &self.cfg)
    }
}

/// Dynamical Green function of a one-variable polynomial, read on the `x`
/// coordinate.
pub struct PolyField {
    pub green: PolyGreen,
    pub cfg: EscapeConfig,
}

impl GreenField for PolyField {
    fn estimate(&self, p: Point2) -> Result<GreenEstimate, GreenError> {
        self.green.eval(p.x, &self.cfg)
    }
}
