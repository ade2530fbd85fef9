//! Binary PPM (P6) rendering of field grids.

use cdyn_core::probes::FieldGrid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Palette {
    Linear,
    Log,
    /// Black where `value <= error_bound`, a value ramp elsewhere.
    BinaryZeroSet,
}

impl Palette {
    pub const NAMES: &'static [&'static str] = &["linear", "log", "binary", "binary-zero-set"];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "linear" => Some(Palette::Linear),
            "log" => Some(Palette::Log),
            "binary" | "binary-zero-set" => Some(Palette::BinaryZeroSet),
            _ => None,
        }
    }
}

/// Dark blue to white; every channel is nondecreasing in `t`, and no
/// output is black.
fn ramp(t: f64) -> [u8; 3] {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let byte = |x: f64| (x * 255.0).round() as u8;
    [byte(t * t), byte(t), byte(0.25 + 0.75 * t)]
}

pub fn render_field(grid: &FieldGrid, palette: Palette) -> Vec<u8> {
    let [cols, rows] = grid.slice.resolution;
    render_values(cols, rows, &grid.values, &grid.error_bounds, palette)
}

/// Row-major `values` (row 0 at the top) as a P6 image.
pub fn render_values(cols: usize, rows: usize, values: &[f64], error_bounds: &[f64], palette: Palette) -> Vec<u8> {
    assert_eq!(values.len(), cols * rows);
    assert_eq!(error_bounds.len(), values.len());
    let vmax = values.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let scale = |v: f64| -> f64 {
        if vmax <= 0.0 || !(v > 0.0) {
            return 0.0;
        }
        match palette {
            Palette::Log => {
                let s = vmax * 1e-3;
                (v / s).ln_1p() / (vmax / s).ln_1p()
            }
            _ => v / vmax,
        }
    };
    let mut out = format!("P6\n{cols} {rows}\n255\n").into_bytes();
    out.reserve(3 * values.len());
    for (&v, &e) in values.iter().zip(error_bounds) {
        let px = match palette {
            Palette::BinaryZeroSet if v <= e => [0, 0, 0],
            _ => ramp(scale(v)),
        };
        out.extend_from_slice(&px);
    }
    out
}
