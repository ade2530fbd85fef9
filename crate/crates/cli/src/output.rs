//! Text formats shared by the subcommands.

use cdyn_core::probes::{FieldGrid, SliceSpec};
use cdyn_core::{Complex64, Point2};
use serde::Serialize;

/// Shortest round-trip form, with an exponent for very small or large values.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// `a+bi` / `a-bi`, readable by the config expression parser.
pub fn complex(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", num(c.re), sign, num(c.im.abs()))
}

pub fn point4(p: Point2) -> [f64; 4] {
    [p.x.re, p.x.im, p.y.re, p.y.im]
}

#[derive(Serialize)]
pub struct SliceJson {
    pub origin: [f64; 4],
    pub basis: [[f64; 4]; 2],
    pub extents: [f64; 2],
    pub resolution: [usize; 2],
}

impl From<&SliceSpec> for SliceJson {
    fn from(s: &SliceSpec) -> Self {
        Self {
            origin: point4(s.origin),
            basis: s.basis.map(point4),
            extents: s.extents,
            resolution: s.resolution,
        }
    }
}

pub const GRID_HEADER: &str = "row,col,u,v,value,error_bound";

/// One line per node, row-major.
pub fn grid_csv(grid: &FieldGrid) -> String {
    let cols = grid.slice.resolution[0];
    let mut s = String::from(GRID_HEADER);
    s.push('\n');
    for (k, (v, e)) in grid.values.iter().zip(&grid.error_bounds).enumerate() {
        let (row, col) = (k / cols, k % cols);
        let (u, w) = grid.slice.coords(row, col);
        s.push_str(&format!("{row},{col},{},{},{},{}\n", num(u), num(w), num(*v), num(*e)));
    }
    s
}

/// Values and bounds of a grid CSV, with `(cols, rows)`.
pub struct ParsedGrid {
    pub cols: usize,
    pub rows: usize,
    pub values: Vec<f64>,
    pub error_bounds: Vec<f64>,
}

pub fn parse_grid_csv(text: &str) -> Result<ParsedGrid, String> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(GRID_HEADER) {
        return Err(format!("expected header `{GRID_HEADER}`"));
    }
    let mut cells = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        let bad = || format!("data line {}: malformed", i + 1);
        if f.len() != 6 {
            return Err(bad());
        }
        let row: usize = f[0].parse().map_err(|_| bad())?;
        let col: usize = f[1].parse().map_err(|_| bad())?;
        let v: f64 = f[4].parse().map_err(|_| bad())?;
        let e: f64 = f[5].parse().map_err(|_| bad())?;
        cells.push((row, col, v, e));
    }
    let rows = cells.iter().map(|c| c.0 + 1).max().ok_or("no data rows")?;
    let cols = cells.iter().map(|c| c.1 + 1).max().ok_or("no data rows")?;
    if cells.len() != rows * cols {
        return Err(format!("expected {} nodes for a {cols}x{rows} grid, found {}", rows * cols, cells.len()));
    }
    let mut values = vec![f64::NAN; rows * cols];
    let mut error_bounds = vec![f64::NAN; rows * cols];
    for (row, col, v, e) in cells {
        let k = row * cols + col;
        if !values[k].is_nan() {
            return Err(format!("node ({row}, {col}) listed twice"));
        }
        values[k] = v;
        error_bounds[k] = e;
    }
    Ok(ParsedGrid {
        cols,
        rows,
        values,
        error_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(complex(Complex64::new(-2.0, 0.0)), "-2.0+0.0i");
        assert_eq!(complex(Complex64::new(0.5, -1.25)), "0.5-1.25i");
        assert_eq!(num(0.1), "0.1");
        assert_eq!(num(2.5e-14), "2.5e-14");
        assert_eq!(crate::expr::parse_complex(&complex(Complex64::new(1e-20, -3e30))).unwrap(), Complex64::new(1e-20, -3e30));
    }

    #[test]
    fn grid_round_trip() {
        let slice = SliceSpec::real_square(Point2::ORIGIN, 1.0, 3);
        let grid = FieldGrid {
            slice,
            values: (0..9).map(|k| k as f64 / 7.0).collect(),
            error_bounds: vec![1e-12; 9],
        };
        let parsed = parse_grid_csv(&grid_csv(&grid)).unwrap();
        assert_eq!((parsed.cols, parsed.rows), (3, 3));
        assert_eq!(parsed.values, grid.values);
        assert!(parse_grid_csv("a,b\n").is_err());
        let truncated: String = grid_csv(&grid).lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(parse_grid_csv(&truncated).is_err());
    }
}
