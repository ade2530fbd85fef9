//! Numerical potential theory for polynomial dynamics in one and two complex
//! variables.
//!
//! Three families of maps are covered:
//!
//! * regular polynomial endomorphisms of `C^2` ([`RegularEndo`]),
//! * generalized Hénon maps stored as compositions of elementary factors
//!   ([`HenonMap`]),
//! * the degree-`d` polynomial family with marked critical points
//!   ([`DegreeDFamilyParam`]).
//!
//! For each of them the crate computes escape-rate Green functions with an
//! explicit error bound ([`green`]), periodic points with their multipliers
//! ([`periodic`]), post-critically finite parameters and finite-horizon growth
//! estimators ([`bifurcation`]), and slice-based comparison probes
//! ([`probes`]).
//!
//! Grid sweeps, seed batches and root-finder sweeps run on rayon when the
//! `parallel` feature is enabled (default). Every parallel stage collects in
//! index order, so results never depend on the worker count.

// `!(x > 0.0)` style tests are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifurcation;
pub mod ext;
pub mod green;
pub mod linalg;
pub mod par;
pub mod periodic;
pub mod poly;
pub mod probes;
pub mod systems;

pub use ext::{ExtComplex, Scalar};
pub use green::{EscapeConfig, GreenEstimate};
pub use num_complex::Complex64;
pub use poly::{Poly, Poly2};
pub use systems::{DegreeDFamilyParam, HenonMap, MarkedPair, PlaneMap, Point2, RegularEndo};

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
