//! Critical-orbit machinery for the degree-`d` family: PCF parameters,
//! transversality, and finite-horizon growth estimators.

mod conditions;
mod pcf;

use thiserror::Error;

use crate::green::GreenError;
use crate::systems::SystemError;

pub use conditions::{
    ce_estimate, condition_report, param_derivative, param_log_derivative, pr_margin, transverse_prerepelling_check,
    CeEstimate, CritStatus, ConditionReport, PrerepellingReport, PrerepellingVerdict, DEFAULT_PR_EXPONENT,
};
pub use pcf::{
    enumerate_combinatorics, pcf_equi_sample, pcf_jacobian, pcf_residual, pcf_solve, Combinatorics, PcfConfig,
    PcfSample, PcfSolution, SeedBox, MAX_ORBIT_LENGTH,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BifError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Green(#[from] GreenError),
    #[error("expected {expected} (n, m) pairs, got {got}")]
    CombinatoricsLength { expected: usize, got: usize },
    #[error("cycle length m must be at least 1")]
    ZeroCycle,
    #[error("orbit length n + m = {0} exceeds the cap")]
    OrbitCap(usize),
    #[error("marked orbit overflowed at step {step}")]
    Overflow { step: usize },
    #[error("exponent s = {0} must exceed 1/2")]
    BadExponent(f64),
    #[error("empty index range")]
    EmptyRange,
    #[error("seed box: {0}")]
    SeedBox(&'static str),
    #[error("no PCF parameter found in the seed box")]
    Empty,
    #[error("marked family degenerates at t0")]
    Degenerate,
}
