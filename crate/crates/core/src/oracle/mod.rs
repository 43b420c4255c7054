//! Independent high-precision oracle.
//!
//! Everything here returns certified enclosures built from outward-rounded
//! `f64` arithmetic: target values from their infinite products, the
//! Bernoulli chain from the series of `ln(1 - t)`, and zeta-type partial
//! sums with integral tail bounds. None of it calls the closed-form
//! evaluators in [`crate::bounds`] except to share domain checks.

mod bernoulli;
mod closed_form;
mod enclosure;
mod partial;
mod product;
pub mod series;

use thiserror::Error;

use crate::bounds::{BoundsError, TargetId};

pub use bernoulli::{
    bernoulli_enclosure, box_gap_bounds, left_mid_log_gap, mid_right_log_gap, BoxGapBounds,
    TripleEnclosure,
};
pub use closed_form::{
    log_bound_enclosure, log_first_factor, log_member_enclosure, log_target_elementary,
    log_target_enclosure, zeta_enclosure,
};
pub use enclosure::{Enclosure, HYPERBOLIC_ULPS, LIBM_ULPS};
pub use partial::{partial_sum_check, PartialSumCheck};
pub use product::{product_enclosure, product_enclosure_with_terms, tail_budget, TailBudget};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{what} = {value} is outside the product domain of {target}")]
    Domain { what: &'static str, value: f64, target: TargetId },
    #[error("{what} = {value} must lie in (0, 1)")]
    UnitInterval { what: &'static str, value: f64 },
    #[error("tolerance {0} must be positive")]
    InvalidTolerance(f64),
    #[error("term count {0} must be positive")]
    InvalidCount(u64),
    #[error("cannot reach width {eps:e} in double precision (best {achieved:e})")]
    Precision { eps: f64, achieved: f64 },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}
