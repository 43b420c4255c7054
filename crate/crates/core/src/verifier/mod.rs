//! Sweeps, certification, sharpness comparison and the printed-versus-corrected audit.

mod audit;
mod certify;
mod config;
mod gaps;
mod sharpness;
mod sweep;

use thiserror::Error;

use crate::bounds::BoundsError;
use crate::oracle::OracleError;

pub use audit::{discrepancy_audit, AuditReport, AuditRow, AuditSample, AuditWitness, Tighter, Validity, VariantVerdict};
pub use certify::{certify_region, falsify_at, Certification, Witness};
pub use config::{auto_alphas, AlphaSamples, Mode, SweepConfig, XGrid, ENDPOINT_MARGIN};
pub use gaps::{pair_gap_lower, printed_shift, Region};
pub use sharpness::{sharpness, Segment, SharpnessPoint, SharpnessReport, Winner};
pub use sweep::{canonical_boxes, sweep_chain, CertifiedBox, ChainReport, GapSample, PairReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("empty domain interior ({lo}, {hi})")]
    EmptyDomain { lo: f64, hi: f64 },
    #[error("invalid region: {0}")]
    Region(String),
    #[error("{a} and {b} do not bound the same target from the same side")]
    SideMismatch { a: String, b: String },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
