//! Sharp exponential-type bounds for circular and hyperbolic functions.
//!
//! The crate is split into three layers:
//!
//! - [`bounds`]: the closed catalog of bound formulas, the refined Bernoulli
//!   triple, the four target functions and the inequality chains that tie
//!   them together. Everything here is plain `f64` evaluated in log-domain.
//! - [`oracle`]: outward-rounded [`Enclosure`](oracle::Enclosure) arithmetic,
//!   truncated infinite products with rigorous tail enclosures, and the
//!   log-series evaluation of the Bernoulli triple.
//! - [`verifier`]: grid sweeps, box certification, sharpness comparison and
//!   the printed-versus-corrected audit.
//!
//! All operations are pure; sweeps fan out over `rayon` and merge with
//! order-insensitive reductions, so reports are reproducible.

pub mod bounds;
pub mod oracle;
pub mod verifier;

pub use bounds::{
    bernoulli_triple, chain_registry, eval_bound, eval_target, zeta_constants, BoundId, ChainId,
    ChainMember, ChainSpec, TargetId, Variant, ZetaTable,
};
pub use oracle::{bernoulli_enclosure, partial_sum_check, product_enclosure, Enclosure};
pub use verifier::{certify_region, discrepancy_audit, sharpness, sweep_chain, SweepConfig};
