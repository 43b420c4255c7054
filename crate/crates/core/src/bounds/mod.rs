//! Bound catalog, target functions, chains and series constants.

mod catalog;
mod chain;
mod target;
mod triple;
mod zeta;

pub use catalog::{eval_bound, log_bound, BoundId, BoundInfo, BoundRef, Form, Tier, Variant};
pub use chain::{chain_registry, pair_label, ChainId, ChainMember, ChainSpec, OpenInterval, XDomain};
pub use target::{eval_target, log_one_minus_power, log_target, Parity, ProductFamily, TargetId};
pub use triple::{bernoulli_triple, log_bernoulli_triple, BernoulliTriple};
pub use zeta::{zeta_constants, ZetaConstant, ZetaTable};

use thiserror::Error;

/// Low-order part of pi: `PI + PI_LO` agrees with pi to about 32 digits.
pub(crate) const PI_LO: f64 = 1.2246467991473532e-16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },
    #[error("{0} requires the alpha parameter")]
    MissingParameter(BoundId),
    #[error("{0} does not take an alpha parameter")]
    UnexpectedParameter(BoundId),
    #[error("{0} has a single form; the printed variant only exists for B13, B17 and B18")]
    NoVariant(BoundId),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
}

pub type Result<T> = std::result::Result<T, BoundsError>;
