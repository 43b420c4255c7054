use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::catalog::{log_bound, BoundId, BoundRef, Variant};
use super::target::{log_target, TargetId};
use super::{BoundsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChainId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

impl ChainId {
    pub const ALL: [ChainId; 7] = [
        ChainId::C1,
        ChainId::C2,
        ChainId::C3,
        ChainId::C4,
        ChainId::C5,
        ChainId::C6,
        ChainId::C7,
    ];

    /// Chains with a printed variant.
    pub const DUAL: [ChainId; 2] = [ChainId::C5, ChainId::C7];
}

impl fmt::Display for ChainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", *self as u8 + 1)
    }
}

impl FromStr for ChainId {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self> {
        ChainId::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| BoundsError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl OpenInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        OpenInterval { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// The x-range of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum XDomain {
    /// `0 < x < alpha`.
    BelowAlpha,
    Fixed(OpenInterval),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainMember {
    Bound(BoundRef),
    Target(TargetId),
}

impl ChainMember {
    pub fn bound(id: BoundId) -> Self {
        ChainMember::Bound(BoundRef::corrected(id))
    }

    pub fn log_value(&self, x: f64, alpha: Option<f64>) -> Result<f64> {
        match self {
            ChainMember::Bound(b) => {
                let alpha = if b.id.info().takes_alpha() { alpha } else { None };
                log_bound(b.id, x, alpha, b.variant)
            }
            ChainMember::Target(t) => Ok(log_target(*t, x)),
        }
    }
}

impl fmt::Display for ChainMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainMember::Bound(b) => b.fmt(f),
            ChainMember::Target(t) => t.fmt(f),
        }
    }
}

/// An inequality chain `members[0] <= members[1] <= ...` over its domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub id: ChainId,
    pub target: TargetId,
    pub members: Vec<ChainMember>,
    pub x_domain: XDomain,
    pub alpha_constraint: Option<OpenInterval>,
    pub variant: Variant,
}

impl ChainSpec {
    /// Registry entry for `id`, or `None` if the chain has no such variant.
    pub fn lookup(id: ChainId, variant: Variant) -> Option<ChainSpec> {
        chain_registry()
            .into_iter()
            .find(|c| c.id == id && c.variant == variant)
    }

    pub fn is_alpha_chain(&self) -> bool {
        self.alpha_constraint.is_some()
    }

    /// Open x-interval for a given alpha (ignored by fixed-domain chains).
    pub fn x_interval(&self, alpha: Option<f64>) -> OpenInterval {
        match self.x_domain {
            XDomain::Fixed(iv) => iv,
            XDomain::BelowAlpha => OpenInterval::new(0.0, alpha.unwrap_or(0.0)),
        }
    }

    /// Adjacent `(lower, upper)` pairs in chain order.
    pub fn pairs(&self) -> impl Iterator<Item = (ChainMember, ChainMember)> + '_ {
        self.members.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn bounds(&self) -> impl Iterator<Item = BoundRef> + '_ {
        self.members.iter().filter_map(|m| match m {
            ChainMember::Bound(b) => Some(*b),
            ChainMember::Target(_) => None,
        })
    }
}

pub fn pair_label(lower: &ChainMember, upper: &ChainMember) -> String {
    format!("{lower}<={upper}")
}

/// All chains, derivation-consistent first, followed by the printed
/// variants of C5 and C7.
pub fn chain_registry() -> Vec<ChainSpec> {
    use BoundId::*;
    let half = OpenInterval::new(0.0, FRAC_PI_2);
    let full = OpenInterval::new(0.0, PI);
    let alpha_chain = |id, target, ids: [BoundId; 3], limit: OpenInterval| {
        let [classic, refined, upper] = ids;
        ChainSpec {
            id,
            target,
            members: vec![
                ChainMember::bound(classic),
                ChainMember::bound(refined),
                ChainMember::Target(target),
                ChainMember::bound(upper),
            ],
            x_domain: XDomain::BelowAlpha,
            alpha_constraint: Some(limit),
            variant: Variant::Corrected,
        }
    };
    let pi_chain = |id, target, classic: BoundRef, refined: BoundRef, domain, variant| ChainSpec {
        id,
        target,
        members: vec![
            ChainMember::Bound(classic),
            ChainMember::Bound(refined),
            ChainMember::Target(target),
        ],
        x_domain: XDomain::Fixed(domain),
        alpha_constraint: None,
        variant,
    };
    let c = BoundRef::corrected;
    let p = BoundRef::printed;
    vec![
        alpha_chain(ChainId::C1, TargetId::Cos, [B1, B2, B3], half),
        alpha_chain(ChainId::C2, TargetId::Sinc, [B4, B5, B6], half),
        pi_chain(ChainId::C3, TargetId::Sinc, c(B7), c(B8), full, Variant::Corrected),
        alpha_chain(ChainId::C4, TargetId::SincRatioSinh, [B9, B10, B11], full),
        pi_chain(ChainId::C5, TargetId::SincRatioSinh, c(B12), c(B13), full, Variant::Corrected),
        alpha_chain(ChainId::C6, TargetId::CosCosh, [B14, B15, B16], half),
        pi_chain(ChainId::C7, TargetId::CosCosh, c(B17), c(B18), half, Variant::Corrected),
        pi_chain(ChainId::C5, TargetId::SincRatioSinh, c(B12), p(B13), full, Variant::Printed),
        pi_chain(ChainId::C7, TargetId::CosCosh, p(B17), p(B18), half, Variant::Printed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::catalog::Tier;

    #[test]
    fn registry_shape() {
        let reg = chain_registry();
        assert_eq!(reg.len(), 9);
        for id in ChainId::ALL {
            assert!(ChainSpec::lookup(id, Variant::Corrected).is_some());
        }
        assert!(ChainSpec::lookup(ChainId::C3, Variant::Printed).is_none());
    }

    #[test]
    fn c3_lookup() {
        let c3 = ChainSpec::lookup(ChainId::C3, Variant::Corrected).unwrap();
        assert_eq!(c3.target, TargetId::Sinc);
        assert_eq!(
            c3.bounds().map(|b| b.id).collect::<Vec<_>>(),
            vec![BoundId::B7, BoundId::B8]
        );
        assert_eq!(c3.x_domain, XDomain::Fixed(OpenInterval::new(0.0, PI)));
    }

    #[test]
    fn c7_domain_is_clipped() {
        let c7 = ChainSpec::lookup(ChainId::C7, Variant::Corrected).unwrap();
        assert_eq!(c7.x_interval(None).hi, FRAC_PI_2);
    }

    #[test]
    fn c1_alpha_constraint() {
        let c1 = ChainSpec::lookup(ChainId::C1, Variant::Corrected).unwrap();
        assert_eq!(c1.alpha_constraint, Some(OpenInterval::new(0.0, FRAC_PI_2)));
        assert_eq!(c1.x_interval(Some(1.2)), OpenInterval::new(0.0, 1.2));
    }

    #[test]
    fn members_are_ordered_and_consistent() {
        for spec in chain_registry() {
            let mut last_rank = None;
            for m in &spec.members {
                let rank = match m {
                    ChainMember::Bound(b) => {
                        let info = b.id.info();
                        assert_eq!(info.target, spec.target);
                        if info.is_lower() {
                            assert_eq!(info.takes_alpha(), spec.is_alpha_chain());
                        }
                        match info.tier {
                            Tier::Classic => 0,
                            Tier::Refined => 1,
                            Tier::Upper => 3,
                        }
                    }
                    ChainMember::Target(t) => {
                        assert_eq!(*t, spec.target);
                        2
                    }
                };
                assert!(last_rank.map_or(true, |r| r < rank));
                last_rank = Some(rank);
            }
        }
    }

    #[test]
    fn chain_ids_parse() {
        assert_eq!("c4".parse::<ChainId>().unwrap(), ChainId::C4);
        assert!("C9".parse::<ChainId>().is_err());
    }
}
