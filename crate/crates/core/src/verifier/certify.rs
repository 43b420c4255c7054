use std::collections::VecDeque;

use serde::Serialize;

use crate::bounds::{pair_label, ChainMember, ChainSpec, XDomain};
use crate::oracle::{log_member_enclosure, Enclosure};

use super::gaps::{pair_gap_lower, Region};
use super::VerifyError;

/// A point where a pair is reversed with disjoint enclosures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub x: f64,
    pub alpha: Option<f64>,
    pub pair: String,
    /// Enclosure of the member that should be smaller.
    pub lhs: Enclosure,
    /// Enclosure of the member that should be larger.
    pub rhs: Enclosure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Certification {
    Certified { boxes: usize },
    Falsified { witness: Witness, boxes: usize, certified_fraction: f64 },
    Undecided { certified_fraction: f64, boxes: usize },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Certification::Falsified { .. })
    }

    pub fn certified_fraction(&self) -> f64 {
        match self {
            Certification::Certified { .. } => 1.0,
            Certification::Falsified { certified_fraction, .. }
            | Certification::Undecided { certified_fraction, .. } => *certified_fraction,
        }
    }

    pub fn boxes(&self) -> usize {
        match self {
            Certification::Certified { boxes }
            | Certification::Falsified { boxes, .. }
            | Certification::Undecided { boxes, .. } => *boxes,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certification::Certified { .. } => "CERTIFIED",
            Certification::Falsified { .. } => "FALSIFIED",
            Certification::Undecided { .. } => "UNDECIDED",
        }
    }
}

fn check_region(spec: &ChainSpec, region: &Region) -> Result<(), VerifyError> {
    let bad = |msg: String| Err(VerifyError::Region(msg));
    let (x0, x1) = region.x;
    if !(x0.is_finite() && x1.is_finite() && 0.0 <= x0 && x0 <= x1) {
        return bad(format!("x-interval [{x0}, {x1}] is not a sub-interval of [0, inf)"));
    }
    match (spec.x_domain, spec.alpha_constraint, region.alpha) {
        (XDomain::Fixed(iv), _, None) => {
            if x1 > iv.hi {
                return bad(format!("x-interval ends at {x1}, beyond {}", iv.hi));
            }
        }
        (XDomain::BelowAlpha, Some(constraint), Some((a0, a1))) => {
            if !(constraint.lo < a0 && a0 <= a1 && a1 < constraint.hi) {
                return bad(format!(
                    "alpha-interval [{a0}, {a1}] is not inside ({}, {})",
                    constraint.lo, constraint.hi
                ));
            }
            if x1 > a1 {
                return bad(format!("x-interval ends at {x1}, beyond alpha <= {a1}"));
            }
        }
        (XDomain::BelowAlpha, _, None) => return bad(format!("{} needs an alpha-interval", spec.id)),
        (_, _, Some(_)) => return bad(format!("{} takes no alpha", spec.id)),
    }
    Ok(())
}

fn measure(region: &Region) -> f64 {
    let dx = region.x.1 - region.x.0;
    match region.alpha {
        Some((a0, a1)) if a1 > a0 => dx * (a1 - a0),
        _ => dx,
    }
}

fn split(region: &Region, initial: &Region) -> [Region; 2] {
    let rel = |(a, b): (f64, f64), (c, d): (f64, f64)| if d > c { (b - a) / (d - c) } else { 0.0 };
    let split_alpha = match (region.alpha, initial.alpha) {
        (Some(a), Some(a_init)) => rel(a, a_init) > rel(region.x, initial.x),
        _ => false,
    };
    if split_alpha {
        let (a0, a1) = region.alpha.unwrap();
        let m = 0.5 * a0 + 0.5 * a1;
        [Region { alpha: Some((a0, m)), ..*region }, Region { alpha: Some((m, a1)), ..*region }]
    } else {
        let (x0, x1) = region.x;
        let m = 0.5 * x0 + 0.5 * x1;
        [Region { x: (x0, m), ..*region }, Region { x: (m, x1), ..*region }]
    }
}

/// Looks for a reversed pair with disjoint enclosures at one point.
pub fn falsify_at(
    spec: &ChainSpec,
    x: f64,
    alpha: Option<f64>,
    eps: f64,
) -> Option<Witness> {
    spec.pairs().find_map(|(lower, upper)| reversed_pair(&lower, &upper, x, alpha, eps))
}

fn reversed_pair(
    lower: &ChainMember,
    upper: &ChainMember,
    x: f64,
    alpha: Option<f64>,
    eps: f64,
) -> Option<Witness> {
    let lhs = log_member_enclosure(*lower, x, alpha, eps).ok()?;
    let rhs = log_member_enclosure(*upper, x, alpha, eps).ok()?;
    rhs.precedes(&lhs).then(|| Witness {
        x,
        alpha,
        pair: pair_label(lower, upper),
        lhs: lhs.exp(),
        rhs: rhs.exp(),
    })
}

fn box_certified(spec: &ChainSpec, region: &Region) -> bool {
    spec.pairs().all(|(lower, upper)| {
        pair_gap_lower(&lower, &upper, region).is_some_and(|g| g > 0.0)
    })
}

/// Bisection certification of every adjacent pair of `spec` over `region`.
///
/// A box is certified when the certified lower bound of each pair's log gap
/// is positive. Unresolved boxes are probed at their midpoint with direct
/// enclosures (targets from their products at width `tol`) and then split.
/// At most `max_boxes` boxes are examined; running out yields `Undecided`.
pub fn certify_region(
    spec: &ChainSpec,
    region: Region,
    tol: f64,
    max_boxes: usize,
) -> Result<Certification, VerifyError> {
    if max_boxes == 0 {
        return Err(VerifyError::Config("box budget must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(VerifyError::Config(format!("tolerance {tol} must be positive")));
    }
    check_region(spec, &region)?;
    let total = measure(&region);
    let mut certified = 0.0;
    let mut queue = VecDeque::from([region]);
    let mut boxes = 0;
    let fraction = |certified: f64| if total > 0.0 { (certified / total).min(1.0) } else { 0.0 };
    while let Some(current) = queue.pop_front() {
        if boxes == max_boxes {
            return Ok(Certification::Undecided { certified_fraction: fraction(certified), boxes });
        }
        boxes += 1;
        // entirely above the diagonal x = alpha: no admissible points
        let vacuous = matches!(current.alpha, Some((_, a1)) if current.x.0 > a1);
        if vacuous || box_certified(spec, &current) {
            certified += measure(&current);
            continue;
        }
        let (x_mid, alpha_mid) = current.midpoint();
        let x_probe = alpha_mid.map_or(x_mid, |a| x_mid.min(a));
        if let Some(witness) = falsify_at(spec, x_probe, alpha_mid, tol) {
            return Ok(Certification::Falsified {
                witness,
                boxes,
                certified_fraction: fraction(certified),
            });
        }
        let degenerate = current.x.0 == current.x.1
            && current.alpha.is_none_or(|(a0, a1)| a0 == a1);
        let [left, right] = split(&current, &region);
        if !degenerate && left != current && right != current {
            queue.push_back(left);
            queue.push_back(right);
        } else {
            return Ok(Certification::Undecided { certified_fraction: fraction(certified), boxes });
        }
    }
    Ok(Certification::Certified { boxes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{BoundId, ChainId, OpenInterval, TargetId, Variant};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn chain(id: ChainId, variant: Variant) -> ChainSpec {
        ChainSpec::lookup(id, variant).unwrap()
    }

    #[test]
    fn c3_certifies_away_from_the_endpoints() {
        let r = certify_region(&chain(ChainId::C3, Variant::Corrected), Region::x_only(0.01, PI - 0.01), 1e-12, 100_000).unwrap();
        assert!(r.is_certified(), "{r:?}");
    }

    #[test]
    fn inverted_chain_is_falsified() {
        let mut spec = chain(ChainId::C1, Variant::Corrected);
        spec.members = vec![ChainMember::bound(BoundId::B3), ChainMember::Target(TargetId::Cos)];
        spec.x_domain = XDomain::Fixed(OpenInterval::new(0.0, FRAC_PI_2));
        spec.alpha_constraint = None;
        match certify_region(&spec, Region::x_only(0.5, 1.0), 1e-12, 100).unwrap() {
            Certification::Falsified { witness, .. } => {
                assert!(witness.x > 0.5 && witness.x < 1.0);
                assert!(witness.rhs.precedes(&witness.lhs));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_undecided() {
        let r = certify_region(&chain(ChainId::C3, Variant::Corrected), Region::x_only(0.0, 1.0), 1e-12, 10).unwrap();
        match r {
            Certification::Undecided { certified_fraction, boxes } => {
                assert_eq!(boxes, 10);
                assert!(certified_fraction > 0.0 && certified_fraction < 1.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn printed_c7_is_falsified_quickly() {
        let r = certify_region(&chain(ChainId::C7, Variant::Printed), Region::x_only(0.01, 1.5), 1e-12, 10).unwrap();
        assert!(r.is_falsified(), "{r:?}");
    }

    #[test]
    fn alpha_chains_certify_per_alpha_and_over_alpha_boxes() {
        for id in [ChainId::C1, ChainId::C2, ChainId::C4, ChainId::C6] {
            let spec = chain(id, Variant::Corrected);
            let top = spec.alpha_constraint.unwrap().hi;
            let a = 0.8 * top;
            let r = certify_region(&spec, Region::with_alpha((1e-9, a - 1e-9), (a, a)), 1e-12, 1000).unwrap();
            assert!(r.is_certified(), "{id}: {r:?}");
            let r = certify_region(&spec, Region::with_alpha((0.0, 0.7 * top), (0.5 * top, 0.9 * top)), 1e-12, 200).unwrap();
            assert!(!r.is_falsified() && r.certified_fraction() > 0.5, "{id}: {r:?}");
        }
    }

    #[test]
    fn regions_are_validated() {
        let c3 = chain(ChainId::C3, Variant::Corrected);
        assert!(certify_region(&c3, Region::x_only(0.0, 4.0), 1e-12, 10).is_err());
        assert!(certify_region(&c3, Region::with_alpha((0.0, 1.0), (1.0, 1.0)), 1e-12, 10).is_err());
        assert!(certify_region(&c3, Region::x_only(0.1, 1.0), 1e-12, 0).is_err());
        let c1 = chain(ChainId::C1, Variant::Corrected);
        assert!(certify_region(&c1, Region::x_only(0.1, 1.0), 1e-12, 10).is_err());
        assert!(certify_region(&c1, Region::with_alpha((0.1, 1.0), (0.5, 2.0)), 1e-12, 10).is_err());
    }
}
