use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{BoundId, BoundRef, ChainMember, ChainSpec, Form, OpenInterval, TargetId, Variant, XDomain};
use crate::oracle::{log_member_enclosure, Enclosure};

use super::certify::{certify_region, falsify_at, Certification, Witness};
use super::config::{SweepConfig, XGrid, ENDPOINT_MARGIN};
use super::gaps::Region;
use super::sharpness::{sharpness, Winner};
use super::VerifyError;

const INCONCLUSIVE_RECORDS: usize = 20;
const BOUNDARY_RESOLUTION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    /// No violation over the sweep and the canonical box certified.
    Valid,
    /// Enclosure-separated counterexample.
    Invalid,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tighter {
    Corrected,
    Printed,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditSample {
    pub x: f64,
    pub bound: f64,
    pub target: f64,
    /// `ln target - ln bound`
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantVerdict {
    pub variant: Variant,
    pub validity: Validity,
    pub violations: u64,
    /// Sample with the smallest gap.
    pub worst: AuditSample,
    /// Start of the empirical violation region, if any.
    pub invalid_from: Option<f64>,
    /// Certification over the canonical box (clipped below `invalid_from`).
    pub certificate: Certification,
    pub certified_region: Region,
    pub counterexample: Option<Witness>,
}

/// The three members evaluated with enclosures at one point, in value space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditWitness {
    pub x: f64,
    pub printed: Enclosure,
    pub corrected: Enclosure,
    pub target: Enclosure,
    /// Members in increasing order, e.g. `printed < corrected < target`.
    pub order: String,
    /// Consecutive members in `order` have disjoint enclosures.
    pub separated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub bound: BoundId,
    pub target: TargetId,
    pub printed_valid: bool,
    pub corrected_valid: bool,
    pub printed: VariantVerdict,
    pub corrected: VariantVerdict,
    pub tighter: Tighter,
    pub crossovers: Vec<f64>,
    /// Largest |ln corrected - ln printed| over the grid.
    pub max_log_gap: f64,
    pub witnesses: Vec<AuditWitness>,
    pub inconclusive_count: u64,
    pub inconclusive: Vec<f64>,
    pub classification: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn row(&self, bound: BoundId) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.bound == bound)
    }
}

fn witness_points(bound: BoundId) -> &'static [f64] {
    match bound {
        BoundId::B13 => &[2.0, 3.1],
        BoundId::B17 => &[0.7],
        BoundId::B18 => &[1.2],
        _ => &[],
    }
}

fn pair_chain(bound: BoundRef, x_max: f64) -> ChainSpec {
    let info = bound.id.info();
    let host = crate::bounds::chain_registry()
        .into_iter()
        .find(|s| s.bounds().any(|b| b.id == bound.id))
        .expect("dual entries belong to a registered chain");
    ChainSpec {
        id: host.id,
        target: info.target,
        members: vec![ChainMember::Bound(bound), ChainMember::Target(info.target)],
        x_domain: XDomain::Fixed(OpenInterval::new(0.0, x_max)),
        alpha_constraint: None,
        variant: bound.variant,
    }
}

fn sample_points(config: &SweepConfig, x_max: f64) -> Vec<f64> {
    let lo = ENDPOINT_MARGIN;
    let hi = x_max - ENDPOINT_MARGIN;
    match &config.grid {
        XGrid::Uniform(n) => super::config::uniform(lo, hi, *n),
        XGrid::Explicit(xs) => xs.iter().copied().filter(|x| *x > 0.0 && *x < x_max).collect(),
        XGrid::Fractions(fs) => fs.iter().map(|f| f * x_max).filter(|x| *x > 0.0 && *x < x_max).collect(),
    }
}

fn audit_variant(
    bound: BoundRef,
    x_max: f64,
    xs: &[f64],
    config: &SweepConfig,
) -> Result<(VariantVerdict, Vec<f64>, u64), VerifyError> {
    let target = bound.id.info().target;
    let samples: Vec<AuditSample> = xs
        .par_iter()
        .map(|&x| -> Result<AuditSample, VerifyError> {
            let b = bound.log_value(x, None)?;
            let t = crate::bounds::log_target(target, x);
            Ok(AuditSample { x, bound: b, target: t, gap: t - b })
        })
        .collect::<Result<_, _>>()?;
    let threshold = |s: &AuditSample| config.tolerance * 1f64.max(s.bound.abs()).max(s.target.abs());
    let violations = samples.iter().filter(|s| s.gap < -threshold(s)).count() as u64;
    let inconclusive: Vec<f64> = samples
        .iter()
        .filter(|s| s.gap.abs() <= threshold(s))
        .map(|s| s.x)
        .collect();
    let inconclusive_count = inconclusive.len() as u64;
    let worst = *samples
        .iter()
        .min_by(|a, b| a.gap.total_cmp(&b.gap).then(a.x.total_cmp(&b.x)))
        .expect("non-empty grid");

    // first grid violation, refined by bisection against the previous sample
    let gap_at = |x: f64| -> Result<f64, VerifyError> {
        Ok(crate::bounds::log_target(target, x) - bound.log_value(x, None)?)
    };
    let invalid_from = match samples.iter().position(|s| s.gap < -threshold(s)) {
        None => None,
        Some(0) => Some(samples[0].x),
        Some(i) => {
            let (mut l, mut r) = (samples[i - 1].x, samples[i].x);
            while r - l > BOUNDARY_RESOLUTION {
                let m = 0.5 * (l + r);
                if gap_at(m)? < 0.0 {
                    r = m;
                } else {
                    l = m;
                }
            }
            Some(0.5 * (l + r))
        }
    };

    let chain = pair_chain(bound, x_max);
    let box_hi = match invalid_from {
        Some(b) => (0.95 * x_max).min(0.95 * b),
        None => 0.95 * x_max,
    };
    let certified_region = Region::x_only(0.05 * x_max, box_hi.max(0.05 * x_max));
    let certificate = certify_region(&chain, certified_region, config.tolerance, config.certify_budget)?;
    let counterexample = if violations > 0 {
        falsify_at(&chain, worst.x, None, config.tolerance)
    } else {
        None
    };
    let validity = match (violations, &counterexample) {
        (0, _) if certificate.is_certified() => Validity::Valid,
        (_, Some(_)) => Validity::Invalid,
        _ if certificate.is_falsified() => Validity::Invalid,
        _ => Validity::Inconclusive,
    };
    let verdict = VariantVerdict {
        variant: bound.variant,
        validity,
        violations,
        worst,
        invalid_from,
        certificate,
        certified_region,
        counterexample,
    };
    Ok((verdict, inconclusive.into_iter().take(INCONCLUSIVE_RECORDS).collect(), inconclusive_count))
}

fn witness(bound: BoundId, x: f64, eps: f64) -> Result<AuditWitness, VerifyError> {
    let printed = log_member_enclosure(ChainMember::Bound(BoundRef::printed(bound)), x, None, eps)?.exp();
    let corrected = log_member_enclosure(ChainMember::Bound(BoundRef::corrected(bound)), x, None, eps)?.exp();
    let target = log_member_enclosure(ChainMember::Target(bound.info().target), x, None, eps)?.exp();
    let mut members = [("printed", printed), ("corrected", corrected), ("target", target)];
    members.sort_by(|a, b| a.1.mid().total_cmp(&b.1.mid()));
    let separated = members.windows(2).all(|w| w[0].1.precedes(&w[1].1));
    let order = members.iter().map(|m| m.0).collect::<Vec<_>>().join(" < ");
    Ok(AuditWitness { x, printed, corrected, target, order, separated })
}

fn describe(bound: BoundId, printed: &VariantVerdict, corrected: &VariantVerdict, tighter: Tighter, crossovers: &[f64]) -> String {
    let verdict = |v: &VariantVerdict, name: &str| match (v.validity, v.invalid_from) {
        (Validity::Valid, _) => format!("{name} valid"),
        (Validity::Invalid, Some(b)) => format!("{name} invalid for x > {b:.10}"),
        (Validity::Invalid, None) => format!("{name} invalid"),
        (Validity::Inconclusive, _) => format!("{name} inconclusive"),
    };
    let tight = match tighter {
        Tighter::Corrected => "corrected tighter".to_string(),
        Tighter::Printed => "printed tighter".to_string(),
        Tighter::Mixed => {
            let at: Vec<String> = crossovers.iter().map(|c| format!("{c:.10}")).collect();
            format!("tightness mixed, crossover at x = {}", at.join(", "))
        }
    };
    format!("{bound}: {}; {}; {tight}", verdict(printed, "printed"), verdict(corrected, "corrected"))
}

fn audit_bound(bound: BoundId, config: &SweepConfig) -> Result<AuditRow, VerifyError> {
    let info = bound.info();
    let Form::Pi { x_max } = info.form else {
        unreachable!("dual entries are pi-normalized");
    };
    let xs = sample_points(config, x_max);
    if xs.is_empty() {
        return Err(VerifyError::EmptyDomain { lo: 0.0, hi: x_max });
    }
    let (printed, inc_p, count_p) = audit_variant(BoundRef::printed(bound), x_max, &xs, config)?;
    let (corrected, inc_c, count_c) = audit_variant(BoundRef::corrected(bound), x_max, &xs, config)?;

    let grid = xs.len().clamp(1, 20_000);
    let cmp = sharpness(BoundRef::corrected(bound), BoundRef::printed(bound), (0.0, x_max), grid, None)?;
    let tighter = if cmp.points.iter().all(|p| p.winner != Winner::B) {
        Tighter::Corrected
    } else if cmp.points.iter().all(|p| p.winner != Winner::A) {
        Tighter::Printed
    } else {
        Tighter::Mixed
    };

    let witnesses = witness_points(bound)
        .iter()
        .map(|&x| witness(bound, x, config.tolerance.min(1e-12)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut inconclusive: Vec<f64> = inc_p.into_iter().chain(inc_c).collect();
    inconclusive.sort_by(f64::total_cmp);
    inconclusive.dedup();
    inconclusive.truncate(INCONCLUSIVE_RECORDS);

    Ok(AuditRow {
        bound,
        target: info.target,
        printed_valid: printed.validity == Validity::Valid,
        corrected_valid: corrected.validity == Validity::Valid,
        classification: describe(bound, &printed, &corrected, tighter, &cmp.crossovers),
        printed,
        corrected,
        tighter,
        crossovers: cmp.crossovers,
        max_log_gap: cmp.max_log_gap,
        witnesses,
        inconclusive_count: count_p + count_c,
        inconclusive,
    })
}

/// Classifies the printed and corrected forms of B13, B17 and B18.
///
/// Validity means no violation at the configured tolerance over the grid
/// plus an enclosure certificate on `[0.05, 0.95]` of the domain; invalidity
/// requires an enclosure-separated counterexample.
pub fn discrepancy_audit(config: &SweepConfig) -> Result<AuditReport, VerifyError> {
    config.validate()?;
    let rows = BoundId::DUAL
        .par_iter()
        .map(|&b| audit_bound(b, config))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AuditReport { rows })
}
