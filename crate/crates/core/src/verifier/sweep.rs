use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{pair_label, ChainId, ChainSpec, TargetId, Variant};

use super::certify::{certify_region, Certification};
use super::config::{Mode, SweepConfig, XGrid, ENDPOINT_MARGIN};
use super::gaps::Region;
use super::VerifyError;

/// One pair evaluated at one point, in log domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapSample {
    pub x: f64,
    pub alpha: Option<f64>,
    /// Index into the chain's adjacent pairs.
    pub pair: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; positive when the inequality holds.
    pub gap: f64,
}

impl GapSample {
    /// Threshold below which the gap counts as a violation.
    pub fn threshold(&self, tolerance: f64) -> f64 {
        -tolerance * 1f64.max(self.lhs.abs()).max(self.rhs.abs())
    }

    pub fn violates(&self, tolerance: f64) -> bool {
        self.gap < self.threshold(tolerance)
    }

    fn min_key(&self, other: &GapSample) -> Ordering {
        self.gap
            .total_cmp(&other.gap)
            .then(self.x.total_cmp(&other.x))
            .then(alpha_key(self.alpha).total_cmp(&alpha_key(other.alpha)))
    }

    fn position_key(&self, other: &GapSample) -> Ordering {
        alpha_key(self.alpha)
            .total_cmp(&alpha_key(other.alpha))
            .then(self.x.total_cmp(&other.x))
    }
}

fn alpha_key(alpha: Option<f64>) -> f64 {
    alpha.unwrap_or(f64::NEG_INFINITY)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    /// `lower<=upper`
    pub label: String,
    pub min_gap: f64,
    /// Sample attaining the minimal gap (ties: smallest x, then smallest alpha).
    pub argmin: GapSample,
    pub violation_count: u64,
    /// The first violations in (alpha, x) order, capped by the config.
    pub violations: Vec<GapSample>,
    pub samples: u64,
}

/// Certification of one canonical box in interval mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedBox {
    pub region: Region,
    pub result: Certification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub chain: ChainId,
    pub variant: Variant,
    pub target: TargetId,
    pub alphas: Vec<f64>,
    pub pairs: Vec<PairReport>,
    /// Interval mode only.
    pub certification: Vec<CertifiedBox>,
    /// Mean certified fraction over the canonical boxes (interval mode only).
    pub certified_fraction: Option<f64>,
    /// Every sample, when requested.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<GapSample>,
    pub wall_time_ms: f64,
}

impl ChainReport {
    pub fn violation_count(&self) -> u64 {
        self.pairs.iter().map(|p| p.violation_count).sum()
    }

    /// No float violation and no falsified box.
    pub fn passed(&self) -> bool {
        self.violation_count() == 0 && !self.certification.iter().any(|c| c.result.is_falsified())
    }
}

#[derive(Debug, Clone)]
struct PairAccumulator {
    min: Option<GapSample>,
    violations: u64,
    records: Vec<GapSample>,
    samples: u64,
}

impl PairAccumulator {
    fn empty() -> Self {
        PairAccumulator { min: None, violations: 0, records: Vec::new(), samples: 0 }
    }

    fn push(&mut self, s: GapSample, tolerance: f64, cap: usize) {
        self.samples += 1;
        if self.min.is_none_or(|m| s.min_key(&m) == Ordering::Less) {
            self.min = Some(s);
        }
        if s.violates(tolerance) {
            self.violations += 1;
            self.records.push(s);
            if self.records.len() > 2 * cap.max(1) {
                self.trim(cap);
            }
        }
    }

    fn trim(&mut self, cap: usize) {
        self.records.sort_by(|a, b| a.position_key(b));
        self.records.truncate(cap);
    }

    fn merge(mut self, other: PairAccumulator, cap: usize) -> Self {
        self.samples += other.samples;
        self.violations += other.violations;
        self.min = match (self.min, other.min) {
            (Some(a), Some(b)) => Some(if b.min_key(&a) == Ordering::Less { b } else { a }),
            (a, b) => a.or(b),
        };
        self.records.extend(other.records);
        self.trim(cap);
        self
    }
}

/// Log gaps of every adjacent pair at one point.
fn evaluate(spec: &ChainSpec, x: f64, alpha: Option<f64>) -> Result<Vec<GapSample>, VerifyError> {
    let logs = spec
        .members
        .iter()
        .map(|m| m.log_value(x, alpha))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(logs
        .windows(2)
        .enumerate()
        .map(|(pair, w)| GapSample { x, alpha, pair, lhs: w[0], rhs: w[1], gap: w[1] - w[0] })
        .collect())
}

type Accumulators = Vec<PairAccumulator>;

fn merge_all(a: Accumulators, b: Accumulators, cap: usize) -> Accumulators {
    a.into_iter().zip(b).map(|(x, y)| x.merge(y, cap)).collect()
}

/// Sweeps every adjacent pair of `spec` over the configured grid.
///
/// Gaps are `ln(upper) - ln(lower)`; a sample is a violation when its gap is
/// below `-tolerance * max(1, |ln lower|, |ln upper|)`. After the grid pass,
/// each pair's minimum for each alpha is refined by `refine_depth` local
/// bisections. In interval mode the domain is additionally certified with
/// enclosures (one box per alpha). Results do not depend on thread scheduling.
pub fn sweep_chain(spec: &ChainSpec, config: &SweepConfig) -> Result<ChainReport, VerifyError> {
    config.validate()?;
    let started = Instant::now();
    let alphas = config.alpha_values(spec)?;
    let n_pairs = spec.members.len().saturating_sub(1);
    if n_pairs == 0 {
        return Err(VerifyError::Config(format!("{} has fewer than two members", spec.id)));
    }
    let tol = config.tolerance;
    let cap = config.max_records;

    struct AlphaPass {
        accumulators: Accumulators,
        samples: Vec<GapSample>,
    }

    let passes: Vec<AlphaPass> = alphas
        .par_iter()
        .map(|&alpha| -> Result<AlphaPass, VerifyError> {
            let domain = spec.x_interval(alpha);
            let xs = config.x_values(domain)?;
            let evaluated: Vec<Vec<GapSample>> = xs
                .par_iter()
                .map(|&x| evaluate(spec, x, alpha))
                .collect::<Result<_, _>>()?;
            let mut acc: Accumulators = vec![PairAccumulator::empty(); n_pairs];
            for row in &evaluated {
                for s in row {
                    acc[s.pair].push(*s, tol, cap);
                }
            }
            let mut samples: Vec<GapSample> = if config.keep_samples {
                evaluated.iter().flatten().copied().collect()
            } else {
                Vec::new()
            };
            // local refinement around each pair's minimum
            if let XGrid::Uniform(n) = config.grid {
                let lo = domain.lo + ENDPOINT_MARGIN;
                let hi = domain.hi - ENDPOINT_MARGIN;
                let spacing = (hi - lo) / (n - 1) as f64;
                for pair in 0..n_pairs {
                    let Some(mut best) = acc[pair].min else { continue };
                    let mut step = spacing;
                    for _ in 0..config.refine_depth {
                        step /= 2.0;
                        for x in [best.x - step, best.x + step] {
                            if !(x >= lo && x <= hi) {
                                continue;
                            }
                            for s in evaluate(spec, x, alpha)? {
                                acc[s.pair].push(s, tol, cap);
                                if config.keep_samples {
                                    samples.push(s);
                                }
                                if s.pair == pair && s.min_key(&best) == Ordering::Less {
                                    best = s;
                                }
                            }
                        }
                    }
                }
            }
            Ok(AlphaPass { accumulators: acc, samples })
        })
        .collect::<Result<_, _>>()?;

    let mut samples = Vec::new();
    let mut acc: Accumulators = vec![PairAccumulator::empty(); n_pairs];
    for pass in passes {
        acc = merge_all(acc, pass.accumulators, cap);
        samples.extend(pass.samples);
    }

    let labels: Vec<String> = spec.pairs().map(|(l, u)| pair_label(&l, &u)).collect();
    let pairs = acc
        .into_iter()
        .zip(labels)
        .map(|(a, label)| {
            let argmin = a.min.expect("every pair has samples");
            PairReport {
                label,
                min_gap: argmin.gap,
                argmin,
                violation_count: a.violations,
                violations: a.records,
                samples: a.samples,
            }
        })
        .collect();

    let certification = if config.mode == Mode::Interval {
        canonical_boxes(spec, &alphas)
            .into_par_iter()
            .map(|region| -> Result<CertifiedBox, VerifyError> {
                let result = certify_region(spec, region, tol, config.certify_budget)?;
                Ok(CertifiedBox { region, result })
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let certified_fraction = (!certification.is_empty()).then(|| {
        certification.iter().map(|c| c.result.certified_fraction()).sum::<f64>()
            / certification.len() as f64
    });

    Ok(ChainReport {
        chain: spec.id,
        variant: spec.variant,
        target: spec.target,
        alphas: alphas.iter().flatten().copied().collect(),
        pairs,
        certification,
        certified_fraction,
        samples,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Domain interior with the endpoint margin, one box per alpha.
pub fn canonical_boxes(spec: &ChainSpec, alphas: &[Option<f64>]) -> Vec<Region> {
    alphas
        .iter()
        .map(|&alpha| {
            let iv = spec.x_interval(alpha);
            let x = (iv.lo + ENDPOINT_MARGIN, iv.hi - ENDPOINT_MARGIN);
            Region { x, alpha: alpha.map(|a| (a, a)) }
        })
        .collect()
}
