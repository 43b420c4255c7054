use serde::{Deserialize, Serialize};

use crate::bounds::{ChainSpec, OpenInterval};

use super::VerifyError;

/// Distance kept from open domain endpoints.
pub const ENDPOINT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Double-precision closed forms with a violation threshold.
    Float,
    /// Float sweep followed by enclosure certification of the domain.
    Interval,
}

/// Where in `x` a chain is sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XGrid {
    /// `n` equally spaced points spanning the domain, `ENDPOINT_MARGIN` inside it.
    Uniform(usize),
    /// Fixed abscissae; each must lie in the closure of the domain.
    Explicit(Vec<f64>),
    /// Fractions of the domain's upper end (`alpha` for alpha-chains).
    Fractions(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSamples {
    /// `count` values in the upper half of the constraint, log-spaced toward its end.
    Auto(usize),
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub grid: XGrid,
    pub alphas: AlphaSamples,
    /// Local bisections around each pair's minimal gap.
    pub refine_depth: u32,
    /// Log-domain relative violation threshold.
    pub tolerance: f64,
    pub mode: Mode,
    /// Box budget per certification run in interval mode.
    pub certify_budget: usize,
    /// Violation records kept per pair (the count is always exact).
    pub max_records: usize,
    /// Keep every sample in the report.
    pub keep_samples: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            grid: XGrid::Uniform(100_000),
            alphas: AlphaSamples::Auto(20),
            refine_depth: 3,
            tolerance: 1e-12,
            mode: Mode::Float,
            certify_budget: 10_000,
            max_records: 100,
            keep_samples: false,
        }
    }
}

impl SweepConfig {
    pub fn with_grid(mut self, n: usize) -> Self {
        self.grid = XGrid::Uniform(n);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_alphas(mut self, alphas: AlphaSamples) -> Self {
        self.alphas = alphas;
        self
    }

    /// Checks the chain-independent invariants.
    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |msg: String| Err(VerifyError::Config(msg));
        match &self.grid {
            XGrid::Uniform(n) if *n < 2 => return bad(format!("grid size {n} is below 2")),
            XGrid::Explicit(xs) | XGrid::Fractions(xs) if xs.is_empty() => {
                return bad("empty x grid".into())
            }
            XGrid::Explicit(xs) | XGrid::Fractions(xs) if xs.iter().any(|x| !x.is_finite()) => {
                return bad("non-finite x grid value".into())
            }
            _ => {}
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance {} must be positive", self.tolerance));
        }
        match &self.alphas {
            AlphaSamples::Auto(0) => return bad("alpha count must be positive".into()),
            AlphaSamples::Explicit(a) if a.is_empty() => return bad("empty alpha list".into()),
            _ => {}
        }
        if self.certify_budget == 0 {
            return bad("certification budget must be positive".into());
        }
        Ok(())
    }

    /// Alpha values for an alpha-chain; `None` for fixed-domain chains.
    pub fn alpha_values(&self, spec: &ChainSpec) -> Result<Vec<Option<f64>>, VerifyError> {
        let Some(constraint) = spec.alpha_constraint else {
            return Ok(vec![None]);
        };
        let values = match &self.alphas {
            AlphaSamples::Auto(n) => auto_alphas(constraint, *n),
            AlphaSamples::Explicit(list) => {
                for &a in list {
                    if !constraint.contains(a) {
                        return Err(VerifyError::Config(format!(
                            "alpha {a} is outside ({}, {}) for {}",
                            constraint.lo, constraint.hi, spec.id
                        )));
                    }
                }
                list.clone()
            }
        };
        Ok(values.into_iter().map(Some).collect())
    }

    /// Sample abscissae for one alpha (or the fixed domain).
    pub fn x_values(&self, domain: OpenInterval) -> Result<Vec<f64>, VerifyError> {
        let lo = domain.lo + ENDPOINT_MARGIN;
        let hi = domain.hi - ENDPOINT_MARGIN;
        if !(hi > lo) {
            return Err(VerifyError::EmptyDomain { lo: domain.lo, hi: domain.hi });
        }
        match &self.grid {
            XGrid::Uniform(n) => Ok(uniform(lo, hi, *n)),
            XGrid::Explicit(xs) => check_closure(xs.clone(), domain),
            XGrid::Fractions(fs) => check_closure(fs.iter().map(|f| f * domain.hi).collect(), domain),
        }
    }
}

fn check_closure(xs: Vec<f64>, domain: OpenInterval) -> Result<Vec<f64>, VerifyError> {
    match xs.iter().find(|&&x| !(x >= domain.lo && x <= domain.hi)) {
        Some(x) => Err(VerifyError::Config(format!(
            "x = {x} is outside [{}, {}]",
            domain.lo, domain.hi
        ))),
        None => Ok(xs),
    }
}

/// `n` points from `lo` to `hi` inclusive.
pub(crate) fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// `alpha_i = A - (A/2) r^(i/(n-1))` with `r = 2e-4`: from `A/2` up to
/// `A (1 - 1e-4)`, denser near `A`.
pub fn auto_alphas(constraint: OpenInterval, n: usize) -> Vec<f64> {
    let top = constraint.hi;
    let half = top / 2.0;
    if n == 1 {
        return vec![top - half * 2e-4f64.sqrt()];
    }
    (0..n)
        .map(|i| top - half * 2e-4f64.powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{ChainId, Variant};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn defaults_are_valid() {
        let c = SweepConfig::default();
        c.validate().unwrap();
        assert_eq!(c.grid, XGrid::Uniform(100_000));
        assert_eq!(c.tolerance, 1e-12);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(SweepConfig::default().with_grid(1).validate().is_err());
        assert!(SweepConfig::default().with_tolerance(0.0).validate().is_err());
        assert!(SweepConfig::default().with_tolerance(f64::NAN).validate().is_err());
    }

    #[test]
    fn auto_alphas_sit_in_the_upper_half() {
        let a = auto_alphas(OpenInterval::new(0.0, FRAC_PI_2), 20);
        assert_eq!(a.len(), 20);
        assert!((a[0] - FRAC_PI_2 / 2.0).abs() < 1e-15);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(*a.last().unwrap() < FRAC_PI_2);
        // more than half of the samples in the top quarter
        assert!(a.iter().filter(|&&x| x > 0.75 * FRAC_PI_2).count() > 10);
    }

    #[test]
    fn explicit_alphas_must_satisfy_the_constraint() {
        let spec = ChainSpec::lookup(ChainId::C1, Variant::Corrected).unwrap();
        let c = SweepConfig::default().with_alphas(AlphaSamples::Explicit(vec![2.0]));
        assert!(c.alpha_values(&spec).is_err());
        let c = SweepConfig::default().with_alphas(AlphaSamples::Explicit(vec![1.2]));
        assert_eq!(c.alpha_values(&spec).unwrap(), vec![Some(1.2)]);
    }

    #[test]
    fn grid_respects_margins() {
        let xs = SweepConfig::default()
            .with_grid(5)
            .x_values(OpenInterval::new(0.0, 1.0))
            .unwrap();
        assert_eq!(xs.len(), 5);
        assert_eq!(xs[0], ENDPOINT_MARGIN);
        assert_eq!(xs[4], 1.0 - ENDPOINT_MARGIN);
    }
}
