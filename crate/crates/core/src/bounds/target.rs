use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BoundsError, PI_LO};

/// The four functions bounded by the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TargetId {
    /// cos(x)
    Cos,
    /// sin(x)/x
    Sinc,
    /// sin(x) sinh(x)/x^2
    SincRatioSinh,
    /// cos(x) cosh(x)
    CosCosh,
}

/// Which integers index the factors of a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    /// j_k = k
    All,
    /// j_k = 2k - 1
    Odd,
}

impl Parity {
    pub fn index(self, k: u64) -> u64 {
        match self {
            Parity::All => k,
            Parity::Odd => 2 * k - 1,
        }
    }
}

/// Product representation `T(x) = prod_k (1 - (c x / (pi j_k))^p)`.
///
/// The factor argument is `w_k = (c x/pi)^p / j_k^p`; `c` is the
/// `root_scale` (1 or 2) and `p` the `power` (2 or 4).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductFamily {
    pub root_scale: f64,
    pub power: u32,
    pub parity: Parity,
}

impl ProductFamily {
    /// `c^p`, the coefficient in front of `(x/pi)^p`.
    pub fn scale(&self) -> f64 {
        self.root_scale.powi(self.power as i32)
    }

    /// `s_k = 1/j_k^p`.
    pub fn weight(&self, k: u64) -> f64 {
        (self.parity.index(k) as f64).powi(-(self.power as i32))
    }

    /// `(c x/pi)^p`, the first factor argument.
    pub fn base_argument(&self, x: f64) -> f64 {
        (self.root_scale * x / PI).powi(self.power as i32)
    }

    /// Supremum of |x| for which every factor is positive.
    pub fn radius(&self) -> f64 {
        PI / self.root_scale
    }
}

impl TargetId {
    pub const ALL: [TargetId; 4] = [
        TargetId::Cos,
        TargetId::Sinc,
        TargetId::SincRatioSinh,
        TargetId::CosCosh,
    ];

    pub fn family(self) -> ProductFamily {
        match self {
            TargetId::Cos => ProductFamily {
                root_scale: 2.0,
                power: 2,
                parity: Parity::Odd,
            },
            TargetId::Sinc => ProductFamily {
                root_scale: 1.0,
                power: 2,
                parity: Parity::All,
            },
            TargetId::SincRatioSinh => ProductFamily {
                root_scale: 1.0,
                power: 4,
                parity: Parity::All,
            },
            TargetId::CosCosh => ProductFamily {
                root_scale: 2.0,
                power: 4,
                parity: Parity::Odd,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TargetId::Cos => "COS",
            TargetId::Sinc => "SINC",
            TargetId::SincRatioSinh => "SINC_RATIO_SINH",
            TargetId::CosCosh => "COSCOSH",
        }
    }

    pub fn expression(self) -> &'static str {
        match self {
            TargetId::Cos => "cos(x)",
            TargetId::Sinc => "sin(x)/x",
            TargetId::SincRatioSinh => "sin(x) sinh(x)/x^2",
            TargetId::CosCosh => "cos(x) cosh(x)",
        }
    }
}

impl fmt::Display for TargetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TargetId {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TargetId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| BoundsError::UnknownId(s.to_string()))
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

fn sinhc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sinh() / x
    }
}

/// Platform evaluation of a target, with removable singularities filled by 1.
pub fn eval_target(id: TargetId, x: f64) -> f64 {
    match id {
        TargetId::Cos => x.cos(),
        TargetId::Sinc => sinc(x),
        TargetId::SincRatioSinh => sinc(x) * sinhc(x),
        TargetId::CosCosh => x.cos() * x.cosh(),
    }
}

/// Natural log of [`eval_target`]; the ratio targets are split so that no
/// intermediate product under- or overflows.
pub fn log_target(id: TargetId, x: f64) -> f64 {
    match id {
        TargetId::Cos => log_cos(x),
        TargetId::Sinc => log_sinc(x),
        TargetId::SincRatioSinh if x.abs() < SMALL_ARGUMENT => {
            // sin x sinh x / x^2 = sum_n 2 (-4)^n x^(4n) / (4n+2)!
            quartic_series_minus_one(x, 2).ln_1p()
        }
        TargetId::SincRatioSinh => log_sinc(x) + log_sinhc(x),
        TargetId::CosCosh if x.abs() < SMALL_ARGUMENT => {
            // cos x cosh x = sum_n (-4)^n x^(4n) / (4n)!
            quartic_series_minus_one(x, 0).ln_1p()
        }
        TargetId::CosCosh => log_cos(x) + x.cosh().ln(),
    }
}

/// `sum_{n>=1} c (-4)^n x^(4n) / (4n + shift)!` with `c = shift! `, i.e. the
/// series above minus its constant term.
fn quartic_series_minus_one(x: f64, shift: u32) -> f64 {
    let x4 = x.powi(4);
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..=8u32 {
        let k = 4 * n + shift;
        term *= -4.0 * x4 / f64::from(k * (k - 1) * (k - 2) * (k - 3));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Below this |x| the logs are taken of `f(x) - 1` computed without cancellation.
const SMALL_ARGUMENT: f64 = 0.5;

/// `sin(x)/x - 1` (`sign = -1`) or `sinh(x)/x - 1` (`sign = 1`) by Taylor series.
fn ratio_minus_one(x: f64, sign: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..=12u32 {
        term *= sign * x2 / f64::from((2 * n) * (2 * n + 1));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn log_sinc(x: f64) -> f64 {
    if x.abs() < SMALL_ARGUMENT {
        ratio_minus_one(x, -1.0).ln_1p()
    } else {
        sinc(x).ln()
    }
}

fn log_sinhc(x: f64) -> f64 {
    if x.abs() < SMALL_ARGUMENT {
        ratio_minus_one(x, 1.0).ln_1p()
    } else {
        sinhc(x).ln()
    }
}

fn log_cos(x: f64) -> f64 {
    if x.abs() < SMALL_ARGUMENT {
        // cos x - 1 = -2 sin^2(x/2)
        (-2.0 * (0.5 * x).sin().powi(2)).ln_1p()
    } else {
        x.cos().ln()
    }
}

/// `ln(1 - c x/pi)` for `0 <= c x < pi`, accurate near both ends.
fn log_one_minus_ratio(x: f64, root_scale: f64) -> f64 {
    let t = root_scale * x / PI;
    if t < 0.5 {
        (-t).ln_1p()
    } else {
        // 1 - c x/pi = c (pi/c - x)/pi, with pi/c split in two parts so the
        // subtraction is exact.
        let gap = (PI / root_scale - x) + PI_LO / root_scale;
        (root_scale * gap / PI).ln()
    }
}

/// `ln(1 - (c x/pi)^p)`, the log of the first factor base used by the
/// pi-normalized bounds. Returns `-inf` at `c x = pi` and NaN beyond.
pub fn log_one_minus_power(x: f64, family: ProductFamily) -> f64 {
    let t = family.root_scale * x / PI;
    if t < 0.5 {
        return (-t.powi(family.power as i32)).ln_1p();
    }
    let mut acc = log_one_minus_ratio(x, family.root_scale) + t.ln_1p();
    if family.power == 4 {
        acc += (t * t).ln_1p();
    }
    acc
}
