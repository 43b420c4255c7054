//! The closed catalog of bound formulas.
//!
//! Every entry is evaluated in log-domain, `a^b = exp(b ln a)`, so that
//! chains can be compared with a uniform relative tolerance. Alpha-parameterized
//! lower bounds use the exponents `x^p/alpha^p` and `x^2p/alpha^2p`; the
//! pi-normalized entries B13, B17 and B18 additionally carry the printed
//! variant whose exponents differ from the per-factor aggregation.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::target::{log_one_minus_power, log_target, TargetId};
use super::zeta::zeta_constants;
use super::{BoundsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundId {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
    B10,
    B11,
    B12,
    B13,
    B14,
    B15,
    B16,
    B17,
    B18,
}

/// Derivation-consistent form versus the form as originally printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Corrected,
    Printed,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Corrected => "corrected",
            Variant::Printed => "printed",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "corrected" | "derivation_consistent" => Ok(Variant::Corrected),
            "printed" | "as_printed" => Ok(Variant::Printed),
            _ => Err(BoundsError::UnknownId(s.to_string())),
        }
    }
}

/// Position of a bound in a chain `classic <= refined <= target <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    Classic,
    Refined,
    Upper,
}

/// How an entry is parameterized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Form {
    /// Lower bound through the target's value at `alpha`; `0 < x <= alpha < alpha_max`.
    Alpha { alpha_max: f64 },
    /// Lower bound through the first factor base `1 - (c x/pi)^p`; `0 <= x < x_max`.
    Pi { x_max: f64 },
    /// Upper bound `exp(-sum_k w_k)`; `0 <= x <= x_max`.
    Plain { x_max: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInfo {
    pub id: BoundId,
    pub name: &'static str,
    pub expression: &'static str,
    /// Alternative expression for the printed variant, if any.
    pub printed_expression: Option<&'static str>,
    pub target: TargetId,
    pub tier: Tier,
    pub form: Form,
    /// How the entry follows from the product representation of its target.
    pub derivation: &'static str,
}

impl BoundInfo {
    pub fn has_variants(&self) -> bool {
        self.printed_expression.is_some()
    }

    pub fn takes_alpha(&self) -> bool {
        matches!(self.form, Form::Alpha { .. })
    }

    pub fn is_lower(&self) -> bool {
        self.tier != Tier::Upper
    }
}

/// A catalog entry together with the variant to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundRef {
    pub id: BoundId,
    pub variant: Variant,
}

impl BoundRef {
    pub fn corrected(id: BoundId) -> Self {
        BoundRef {
            id,
            variant: Variant::Corrected,
        }
    }

    pub fn printed(id: BoundId) -> Self {
        BoundRef {
            id,
            variant: Variant::Printed,
        }
    }

    pub fn log_value(&self, x: f64, alpha: Option<f64>) -> Result<f64> {
        log_bound(self.id, x, alpha, self.variant)
    }
}

impl fmt::Display for BoundRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Corrected => write!(f, "{}", self.id),
            Variant::Printed => write!(f, "{}:printed", self.id),
        }
    }
}

impl FromStr for BoundRef {
    type Err = BoundsError;

    /// Accepts `B17`, `B17:printed` and `B17:corrected`.
    fn from_str(s: &str) -> Result<Self> {
        let (id, variant) = match s.split_once(':') {
            Some((id, v)) => (id, v.parse()?),
            None => (s, Variant::Corrected),
        };
        let id: BoundId = id.parse()?;
        if variant == Variant::Printed && !id.info().has_variants() {
            return Err(BoundsError::NoVariant(id));
        }
        Ok(BoundRef { id, variant })
    }
}

impl BoundId {
    pub const ALL: [BoundId; 18] = [
        BoundId::B1,
        BoundId::B2,
        BoundId::B3,
        BoundId::B4,
        BoundId::B5,
        BoundId::B6,
        BoundId::B7,
        BoundId::B8,
        BoundId::B9,
        BoundId::B10,
        BoundId::B11,
        BoundId::B12,
        BoundId::B13,
        BoundId::B14,
        BoundId::B15,
        BoundId::B16,
        BoundId::B17,
        BoundId::B18,
    ];

    /// Entries with a printed variant.
    pub const DUAL: [BoundId; 3] = [BoundId::B13, BoundId::B17, BoundId::B18];

    pub fn label(self) -> &'static str {
        self.info().name
    }

    pub fn info(self) -> BoundInfo {
        use BoundId::*;
        use TargetId::*;
        const HALF: f64 = FRAC_PI_2;
        let alpha = |alpha_max| Form::Alpha { alpha_max };
        let pi = |x_max| Form::Pi { x_max };
        let plain = |x_max| Form::Plain { x_max };
        let (name, expression, printed_expression, target, tier, form, derivation) = match self {
            B1 => (
                "cos_lower_classic",
                "(cos a)^(x^2/a^2)",
                None,
                Cos,
                Tier::Classic,
                alpha(HALF),
                "classical Bernoulli bound on each cosine factor, u = x^2/a^2",
            ),
            B2 => (
                "cos_lower_refined",
                "(cos a)^(x^4/a^4) exp((x^4/a^4 - x^2/a^2) a^2/2)",
                None,
                Cos,
                Tier::Refined,
                alpha(HALF),
                "refined Bernoulli bound on each cosine factor; sum of v_k = a^2/2 via sum 1/(2k-1)^2",
            ),
            B3 => (
                "cos_upper",
                "exp(-x^2/2)",
                None,
                Cos,
                Tier::Upper,
                plain(HALF),
                "1 - w <= exp(-w) on each cosine factor",
            ),
            B4 => (
                "sinc_lower_classic",
                "(sin a/a)^(x^2/a^2)",
                None,
                Sinc,
                Tier::Classic,
                alpha(HALF),
                "classical Bernoulli bound on each Euler factor of sin(x)/x",
            ),
            B5 => (
                "sinc_lower_refined",
                "(sin a/a)^(x^4/a^4) exp((x^4/a^4 - x^2/a^2) a^2/6)",
                None,
                Sinc,
                Tier::Refined,
                alpha(HALF),
                "refined Bernoulli bound on each Euler factor; sum of v_k = a^2/6 via sum 1/k^2",
            ),
            B6 => (
                "sinc_upper",
                "exp(-x^2/6)",
                None,
                Sinc,
                Tier::Upper,
                plain(HALF),
                "1 - w <= exp(-w) on each Euler factor",
            ),
            B7 => (
                "sinc_pi_classic",
                "(1 - x^2/pi^2)^(pi^2/6)",
                None,
                Sinc,
                Tier::Classic,
                pi(PI),
                "classical Bernoulli bound with u_k = 1/k^2, v = x^2/pi^2",
            ),
            B8 => (
                "sinc_pi_refined",
                "(1 - x^2/pi^2)^(pi^4/90) exp(x^2 (pi^2/90 - 1/6))",
                None,
                Sinc,
                Tier::Refined,
                pi(PI),
                "refined Bernoulli bound with u_k = 1/k^2, v = x^2/pi^2",
            ),
            B9 => (
                "ss_lower_classic",
                "(sin a sinh a/a^2)^(x^4/a^4)",
                None,
                SincRatioSinh,
                Tier::Classic,
                alpha(PI),
                "classical Bernoulli bound on each factor 1 - x^4/(pi k)^4",
            ),
            B10 => (
                "ss_lower_refined",
                "(sin a sinh a/a^2)^(x^8/a^8) exp((x^4/90)(x^4/a^4 - 1))",
                None,
                SincRatioSinh,
                Tier::Refined,
                alpha(PI),
                "refined Bernoulli bound on each factor; sum of v_k = a^4/90 via sum 1/k^4",
            ),
            B11 => (
                "ss_upper",
                "exp(-x^4/90)",
                None,
                SincRatioSinh,
                Tier::Upper,
                plain(PI),
                "1 - w <= exp(-w) on each factor 1 - x^4/(pi k)^4",
            ),
            B12 => (
                "ss_pi_classic",
                "(1 - x^4/pi^4)^(pi^4/90)",
                None,
                SincRatioSinh,
                Tier::Classic,
                pi(PI),
                "classical Bernoulli bound with u_k = 1/k^4, v = x^4/pi^4",
            ),
            B13 => (
                "ss_pi_refined",
                "(1 - x^4/pi^4)^(pi^8/9450) exp(v (pi^8/9450 - pi^4/90)), v = x^4/pi^4",
                Some("(1 - x^4/pi^4)^(pi^8/9450) exp((x^4/90)(x^4/pi^4 - 1))"),
                SincRatioSinh,
                Tier::Refined,
                pi(PI),
                "refined Bernoulli bound with u_k = 1/k^4, v = x^4/pi^4",
            ),
            B14 => (
                "cc_lower_classic",
                "(cos a cosh a)^(x^4/a^4)",
                None,
                CosCosh,
                Tier::Classic,
                alpha(HALF),
                "classical Bernoulli bound on each factor 1 - 16x^4/(pi (2k-1))^4",
            ),
            B15 => (
                "cc_lower_refined",
                "(cos a cosh a)^(x^8/a^8) exp((x^4/6)(x^4/a^4 - 1))",
                None,
                CosCosh,
                Tier::Refined,
                alpha(HALF),
                "refined Bernoulli bound on each factor; sum of v_k = a^4/6 via sum 1/(2k-1)^4",
            ),
            B16 => (
                "cc_upper",
                "exp(-x^4/6)",
                None,
                CosCosh,
                Tier::Upper,
                plain(HALF),
                "1 - w <= exp(-w) on each factor 1 - 16x^4/(pi (2k-1))^4",
            ),
            B17 => (
                "cc_pi_classic",
                "(1 - 16x^4/pi^4)^(pi^4/96)",
                Some("(1 - 16x^4/pi^4)^(pi^4/90)"),
                CosCosh,
                Tier::Classic,
                pi(HALF),
                "classical Bernoulli bound with u_k = 1/(2k-1)^4, v = 16x^4/pi^4",
            ),
            B18 => (
                "cc_pi_refined",
                "(1 - 16x^4/pi^4)^(17pi^8/161280) exp(v (17pi^8/161280 - pi^4/96)), v = 16x^4/pi^4",
                Some("(1 - 16x^4/pi^4)^(17pi^8/161280) exp((x^4/6)(x^4/pi^4 - 1))"),
                CosCosh,
                Tier::Refined,
                pi(HALF),
                "refined Bernoulli bound with u_k = 1/(2k-1)^4, v = 16x^4/pi^4",
            ),
        };
        BoundInfo {
            id: self,
            name,
            expression,
            printed_expression,
            target,
            tier,
            form,
            derivation,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", *self as u8 + 1)
    }
}

impl FromStr for BoundId {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.to_string().eq_ignore_ascii_case(s) || b.label() == s)
            .ok_or_else(|| BoundsError::UnknownId(s.to_string()))
    }
}

fn check_x(x: f64, upper: f64, closed: bool) -> Result<()> {
    let inside = x >= 0.0 && if closed { x <= upper } else { x < upper };
    if inside {
        Ok(())
    } else {
        let domain = if closed {
            format!("[0, {upper}]")
        } else {
            format!("[0, {upper})")
        };
        Err(BoundsError::Domain {
            what: "x",
            value: x,
            domain,
        })
    }
}

/// Natural log of a catalog entry.
///
/// `alpha` must be given exactly for the alpha-parameterized entries, and
/// `Variant::Printed` is only accepted for B13, B17 and B18. Closed domain
/// endpoints are accepted (`x = 0`, `x = alpha`) and return the limit value.
pub fn log_bound(id: BoundId, x: f64, alpha: Option<f64>, variant: Variant) -> Result<f64> {
    let info = id.info();
    if variant == Variant::Printed && !info.has_variants() {
        return Err(BoundsError::NoVariant(id));
    }
    let family = info.target.family();
    let p = family.power as i32;
    let z = zeta_constants();
    match info.form {
        Form::Alpha { alpha_max } => {
            let a = alpha.ok_or(BoundsError::MissingParameter(id))?;
            if !(a > 0.0 && a < alpha_max) {
                return Err(BoundsError::Domain {
                    what: "alpha",
                    value: a,
                    domain: format!("(0, {alpha_max})"),
                });
            }
            check_x(x, a, true)?;
            let u = (x / a).powi(p);
            let log_base = log_target(info.target, a);
            // sum of the per-factor arguments at alpha
            let v_sum = match info.target {
                TargetId::Cos => a * a / 2.0,
                TargetId::Sinc => a * a / 6.0,
                TargetId::SincRatioSinh => a.powi(4) / 90.0,
                TargetId::CosCosh => a.powi(4) / 6.0,
            };
            Ok(match info.tier {
                Tier::Classic => u * log_base,
                Tier::Refined => u * u * log_base + (u * u - u) * v_sum,
                Tier::Upper => unreachable!("upper bounds are not alpha-parameterized"),
            })
        }
        Form::Pi { x_max } => {
            if alpha.is_some() {
                return Err(BoundsError::UnexpectedParameter(id));
            }
            check_x(x, x_max, false)?;
            let log_base = log_one_minus_power(x, family);
            let v = family.base_argument(x);
            let x4 = x.powi(4);
            Ok(match (id, variant) {
                (BoundId::B7, _) => z.zeta2 * log_base,
                (BoundId::B8, _) => {
                    z.zeta4 * log_base + x * x * (PI * PI / 90.0 - 1.0 / 6.0)
                }
                (BoundId::B12, _) => z.zeta4 * log_base,
                (BoundId::B13, Variant::Corrected) => {
                    z.zeta8 * log_base + v * (z.zeta8 - z.zeta4)
                }
                (BoundId::B13, Variant::Printed) => {
                    z.zeta8 * log_base + (x4 / 90.0) * (x4 / PI.powi(4) - 1.0)
                }
                (BoundId::B17, Variant::Corrected) => z.odd4 * log_base,
                (BoundId::B17, Variant::Printed) => z.zeta4 * log_base,
                (BoundId::B18, Variant::Corrected) => z.odd8 * log_base + v * (z.odd8 - z.odd4),
                (BoundId::B18, Variant::Printed) => {
                    z.odd8 * log_base + (x4 / 6.0) * (x4 / PI.powi(4) - 1.0)
                }
                _ => unreachable!("{id} is not pi-normalized"),
            })
        }
        Form::Plain { x_max } => {
            if alpha.is_some() {
                return Err(BoundsError::UnexpectedParameter(id));
            }
            check_x(x, x_max, true)?;
            Ok(match id {
                BoundId::B3 => -x * x / 2.0,
                BoundId::B6 => -x * x / 6.0,
                BoundId::B11 => -x.powi(4) / 90.0,
                BoundId::B16 => -x.powi(4) / 6.0,
                _ => unreachable!("{id} is not a plain upper bound"),
            })
        }
    }
}

/// Value of a catalog entry; see [`log_bound`].
pub fn eval_bound(id: BoundId, x: f64, alpha: Option<f64>, variant: Variant) -> Result<f64> {
    log_bound(id, x, alpha, variant).map(f64::exp)
}
