//! Certified enclosures of the four targets through their infinite products.

use crate::bounds::{ProductFamily, TargetId};

use super::series::{integral_tail_bound, tail_sum};
use super::{Enclosure, OracleError};

const MAX_TERMS: u64 = 1 << 22;

/// Truncation chosen by [`tail_budget`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBudget {
    /// Requested value-space width.
    pub eps: f64,
    /// Number of explicit factors.
    pub n_terms: u64,
    /// Width contributed by the enclosed tail, in log space.
    pub tail_width: f64,
}

/// `(c x/pi)^p` as an enclosure.
fn base_argument(family: &ProductFamily, x: f64) -> Enclosure {
    (Enclosure::point(family.root_scale * x.abs()) / Enclosure::pi()).powi(family.power)
}

fn check_domain(target: TargetId, x: f64) -> Result<Enclosure, OracleError> {
    let family = target.family();
    if !x.is_finite() {
        return Err(OracleError::Domain { what: "x", value: x, target });
    }
    let z = base_argument(&family, x);
    if z.hi() >= 1.0 {
        return Err(OracleError::Domain { what: "x", value: x, target });
    }
    Ok(z)
}

/// Enclosure of `sum_{k > n} ln(1 - z s_k)` with `s_k = 1/j_k^p`.
///
/// `-ln(1 - w) = w + w^2/2 + R`, `0 <= R <= w^3/(3(1 - w))`; the first two
/// sums over `k > n` are Euler–Maclaurin enclosures, the third an integral bound.
fn log_tail(family: &ProductFamily, z: Enclosure, n: u64) -> Enclosure {
    let p = family.power;
    let first = z * tail_sum(p, family.parity, n);
    let second = z.sqr() * tail_sum(2 * p, family.parity, n) * 0.5;
    let w_next = z.hi() * family.weight(n + 1);
    let third = (Enclosure::point(z.hi()).powi(3)
        * integral_tail_bound(3 * p, family.parity, n)
        / (3.0 * (1.0 - Enclosure::point(w_next))))
    .hi();
    let known = -(first + second);
    Enclosure::new((known - Enclosure::point(third)).lo(), known.hi())
}

/// Smallest factor count whose enclosed tail is at most `eps/2` wide in log space.
pub fn tail_budget(target: TargetId, x: f64, eps: f64) -> Result<TailBudget, OracleError> {
    if !(eps > 0.0) {
        return Err(OracleError::InvalidTolerance(eps));
    }
    let z = check_domain(target, x)?;
    let family = target.family();
    let width = |n: u64| log_tail(&family, z, n).width();
    let goal = eps / 2.0;
    let mut hi = 1u64;
    while width(hi) > goal {
        hi *= 2;
        if hi > MAX_TERMS {
            return Err(OracleError::Precision { eps, achieved: width(MAX_TERMS) });
        }
    }
    let mut lo = hi / 2;
    // width(lo) > goal (or lo == 0), width(hi) <= goal
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if width(mid) > goal {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(TailBudget { eps, n_terms: hi, tail_width: width(hi) })
}

/// Enclosure of the target at `x` from `n_terms` explicit factors and an
/// enclosed tail.
///
/// Every truncation `n <= n_terms` gives a valid enclosure; the result is
/// their intersection, so raising `n_terms` never widens it.
pub fn product_enclosure_with_terms(
    target: TargetId,
    x: f64,
    n_terms: u64,
) -> Result<Enclosure, OracleError> {
    let z = check_domain(target, x)?;
    if x == 0.0 {
        return Ok(Enclosure::point(1.0));
    }
    let family = target.family();
    let n_terms = n_terms.max(1);
    let mut prefix = Enclosure::point(0.0);
    let mut best: Option<Enclosure> = None;
    for k in 1..=n_terms {
        let s = 1.0 / Enclosure::point(family.parity.index(k) as f64).powi(family.power);
        prefix = prefix + (-(z * s)).ln_1p();
        let candidate = prefix + log_tail(&family, z, k);
        best = Some(match best {
            None => candidate,
            Some(b) => b.intersect(&candidate).unwrap_or_else(|| {
                panic!("inconsistent product enclosures for {target} at x = {x}")
            }),
        });
    }
    Ok(best.expect("at least one factor").exp())
}

/// Enclosure of the target at `x` no wider than `eps`.
///
/// Fails with [`OracleError::Domain`] outside the product's radius and with
/// [`OracleError::Precision`] when `eps` is below what double precision can
/// deliver.
pub fn product_enclosure(target: TargetId, x: f64, eps: f64) -> Result<Enclosure, OracleError> {
    let budget = tail_budget(target, x, eps)?;
    let enc = product_enclosure_with_terms(target, x, budget.n_terms)?;
    if enc.width() > eps {
        return Err(OracleError::Precision { eps, achieved: enc.width() });
    }
    Ok(enc)
}
