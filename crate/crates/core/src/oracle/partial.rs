//! Partial sums of the zeta-type series against their closed forms.

use serde::Serialize;

use crate::bounds::ZetaConstant;

use super::closed_form::zeta_enclosure;
use super::series::{integral_tail_bound, partial_sum};
use super::{Enclosure, OracleError};

/// Outcome of comparing `sum_{k<=n} 1/j_k^p` with its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialSumCheck {
    pub constant: ZetaConstant,
    pub n: u64,
    /// Partial sum (midpoint of its enclosure).
    pub partial: f64,
    /// Closed form in double precision.
    pub closed_form: f64,
    /// `closed_form - partial` in double precision.
    pub residual: f64,
    /// Integral bound on the omitted tail.
    pub tail_bound: f64,
    /// Width of the certified enclosure of `closed - partial`.
    pub rounding: f64,
    /// `tail_bound + rounding`.
    pub residual_bound: f64,
    /// Lower end of the certified enclosure of `closed - partial`.
    pub difference_lo: f64,
    /// Upper end of the certified enclosure of `closed - partial`.
    pub difference_hi: f64,
}

impl PartialSumCheck {
    /// The certified difference is compatible with `0 < closed - partial <= tail_bound`.
    pub fn holds(&self) -> bool {
        self.difference_hi > 0.0 && self.difference_lo <= self.tail_bound
    }

    /// `|closed - partial|` computed in double precision is within `residual_bound`.
    pub fn within_bound(&self) -> bool {
        self.residual.abs() <= self.residual_bound
    }
}

/// Compares the partial sum of `constant` up to `n` with its closed form.
pub fn partial_sum_check(constant: ZetaConstant, n: u64) -> Result<PartialSumCheck, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidCount(n));
    }
    let (power, parity) = (constant.power(), constant.parity());
    let partial: Enclosure = partial_sum(power, parity, n);
    let closed = zeta_enclosure(constant);
    let difference = closed - partial;
    let tail_bound = integral_tail_bound(power, parity, n);
    let closed_form = closed.mid();
    let partial_mid = partial.mid();
    Ok(PartialSumCheck {
        constant,
        n,
        partial: partial_mid,
        closed_form,
        residual: closed_form - partial_mid,
        tail_bound,
        rounding: difference.width(),
        residual_bound: tail_bound + difference.width(),
        difference_lo: difference.lo(),
        difference_hi: difference.hi(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta8_at_one_hundred() {
        let c = partial_sum_check(ZetaConstant::Zeta8, 100).unwrap();
        assert!(c.holds() && c.within_bound());
        assert!(c.residual.abs() < 1e-14);
    }

    #[test]
    fn every_constant_converges() {
        for constant in ZetaConstant::ALL {
            for n in [1u64, 10, 100, 1000] {
                let c = partial_sum_check(constant, n).unwrap();
                assert!(c.holds(), "{constant} n={n}: {c:?}");
                assert!(c.within_bound(), "{constant} n={n}: {c:?}");
            }
        }
    }

    #[test]
    fn tail_bound_is_sharp_for_small_n() {
        // sum_{k>1} 1/k^2 = pi^2/6 - 1 = 0.6449...; the integral bound gives 1.
        let c = partial_sum_check(ZetaConstant::Zeta2, 1).unwrap();
        assert!((c.residual - 0.644_934_066_848_226_4).abs() < 1e-15);
        assert!(c.tail_bound >= 1.0);
    }

    #[test]
    fn zero_terms_is_rejected() {
        assert!(partial_sum_check(ZetaConstant::Odd2, 0).is_err());
    }
}
