//! Enclosures of the refined Bernoulli chain `1 - uv >= (1-v)^(u^2) e^(uv(u-1)) >= (1-v)^u`.

use super::series::{log1m_excess, neg_log1m_series};
use super::{Enclosure, OracleError};

/// Enclosures of the three members of the chain at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleEnclosure {
    pub left: Enclosure,
    pub mid: Enclosure,
    pub right: Enclosure,
}

impl TripleEnclosure {
    /// Both inequalities follow from the enclosures alone.
    pub fn ordering_certified(&self) -> bool {
        self.mid.hi() <= self.left.lo() && self.right.hi() <= self.mid.lo()
    }

    pub fn max_width(&self) -> f64 {
        self.left.width().max(self.mid.width()).max(self.right.width())
    }
}

fn check_unit(what: &'static str, value: f64) -> Result<(), OracleError> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(OracleError::UnitInterval { what, value })
    }
}

/// Enclosures of left, middle and right at `(u, v)`, each at most `eps` wide.
///
/// `ln(1 - v)` is taken from its power series; the left member is the
/// finite expression `1 - uv`.
pub fn bernoulli_enclosure(u: f64, v: f64, eps: f64) -> Result<TripleEnclosure, OracleError> {
    check_unit("u", u)?;
    check_unit("v", v)?;
    if !(eps > 0.0) {
        return Err(OracleError::InvalidTolerance(eps));
    }
    let ue = Enclosure::point(u);
    let ve = Enclosure::point(v);
    // Members are at most 1, so a log-space width of eps/4 keeps values within eps/4.
    let (neg_log, _) = neg_log1m_series(v, eps / 4.0);
    let log_one_minus_v = -neg_log;
    let left = 1.0 - ue * ve;
    let mid = (ue.sqr() * log_one_minus_v + ue * ve * (ue - 1.0)).exp();
    let right = (ue * log_one_minus_v).exp();
    let triple = TripleEnclosure { left, mid, right };
    if triple.max_width() > eps {
        return Err(OracleError::Precision { eps, achieved: triple.max_width() });
    }
    Ok(triple)
}

/// Lower bounds on the two log gaps over a box of `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxGapBounds {
    /// `ln(left) - ln(mid)`
    pub left_mid: f64,
    /// `ln(mid) - ln(right)`
    pub mid_right: f64,
}

impl BoxGapBounds {
    pub fn certified(&self) -> bool {
        self.left_mid >= 0.0 && self.mid_right >= 0.0
    }
}

/// Above this `v` the termwise sum converges slowly and is intersected with
/// the direct formula, which is tight for narrow `u` but not for wide `u`.
const SERIES_LIMIT: f64 = 0.95;

/// Enclosure of `ln(left) - ln(mid) = sum_{m>=3} u^2 (1 - u^(m-2)) v^m/m` for
/// `u` in an enclosure inside `[0, 1]` and a point `v` in `[0, 1)`.
pub fn left_mid_log_gap(u: Enclosure, v: f64) -> Enclosure {
    assert!(u.lo() >= 0.0 && u.hi() <= 1.0, "u must lie in [0, 1]");
    assert!((0.0..1.0).contains(&v), "v must lie in [0, 1)");
    if v == 0.0 {
        return Enclosure::point(0.0);
    }
    let ve = Enclosure::point(v);
    let termwise = left_mid_series(u, ve);
    if v > SERIES_LIMIT {
        let direct = (-(u * ve)).ln_1p() - u.sqr() * (-ve).ln_1p() - u * (u - 1.0) * ve;
        return termwise.intersect(&direct).unwrap_or(termwise);
    }
    termwise
}

fn left_mid_series(u: Enclosure, ve: Enclosure) -> Enclosure {
    let u2 = u.sqr();
    let mut v_power = ve.powi(3);
    let mut u_power = u; // u^(m-2)
    let mut sum = Enclosure::point(0.0);
    let mut m = 3u32;
    loop {
        let coefficient = u2 * (1.0 - u_power);
        let coefficient = Enclosure::new(coefficient.lo().max(0.0), coefficient.hi());
        sum = sum + coefficient * v_power / m as f64;
        // remaining terms are at most u^2 v^(m+1) / ((m+1)(1-v))
        let tail = (u2 * v_power * ve / ((m + 1) as f64 * (1.0 - ve))).hi();
        if tail <= sum.lo().abs() * 1e-18 || m >= 4000 {
            return Enclosure::new(sum.lo(), (sum + Enclosure::new(0.0, tail)).hi());
        }
        v_power = v_power * ve;
        u_power = u_power * u;
        m += 1;
    }
}

/// Enclosure of `ln(mid) - ln(right) = (u - u^2)(-ln(1 - v) - v)`.
pub fn mid_right_log_gap(u: Enclosure, v: f64) -> Enclosure {
    let coefficient = u * (1.0 - u);
    let coefficient = Enclosure::new(coefficient.lo().max(0.0), coefficient.hi());
    coefficient * log1m_excess(v)
}

/// Certified lower bounds on both log gaps over `u` in `[u_lo, u_hi]`,
/// `v` in `[v_lo, v_hi]`; both gaps increase with `v`, so `v_lo` suffices.
pub fn box_gap_bounds(u_lo: f64, u_hi: f64, v_lo: f64) -> BoxGapBounds {
    let u = Enclosure::new(u_lo.max(0.0), u_hi.min(1.0));
    BoxGapBounds {
        left_mid: left_mid_log_gap(u, v_lo).lo(),
        mid_right: mid_right_log_gap(u, v_lo).lo(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_triples() {
        let cases = [
            (0.5, 0.5, [0.75, 0.74208848185589281, 0.70710678118654752]),
            (0.3, 0.7, [0.79, 0.77463947424389773, 0.69684530193594893]),
            (0.999, 0.999, [0.001999, 0.00101289300908158, 0.00100693166885180]),
        ];
        for (u, v, expected) in cases {
            let t = bernoulli_enclosure(u, v, 1e-14).unwrap();
            assert!(t.max_width() <= 1e-14);
            for (enc, value) in [t.left, t.mid, t.right].into_iter().zip(expected) {
                assert!(enc.widen(2).contains(value), "({u}, {v}): {enc:?} vs {value}");
            }
            assert!(t.ordering_certified());
        }
    }

    #[test]
    fn left_is_exact_for_halves() {
        let t = bernoulli_enclosure(0.5, 0.5, 1e-14).unwrap();
        assert!(t.left.contains(0.75));
        assert!(t.mid.precedes(&t.left) && t.right.precedes(&t.mid));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(bernoulli_enclosure(0.0, 0.5, 1e-14), Err(OracleError::UnitInterval { .. })));
        assert!(matches!(bernoulli_enclosure(0.5, 1.0, 1e-14), Err(OracleError::UnitInterval { .. })));
        assert!(matches!(bernoulli_enclosure(0.5, 0.5, 0.0), Err(OracleError::InvalidTolerance(_))));
    }

    #[test]
    fn gap_enclosures_match_direct_logs() {
        for (u, v) in [(0.5, 0.5), (0.3, 0.7), (0.9, 0.2), (0.01, 0.4)] {
            let ue = Enclosure::point(u);
            let direct_left_mid =
                (-u * v).ln_1p() - u * u * (-v).ln_1p() - u * (u - 1.0) * v;
            let direct_mid_right = (u - u * u) * (-(-v).ln_1p() - v);
            let lm = left_mid_log_gap(ue, v);
            let mr = mid_right_log_gap(ue, v);
            assert!((lm.mid() - direct_left_mid).abs() < 1e-15 + lm.width());
            assert!((mr.mid() - direct_mid_right).abs() < 1e-15 + mr.width());
        }
    }

    #[test]
    fn box_bounds_are_nonnegative() {
        let b = box_gap_bounds(0.0, 1.0, 0.0);
        assert!(b.certified());
        let b = box_gap_bounds(0.25, 0.5, 0.6);
        assert!(b.left_mid > 0.0 && b.mid_right > 0.0);
    }

    #[test]
    fn wide_u_boxes_certify_near_v_one() {
        for (u_lo, u_hi) in [(0.01, 0.04), (0.1, 0.13), (0.96, 0.99)] {
            let bounds = box_gap_bounds(u_lo, u_hi, 0.96);
            assert!(bounds.certified(), "{u_lo}..{u_hi}: {bounds:?}");
        }
    }
}
