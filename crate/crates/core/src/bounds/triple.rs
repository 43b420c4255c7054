use serde::{Deserialize, Serialize};

use super::{BoundsError, Result};

/// `(1 - uv, (1-v)^(u^2) e^(uv(u-1)), (1-v)^u)`, non-increasing left to right.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BernoulliTriple {
    pub left: f64,
    pub mid: f64,
    pub right: f64,
}

fn check_unit(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(BoundsError::Domain {
            what,
            value,
            domain: "(0, 1)".to_string(),
        })
    }
}

/// Logs of the three components.
pub fn log_bernoulli_triple(u: f64, v: f64) -> Result<BernoulliTriple> {
    check_unit("u", u)?;
    check_unit("v", v)?;
    let log1mv = (-v).ln_1p();
    Ok(BernoulliTriple {
        left: (-u * v).ln_1p(),
        mid: u * u * log1mv + u * v * (u - 1.0),
        right: u * log1mv,
    })
}

pub fn bernoulli_triple(u: f64, v: f64) -> Result<BernoulliTriple> {
    let logs = log_bernoulli_triple(u, v)?;
    Ok(BernoulliTriple {
        left: 1.0 - u * v,
        mid: logs.mid.exp(),
        right: logs.right.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixtures() {
        // 40-digit references.
        let t = bernoulli_triple(0.5, 0.5).unwrap();
        assert_eq!(t.left, 0.75);
        assert!((t.mid - 0.742_088_481_855_892_8).abs() < 1e-15);
        assert!((t.right - 0.707_106_781_186_547_5).abs() < 1e-15);

        let t = bernoulli_triple(0.3, 0.7).unwrap();
        assert!((t.left - 0.79).abs() < 1e-15);
        assert!((t.mid - 0.774_639_474_243_897_7).abs() < 1e-15);
        assert!((t.right - 0.696_845_301_935_948_9).abs() < 1e-15);
    }

    #[test]
    fn collapses_as_u_tends_to_one() {
        let u = 1.0 - 1e-12;
        let t = bernoulli_triple(u, 0.4).unwrap();
        for c in [t.left, t.mid, t.right] {
            assert!((c - 0.6).abs() < 1e-11);
        }
    }

    #[test]
    fn domain_errors() {
        for (u, v) in [(0.0, 0.5), (1.0, 0.5), (0.5, 0.0), (0.5, 1.0), (f64::NAN, 0.5), (-0.1, 0.2)] {
            assert!(bernoulli_triple(u, v).is_err(), "{u} {v}");
        }
    }

    #[test]
    fn limits_at_zero() {
        let t = bernoulli_triple(1e-9, 0.7).unwrap();
        assert!([t.left, t.mid, t.right].iter().all(|c| (c - 1.0).abs() < 2e-9));
        let t = bernoulli_triple(0.7, 1e-9).unwrap();
        assert!([t.left, t.mid, t.right].iter().all(|c| (c - 1.0).abs() < 2e-9));
    }

    proptest! {
        #[test]
        fn ordering_holds_in_log_domain(u in 1e-6f64..(1.0 - 1e-6), v in 1e-6f64..(1.0 - 1e-6)) {
            let t = log_bernoulli_triple(u, v).unwrap();
            let slack = 1e-14 * t.right.abs().max(1e-300);
            prop_assert!(t.left >= t.mid - slack);
            prop_assert!(t.mid >= t.right - slack);
        }
    }
}
