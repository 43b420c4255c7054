//! Enclosures of catalog entries, evaluated from their closed forms in
//! outward-rounded arithmetic.

use crate::bounds::{BoundRef, BoundId, ChainMember, Form, TargetId, Tier, Variant, ZetaConstant, PI_LO};

use super::product::product_enclosure;
use super::{Enclosure, OracleError};

/// Error of the `f64` constant `PI_LO` against `pi - PI`.
const PI_LO_ERROR: f64 = 1e-31;

pub fn zeta_enclosure(constant: ZetaConstant) -> Enclosure {
    let (num, pi_power, den) = constant.closed_form();
    Enclosure::point(num) * Enclosure::pi().powi(pi_power as u32) / den
}

/// `pi/scale - x` with the cancellation handled by a two-part pi.
fn gap_to_radius(x: f64, scale: f64) -> Enclosure {
    let head = Enclosure::point(std::f64::consts::PI / scale) - x;
    let tail = Enclosure::new(PI_LO - PI_LO_ERROR, PI_LO + PI_LO_ERROR) / scale;
    head + tail
}

/// `ln(1 - (c x/pi)^p)` for `0 <= c x < pi`.
pub fn log_first_factor(target: TargetId, x: f64) -> Enclosure {
    let family = target.family();
    let ratio = Enclosure::point(family.root_scale * x) / Enclosure::pi();
    if ratio.hi() < 0.5 {
        return (-ratio.powi(family.power)).ln_1p();
    }
    let c = family.root_scale;
    let one_minus = Enclosure::point(c) * gap_to_radius(x, c) / Enclosure::pi();
    let mut acc = one_minus.ln() + ratio.ln_1p();
    if family.power == 4 {
        acc = acc + ratio.sqr().ln_1p();
    }
    acc
}

/// Log of the target at `alpha` from elementary-function enclosures.
pub fn log_target_elementary(target: TargetId, alpha: f64) -> Enclosure {
    let a = Enclosure::point(alpha);
    match target {
        TargetId::Cos => a.cos().ln(),
        TargetId::Sinc => (a.sin() / a).ln(),
        TargetId::SincRatioSinh => (a.sin() * a.sinh() / a.sqr()).ln(),
        TargetId::CosCosh => (a.cos() * a.cosh()).ln(),
    }
}

/// Enclosure of the log of a target from its product, at most `eps` wide in value.
pub fn log_target_enclosure(target: TargetId, x: f64, eps: f64) -> Result<Enclosure, OracleError> {
    Ok(product_enclosure(target, x, eps)?.ln())
}

/// Enclosure of the log of a catalog entry at `x`.
///
/// Domain checks are those of [`crate::bounds::log_bound`].
pub fn log_bound_enclosure(bound: BoundRef, x: f64, alpha: Option<f64>) -> Result<Enclosure, OracleError> {
    bound.log_value(x, alpha)?;
    let info = bound.id.info();
    let family = info.target.family();
    let xe = Enclosure::point(x);
    let p = family.power;
    Ok(match info.form {
        Form::Alpha { .. } => {
            let a = alpha.expect("checked by log_value");
            let ae = Enclosure::point(a);
            let u = (xe / ae).powi(p);
            let log_base = log_target_elementary(info.target, a);
            let v_sum = match info.target {
                TargetId::Cos => ae.sqr() / 2.0,
                TargetId::Sinc => ae.sqr() / 6.0,
                TargetId::SincRatioSinh => ae.powi(4) / 90.0,
                TargetId::CosCosh => ae.powi(4) / 6.0,
            };
            match info.tier {
                Tier::Classic => u * log_base,
                _ => u.sqr() * log_base + (u.sqr() - u) * v_sum,
            }
        }
        Form::Pi { .. } => {
            use ZetaConstant as Z;
            let log_base = log_first_factor(info.target, x);
            let v = (Enclosure::point(family.root_scale) * xe / Enclosure::pi()).powi(p);
            let pi = Enclosure::pi();
            let x4 = xe.powi(4);
            let quartic_shift = x4 / pi.powi(4) - 1.0;
            match (bound.id, bound.variant) {
                (BoundId::B7, _) => zeta_enclosure(Z::Zeta2) * log_base,
                (BoundId::B8, _) => {
                    zeta_enclosure(Z::Zeta4) * log_base
                        + xe.sqr() * (pi.sqr() / 90.0 - 1.0 / Enclosure::point(6.0))
                }
                (BoundId::B12, _) => zeta_enclosure(Z::Zeta4) * log_base,
                (BoundId::B13, Variant::Corrected) => {
                    zeta_enclosure(Z::Zeta8) * log_base
                        + v * (zeta_enclosure(Z::Zeta8) - zeta_enclosure(Z::Zeta4))
                }
                (BoundId::B13, Variant::Printed) => {
                    zeta_enclosure(Z::Zeta8) * log_base + x4 / 90.0 * quartic_shift
                }
                (BoundId::B17, Variant::Corrected) => zeta_enclosure(Z::Odd4) * log_base,
                (BoundId::B17, Variant::Printed) => zeta_enclosure(Z::Zeta4) * log_base,
                (BoundId::B18, Variant::Corrected) => {
                    zeta_enclosure(Z::Odd8) * log_base
                        + v * (zeta_enclosure(Z::Odd8) - zeta_enclosure(Z::Odd4))
                }
                (BoundId::B18, Variant::Printed) => {
                    zeta_enclosure(Z::Odd8) * log_base + x4 / 6.0 * quartic_shift
                }
                _ => unreachable!("{} is not pi-normalized", bound.id),
            }
        }
        Form::Plain { .. } => match bound.id {
            BoundId::B3 => -(xe.sqr() / 2.0),
            BoundId::B6 => -(xe.sqr() / 6.0),
            BoundId::B11 => -(xe.powi(4) / 90.0),
            BoundId::B16 => -(xe.powi(4) / 6.0),
            _ => unreachable!("{} is not a plain upper bound", bound.id),
        },
    })
}

/// Log enclosure of any chain member; targets use the product with width `eps`.
pub fn log_member_enclosure(
    member: ChainMember,
    x: f64,
    alpha: Option<f64>,
    eps: f64,
) -> Result<Enclosure, OracleError> {
    match member {
        ChainMember::Bound(b) => {
            let a = if b.id.info().takes_alpha() { alpha } else { None };
            log_bound_enclosure(b, x, a)
        }
        ChainMember::Target(t) => log_target_enclosure(t, x, eps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{log_bound, zeta_constants};

    #[test]
    fn zeta_enclosures_contain_table_values() {
        let table = zeta_constants();
        for c in ZetaConstant::ALL {
            let e = zeta_enclosure(c);
            assert!(e.widen(4).contains(table.get(c)), "{c}");
            assert!(e.width() < 1e-14);
        }
    }

    #[test]
    fn first_factor_is_tight_near_the_radius() {
        let x = std::f64::consts::PI - 1e-9;
        let e = log_first_factor(TargetId::Sinc, x);
        assert!(e.width() < 1e-12, "{e:?}");
    }

    #[test]
    fn enclosures_agree_with_point_evaluation() {
        for id in BoundId::ALL {
            let info = id.info();
            let variants: &[Variant] = if info.has_variants() {
                &[Variant::Corrected, Variant::Printed]
            } else {
                &[Variant::Corrected]
            };
            let top = match info.form {
                Form::Alpha { alpha_max } => alpha_max,
                Form::Pi { x_max } | Form::Plain { x_max } => x_max,
            };
            for &variant in variants {
                for i in 1..20 {
                    let x = top * i as f64 / 20.0;
                    let alpha = info.takes_alpha().then_some(top * 0.99);
                    let bound = BoundRef { id, variant };
                    let e = log_bound_enclosure(bound, x, alpha).unwrap();
                    let f = log_bound(id, x, alpha, variant).unwrap();
                    assert!(e.width() <= 1e-13 * (1.0 + f.abs()), "{bound} {x}: {e:?}");
                    assert!((e.mid() - f).abs() <= 1e-13 * (1.0 + f.abs()), "{bound} {x}: {e:?} vs {f}");
                }
            }
        }
    }

    #[test]
    fn domain_errors_propagate() {
        let b = BoundRef::corrected(BoundId::B7);
        assert!(matches!(log_bound_enclosure(b, 4.0, None), Err(OracleError::Bounds(_))));
    }
}
