//! Certified lower bounds on the log gap between adjacent chain members over a box.
//!
//! Every catalog chain is a per-factor aggregation: with `w_k = u_k v_k`,
//!
//! | member  | log value                                  |
//! |---------|--------------------------------------------|
//! | classic | `sum_k u_k ln(1 - v_k)`                    |
//! | refined | `sum_k u_k^2 ln(1 - v_k) + u_k v_k (u_k - 1)` |
//! | target  | `sum_k ln(1 - w_k)`                        |
//! | upper   | `-sum_k w_k`                               |
//!
//! where alpha-forms take `u = (x/alpha)^p`, `v_k = (c alpha/pi)^p s_k` and
//! pi-forms take `u_k = s_k`, `v = (c x/pi)^p`. Consecutive members differ by
//! non-negative per-factor increments that grow with `v`, so the first few
//! factors evaluated at the box corner give a lower bound on the whole
//! box. Printed variants add a shift depending on `v` only, enclosed directly.

use crate::bounds::{BoundId, ChainMember, Form, TargetId, Tier, Variant, ZetaConstant};
use crate::oracle::{left_mid_log_gap, mid_right_log_gap, series::log1m_excess, zeta_enclosure, Enclosure};

const MAX_FACTORS: u64 = 64;
const RELATIVE_CUTOFF: f64 = 1e-9;

/// A box in `x` and, for alpha-chains, `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Region {
    pub x: (f64, f64),
    pub alpha: Option<(f64, f64)>,
}

impl Region {
    pub fn x_only(lo: f64, hi: f64) -> Self {
        Region { x: (lo, hi), alpha: None }
    }

    pub fn with_alpha(x: (f64, f64), alpha: (f64, f64)) -> Self {
        Region { x, alpha: Some(alpha) }
    }

    pub fn midpoint(&self) -> (f64, Option<f64>) {
        let mid = |(a, b): (f64, f64)| 0.5 * a + 0.5 * b;
        (mid(self.x), self.alpha.map(mid))
    }
}

fn rank(member: &ChainMember) -> u8 {
    match member {
        ChainMember::Bound(b) => match b.id.info().tier {
            Tier::Classic => 0,
            Tier::Refined => 1,
            Tier::Upper => 3,
        },
        ChainMember::Target(_) => 2,
    }
}

fn target_of(member: &ChainMember) -> TargetId {
    match member {
        ChainMember::Bound(b) => b.id.info().target,
        ChainMember::Target(t) => *t,
    }
}

fn is_alpha_form(member: &ChainMember) -> bool {
    matches!(member, ChainMember::Bound(b) if matches!(b.id.info().form, Form::Alpha { .. }))
}

fn is_pi_form(member: &ChainMember) -> bool {
    matches!(member, ChainMember::Bound(b) if matches!(b.id.info().form, Form::Pi { .. }))
}

/// Log of a printed variant minus log of its corrected form, as a function of
/// the pi-form `v`.
pub fn printed_shift(member: &ChainMember, v: Enclosure) -> Enclosure {
    let ChainMember::Bound(b) = member else {
        return Enclosure::point(0.0);
    };
    if b.variant == Variant::Corrected {
        return Enclosure::point(0.0);
    }
    use ZetaConstant as Z;
    match b.id {
        BoundId::B13 => zeta_enclosure(Z::Zeta4) * v.sqr() - zeta_enclosure(Z::Zeta8) * v,
        BoundId::B17 => (zeta_enclosure(Z::Zeta4) - zeta_enclosure(Z::Odd4)) * (-v).ln_1p(),
        BoundId::B18 => zeta_enclosure(Z::Odd4) * v.sqr() / 16.0 - zeta_enclosure(Z::Odd8) * v,
        _ => Enclosure::point(0.0),
    }
}

/// Lower bound on the sum of the increments from rank `from` to rank `to` for one factor.
fn factor_increment(from: u8, to: u8, u: Enclosure, v_lo: f64, w_lo: f64) -> f64 {
    // u is a ratio in [0, 1]; outward rounding may push the enclosure past 1
    let u = Enclosure::new(u.lo().clamp(0.0, 1.0), u.hi().clamp(0.0, 1.0));
    let mut total = Enclosure::point(0.0);
    for step in from..to {
        let inc = match step {
            0 => mid_right_log_gap(u, v_lo),
            1 => left_mid_log_gap(u, v_lo),
            _ => log1m_excess(w_lo),
        };
        total = total + Enclosure::point(inc.lo());
    }
    total.lo()
}

/// Certified lower bound on `ln(upper) - ln(lower)` over the region, or
/// `None` when the pair is not an ordered aggregation of the same product.
pub fn pair_gap_lower(lower: &ChainMember, upper: &ChainMember, region: &Region) -> Option<f64> {
    let (from, to) = (rank(lower), rank(upper));
    let target = target_of(lower);
    if from >= to || target != target_of(upper) {
        return None;
    }
    let family = target.family();
    let p = family.power;
    let c = Enclosure::point(family.root_scale);
    let pi = Enclosure::pi();
    let x = Enclosure::new(region.x.0, region.x.1);
    let x0 = Enclosure::point(region.x.0);
    let weight = |k: u64| 1.0 / Enclosure::point(family.parity.index(k) as f64).powi(p);
    // (c x0/pi)^p: lower end of the pi-form v
    let base_lo = (c * x0 / pi).powi(p).lo();
    let v_box = (c * x / pi).powi(p);

    let alpha_form = is_alpha_form(lower) || is_alpha_form(upper);
    let pi_form = is_pi_form(lower) || is_pi_form(upper);
    let alpha_parts = if alpha_form {
        let (a0, a1) = region.alpha?;
        let u = (x / Enclosure::new(a0, a1)).powi(p);
        let u = Enclosure::new(u.lo().min(1.0), u.hi().min(1.0));
        let alpha_base_lo = (c * Enclosure::point(a0) / pi).powi(p).lo();
        Some((u, alpha_base_lo))
    } else {
        None
    };

    let mut sum = Enclosure::point(0.0);
    for k in 1..=MAX_FACTORS {
        let s = weight(k);
        let w_lo = (Enclosure::point(base_lo) * s).lo().max(0.0);
        let (u, v_lo) = match alpha_parts {
            Some((u, alpha_base_lo)) => (u, (Enclosure::point(alpha_base_lo) * s).lo().max(0.0)),
            None if pi_form => (s, base_lo),
            // target against upper: only w_k enters
            None => (Enclosure::point(0.0), 0.0),
        };
        let term = factor_increment(from, to, u, v_lo.min(1.0f64.next_down()), w_lo.min(1.0f64.next_down()));
        sum = sum + Enclosure::point(term);
        if k >= 2 && term <= RELATIVE_CUTOFF * sum.lo() {
            break;
        }
    }
    let shift = printed_shift(upper, v_box) - printed_shift(lower, v_box);
    Some((sum + shift).lo())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{BoundRef, ChainId, ChainSpec};

    fn pairs(id: ChainId, variant: Variant) -> Vec<(ChainMember, ChainMember)> {
        ChainSpec::lookup(id, variant).unwrap().pairs().collect()
    }

    #[test]
    fn corrected_pi_chains_are_positive_away_from_zero() {
        for id in [ChainId::C3, ChainId::C5, ChainId::C7] {
            let spec = ChainSpec::lookup(id, Variant::Corrected).unwrap();
            let hi = match spec.x_domain {
                crate::bounds::XDomain::Fixed(iv) => iv.hi,
                _ => unreachable!(),
            };
            for (l, u) in spec.pairs() {
                let g = pair_gap_lower(&l, &u, &Region::x_only(0.01, hi - 0.01)).unwrap();
                assert!(g > 0.0, "{id} {l}<={u}: {g}");
                let g0 = pair_gap_lower(&l, &u, &Region::x_only(0.0, 0.5)).unwrap();
                assert!(g0 <= 0.0);
            }
        }
    }

    #[test]
    fn alpha_chains_are_positive_inside_and_zero_at_alpha() {
        for id in [ChainId::C1, ChainId::C2, ChainId::C4, ChainId::C6] {
            let spec = ChainSpec::lookup(id, Variant::Corrected).unwrap();
            let a = 0.9 * spec.alpha_constraint.unwrap().hi;
            for (l, u) in spec.pairs() {
                let inside = Region::with_alpha((1e-3, a - 1e-6), (a, a));
                assert!(pair_gap_lower(&l, &u, &inside).unwrap() > 0.0, "{id} {l}<={u}");
                if !matches!(u, ChainMember::Bound(b) if b.id.info().tier == Tier::Upper) {
                    let at_alpha = Region::with_alpha((a, a), (a, a));
                    assert!(pair_gap_lower(&l, &u, &at_alpha).unwrap() <= 0.0);
                }
            }
        }
    }

    #[test]
    fn lower_bound_never_exceeds_the_float_gap() {
        for (id, variant) in [(ChainId::C3, Variant::Corrected), (ChainId::C5, Variant::Printed), (ChainId::C7, Variant::Printed)] {
            for (l, u) in pairs(id, variant) {
                for x in [0.2, 0.7, 1.2, 1.5] {
                    let g = pair_gap_lower(&l, &u, &Region::x_only(x, x)).unwrap();
                    let f = u.log_value(x, None).unwrap() - l.log_value(x, None).unwrap();
                    assert!(g <= f + 1e-15 * (1.0 + f.abs()), "{id} {l}<={u} at {x}: {g} > {f}");
                    if f > 1e-10 {
                        assert!(g > 0.5 * f, "{id} {l}<={u} at {x}: {g} vs {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn printed_shift_matches_closed_forms() {
        for (id, x) in [(BoundId::B13, 2.0), (BoundId::B17, 0.7), (BoundId::B18, 1.2)] {
            let p = ChainMember::Bound(BoundRef::printed(id));
            let c = ChainMember::Bound(BoundRef::corrected(id));
            let fam = id.info().target.family();
            let v = Enclosure::point(fam.base_argument(x));
            let shift = printed_shift(&p, v);
            let direct = p.log_value(x, None).unwrap() - c.log_value(x, None).unwrap();
            assert!((shift.mid() - direct).abs() < 1e-13, "{id}: {shift:?} vs {direct}");
        }
    }

    #[test]
    fn inverted_pairs_have_no_bound() {
        let upper = ChainMember::bound(BoundId::B3);
        let cos = ChainMember::Target(TargetId::Cos);
        assert!(pair_gap_lower(&upper, &cos, &Region::x_only(0.5, 1.0)).is_none());
        assert!(pair_gap_lower(&cos, &upper, &Region::x_only(0.5, 1.0)).unwrap() > 0.0);
    }
}
