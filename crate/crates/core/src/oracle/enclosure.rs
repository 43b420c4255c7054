//! Outward-rounded interval arithmetic on `f64`.
//!
//! Rust exposes no rounding-mode control, so every operation is evaluated in
//! round-to-nearest and the result is pushed outward with `next_down` /
//! `next_up`. Inflation per operation:
//!
//! | operation                          | ulps each side |
//! |------------------------------------|----------------|
//! | `+ - * /`                          | 1              |
//! | `exp ln ln_1p sin cos`             | [`LIBM_ULPS`]  |
//! | `sinh cosh`                        | [`HYPERBOLIC_ULPS`] |
//!
//! IEEE arithmetic is correctly rounded, so one ulp is enough for the basic
//! operations. The transcendental factors assume the platform libm stays
//! within one ulp for exp/log/sin/cos and two for the hyperbolic functions,
//! and double that.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub const LIBM_ULPS: u32 = 2;
pub const HYPERBOLIC_ULPS: u32 = 4;

fn down(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

fn up(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

/// A closed interval `[lo, hi]` guaranteed to contain some real quantity.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

impl From<f64> for Enclosure {
    fn from(x: f64) -> Self {
        Enclosure::point(x)
    }
}

impl Enclosure {
    /// Panics if `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Enclosure::new(x, x)
    }

    /// `[lo, hi]` pushed out by `ulps` on each side.
    pub fn inflated(lo: f64, hi: f64, ulps: u32) -> Self {
        Enclosure::new(down(lo, ulps), up(hi, ulps))
    }

    pub fn entire() -> Self {
        Enclosure::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    /// `[PI, next_up(PI)]`; `PI` rounds pi down.
    pub fn pi() -> Self {
        Enclosure::new(PI, PI.next_up())
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Strictly below `other`: every point of `self` is less than every point of `other`.
    pub fn precedes(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Intersection, or `None` when disjoint.
    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Enclosure::new(lo, hi))
    }

    /// Widened by `ulps` on each side.
    pub fn widen(&self, ulps: u32) -> Enclosure {
        Enclosure::inflated(self.lo, self.hi, ulps)
    }

    pub fn sqr(self) -> Enclosure {
        if self.lo >= 0.0 {
            Enclosure::new(
                round_out(self.lo * self.lo, self.lo == 0.0, true),
                round_out(self.hi * self.hi, self.hi == 0.0, false),
            )
        } else if self.hi <= 0.0 {
            Enclosure::inflated(self.hi * self.hi, self.lo * self.lo, 1)
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Enclosure::new(0.0, up(m * m, 1))
        }
    }

    /// Integer power of a non-negative enclosure.
    pub fn powi(self, n: u32) -> Enclosure {
        assert!(self.lo >= 0.0, "powi expects a non-negative enclosure");
        let (mut lo, mut hi) = (1.0f64, 1.0f64);
        for _ in 0..n {
            lo = round_out(lo * self.lo, self.lo == 0.0, true);
            hi = round_out(hi * self.hi, self.hi == 0.0, false);
        }
        Enclosure::new(lo.max(0.0), hi)
    }

    pub fn exp(self) -> Enclosure {
        Enclosure::new(
            down(self.lo.exp(), LIBM_ULPS).max(0.0),
            up(self.hi.exp(), LIBM_ULPS),
        )
    }

    /// Natural log; the lower end is `-inf` if the enclosure reaches zero.
    pub fn ln(self) -> Enclosure {
        assert!(self.hi > 0.0, "ln of a non-positive enclosure");
        let lo = if self.lo > 0.0 {
            down(self.lo.ln(), LIBM_ULPS)
        } else {
            f64::NEG_INFINITY
        };
        Enclosure::new(lo, up(self.hi.ln(), LIBM_ULPS))
    }

    /// `ln(1 + x)`; the lower end is `-inf` if the enclosure reaches -1.
    pub fn ln_1p(self) -> Enclosure {
        assert!(self.hi > -1.0, "ln_1p of an enclosure at or below -1");
        let lo = if self.lo > -1.0 {
            down(self.lo.ln_1p(), LIBM_ULPS)
        } else {
            f64::NEG_INFINITY
        };
        Enclosure::new(lo, up(self.hi.ln_1p(), LIBM_ULPS))
    }

    /// Cosine; tight on `[-PI, PI]`, `[-1, 1]` elsewhere.
    pub fn cos(self) -> Enclosure {
        let clamp = |lo: f64, hi: f64| Enclosure::new(lo.max(-1.0), hi.min(1.0));
        if self.lo >= 0.0 && self.hi <= PI {
            clamp(down(self.hi.cos(), LIBM_ULPS), up(self.lo.cos(), LIBM_ULPS))
        } else if self.hi <= 0.0 && self.lo >= -PI {
            clamp(down(self.lo.cos(), LIBM_ULPS), up(self.hi.cos(), LIBM_ULPS))
        } else if self.lo > -PI && self.hi < PI {
            let edge = self.lo.cos().min(self.hi.cos());
            clamp(down(edge, LIBM_ULPS), 1.0)
        } else {
            Enclosure::new(-1.0, 1.0)
        }
    }

    /// Sine; tight on `[0, PI]`, `[-1, 1]` elsewhere.
    pub fn sin(self) -> Enclosure {
        let clamp = |lo: f64, hi: f64| Enclosure::new(lo.max(-1.0), hi.min(1.0));
        if self.lo < 0.0 || self.hi > PI {
            return Enclosure::new(-1.0, 1.0);
        }
        // FRAC_PI_2 < pi/2 < next_up(FRAC_PI_2)
        if self.hi <= FRAC_PI_2 {
            clamp(down(self.lo.sin(), LIBM_ULPS), up(self.hi.sin(), LIBM_ULPS))
        } else if self.lo >= FRAC_PI_2.next_up() {
            clamp(down(self.hi.sin(), LIBM_ULPS), up(self.lo.sin(), LIBM_ULPS))
        } else {
            let edge = self.lo.sin().min(self.hi.sin());
            clamp(down(edge, LIBM_ULPS), 1.0)
        }
    }

    /// Hyperbolic sine of a non-negative enclosure.
    pub fn sinh(self) -> Enclosure {
        assert!(self.lo >= 0.0, "sinh expects a non-negative enclosure");
        Enclosure::new(
            down(self.lo.sinh(), HYPERBOLIC_ULPS).max(0.0),
            up(self.hi.sinh(), HYPERBOLIC_ULPS),
        )
    }

    /// Hyperbolic cosine of a non-negative enclosure.
    pub fn cosh(self) -> Enclosure {
        assert!(self.lo >= 0.0, "cosh expects a non-negative enclosure");
        Enclosure::new(
            down(self.lo.cosh(), HYPERBOLIC_ULPS).max(1.0),
            up(self.hi.cosh(), HYPERBOLIC_ULPS),
        )
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;

    fn neg(self) -> Enclosure {
        Enclosure::new(-self.hi, -self.lo)
    }
}

impl Add for Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: Enclosure) -> Enclosure {
        Enclosure::inflated(self.lo + rhs.lo, self.hi + rhs.hi, 1)
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;

    fn sub(self, rhs: Enclosure) -> Enclosure {
        Enclosure::inflated(self.lo - rhs.hi, self.hi - rhs.lo, 1)
    }
}

/// Products and quotients with a zero operand are exact and not inflated.
fn round_out(value: f64, exact: bool, lower: bool) -> f64 {
    match (exact, lower) {
        (true, _) => value,
        (false, true) => down(value, 1),
        (false, false) => up(value, 1),
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;

    fn mul(self, rhs: Enclosure) -> Enclosure {
        let products = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in products {
            let exact = a == 0.0 || b == 0.0;
            let p = if exact { 0.0 } else { a * b };
            lo = lo.min(round_out(p, exact, true));
            hi = hi.max(round_out(p, exact, false));
        }
        Enclosure::new(lo, hi)
    }
}

impl Div for Enclosure {
    type Output = Enclosure;

    fn div(self, rhs: Enclosure) -> Enclosure {
        if rhs.lo <= 0.0 && rhs.hi >= 0.0 {
            return Enclosure::entire();
        }
        let quotients = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in quotients {
            let exact = a == 0.0;
            let q = if exact { 0.0 } else { a / b };
            lo = lo.min(round_out(q, exact, true));
            hi = hi.max(round_out(q, exact, false));
        }
        Enclosure::new(lo, hi)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<f64> for Enclosure {
            type Output = Enclosure;
            fn $method(self, rhs: f64) -> Enclosure {
                $tr::$method(self, Enclosure::point(rhs))
            }
        }
        impl $tr<Enclosure> for f64 {
            type Output = Enclosure;
            fn $method(self, rhs: Enclosure) -> Enclosure {
                $tr::$method(Enclosure::point(self), rhs)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);
