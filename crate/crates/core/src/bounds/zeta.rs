use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::target::Parity;
use super::BoundsError;

/// The six series constants used when aggregating per-factor inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaTable {
    /// sum 1/k^2 = pi^2/6
    pub zeta2: f64,
    /// sum 1/(2k-1)^2 = pi^2/8
    pub odd2: f64,
    /// sum 1/k^4 = pi^4/90
    pub zeta4: f64,
    /// sum 1/(2k-1)^4 = pi^4/96
    pub odd4: f64,
    /// sum 1/k^8 = pi^8/9450
    pub zeta8: f64,
    /// sum 1/(2k-1)^8 = 17 pi^8/161280
    pub odd8: f64,
}

/// Closed forms evaluated from `PI` in double precision.
pub fn zeta_constants() -> ZetaTable {
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi8 = pi4 * pi4;
    ZetaTable {
        zeta2: pi2 / 6.0,
        odd2: pi2 / 8.0,
        zeta4: pi4 / 90.0,
        odd4: pi4 / 96.0,
        zeta8: pi8 / 9450.0,
        odd8: 17.0 * pi8 / 161_280.0,
    }
}

impl ZetaTable {
    pub fn get(&self, c: ZetaConstant) -> f64 {
        match c {
            ZetaConstant::Zeta2 => self.zeta2,
            ZetaConstant::Odd2 => self.odd2,
            ZetaConstant::Zeta4 => self.zeta4,
            ZetaConstant::Odd4 => self.odd4,
            ZetaConstant::Zeta8 => self.zeta8,
            ZetaConstant::Odd8 => self.odd8,
        }
    }

    /// `sum_k s_k` for `s_k = 1/j_k^power`, `j_k` running over all or odd integers.
    pub fn series(&self, power: u32, parity: Parity) -> f64 {
        self.get(ZetaConstant::from_series(power, parity))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZetaConstant {
    Zeta2,
    Odd2,
    Zeta4,
    Odd4,
    Zeta8,
    Odd8,
}

impl ZetaConstant {
    pub const ALL: [ZetaConstant; 6] = [
        ZetaConstant::Zeta2,
        ZetaConstant::Odd2,
        ZetaConstant::Zeta4,
        ZetaConstant::Odd4,
        ZetaConstant::Zeta8,
        ZetaConstant::Odd8,
    ];

    /// Panics for powers other than 2, 4 and 8; those are the only sums in the catalog.
    pub fn from_series(power: u32, parity: Parity) -> Self {
        match (power, parity) {
            (2, Parity::All) => ZetaConstant::Zeta2,
            (2, Parity::Odd) => ZetaConstant::Odd2,
            (4, Parity::All) => ZetaConstant::Zeta4,
            (4, Parity::Odd) => ZetaConstant::Odd4,
            (8, Parity::All) => ZetaConstant::Zeta8,
            (8, Parity::Odd) => ZetaConstant::Odd8,
            _ => panic!("no tabulated series for power {power}"),
        }
    }

    pub fn power(self) -> u32 {
        match self {
            ZetaConstant::Zeta2 | ZetaConstant::Odd2 => 2,
            ZetaConstant::Zeta4 | ZetaConstant::Odd4 => 4,
            ZetaConstant::Zeta8 | ZetaConstant::Odd8 => 8,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            ZetaConstant::Zeta2 | ZetaConstant::Zeta4 | ZetaConstant::Zeta8 => Parity::All,
            _ => Parity::Odd,
        }
    }

    /// `(numerator, pi power, denominator)` of the closed form.
    pub fn closed_form(self) -> (f64, i32, f64) {
        match self {
            ZetaConstant::Zeta2 => (1.0, 2, 6.0),
            ZetaConstant::Odd2 => (1.0, 2, 8.0),
            ZetaConstant::Zeta4 => (1.0, 4, 90.0),
            ZetaConstant::Odd4 => (1.0, 4, 96.0),
            ZetaConstant::Zeta8 => (1.0, 8, 9450.0),
            ZetaConstant::Odd8 => (17.0, 8, 161_280.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ZetaConstant::Zeta2 => "zeta2",
            ZetaConstant::Odd2 => "odd2",
            ZetaConstant::Zeta4 => "zeta4",
            ZetaConstant::Odd4 => "odd4",
            ZetaConstant::Zeta8 => "zeta8",
            ZetaConstant::Odd8 => "odd8",
        }
    }

    pub fn series_text(self) -> &'static str {
        match self {
            ZetaConstant::Zeta2 => "sum 1/k^2",
            ZetaConstant::Odd2 => "sum 1/(2k-1)^2",
            ZetaConstant::Zeta4 => "sum 1/k^4",
            ZetaConstant::Odd4 => "sum 1/(2k-1)^4",
            ZetaConstant::Zeta8 => "sum 1/k^8",
            ZetaConstant::Odd8 => "sum 1/(2k-1)^8",
        }
    }

    pub fn closed_form_text(self) -> &'static str {
        match self {
            ZetaConstant::Zeta2 => "pi^2/6",
            ZetaConstant::Odd2 => "pi^2/8",
            ZetaConstant::Zeta4 => "pi^4/90",
            ZetaConstant::Odd4 => "pi^4/96",
            ZetaConstant::Zeta8 => "pi^8/9450",
            ZetaConstant::Odd8 => "17 pi^8/161280",
        }
    }
}

impl fmt::Display for ZetaConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZetaConstant {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ZetaConstant::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| BoundsError::UnknownId(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ulps(a: f64, b: f64) -> u64 {
        (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
    }

    #[test]
    fn closed_forms_match_decimal_values() {
        // 40-digit reference values.
        let t = zeta_constants();
        let reference = [
            (t.zeta2, 1.644_934_066_848_226_4_f64),
            (t.odd2, 1.233_700_550_136_169_8),
            (t.zeta4, 1.082_323_233_711_138_2),
            (t.odd4, 1.014_678_031_604_192),
            (t.zeta8, 1.004_077_356_197_944_3),
            (t.odd8, 1.000_155_179_025_296_1),
        ];
        for (got, want) in reference {
            assert!(ulps(got, want) <= 4, "{got} vs {want}");
        }
    }

    #[test]
    fn closed_form_identities() {
        let t = zeta_constants();
        let pi = PI;
        assert_eq!(t.odd2, pi * pi / 8.0);
        assert!(ulps(t.zeta4, pi.powi(4) / 90.0) <= 2);
        assert!((t.odd8 - 17.0 * pi.powi(8) / 161_280.0).abs() < 1e-15);
    }

    #[test]
    fn series_lookup_and_names() {
        let t = zeta_constants();
        assert_eq!(t.series(4, Parity::Odd), t.odd4);
        assert_eq!(t.series(8, Parity::All), t.zeta8);
        for c in ZetaConstant::ALL {
            assert_eq!(c.name().parse::<ZetaConstant>().unwrap(), c);
            assert_eq!(ZetaConstant::from_series(c.power(), c.parity()), c);
        }
        assert!("zeta3".parse::<ZetaConstant>().is_err());
    }
}
