//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string; errors come back as a rejected `JsValue`
//! carrying the message. The `*_json` functions are plain Rust so they can be
//! tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use trigbounds::bounds::{BoundRef, ChainId, ChainMember, ChainSpec, Variant};
use trigbounds::verifier::sharpness;
use trigbounds::{bernoulli_enclosure, bernoulli_triple};

#[derive(Debug, Serialize)]
pub struct Curve {
    pub label: String,
    /// Member value divided by the target; `null` where undefined.
    pub ratio: Vec<Option<f64>>,
}

#[derive(Debug, Serialize)]
pub struct ChainCurves {
    pub chain: String,
    pub variant: String,
    pub target: String,
    pub alpha: Option<f64>,
    pub xs: Vec<f64>,
    pub curves: Vec<Curve>,
    /// Number of grid points where some adjacent pair is out of order.
    pub violations: usize,
}

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Samples every member of a chain on `points` interior x values.
pub fn chain_curves_json(chain: &str, variant: &str, alpha: Option<f64>, points: usize) -> Result<String, String> {
    let id: ChainId = chain.parse().map_err(text)?;
    let variant: Variant = variant.parse().map_err(text)?;
    let spec = ChainSpec::lookup(id, variant).ok_or_else(|| format!("{id} has no {variant} variant"))?;
    let alpha = match (&spec.alpha_constraint, alpha) {
        (Some(limit), Some(a)) if a > limit.lo && a < limit.hi => Some(a),
        (Some(limit), _) => return Err(format!("{id} needs alpha in ({}, {})", limit.lo, limit.hi)),
        (None, _) => None,
    };
    let domain = spec.x_interval(alpha);
    let points = points.clamp(2, 5000);
    let xs: Vec<f64> = (1..=points)
        .map(|i| domain.lo + (domain.hi - domain.lo) * i as f64 / (points + 1) as f64)
        .collect();
    let logs: Vec<Vec<Option<f64>>> = spec
        .members
        .iter()
        .map(|m| xs.iter().map(|&x| m.log_value(x, alpha).ok()).collect())
        .collect();
    let target_index = spec
        .members
        .iter()
        .position(|m| matches!(m, ChainMember::Target(_)))
        .expect("every chain contains its target");
    let target_row = logs[target_index].clone();
    let curves = spec
        .members
        .iter()
        .zip(&logs)
        .map(|(m, row)| Curve {
            label: m.to_string(),
            ratio: row
                .iter()
                .zip(&target_row)
                .map(|(v, t)| Some((v.as_ref()? - t.as_ref()?).exp()))
                .collect(),
        })
        .collect();
    // Tolerance matches the default sweep: relative to the log magnitude.
    let violations = (0..xs.len())
        .filter(|&i| {
            logs.windows(2).any(|w| match (w[0][i], w[1][i]) {
                (Some(lo), Some(hi)) => lo - hi > 1e-12 * lo.abs().max(hi.abs()).max(1.0),
                _ => false,
            })
        })
        .count();
    serde_json::to_string(&ChainCurves {
        chain: id.to_string(),
        variant: variant.to_string(),
        target: spec.target.to_string(),
        alpha,
        xs,
        curves,
        violations,
    })
    .map_err(text)
}

#[derive(Debug, Serialize)]
struct TripleView {
    left: f64,
    mid: f64,
    right: f64,
    /// Certified enclosures of the three values, `[lo, hi]`.
    left_enclosure: [f64; 2],
    mid_enclosure: [f64; 2],
    right_enclosure: [f64; 2],
    ordering_certified: bool,
}

/// `1 - uv >= (1-v)^(u^2) e^(uv(u-1)) >= (1-v)^u` at one point.
pub fn bernoulli_json(u: f64, v: f64) -> Result<String, String> {
    let point = bernoulli_triple(u, v).map_err(text)?;
    let enclosure = bernoulli_enclosure(u, v, 1e-12).map_err(text)?;
    let pair = |e: trigbounds::Enclosure| [e.lo(), e.hi()];
    serde_json::to_string(&TripleView {
        left: point.left,
        mid: point.mid,
        right: point.right,
        left_enclosure: pair(enclosure.left),
        mid_enclosure: pair(enclosure.mid),
        right_enclosure: pair(enclosure.right),
        ordering_certified: enclosure.ordering_certified(),
    })
    .map_err(text)
}

/// Log-advantage of bound `a` over bound `b` on `[lo, hi]`.
pub fn compare_json(a: &str, b: &str, lo: f64, hi: f64, alpha: Option<f64>, grid: usize) -> Result<String, String> {
    let a: BoundRef = a.parse().map_err(text)?;
    let b: BoundRef = b.parse().map_err(text)?;
    let report = sharpness(a, b, (lo, hi), grid.clamp(2, 5000), alpha).map_err(text)?;
    serde_json::to_string(&report).map_err(text)
}

#[wasm_bindgen]
pub fn chain_curves(chain: &str, variant: &str, alpha: Option<f64>, points: usize) -> Result<String, JsValue> {
    chain_curves_json(chain, variant, alpha, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bernoulli(u: f64, v: f64) -> Result<String, JsValue> {
    bernoulli_json(u, v).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn compare(a: &str, b: &str, lo: f64, hi: f64, alpha: Option<f64>, grid: usize) -> Result<String, JsValue> {
    compare_json(a, b, lo, hi, alpha, grid).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn corrected_chain_curves_are_ordered() {
        let json: Value = serde_json::from_str(&chain_curves_json("C7", "corrected", None, 200).unwrap()).unwrap();
        assert_eq!(json["violations"], 0);
        let curves = json["curves"].as_array().unwrap();
        let target = curves[2]["ratio"].as_array().unwrap();
        assert!(target.iter().all(|r| (r.as_f64().unwrap() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn printed_chain_shows_violations() {
        let json: Value = serde_json::from_str(&chain_curves_json("C5", "printed", None, 200).unwrap()).unwrap();
        assert!(json["violations"].as_u64().unwrap() > 0);
    }

    #[test]
    fn alpha_chain_curves_bracket_the_target() {
        let json: Value = serde_json::from_str(&chain_curves_json("C4", "corrected", Some(3.0), 100).unwrap()).unwrap();
        assert_eq!(json["violations"], 0);
        let upper = json["curves"][3]["ratio"].as_array().unwrap();
        assert!(upper.iter().all(|r| r.as_f64().unwrap() >= 1.0));
    }

    #[test]
    fn alpha_chain_needs_alpha_inside_constraint() {
        assert!(chain_curves_json("C1", "corrected", None, 50).is_err());
        assert!(chain_curves_json("C1", "corrected", Some(1.2), 50).is_ok());
        assert!(chain_curves_json("C3", "printed", None, 50).is_err());
    }

    #[test]
    fn bernoulli_view_is_ordered() {
        let json: Value = serde_json::from_str(&bernoulli_json(0.5, 0.5).unwrap()).unwrap();
        assert_eq!(json["ordering_certified"], true);
        assert!(json["left"].as_f64().unwrap() >= json["mid"].as_f64().unwrap());
        assert!(bernoulli_json(1.5, 0.5).is_err());
    }

    #[test]
    fn compare_reports_b8_over_b7() {
        let json: Value = serde_json::from_str(&compare_json("B8", "B7", 0.0, 1.5, None, 100).unwrap()).unwrap();
        assert!(json["max_log_gap"].as_f64().unwrap() > 0.0);
    }
}
