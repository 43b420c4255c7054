use serde::Serialize;

use crate::bounds::{BoundRef, Tier};

use super::config::uniform;
use super::VerifyError;

const CROSSOVER_RESOLUTION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Winner {
    A,
    B,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessPoint {
    pub x: f64,
    pub a: f64,
    pub b: f64,
    /// Log-domain advantage of `a`: `ln a - ln b` for lower bounds, negated for upper.
    pub advantage: f64,
    pub winner: Winner,
}

/// A maximal run of grid points with the same winner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub winner: Winner,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub a: String,
    pub b: String,
    pub alpha: Option<f64>,
    pub points: Vec<SharpnessPoint>,
    pub segments: Vec<Segment>,
    /// Largest |advantage| over the grid.
    pub max_log_gap: f64,
    /// Mean |advantage| over the grid.
    pub mean_log_gap: f64,
    /// Sign changes of the advantage, located to 1e-10 in x.
    pub crossovers: Vec<f64>,
}

impl SharpnessReport {
    /// `a` is at least as tight at every grid point and strictly tighter somewhere.
    pub fn a_dominates(&self) -> bool {
        self.points.iter().all(|p| p.winner != Winner::B)
            && self.points.iter().any(|p| p.winner == Winner::A)
    }
}

fn side(bound: BoundRef) -> bool {
    bound.id.info().tier != Tier::Upper
}

/// Compares two bounds of the same target from the same side on `grid`
/// interior points of `(lo, hi)`.
pub fn sharpness(
    a: BoundRef,
    b: BoundRef,
    domain: (f64, f64),
    grid: usize,
    alpha: Option<f64>,
) -> Result<SharpnessReport, VerifyError> {
    let (ia, ib) = (a.id.info(), b.id.info());
    if ia.target != ib.target || side(a) != side(b) {
        return Err(VerifyError::SideMismatch { a: a.to_string(), b: b.to_string() });
    }
    if grid == 0 {
        return Err(VerifyError::Config("grid must contain at least one point".into()));
    }
    let (lo, hi) = domain;
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(VerifyError::Config(format!("domain ({lo}, {hi}) is empty")));
    }
    let lower = side(a);
    let alpha_for = |r: BoundRef| if r.id.info().takes_alpha() { alpha } else { None };
    let advantage = |x: f64| -> Result<(f64, f64, f64), VerifyError> {
        let la = a.log_value(x, alpha_for(a))?;
        let lb = b.log_value(x, alpha_for(b))?;
        let d = if lower { la - lb } else { lb - la };
        Ok((la, lb, d))
    };
    let step = (hi - lo) / (grid + 1) as f64;
    let xs: Vec<f64> = if grid == 1 {
        vec![0.5 * (lo + hi)]
    } else {
        uniform(lo + step, hi - step, grid)
    };
    let mut points = Vec::with_capacity(xs.len());
    for &x in &xs {
        let (la, lb, d) = advantage(x)?;
        let tie = 4.0 * f64::EPSILON * la.abs().max(lb.abs());
        let winner = if d > tie {
            Winner::A
        } else if d < -tie {
            Winner::B
        } else {
            Winner::Tie
        };
        points.push(SharpnessPoint { x, a: la.exp(), b: lb.exp(), advantage: d, winner });
    }

    let mut segments: Vec<Segment> = Vec::new();
    for p in &points {
        match segments.last_mut() {
            Some(s) if s.winner == p.winner => s.hi = p.x,
            _ => segments.push(Segment { lo: p.x, hi: p.x, winner: p.winner }),
        }
    }

    let mut crossovers = Vec::new();
    let decided: Vec<&SharpnessPoint> = points.iter().filter(|p| p.winner != Winner::Tie).collect();
    for w in decided.windows(2) {
        if w[0].winner == w[1].winner {
            continue;
        }
        let (mut l, mut r) = (w[0].x, w[1].x);
        let left_sign = w[0].advantage > 0.0;
        while r - l > CROSSOVER_RESOLUTION {
            let m = 0.5 * (l + r);
            if (advantage(m)?.2 > 0.0) == left_sign {
                l = m;
            } else {
                r = m;
            }
        }
        crossovers.push(0.5 * (l + r));
    }

    let n = points.len() as f64;
    let max_log_gap = points.iter().map(|p| p.advantage.abs()).fold(0.0, f64::max);
    let mean_log_gap = points.iter().map(|p| p.advantage.abs()).sum::<f64>() / n;
    Ok(SharpnessReport {
        a: a.to_string(),
        b: b.to_string(),
        alpha,
        points,
        segments,
        max_log_gap,
        mean_log_gap,
        crossovers,
    })
}
