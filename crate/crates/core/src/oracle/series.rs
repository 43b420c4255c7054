//! Certified tails and partial sums of `sum_k 1/j_k^p` and of the
//! logarithmic series `-ln(1 - t) = sum_m t^m/m`.

use crate::bounds::Parity;

use super::Enclosure;

fn index_weight(power: u32, parity: Parity, k: u64) -> Enclosure {
    let j = parity.index(k) as f64;
    1.0 / Enclosure::point(j).powi(power)
}

/// Enclosure of `sum_{k > n} 1/j_k^power` (`power >= 2`).
///
/// Euler–Maclaurin at `f(t) = (t + shift)^(-p)` summed from `M = n + 1`,
/// kept through the `f'''` correction. `f` is completely monotone, so the
/// remainder lies between zero and the next correction term.
pub fn tail_sum(power: u32, parity: Parity, n: u64) -> Enclosure {
    assert!(power >= 2, "tail_sum needs power >= 2");
    // Odd indices: 1/(2k-1)^p = 2^-p / (k - 1/2)^p.
    let (y, scale) = match parity {
        Parity::All => (n as f64 + 1.0, 1.0),
        Parity::Odd => (n as f64 + 0.5, 0.5f64.powi(power as i32)),
    };
    let y = Enclosure::point(y);
    let p = power as f64;
    let f = 1.0 / y.powi(power);
    let integral = y * f / (p - 1.0);
    // -f'/12 = p y^-(p+1)/12;  f'''/720 = -p(p+1)(p+2) y^-(p+3)/720;
    // -f^(5)/30240 = p(p+1)(p+2)(p+3)(p+4) y^-(p+5)/30240.
    let d1 = Enclosure::point(p) * f / y / 12.0;
    let f3 = Enclosure::point(p * (p + 1.0) * (p + 2.0)) * f / y.powi(3) / 720.0;
    let f5 = Enclosure::point(p * (p + 1.0) * (p + 2.0) * (p + 3.0) * (p + 4.0)) * f
        / y.powi(5)
        / 30240.0;
    let base = integral + f * 0.5 + d1 - f3;
    let sum = Enclosure::new(base.lo(), (base + f5).hi());
    sum * scale
}

/// Upper bound on `sum_{k > n} 1/j_k^power` by comparison with an
/// integral (`n >= 1`).
pub fn integral_tail_bound(power: u32, parity: Parity, n: u64) -> f64 {
    assert!(power >= 2 && n >= 1, "integral_tail_bound needs power >= 2 and n >= 1");
    let q = Enclosure::point(power as f64 - 1.0);
    let bound = match parity {
        Parity::All => 1.0 / (q * Enclosure::point(n as f64).powi(power - 1)),
        Parity::Odd => {
            1.0 / (2.0 * q * Enclosure::point(2.0 * n as f64 - 1.0).powi(power - 1))
        }
    };
    bound.hi()
}

/// Enclosure of `sum_{k <= n} 1/j_k^power`, accumulated smallest term first.
pub fn partial_sum(power: u32, parity: Parity, n: u64) -> Enclosure {
    (1..=n)
        .rev()
        .fold(Enclosure::point(0.0), |acc, k| acc + index_weight(power, parity, k))
}

/// Enclosure of `-ln(1 - t) - t = sum_{m >= 2} t^m/m` for a point `t` in `[0, 1)`.
///
/// Series with a geometric tail bound for `t <= 1/2`, the direct formula above.
pub fn log1m_excess(t: f64) -> Enclosure {
    assert!((0.0..1.0).contains(&t), "log1m_excess needs t in [0, 1)");
    if t == 0.0 {
        return Enclosure::point(0.0);
    }
    if t > 0.5 {
        let te = Enclosure::point(t);
        return -((-te).ln_1p()) - te;
    }
    let te = Enclosure::point(t);
    let mut power = te.sqr();
    let mut sum = Enclosure::point(0.0);
    let mut m = 2u32;
    loop {
        let term = power / m as f64;
        sum = sum + term;
        // remaining terms: t^(m+1)/(m+1) + ... <= t^(m+1) / ((m+1)(1-t))
        let tail = (power * te / ((m + 1) as f64 * (1.0 - te))).hi();
        if tail <= sum.lo() * 1e-18 || m >= 200 {
            return Enclosure::new(sum.lo(), (sum + Enclosure::new(0.0, tail)).hi());
        }
        power = power * te;
        m += 1;
    }
}

/// Enclosure of `-ln(1 - t)` for a point `t` in `[0, 1)` by the series
/// `sum_m t^m/m`, truncated once the tail bound `t^(N+1)/((N+1)(1-t))`
/// drops below `tail_tol`. Evaluated by interval Horner.
///
/// Returns the enclosure and the number of series terms used.
pub fn neg_log1m_series(t: f64, tail_tol: f64) -> (Enclosure, u64) {
    assert!((0.0..1.0).contains(&t), "neg_log1m_series needs t in [0, 1)");
    if t == 0.0 {
        return (Enclosure::point(0.0), 0);
    }
    let te = Enclosure::point(t);
    let gap = 1.0 - te;
    // Find N with t^(N+1)/((N+1)(1-t)) <= tail_tol.
    let mut n: u64 = 1;
    let mut power = te.sqr(); // t^(n+1)
    let mut tail = (power / (2.0 * gap)).hi();
    while tail > tail_tol {
        n += 1;
        power = power * te;
        tail = (power / ((n + 1) as f64 * gap)).hi();
        assert!(n < 50_000_000, "series budget exhausted");
    }
    // sum_{m=1}^N t^m/m = t (1 + t (1/2 + t (1/3 + ...)))
    let mut acc = 1.0 / Enclosure::point(n as f64);
    for m in (1..n).rev() {
        acc = 1.0 / Enclosure::point(m as f64) + te * acc;
    }
    let sum = te * acc;
    (Enclosure::new(sum.lo(), (sum + Enclosure::new(0.0, tail)).hi()), n)
}
