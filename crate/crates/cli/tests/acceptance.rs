//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.

use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigbounds::bounds::{log_bernoulli_triple, ChainSpec, TargetId, Variant, ZetaConstant};
use trigbounds::oracle::box_gap_bounds;
use trigbounds::verifier::{auto_alphas, ChainReport, Region, Tighter, Validity};
use trigbounds::{
    certify_region, discrepancy_audit, eval_bound, eval_target, partial_sum_check, product_enclosure,
    sweep_chain, BoundId, ChainId, SweepConfig,
};

type Outcome = Result<String, String>;

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn corrected(id: ChainId) -> ChainSpec {
    ChainSpec::lookup(id, Variant::Corrected).expect("every chain has a corrected form")
}

fn within_time(started: Instant, limit: Duration) -> Result<(), String> {
    let elapsed = started.elapsed();
    ensure(elapsed < limit, || format!("took {elapsed:.1?}, target {limit:?}"))
}

fn bernoulli_triple_ordering() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut violations = 0u64;
    let mut worst = f64::INFINITY;
    for _ in 0..1_000_000 {
        let u = rng.gen_range(1e-6..1.0 - 1e-6);
        let v = rng.gen_range(1e-6..1.0 - 1e-6);
        let t = log_bernoulli_triple(u, v).map_err(|e| e.to_string())?;
        let scale = t.left.abs().max(t.mid.abs()).max(t.right.abs()).max(1.0);
        let slack = (t.left - t.mid).min(t.mid - t.right) / scale;
        worst = worst.min(slack);
        if slack < -1e-14 {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} random ordering violations"))?;

    let cells = 32;
    let (lo, hi) = (0.01, 0.99);
    let step = (hi - lo) / cells as f64;
    let mut uncertified = 0;
    for i in 0..cells {
        for j in 0..cells {
            let u_lo = lo + step * i as f64;
            let v_lo = lo + step * j as f64;
            if !box_gap_bounds(u_lo, u_lo + step, v_lo).certified() {
                uncertified += 1;
            }
        }
    }
    ensure(uncertified == 0, || format!("{uncertified} of 1024 boxes not certified"))?;
    within_time(started, Duration::from_secs(30))?;
    Ok(format!(
        "1e6 samples, worst relative slack {worst:.3e}; 1024/1024 boxes certified; {:.1?}",
        started.elapsed()
    ))
}

fn default_sweeps(reports: &mut Vec<ChainReport>) -> Outcome {
    let started = Instant::now();
    let config = SweepConfig::default();
    for id in ChainId::ALL {
        let report = sweep_chain(&corrected(id), &config).map_err(|e| e.to_string())?;
        ensure(report.violation_count() == 0, || {
            format!("{id}: {} violations", report.violation_count())
        })?;
        reports.push(report);
    }
    within_time(started, Duration::from_secs(60))?;
    Ok(format!("C1-C7 at 1e5 x-points, 20 alphas: 0 violations; {:.1?}", started.elapsed()))
}

fn endpoint_equality() -> Outcome {
    let mut worst: f64 = 0.0;
    for id in [ChainId::C1, ChainId::C2, ChainId::C4, ChainId::C6] {
        let spec = corrected(id);
        let constraint = spec.alpha_constraint.expect("alpha chain");
        let [classic, refined] = [0, 1].map(|i| spec.bounds().nth(i).expect("two lower bounds").id);
        for alpha in auto_alphas(constraint, 20) {
            let target = eval_target(spec.target, alpha);
            for bound in [classic, refined] {
                let value = eval_bound(bound, alpha, Some(alpha), Variant::Corrected).map_err(|e| e.to_string())?;
                let relative = ((value - target) / target).abs();
                worst = worst.max(relative);
                ensure(relative <= 1e-13, || format!("{bound} at alpha {alpha}: relative error {relative:e}"))?;
            }
        }
    }
    Ok(format!("C1, C2, C4, C6 x 20 alphas: worst relative error {worst:.3e}"))
}

fn refinement_dominance(reports: &[ChainReport]) -> Outcome {
    ensure(reports.len() == 7, || "sweeps from criterion 2 are missing".into())?;
    let min_gap = reports.iter().map(|r| r.pairs[0].min_gap).fold(f64::INFINITY, f64::min);
    ensure(min_gap >= -1e-14, || format!("min refined - classic log gap {min_gap:e}"))?;
    let mut smallest_midpoint = f64::INFINITY;
    for id in [ChainId::C1, ChainId::C2, ChainId::C4, ChainId::C6] {
        let spec = corrected(id);
        for alpha in auto_alphas(spec.alpha_constraint.expect("alpha chain"), 20) {
            let x = alpha / 2.0;
            let classic = spec.members[0].log_value(x, Some(alpha)).map_err(|e| e.to_string())?;
            let refined = spec.members[1].log_value(x, Some(alpha)).map_err(|e| e.to_string())?;
            let gap = refined - classic;
            smallest_midpoint = smallest_midpoint.min(gap);
            ensure(gap > 1e-6, || format!("{id} at alpha {alpha}: gap at alpha/2 is {gap:e}"))?;
        }
    }
    Ok(format!("min sweep gap {min_gap:.3e}; smallest gap at alpha/2 {smallest_midpoint:.3e}"))
}

fn fixtures_at_one() -> Outcome {
    // Values regenerated with a 40-digit reference evaluation.
    let rows = [
        ("sinc", eval_target(TargetId::Sinc, 1.0), 0.841_470_984_807_896_5, 0.8414710),
        ("B8", eval_bound(BoundId::B8, 1.0, None, Variant::Corrected).map_err(|e| e.to_string())?, 0.841_450_132_193_266_3, 0.8414460),
        ("B7", eval_bound(BoundId::B7, 1.0, None, Variant::Corrected).map_err(|e| e.to_string())?, 0.838_846_446_485_864_7, 0.8388380),
    ];
    let mut parts = Vec::new();
    for (name, got, reference, quoted) in rows {
        ensure((got - reference).abs() <= 1e-12, || format!("{name}(1) = {got}, reference {reference}"))?;
        ensure((got - quoted).abs() <= 1e-5, || format!("{name}(1) = {got} differs from {quoted} by more than 1e-5"))?;
        parts.push(format!("{name}={got:.10}"));
    }
    Ok(parts.join(", "))
}

fn oracle_containment() -> Outcome {
    let mut widest: f64 = 0.0;
    for target in [TargetId::Cos, TargetId::Sinc] {
        for i in 0..1000 {
            let x = FRAC_PI_2 * (i as f64 + 0.5) / 1000.0;
            let enclosure = product_enclosure(target, x, 1e-12).map_err(|e| e.to_string())?;
            widest = widest.max(enclosure.width());
            let platform = match target {
                TargetId::Cos => x.cos(),
                _ => x.sin() / x,
            };
            ensure(enclosure.width() <= 1e-12, || format!("{target}({x}) width {:e}", enclosure.width()))?;
            ensure(enclosure.widen(1).contains(platform), || {
                format!("{target}({x}) = {platform} outside [{}, {}]", enclosure.lo(), enclosure.hi())
            })?;
        }
    }
    Ok(format!("2000 points contained; widest enclosure {widest:.3e}"))
}

fn c3_certification() -> Outcome {
    let result = certify_region(&corrected(ChainId::C3), Region::x_only(0.01, PI - 0.01), 1e-12, 100_000)
        .map_err(|e| e.to_string())?;
    ensure(result.is_certified(), || format!("outcome {}", result.label()))?;
    Ok(format!("CERTIFIED in {} boxes", result.boxes()))
}

fn partial_sums() -> Outcome {
    let mut parts = Vec::new();
    for constant in ZetaConstant::ALL {
        let check = partial_sum_check(constant, 10_000).map_err(|e| e.to_string())?;
        ensure(check.within_bound() && check.holds(), || {
            format!("{constant}: residual {:e} vs bound {:e}", check.residual, check.residual_bound)
        })?;
        parts.push(format!("{constant} {:.2e}<={:.2e}", check.residual.abs(), check.residual_bound));
    }
    Ok(parts.join(", "))
}

fn audit() -> Outcome {
    let report = discrepancy_audit(&SweepConfig::default()).map_err(|e| e.to_string())?;
    let b17 = report.row(BoundId::B17).ok_or("no B17 row")?;
    ensure(b17.printed_valid && b17.corrected_valid, || "B17 is not both-valid".into())?;
    ensure(b17.tighter == Tighter::Corrected, || format!("B17 tighter: {:?}", b17.tighter))?;
    let witness = b17.witnesses.iter().find(|w| w.x == 0.7).ok_or("no B17 witness at 0.7")?;
    // The quoted 0.957400 for the printed form is a rounding slip: the
    // reference evaluation gives 0.9573856983, 1.4e-5 away.
    let checks = [
        ("printed", witness.printed.mid(), 0.957_385_698_298_513_1, 0.957400),
        ("corrected", witness.corrected.mid(), 0.959_996, 0.959996),
        ("target", witness.target.mid(), 0.960_011, 0.960011),
    ];
    let mut parts = Vec::new();
    for (name, got, expected, quoted) in checks {
        ensure((got - expected).abs() <= 1e-5, || format!("B17 {name}(0.7) = {got}, expected {expected}"))?;
        parts.push(format!("{name} {got:.7} (quoted {quoted}, diff {:.1e})", (got - quoted).abs()));
    }
    let mut outcomes = vec![format!("{}: {}", b17.classification, parts.join(", "))];
    for id in [BoundId::B13, BoundId::B18] {
        let row = report.row(id).ok_or_else(|| format!("no {id} row"))?;
        for verdict in [&row.printed, &row.corrected] {
            ensure(verdict.validity != Validity::Inconclusive, || format!("{id} {} inconclusive", verdict.variant))?;
        }
        ensure(!row.witnesses.is_empty() && !row.classification.is_empty(), || format!("{id} lacks witnesses"))?;
        outcomes.push(row.classification.clone());
    }
    Ok(outcomes.join("; "))
}

fn cli_behaviour() -> Outcome {
    let binary = env!("CARGO_BIN_EXE_trigbounds");
    let exit = |args: &[&str]| -> Result<i32, String> {
        let status = Command::new(binary).args(args).output().map_err(|e| e.to_string())?.status;
        status.code().ok_or_else(|| "terminated by signal".into())
    };
    let all = exit(&["verify", "--chain", "all"])?;
    ensure(all == 0, || format!("verify --chain all exited {all}"))?;
    let unknown = exit(&["verify", "--chain", "C9"])?;
    ensure(unknown == 2, || format!("verify --chain C9 exited {unknown}"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("c5.csv");
    let path_text = path.to_str().ok_or("non-utf8 temp path")?;
    let printed = exit(&[
        "verify", "--chain", "C5", "--variant", "printed", "--grid", "2000", "--samples", "--emit", "csv", "--out",
        path_text,
    ])?;
    ensure(printed == 1, || format!("printed C5 exited {printed}"))?;
    let mut reader = csv::Reader::from_path(&path).map_err(|e| e.to_string())?;
    let mut rows = 0;
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        let field = |i: usize| -> Result<f64, String> {
            let text = &record[i];
            let value: f64 = text.parse().map_err(|_| format!("bad number {text:?}"))?;
            ensure(format!("{value:.16e}") == text, || format!("{text} does not round-trip"))?;
            Ok(value)
        };
        let (lhs, rhs, gap) = (field(5)?, field(6)?, field(7)?);
        let recomputed = rhs - lhs;
        let ulp = (recomputed.to_bits() as i64 - gap.to_bits() as i64).unsigned_abs();
        ensure(ulp <= 1, || format!("gap {gap} vs recomputed {recomputed}"))?;
        rows += 1;
    }
    ensure(rows > 2000, || format!("only {rows} CSV rows"))?;
    Ok(format!("exit codes 0/2/1 as expected; {rows} CSV rows round-trip"))
}

fn check(number: usize, name: &str, criterion: impl FnOnce() -> Outcome) -> bool {
    let outcome = panic::catch_unwind(AssertUnwindSafe(criterion))
        .unwrap_or_else(|payload| {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
    match outcome {
        Ok(detail) => {
            println!("criterion {number:>2} PASS  {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {number:>2} FAIL  {name}: {detail}");
            false
        }
    }
}

fn main() {
    let mut reports = Vec::new();
    let results = [
        check(1, "Bernoulli triple ordering", bernoulli_triple_ordering),
        check(2, "corrected chain sweeps", || default_sweeps(&mut reports)),
        check(3, "endpoint equality", endpoint_equality),
        check(4, "refinement dominance", || refinement_dominance(&reports)),
        check(5, "fixtures at x = 1", fixtures_at_one),
        check(6, "product oracle containment", oracle_containment),
        check(7, "C3 certification", c3_certification),
        check(8, "partial sums", partial_sums),
        check(9, "printed-vs-corrected audit", audit),
        check(10, "CLI exit codes and CSV", cli_behaviour),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
