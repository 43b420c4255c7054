use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use trigbounds::bounds::{pair_label, BoundRef, ChainId, ChainSpec, Form, TargetId, Variant};
use trigbounds::oracle::product_enclosure;
use trigbounds::verifier::{
    discrepancy_audit, sharpness, sweep_chain, AlphaSamples, AuditReport, ChainReport, Mode,
    SweepConfig, XGrid,
};
use trigbounds::{eval_bound, eval_target, partial_sum_check, zeta_constants, BoundId};

use crate::args::{
    AlphaList, AuditArgs, BenchArgs, ChainSelection, CompareArgs, ConstantsArgs, Emit, ModeArg,
    VariantSelection, VerifyArgs,
};
use crate::output::{csv_bytes, deliver, extract_wall_times, fmt17, fmt_opt, Envelope};
use crate::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;

pub const SAMPLE_COLUMNS: [&str; 8] = ["chain", "variant", "pair", "x", "alpha", "lhs", "rhs", "gap"];

fn selected_chains(chain: ChainSelection, variant: VariantSelection) -> Result<Vec<ChainSpec>, CliError> {
    let ids: Vec<ChainId> = match chain {
        ChainSelection::All => ChainId::ALL.to_vec(),
        ChainSelection::One(id) => vec![id],
    };
    let variants: &[Variant] = match variant {
        VariantSelection::Corrected => &[Variant::Corrected],
        VariantSelection::Printed => &[Variant::Printed],
        VariantSelection::Both => &[Variant::Corrected, Variant::Printed],
    };
    let mut specs = Vec::new();
    for &id in &ids {
        for &v in variants {
            match ChainSpec::lookup(id, v) {
                Some(spec) => specs.push(spec),
                // `all` only includes chains that have the requested variant
                None if chain == ChainSelection::All || variant == VariantSelection::Both => {}
                None => {
                    return Err(CliError::Usage(format!("{id} has no {v} variant")));
                }
            }
        }
    }
    Ok(specs)
}

pub fn sweep_config(args: &VerifyArgs) -> SweepConfig {
    SweepConfig {
        grid: XGrid::Uniform(args.grid as usize),
        alphas: match &args.alphas {
            AlphaList::Auto => AlphaSamples::Auto(20),
            AlphaList::Values(v) => AlphaSamples::Explicit(v.clone()),
        },
        refine_depth: args.refine,
        tolerance: args.tol,
        mode: match args.mode {
            ModeArg::Float => Mode::Float,
            ModeArg::Interval => Mode::Interval,
        },
        certify_budget: args.budget as usize,
        max_records: 100,
        keep_samples: args.samples && args.output.emit == Emit::Csv,
    }
}

pub fn report_rows(report: &ChainReport) -> Vec<Vec<String>> {
    let spec = ChainSpec::lookup(report.chain, report.variant);
    let labels: Vec<String> = match &spec {
        Some(s) => s.pairs().map(|(l, u)| pair_label(&l, &u)).collect(),
        None => report.pairs.iter().map(|p| p.label.clone()).collect(),
    };
    let row = |s: &trigbounds::verifier::GapSample| {
        vec![
            report.chain.to_string(),
            report.variant.to_string(),
            labels[s.pair].clone(),
            fmt17(s.x),
            fmt_opt(s.alpha),
            fmt17(s.lhs),
            fmt17(s.rhs),
            fmt17(s.gap),
        ]
    };
    let mut rows = Vec::new();
    for pair in &report.pairs {
        rows.push(row(&pair.argmin));
        rows.extend(pair.violations.iter().map(row));
    }
    rows.extend(report.samples.iter().map(row));
    rows
}

pub fn verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let specs = selected_chains(args.chain, args.variant)?;
    let config = sweep_config(args);
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        let report = sweep_chain(spec, &config)?;
        let _ = writeln!(
            stderr,
            "{} {}: {} violation(s){}",
            report.chain,
            report.variant,
            report.violation_count(),
            report
                .certified_fraction
                .map(|f| format!(", certified fraction {f:.6}"))
                .unwrap_or_default()
        );
        reports.push(report);
    }
    let code = if reports.iter().all(ChainReport::passed) { EXIT_OK } else { EXIT_VIOLATION };
    let bytes = match args.output.emit {
        Emit::Csv => csv_bytes(&SAMPLE_COLUMNS, reports.iter().flat_map(report_rows))?,
        Emit::Json => {
            let mut value = serde_json::to_value(&reports)?;
            let times = extract_wall_times(&mut value, |r| {
                format!(
                    "{}:{}",
                    r["chain"].as_str().unwrap_or_default(),
                    r["variant"].as_str().unwrap_or_default()
                )
            });
            let mut envelope = Envelope::new("verify", args, value);
            envelope.timestamp.wall_time_ms = times;
            envelope.to_bytes()?
        }
    };
    deliver(&args.output, &bytes, stdout)?;
    Ok(code)
}

fn upper_limit(bound: BoundRef, alpha: Option<f64>) -> Result<f64, CliError> {
    match bound.id.info().form {
        Form::Alpha { .. } => alpha.ok_or_else(|| CliError::Usage(format!("{} needs --alpha", bound.id))),
        Form::Pi { x_max } | Form::Plain { x_max } => Ok(x_max),
    }
}

pub fn compare(args: &CompareArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let domain = match args.domain {
        Some(d) => (d.lo, d.hi),
        None => (0.0, upper_limit(args.a, args.alpha)?.min(upper_limit(args.b, args.alpha)?)),
    };
    let report = sharpness(args.a, args.b, domain, args.grid as usize, args.alpha)?;
    let bytes = match args.output.emit {
        Emit::Csv => csv_bytes(
            &["x", "a", "b", "advantage", "winner"],
            report.points.iter().map(|p| {
                vec![fmt17(p.x), fmt17(p.a), fmt17(p.b), fmt17(p.advantage), format!("{:?}", p.winner)]
            }),
        )?,
        Emit::Json => Envelope::new("compare", args, serde_json::to_value(&report)?).to_bytes()?,
    };
    deliver(&args.output, &bytes, stdout)?;
    Ok(EXIT_OK)
}

pub fn audit_config(args: &AuditArgs) -> SweepConfig {
    SweepConfig {
        grid: XGrid::Uniform(args.grid as usize),
        tolerance: args.tol,
        certify_budget: args.budget as usize,
        ..SweepConfig::default()
    }
}

pub fn audit_rows(report: &AuditReport) -> Vec<Vec<String>> {
    report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.bound.to_string(),
                r.target.to_string(),
                r.printed_valid.to_string(),
                r.corrected_valid.to_string(),
                format!("{:?}", r.tighter).to_lowercase(),
                fmt17(r.max_log_gap),
                fmt_opt(r.printed.invalid_from),
                fmt_opt(r.corrected.invalid_from),
                r.crossovers.iter().map(|c| fmt17(*c)).collect::<Vec<_>>().join(";"),
                r.classification.clone(),
            ]
        })
        .collect()
}

pub fn audit(args: &AuditArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let report = discrepancy_audit(&audit_config(args))?;
    let bytes = match args.output.emit {
        Emit::Csv => csv_bytes(
            &[
                "bound",
                "target",
                "printed_valid",
                "corrected_valid",
                "tighter",
                "max_log_gap",
                "printed_invalid_from",
                "corrected_invalid_from",
                "crossovers",
                "classification",
            ],
            audit_rows(&report),
        )?,
        Emit::Json => Envelope::new("audit", args, serde_json::to_value(&report)?).to_bytes()?,
    };
    deliver(&args.output, &bytes, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct ConstantRow {
    name: &'static str,
    series: &'static str,
    closed_form: &'static str,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<trigbounds::oracle::PartialSumCheck>,
}

pub fn constants(args: &ConstantsArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let table = zeta_constants();
    let mut rows = Vec::new();
    for c in trigbounds::bounds::ZetaConstant::ALL {
        let check = args.check_partial_sums.map(|n| partial_sum_check(c, n)).transpose()?;
        rows.push(ConstantRow {
            name: c.name(),
            series: c.series_text(),
            closed_form: c.closed_form_text(),
            value: table.get(c),
            check,
        });
    }
    let ok = rows.iter().all(|r| r.check.is_none_or(|c| c.holds() && c.within_bound()));
    let bytes = match args.output.emit {
        Emit::Csv => {
            let mut header = vec!["name", "series", "closed_form", "value"];
            if args.check_partial_sums.is_some() {
                header.extend(["n", "partial", "residual", "tail_bound", "residual_bound", "holds"]);
            }
            csv_bytes(
                &header,
                rows.iter().map(|r| {
                    let mut row = vec![
                        r.name.to_string(),
                        r.series.to_string(),
                        r.closed_form.to_string(),
                        fmt17(r.value),
                    ];
                    if let Some(c) = &r.check {
                        row.extend([
                            c.n.to_string(),
                            fmt17(c.partial),
                            fmt17(c.residual),
                            fmt17(c.tail_bound),
                            fmt17(c.residual_bound),
                            (c.holds() && c.within_bound()).to_string(),
                        ]);
                    }
                    row
                }),
            )?
        }
        Emit::Json => Envelope::new("constants", args, serde_json::to_value(&rows)?).to_bytes()?,
    };
    deliver(&args.output, &bytes, stdout)?;
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub kind: &'static str,
    pub name: String,
    pub x: f64,
    pub alpha: Option<f64>,
    /// Closed-form (platform libm) evaluation.
    pub ns_per_eval: f64,
    /// Certified product enclosure at width 1e-12 (targets only).
    pub enclosure_ns_per_eval: Option<f64>,
}

fn time_per_call(reps: u64, warmup: u64, mut f: impl FnMut() -> f64) -> f64 {
    for _ in 0..warmup {
        black_box(f());
    }
    let start = Instant::now();
    for _ in 0..reps {
        black_box(f());
    }
    start.elapsed().as_nanos() as f64 / reps as f64
}

pub fn bench_rows(reps: u64, warmup: u64) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for id in BoundId::ALL {
        let info = id.info();
        let (x, alpha) = match info.form {
            Form::Alpha { alpha_max } => (0.45 * alpha_max, Some(0.9 * alpha_max)),
            Form::Pi { x_max } | Form::Plain { x_max } => (0.5 * x_max, None),
        };
        let ns = time_per_call(reps, warmup, || {
            eval_bound(black_box(id), black_box(x), alpha, Variant::Corrected).unwrap_or(f64::NAN)
        });
        rows.push(BenchRow { kind: "bound", name: id.to_string(), x, alpha, ns_per_eval: ns, enclosure_ns_per_eval: None });
    }
    for target in TargetId::ALL {
        let x = 0.5 * target.family().radius();
        let ns = time_per_call(reps, warmup, || eval_target(black_box(target), black_box(x)));
        let slow_reps = (reps / 100).max(1);
        let enclosure = time_per_call(slow_reps, warmup.min(slow_reps), || {
            product_enclosure(black_box(target), black_box(x), 1e-12).map(|e| e.mid()).unwrap_or(f64::NAN)
        });
        rows.push(BenchRow {
            kind: "target",
            name: target.to_string(),
            x,
            alpha: None,
            ns_per_eval: ns,
            enclosure_ns_per_eval: Some(enclosure),
        });
    }
    rows
}

pub fn bench(args: &BenchArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let rows = bench_rows(args.reps, args.warmup);
    let bytes = match args.output.emit {
        Emit::Csv => csv_bytes(
            &["kind", "name", "x", "alpha", "ns_per_eval", "enclosure_ns_per_eval"],
            rows.iter().map(|r| {
                vec![
                    r.kind.to_string(),
                    r.name.clone(),
                    fmt17(r.x),
                    fmt_opt(r.alpha),
                    format!("{:.3}", r.ns_per_eval),
                    r.enclosure_ns_per_eval.map(|v| format!("{v:.3}")).unwrap_or_default(),
                ]
            }),
        )?,
        Emit::Json => {
            let value: Value = serde_json::to_value(&rows)?;
            Envelope::new("bench", args, value).to_bytes()?
        }
    };
    deliver(&args.output, &bytes, stdout)?;
    Ok(EXIT_OK)
}
