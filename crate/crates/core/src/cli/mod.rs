//! The `ffrl` command line: verify, sweep, decay, lift and constants.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage or configuration errors. `FFRL_THREADS` caps the worker pool.

mod config;
mod output;
mod verify;

use std::sync::Arc;

use clap::Parser;
use serde_json::json;

pub use config::{
    ClassArg, Cli, Command, ConstantsArgs, DecayArgs, Format, LiftArg, LiftArgs, RunConfig, ScanArg, StrategyArg,
    SweepArgs, VarietyArg, VerifyArgs,
};
pub use output::{line_plot, Sink};
pub use verify::{battery, Check};

use crate::closedform::{decay_max, DecayReport};
use crate::constants::{
    conjecture_scan, estimate_r, r2_exact, r2_operator_norm, sharpness_sweep, EstimateParams, RatioRecord, ScanKind,
    Strategy, SHARP_SLOPE_MAX, UNBOUNDED_SLOPE_MIN,
};
use crate::error::Result;
use crate::field::{FieldElement, FiniteField};
use crate::lifting::{alpha, FunctionClass, HomTransfer, LayTransfer, LiftReport};
use crate::varieties::Variety;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Outcome of a command that got past configuration.
enum Outcome {
    Passed,
    Failed,
}

impl From<ClassArg> for FunctionClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => FunctionClass::All,
            ClassArg::Lay => FunctionClass::Lay,
            ClassArg::Hom => FunctionClass::Hom,
        }
    }
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Delta => Strategy::Delta,
            StrategyArg::Constant => Strategy::Constant,
            StrategyArg::Subspace => Strategy::Subspace,
            StrategyArg::Random => Strategy::Random,
            StrategyArg::Ascent => Strategy::Ascent,
        }
    }
}

/// Configuration failures, reported before any computation.
#[derive(Debug)]
struct Usage(String);

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

fn field(q: u64) -> std::result::Result<Arc<FiniteField>, Usage> {
    FiniteField::from_order(q)
        .map(Arc::new)
        .map_err(|e| usage(format!("--q {q}: {e}")))
}

fn check_d(d: usize, lo: usize, hi: usize) -> std::result::Result<(), Usage> {
    if (lo..=hi).contains(&d) {
        Ok(())
    } else {
        Err(usage(format!("--d must lie in [{lo}, {hi}], got {d}")))
    }
}

fn check_even(d: usize) -> std::result::Result<(), Usage> {
    if d.is_multiple_of(2) {
        Ok(())
    } else {
        Err(usage(format!("this command needs even d, got {d}")))
    }
}

fn radius(f: &FiniteField, j: u32) -> std::result::Result<FieldElement, Usage> {
    let e = f.from_int(j as i64);
    if e.is_zero() {
        Err(usage(format!("--j {j} is zero in F_{}", f.order())))
    } else {
        Ok(e)
    }
}

fn build_variety(f: Arc<FiniteField>, d: usize, which: VarietyArg, j: u32) -> std::result::Result<Variety, Usage> {
    let built = match which {
        VarietyArg::Paraboloid => Variety::paraboloid(f, d),
        VarietyArg::Sphere => {
            let j = radius(&f, j)?;
            Variety::sphere(f, d, j)
        }
        VarietyArg::Cone => Variety::homogeneous_cone(f, d),
        VarietyArg::Hsphere => {
            let j = radius(&f, j)?;
            Variety::homogeneous_sphere(f, d, j)
        }
        VarietyArg::Whole => Variety::whole_space(f, d),
    };
    built.map_err(|e| usage(e.to_string()))
}

fn print_err(msg: &str) {
    eprintln!("ffrl: {msg}");
}

fn configure_threads() -> std::result::Result<(), Usage> {
    if let Ok(v) = std::env::var("FFRL_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| usage(format!("FFRL_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(usage("FFRL_THREADS must be positive"));
        }
        // A second call in the same process finds the pool already built.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(Usage(msg)) = configure_threads() {
        print_err(&msg);
        return EXIT_USAGE;
    }
    let config = RunConfig::from(&cli.command);
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a, &config),
        Command::Sweep(a) => cmd_sweep(a, &config),
        Command::Decay(a) => cmd_decay(a, &config),
        Command::Lift(a) => cmd_lift(a, &config),
        Command::Constants(a) => cmd_constants(a, &config),
    };
    match result {
        Ok(Ok(Outcome::Passed)) => EXIT_OK,
        Ok(Ok(Outcome::Failed)) => EXIT_FAILED,
        Ok(Err(e)) => {
            print_err(&e.to_string());
            EXIT_FAILED
        }
        Err(Usage(msg)) => {
            print_err(&msg);
            EXIT_USAGE
        }
    }
}

type CmdResult = std::result::Result<Result<Outcome>, Usage>;

fn cmd_verify(a: &VerifyArgs, config: &RunConfig) -> CmdResult {
    let f = field(a.q)?;
    check_d(a.d, 2, 4)?;
    Ok((|| {
        let checks = battery(f, a.d, a.trials, a.seed)?;
        let mut sink = Sink::open(config)?;
        sink.begin(Check::CSV_HEADER)?;
        for c in &checks {
            eprintln!("{}", c.line());
            sink.row(&c.csv_row(), c, None)?;
        }
        let passed = checks.iter().all(|c| c.passed);
        sink.finish(Some(json!({ "passed": passed })))?;
        Ok(if passed { Outcome::Passed } else { Outcome::Failed })
    })())
}

fn scan_kind(a: &SweepArgs) -> ScanKind {
    match a.kind {
        ScanArg::Paraboloid => ScanKind::Paraboloid,
        ScanArg::Sphere => ScanKind::Sphere(a.j),
    }
}

fn cmd_sweep(a: &SweepArgs, config: &RunConfig) -> CmdResult {
    check_even(a.d)?;
    check_d(a.d, 2, 6)?;
    if a.qs.is_empty() {
        return Err(usage("--qs must list at least one q"));
    }
    let fields =
        a.qs.iter()
            .map(|&q| field(q))
            .collect::<std::result::Result<Vec<_>, _>>()?;
    if a.kind == ScanArg::Sphere {
        for f in &fields {
            radius(f, a.j)?;
        }
    }
    if a.sharpness {
        let p = a.p.ok_or_else(|| usage("--sharpness needs --p"))?;
        if !(1.0..=2.0).contains(&p) {
            return Err(usage(format!("--p must lie in [1, 2], got {p}")));
        }
        if a.qs.len() < 2 {
            return Err(usage("--sharpness needs at least two values in --qs"));
        }
        for f in &fields {
            if f.sqrt_of_minus_one().is_none() {
                return Err(usage(format!("-1 is not a square in F_{}", f.order())));
            }
        }
        return Ok((|| {
            let report = sharpness_sweep(scan_kind(a), a.d, p, &a.qs)?;
            let mut sink = Sink::open(config)?;
            sink.set_plot_labels("q", "extension ratio of 1_H");
            sink.begin(RatioRecord::CSV_HEADER)?;
            for row in &report.rows {
                sink.row(
                    &row.record.csv_row(),
                    row,
                    Some((row.record.q as f64, row.record.ratio)),
                )?;
            }
            let regime = if report.slope >= UNBOUNDED_SLOPE_MIN {
                "growing"
            } else if report.slope <= SHARP_SLOPE_MAX {
                "bounded"
            } else {
                "undetermined"
            };
            eprintln!("fitted slope {:.6} ({regime})", report.slope);
            sink.finish(Some(json!({ "slope": report.slope, "regime": regime })))?;
            Ok(Outcome::Passed)
        })());
    }
    if a.p.is_some() {
        return Err(usage(
            "--p is only used with --sharpness; scans run at p = (2d+4)/(d+4)",
        ));
    }
    let strategies: Vec<Strategy> = a.strategies.iter().map(|&s| s.into()).collect();
    Ok((|| {
        let mut sink = Sink::open(config)?;
        sink.begin(RatioRecord::CSV_HEADER)?;
        let mut failed = false;
        for &q in &a.qs {
            let rows = conjecture_scan(scan_kind(a), a.d, &[q], a.class.into(), &strategies, a.budget, a.seed)?;
            for row in rows {
                if let Some(b) = row.upper_bound {
                    failed |= row.ratio > b;
                }
                sink.row(&row.csv_row(), &row, Some((row.q as f64, row.ratio)))?;
            }
        }
        sink.finish(None)?;
        Ok(if failed { Outcome::Failed } else { Outcome::Passed })
    })())
}

fn cmd_decay(a: &DecayArgs, config: &RunConfig) -> CmdResult {
    let f = field(a.q)?;
    check_d(a.d, 2, 6)?;
    let v = build_variety(f, a.d, a.variety, a.j)?;
    Ok((|| {
        let report = decay_max(&v)?;
        let mut sink = Sink::open(config)?;
        sink.begin(DecayReport::CSV_HEADER)?;
        eprintln!("max = {}, bound = {}", report.max_nonzero_modulus, report.bound);
        sink.row(
            &report.csv_row(),
            &report,
            Some((report.q as f64, report.max_nonzero_modulus)),
        )?;
        sink.finish(None)?;
        let ok = !report.bound_applies() || report.within_bound(1e-9);
        Ok(if ok { Outcome::Passed } else { Outcome::Failed })
    })())
}

const LIFT_CSV_HEADER: &str =
    "kind,q,d,j,seed,alpha_norm,restriction_norm,lifted_alpha_norm,lifted_restriction_norm,transfer_ratio,restriction_ratio,bound,passed";

fn lift_row(r: &LiftReport) -> String {
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        match r.kind {
            crate::lifting::LiftKind::Lay => "lay",
            crate::lifting::LiftKind::Hom => "hom",
        },
        r.q,
        r.d,
        r.j.map(|j| j.to_string()).unwrap_or_default(),
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
        r.source_alpha_norm,
        r.source_restriction_norm,
        r.lifted_alpha_norm,
        r.lifted_restriction_norm,
        opt(r.transfer_ratio),
        opt(r.restriction_ratio),
        r.bound,
        r.passed
    )
}

fn cmd_lift(a: &LiftArgs, config: &RunConfig) -> CmdResult {
    let f = field(a.q)?;
    check_d(a.d, 2, 4)?;
    check_even(a.d)?;
    let j = match a.kind {
        LiftArg::Hom => Some(radius(&f, a.j)?),
        LiftArg::Lay => None,
    };
    Ok((|| {
        let check: Box<dyn Fn(u64) -> Result<LiftReport>> = match j {
            None => {
                let lay = LayTransfer::new(f.clone(), a.d)?;
                Box::new(move |seed| lay.check(&FunctionClass::Lay.random(lay.space(), seed), Some(seed)))
            }
            Some(j) => {
                let hom = HomTransfer::new(f.clone(), a.d, j)?;
                Box::new(move |seed| hom.check(&FunctionClass::Hom.random(hom.space(), seed), Some(seed)))
            }
        };
        let mut sink = Sink::open(config)?;
        sink.set_plot_labels("seed", "restriction ratio");
        sink.begin(LIFT_CSV_HEADER)?;
        let mut passed = 0;
        for t in 0..a.trials as u64 {
            let seed = a.seed.wrapping_add(t);
            let r = check(seed)?;
            passed += r.passed as usize;
            sink.row(&lift_row(&r), &r, r.restriction_ratio.map(|x| (seed as f64, x)))?;
        }
        eprintln!("{passed}/{} lift reports passed", a.trials);
        sink.finish(Some(json!({ "passed": passed, "trials": a.trials })))?;
        Ok(if passed == a.trials {
            Outcome::Passed
        } else {
            Outcome::Failed
        })
    })())
}

fn cmd_constants(a: &ConstantsArgs, config: &RunConfig) -> CmdResult {
    let f = field(a.q)?;
    check_d(a.d, 2, 6)?;
    for (name, x) in [("--p", a.p), ("--r", a.r)] {
        if x.is_nan() || x < 1.0 {
            return Err(usage(format!("{name} must be at least 1, got {x}")));
        }
    }
    let v = build_variety(f, a.d, a.variety, a.j)?;
    let exact_l2 = a.p == 2.0 && a.r == 2.0 && a.class == ClassArg::All;
    Ok((|| {
        let mut sink = Sink::open(config)?;
        if exact_l2 {
            let n = r2_operator_norm(&v)?;
            sink.begin("variety,q,d,operator_norm,exact,iterations,converged")?;
            let row = format!(
                "{},{},{},{},{},{},{}",
                v.label(),
                v.field().order(),
                v.param_dim(),
                n.value,
                r2_exact(&v),
                n.iterations,
                n.converged
            );
            eprintln!("R(2 -> 2) = {} (exact {})", n.value, r2_exact(&v));
            sink.row(&row, &n, Some((v.field().order() as f64, n.value)))?;
            sink.finish(None)?;
            return Ok(if n.converged { Outcome::Passed } else { Outcome::Failed });
        }
        let params = EstimateParams {
            p: a.p,
            r: a.r,
            class: a.class.into(),
            strategies: a.strategies.iter().map(|&s| s.into()).collect(),
            budget: a.budget,
            seed: a.seed,
        };
        let est = estimate_r(&v, &params)?;
        sink.begin(RatioRecord::CSV_HEADER)?;
        for rec in &est.by_strategy {
            sink.row(&rec.csv_row(), rec, Some((v.field().order() as f64, rec.ratio)))?;
        }
        eprintln!(
            "best lower bound {} via {} (alpha = {})",
            est.best.ratio,
            est.best.provenance.label(),
            alpha(v.param_dim())
        );
        sink.finish(Some(json!({ "best": est.best })))?;
        let ok = est.best.upper_bound.is_none_or(|b| est.best.ratio <= b * (1.0 + 1e-9));
        Ok(if ok { Outcome::Passed } else { Outcome::Failed })
    })())
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    run(std::env::args_os())
}
