//! Acceptance suite. One line per criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use common::{coords, field, naive_hat, Oracle};
use ffrl::closedform::{cone_fourier_closed, decay_max, hj_fourier_closed};
use ffrl::constants::{
    estimate_r, r2_operator_norm, restriction_ratio, sharpness_sweep, EstimateParams, Provenance, ScanKind, SteinTomas,
    Strategy,
};
use ffrl::fourier::{hat, inv};
use ffrl::lifting::{alpha, lay_bracket, random_hom, random_lay, FunctionClass, HomTransfer, LayTransfer};
use ffrl::space::{random_function, rng_from_seed, Distribution};
use ffrl::varieties::{measure_transform, Variety};
use ffrl::{Complex64, FieldElement, FiniteField, GridFunction, Space};
use rand::Rng;

const QS: [u64; 5] = [3, 5, 7, 9, 13];

type Criterion = fn() -> Outcome;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn homogeneous(f: &Arc<FiniteField>, d: usize) -> Vec<(Variety, Option<FieldElement>)> {
    let mut out = vec![(Variety::homogeneous_cone(f.clone(), d).unwrap(), None)];
    for j in f.nonzero() {
        out.push((Variety::homogeneous_sphere(f.clone(), d, j).unwrap(), Some(j)));
    }
    out
}

fn counts() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for d in [2usize, 4] {
        for q in QS {
            let f = field(q);
            let expected = (q as usize).pow(d as u32);
            for (v, _) in homogeneous(&f, d) {
                checked += 1;
                if v.cardinality() != expected {
                    bad.push(format!("{} q={q} d={d}: {} != {expected}", v.label(), v.cardinality()));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} varieties, |V| = q^d exactly {}", bad.join("; ")),
    )
}

fn decay() -> Outcome {
    let mut worst_excess: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    let mut n = 0;
    for d in [2usize, 4] {
        for q in QS {
            for (v, _) in homogeneous(&field(q), d) {
                let r = decay_max(&v).unwrap();
                worst_excess = worst_excess.max(r.max_nonzero_modulus / r.bound - 1.0);
                worst_gap = worst_gap.max((r.max_nonzero_modulus - r.bound).abs() / r.bound);
                n += 1;
            }
        }
    }
    let mut odd_min = f64::INFINITY;
    for q in QS {
        for (v, _) in homogeneous(&field(q), 3) {
            let r = decay_max(&v).unwrap();
            odd_min = odd_min.min(r.max_nonzero_modulus * q as f64);
        }
    }
    let passed = worst_excess <= 1e-9 && worst_gap <= 1e-9 && odd_min >= 0.5;
    outcome(
        passed,
        format!(
            "{n} even-d varieties: max/q^(-d/2) - 1 <= {worst_excess:.1e} (tol 1e-9), attained within {worst_gap:.1e}; d=3: min q*max = {odd_min:.3} (need >= 0.5)"
        ),
    )
}

/// Tables for direct sums over F_q.
struct Tables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    chi: Vec<Complex64>,
}

impl Tables {
    fn new(o: &Oracle) -> Self {
        let q = o.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                add[a as usize * q + b as usize] = o.add(a, b);
                mul[a as usize * q + b as usize] = o.mul(a, b);
            }
        }
        Self {
            q,
            add,
            mul,
            chi: (0..q as u32).map(|a| o.chi(a)).collect(),
        }
    }

    fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |s, (&x, &y)| {
            self.add[s as usize * self.q + self.mul[x as usize * self.q + y as usize] as usize]
        })
    }

    /// |V|^{-1} sum_{x in V} chi(m.x)
    fn transform_at(&self, pts: &[Vec<u32>], m: &[u32]) -> Complex64 {
        pts.iter().map(|x| self.chi[self.dot(m, x) as usize]).sum::<Complex64>() / pts.len() as f64
    }
}

fn closed_forms() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0usize;
    let mut rng = rng_from_seed(3);
    for d in [2usize, 4] {
        for q in QS {
            let f = field(q);
            let o = Oracle::new(q as u32);
            let t = Tables::new(&o);
            let floor = (q as f64).powf(-(d as f64) / 2.0);
            for (v, j) in homogeneous(&f, d) {
                let space = v.space();
                let pts: Vec<Vec<u32>> = v.points().iter().map(|&p| coords(q as usize, d + 1, p)).collect();
                let fast = measure_transform(&v).unwrap();
                let closed = |idx: usize| {
                    let m = space.coords(idx);
                    match j {
                        None => cone_fourier_closed(&f, d, &m).unwrap(),
                        Some(j) => hj_fourier_closed(&f, d, j, &m).unwrap(),
                    }
                };
                let sample: Vec<usize> = if q <= 7 {
                    (0..space.len()).collect()
                } else {
                    (0..200).map(|_| rng.random_range(0..space.len())).collect()
                };
                for idx in sample {
                    let c = closed(idx);
                    let brute = t.transform_at(&pts, &coords(q as usize, d + 1, idx));
                    let scale = brute.norm().max(floor);
                    worst = worst.max((c - brute).norm() / scale);
                    worst = worst.max((c - fast.values()[idx]).norm() / scale);
                    n += 1;
                }
            }
        }
    }
    outcome(
        worst <= 1e-9,
        format!("{n} points vs direct sums: max rel err {worst:.1e} (tol 1e-9)"),
    )
}

fn gauss_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut orth_ok = true;
    for q in [3u64, 5, 7, 9, 11, 13] {
        let f = field(q);
        let o = Oracle::new(q as u32);
        let qf = q as f64;
        let g1 = f.gauss_sum(FieldElement::ONE);
        worst = worst.max((g1 - o.gauss_sum_one()).norm());
        for a in f.elements() {
            let target = if a.is_zero() { 0.0 } else { qf.sqrt() };
            worst = worst.max((f.gauss_sum(a).norm() - target).abs());
            worst = worst.max((f.gauss_sum_reciprocal(a).norm() - target).abs());
            let add: Complex64 = f.elements().map(|s| f.chi(f.mul(a, s))).sum();
            worst = worst.max((add - if a.is_zero() { qf } else { 0.0 }).norm());
            // a = 0 is read with the principal character eta^2
            let mult: i32 = if a.is_zero() {
                f.nonzero().map(|s| f.eta(s) * f.eta(s)).sum()
            } else {
                f.nonzero().map(|s| f.eta(f.mul(a, s))).sum()
            };
            orth_ok &= mult == if a.is_zero() { q as i32 - 1 } else { 0 };
            if a.is_zero() {
                continue;
            }
            let sq: Complex64 = f.elements().map(|s| f.chi(f.mul(a, f.square(s)))).sum();
            worst = worst.max((sq - g1 * f.eta(a) as f64).norm());
            for b in f.elements() {
                let lhs: Complex64 = f
                    .elements()
                    .map(|s| f.chi(f.add(f.mul(a, f.square(s)), f.mul(b, s))))
                    .sum();
                let four_a = f.mul(f.from_int(4), a);
                let rhs = g1 * f.eta(a) as f64 * f.chi(f.div(f.square(b), f.neg(four_a)));
                worst = worst.max((lhs - rhs).norm());
                worst = worst.max((lhs - f.weil_square_sum(a, b).unwrap()).norm());
            }
        }
        orth_ok &= f.character_orthogonality_check();
    }
    outcome(
        worst <= 1e-9 && orth_ok,
        format!("q <= 13, all a, b: max err {worst:.1e} (tol 1e-9), orthogonality {orth_ok}"),
    )
}

fn fourier_engine() -> Outcome {
    let configs = [
        (3u64, 1usize),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (7, 2),
        (9, 2),
        (11, 2),
        (13, 2),
    ];
    let mut worst: f64 = 0.0;
    for (q, d) in configs {
        let s = Space::new(field(q), d).unwrap();
        for seed in 0..50 {
            let g = random_function(s.clone(), seed, Distribution::ComplexGaussian);
            let h = hat(&g).unwrap();
            worst = worst.max(inv(&h).unwrap().max_abs_diff(&g));
            let (a, b) = (h.lp_norm(2.0).unwrap(), g.lp_norm(2.0).unwrap());
            worst = worst.max((a - b).abs() / b);
        }
    }
    let s = Space::new(field(3), 2).unwrap();
    let o = Oracle::new(3);
    let mut naive: f64 = 0.0;
    for seed in 0..50 {
        let g = random_function(s.clone(), seed, Distribution::ComplexGaussian);
        let fast = hat(&g).unwrap();
        for (x, y) in fast.values().iter().zip(naive_hat(&o, 2, g.values())) {
            naive = naive.max((x - y).norm());
        }
    }
    outcome(
        worst <= 1e-10 && naive <= 1e-10,
        format!(
            "{} configs x 50: round-trip err {worst:.1e}, F_3^2 naive DFT err {naive:.1e} (tol 1e-10)",
            configs.len()
        ),
    )
}

fn lifting() -> Outcome {
    let mut dev: f64 = 0.0;
    let mut transfer: f64 = 0.0;
    let mut hom_norm: f64 = 0.0;
    let mut bracket_err: f64 = 0.0;
    let mut bracket_max: f64 = 0.0;
    let mut trials = 0;
    let configs: Vec<(u64, usize, u64)> = QS
        .iter()
        .map(|&q| (q, 2, 50))
        .chain([(3, 4, 10), (5, 4, 10), (7, 4, 3)])
        .collect();
    for (q, d, n) in configs {
        let f = field(q);
        let a = alpha(d);
        let lay = LayTransfer::new(f.clone(), d).unwrap();
        let homs: Vec<HomTransfer> = [1, 2]
            .iter()
            .map(|&j| HomTransfer::new(f.clone(), d, FieldElement(j)).unwrap())
            .collect();
        for seed in 0..n {
            let g = random_lay(f.clone(), d, seed).unwrap();
            let r = lay.check(&g, Some(seed)).unwrap();
            dev = dev.max(r.fourier_deviation);
            transfer = transfer.max((r.transfer_ratio.unwrap() - r.transfer_constant).abs() / r.transfer_constant);
            let exact = lay_bracket(q as f64, a);
            let measured = r.alpha_power_ratio.unwrap();
            bracket_err = bracket_err.max((measured - exact).abs() / exact);
            bracket_max = bracket_max.max(measured);
            let g = random_hom(f.clone(), d, seed).unwrap();
            for h in &homs {
                let r = h.check(&g, Some(seed)).unwrap();
                dev = dev.max(r.fourier_deviation);
                hom_norm = hom_norm.max((r.lifted_alpha_norm - r.source_alpha_norm).abs() / r.source_alpha_norm);
            }
            trials += 1;
        }
    }
    let passed = dev <= 1e-10 && transfer <= 1e-10 && hom_norm <= 1e-12 && bracket_err <= 1e-12 && bracket_max <= 2.0;
    outcome(
        passed,
        format!(
            "{trials} lay + {} hom lifts: Fourier relation {dev:.1e}, transfer (q-1)/q {transfer:.1e} (tol 1e-10), hom norm {hom_norm:.1e}, bracket err {bracket_err:.1e} (tol 1e-12), max ratio {bracket_max:.4} <= 2",
            2 * trials
        ),
    )
}

fn stein_tomas() -> Outcome {
    let mut failures = Vec::new();
    let mut worst_final: f64 = 0.0;
    let mut runs = 0;
    for (q, d) in [(3u64, 2usize), (5, 2), (7, 2), (3, 4)] {
        let f = field(q);
        let space = Space::new(f.clone(), d + 1).unwrap();
        let varieties = homogeneous(&f, d);
        let chains: Vec<SteinTomas> = varieties.iter().map(|(v, _)| SteinTomas::new(v).unwrap()).collect();
        for seed in 0..500u64 {
            let dist = match seed % 3 {
                0 => Distribution::ComplexGaussian,
                1 => Distribution::UniformPhase,
                _ => Distribution::SparseZeroOne(0.3),
            };
            let g = random_function(space.clone(), seed, dist);
            if g.is_zero() {
                continue;
            }
            for chain in &chains {
                let report = chain.check(&g).unwrap();
                runs += 1;
                let last = report.checks.last().unwrap();
                worst_final = worst_final.max(last.lhs / last.rhs);
                if !report.passed() {
                    failures.push(format!("q={q} d={d} {} seed {seed}", report.variety));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{runs} chains, 5 inequalities each; max |G^|_W^2 / (2 |G|_alpha^2) = {worst_final:.3} {}",
            failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn boundedness() -> Outcome {
    let series: Vec<(&str, usize, ScanKind, FunctionClass)> = [2usize, 4]
        .iter()
        .flat_map(|&d| {
            [
                ("P/lay", d, ScanKind::Paraboloid, FunctionClass::Lay),
                ("S_1/hom", d, ScanKind::Sphere(1), FunctionClass::Hom),
                ("S_2/hom", d, ScanKind::Sphere(2), FunctionClass::Hom),
            ]
        })
        .collect();
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, d, kind, class) in series {
        let params = EstimateParams {
            p: alpha(d),
            r: 2.0,
            class,
            strategies: vec![Strategy::Delta, Strategy::Random],
            budget: 1000,
            seed: 2024,
        };
        let mut best = Vec::new();
        let mut random_only = Vec::new();
        for q in QS {
            let v = kind.build(field(q), d).unwrap();
            let e = estimate_r(&v, &params).unwrap();
            best.push(e.best.ratio);
            let r = e
                .by_strategy
                .iter()
                .find(|r| matches!(r.provenance, Provenance::Random { .. }))
                .map_or(f64::NAN, |r| r.ratio);
            random_only.push(r);
        }
        let max = best.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = best.iter().cloned().fold(f64::INFINITY, f64::min);
        let spread = (max - min) / min;
        let ok = max <= 4.0 && spread <= 0.25;
        passed &= ok;
        let rmax = random_only.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        parts.push(format!(
            "{name} d={d}: max {max:.3}, spread {:.1}%, random-only max {rmax:.3}",
            100.0 * spread
        ));
    }
    outcome(
        passed,
        format!("delta + 1000 random, <= 4 and spread <= 25%: {}", parts.join("; ")),
    )
}

fn sharpness() -> Outcome {
    let qs = [5u64, 13, 17];
    let above = sharpness_sweep(ScanKind::Paraboloid, 4, 1.6, &qs).unwrap();
    let at = sharpness_sweep(ScanKind::Paraboloid, 4, 1.5, &qs).unwrap();
    outcome(
        above.slope >= 0.05 && at.slope <= 0.02,
        format!(
            "P, d=4, q in {qs:?}: slope {:.4} at p=1.6 (need >= 0.05), {:.4} at p=1.5 (need <= 0.02)",
            above.slope, at.slope
        ),
    )
}

fn calibration() -> Outcome {
    let mut r2_err: f64 = 0.0;
    for (q, d) in [(3u64, 2usize), (5, 2), (3, 3), (7, 1), (9, 2)] {
        let v = Variety::whole_space(field(q), d).unwrap();
        let n = r2_operator_norm(&v).unwrap();
        r2_err = r2_err.max((n.value - 1.0).abs());
    }
    let mut reproducible = true;
    let mut replay: f64 = 0.0;
    let cases = [
        (Variety::paraboloid(field(5), 2).unwrap(), FunctionClass::All),
        (Variety::paraboloid(field(5), 2).unwrap(), FunctionClass::Lay),
        (
            Variety::sphere(field(7), 2, FieldElement::ONE).unwrap(),
            FunctionClass::Hom,
        ),
        (Variety::homogeneous_cone(field(3), 2).unwrap(), FunctionClass::All),
        (Variety::paraboloid(field(5), 4).unwrap(), FunctionClass::All),
    ];
    for (v, class) in &cases {
        let params = EstimateParams {
            p: alpha(v.param_dim()),
            r: 2.0,
            class: *class,
            strategies: Strategy::ALL.to_vec(),
            budget: 50,
            seed: 99,
        };
        let a = estimate_r(v, &params).unwrap();
        let b = estimate_r(v, &params).unwrap();
        reproducible &= a.best.ratio.to_bits() == b.best.ratio.to_bits()
            && a.best.provenance == b.best.provenance
            && a.witness.values() == b.witness.values()
            && a.by_strategy.len() == b.by_strategy.len()
            && a.by_strategy
                .iter()
                .zip(&b.by_strategy)
                .all(|(x, y)| x.ratio.to_bits() == y.ratio.to_bits());
        let check = |g: &GridFunction<ffrl::Counting>, expected: f64| {
            (restriction_ratio(g, v, params.p, params.r).unwrap() - expected).abs() / expected
        };
        replay = replay.max(check(&a.witness, a.best.ratio));
        for rec in &a.by_strategy {
            let rebuilt = match rec.provenance {
                Provenance::Delta => Some(GridFunction::delta(v.space().clone(), 0)),
                Provenance::Constant => Some(GridFunction::constant(v.space().clone(), Complex64::new(1.0, 0.0))),
                Provenance::Random { seed } => Some(class.random(v.space(), seed)),
                _ => None,
            };
            if let Some(g) = rebuilt {
                replay = replay.max(check(&class.project(&g), rec.ratio));
            }
        }
    }
    outcome(
        r2_err <= 1e-9 && reproducible && replay <= 1e-10,
        format!(
            "full-space R(2->2) err {r2_err:.1e} (tol 1e-9); {} estimates reproducible: {reproducible}; replay err {replay:.1e} (tol 1e-10)",
            cases.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("counts", counts),
        ("decay", decay),
        ("closed forms", closed_forms),
        ("gauss sums", gauss_identities),
        ("fourier engine", fourier_engine),
        ("lifting", lifting),
        ("stein-tomas chain", stein_tomas),
        ("boundedness", boundedness),
        ("sharpness", sharpness),
        ("calibration", calibration),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!o.passed);
        println!(
            "criterion {:>2} {:<18} {status} [{:.1}s] {}",
            i + 1,
            name,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
