//! The check battery behind `ffrl verify`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::closedform::{cone_fourier_closed, decay_max, hj_fourier_closed};
use crate::constants::{r2_operator_norm, SteinTomas};
use crate::error::Result;
use crate::field::{FieldElement, FiniteField};
use crate::fourier;
use crate::lifting::{FunctionClass, HomTransfer, LayTransfer, LiftKind, LiftReport};
use crate::space::{random_function, rng_from_seed, Distribution, Space};
use crate::varieties::{measure_transform, Variety};

/// Above this many ambient points the closed forms are compared on a sample.
const EXHAUSTIVE_LIMIT: usize = 20_000;
const CLOSED_SAMPLES: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub bound: f64,
}

impl Check {
    pub const CSV_HEADER: &'static str = "check,passed,measured,bound";

    /// Passes when `measured <= bound`.
    fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: measured <= bound,
            measured,
            bound,
        }
    }

    /// Passes when `measured >= bound`.
    fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: measured >= bound,
            measured,
            bound,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.name,
            if self.passed { "pass" } else { "fail" },
            self.measured,
            self.bound
        )
    }

    pub fn line(&self) -> String {
        format!(
            "{:<16} {}  measured={:.6e}  bound={:.6e}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.measured,
            self.bound
        )
    }
}

fn field_checks(f: &FiniteField) -> Result<Vec<Check>> {
    let q = f.order() as f64;
    let gauss = f
        .nonzero()
        .map(|a| (f.gauss_sum(a).norm() - q.sqrt()).abs())
        .fold(0.0, f64::max);
    let mut weil: f64 = 0.0;
    for a in f.nonzero() {
        for b in f.elements() {
            let brute: Complex64 = f
                .elements()
                .map(|s| f.chi(f.add(f.mul(a, f.square(s)), f.mul(b, s))))
                .sum();
            weil = weil.max((brute - f.weil_square_sum(a, b)?).norm());
        }
    }
    Ok(vec![
        Check::at_least("orthogonality", f.character_orthogonality_check() as u8 as f64, 1.0),
        Check::at_most("gauss", gauss, 1e-9 * q.sqrt()),
        Check::at_most("complete-square", weil, 1e-9 * q.sqrt()),
    ])
}

fn fourier_checks(space: &Space, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let (mut inversion, mut plancherel): (f64, f64) = (0.0, 0.0);
    for t in 0..trials as u64 {
        let g = random_function(space.clone(), seed.wrapping_add(t), Distribution::ComplexGaussian);
        let h = fourier::hat(&g)?;
        inversion = inversion.max(fourier::inv(&h)?.max_abs_diff(&g));
        let lhs = h.lp_norm(2.0)?;
        let rhs = g.lp_norm(2.0)?;
        plancherel = plancherel.max((lhs - rhs).abs() / rhs);
    }
    Ok(vec![
        Check::at_most("inversion", inversion, 1e-10),
        Check::at_most("plancherel", plancherel, 1e-10),
    ])
}

fn closed_form_deviation(v: &Variety, j: Option<FieldElement>, seed: u64) -> Result<f64> {
    let f = v.field();
    let d = v.param_dim();
    let brute = measure_transform(v)?;
    let space = v.space();
    let indices: Vec<usize> = if space.len() <= EXHAUSTIVE_LIMIT {
        (0..space.len()).collect()
    } else {
        let mut rng = rng_from_seed(seed);
        (0..CLOSED_SAMPLES).map(|_| rng.random_range(0..space.len())).collect()
    };
    let mut worst: f64 = 0.0;
    for idx in indices {
        let m = space.coords(idx);
        let closed = match j {
            None => cone_fourier_closed(f, d, &m)?,
            Some(j) => hj_fourier_closed(f, d, j, &m)?,
        };
        let b = brute.values()[idx];
        worst = worst.max((closed - b).norm() / b.norm().max(1.0));
    }
    Ok(worst)
}

fn even_checks(field: &Arc<FiniteField>, d: usize, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let q = field.order() as f64;
    let qd = field.q().pow(d as u32);
    let bound = q.powf(-(d as f64) / 2.0);
    let mut out = Vec::new();

    let cone = Variety::homogeneous_cone(field.clone(), d)?;
    let spheres = field
        .nonzero()
        .map(|j| Ok((j, Variety::homogeneous_sphere(field.clone(), d, j)?)))
        .collect::<Result<Vec<_>>>()?;
    out.push(Check::at_most(
        "count-C",
        (cone.cardinality() as f64 - qd as f64).abs(),
        0.0,
    ));
    let worst = spheres
        .iter()
        .map(|(_, h)| (h.cardinality() as f64 - qd as f64).abs())
        .fold(0.0, f64::max);
    out.push(Check::at_most("count-Hj", worst, 0.0));

    let cone_decay = decay_max(&cone)?;
    out.push(Check::at_most(
        "decay-C",
        cone_decay.max_nonzero_modulus,
        bound * (1.0 + 1e-9),
    ));
    out.push(Check::at_least(
        "attained-C",
        cone_decay.max_nonzero_modulus,
        bound * (1.0 - 1e-9),
    ));
    let (mut hmax, mut hmin) = (0.0f64, f64::INFINITY);
    for (_, h) in &spheres {
        let m = decay_max(h)?.max_nonzero_modulus;
        hmax = hmax.max(m);
        hmin = hmin.min(m);
    }
    out.push(Check::at_most("decay-Hj", hmax, bound * (1.0 + 1e-9)));
    out.push(Check::at_least("attained-Hj", hmin, bound * (1.0 - 1e-9)));

    out.push(Check::at_most(
        "closed-C",
        closed_form_deviation(&cone, None, seed)?,
        1e-9,
    ));
    let mut worst: f64 = 0.0;
    for (j, h) in &spheres {
        worst = worst.max(closed_form_deviation(h, Some(*j), seed)?);
    }
    out.push(Check::at_most("closed-Hj", worst, 1e-9));

    let lay = LayTransfer::new(field.clone(), d)?;
    let hom = HomTransfer::new(field.clone(), d, FieldElement::ONE)?;
    let lay_reports = (0..trials as u64)
        .map(|t| lay.check(&FunctionClass::Lay.random(lay.space(), seed + t), Some(seed + t)))
        .collect::<Result<Vec<_>>>()?;
    let hom_reports = (0..trials as u64)
        .map(|t| hom.check(&FunctionClass::Hom.random(hom.space(), seed + t), Some(seed + t)))
        .collect::<Result<Vec<_>>>()?;
    out.extend(lift_checks(&lay_reports));
    out.extend(lift_checks(&hom_reports));

    for w in [&cone, &spheres[0].1] {
        let st = SteinTomas::new(w)?;
        let mut worst: f64 = 0.0;
        let mut passed = true;
        for t in 0..trials as u64 {
            let g = random_function(w.space().clone(), seed + t, Distribution::ComplexGaussian);
            let report = st.check(&g)?;
            passed &= report.passed();
            for c in &report.checks {
                worst = worst.max(c.lhs / c.rhs);
            }
        }
        let name = if w.kind().label() == "cone" {
            "stein-tomas-C"
        } else {
            "stein-tomas-H1"
        };
        out.push(Check {
            name: name.into(),
            passed,
            measured: worst,
            bound: 1.0,
        });
    }
    Ok(out)
}

fn lift_checks(reports: &[LiftReport]) -> Vec<Check> {
    let Some(first) = reports.first() else {
        return Vec::new();
    };
    let (transfer, bound_name) = match first.kind {
        LiftKind::Lay => ("lay-transfer", "lay-bound"),
        LiftKind::Hom => ("hom-transfer", "hom-bound"),
    };
    let dev = reports.iter().map(|r| r.fourier_deviation).fold(0.0, f64::max);
    let ratio = reports.iter().filter_map(|r| r.restriction_ratio).fold(0.0, f64::max);
    vec![
        Check {
            name: transfer.into(),
            passed: reports.iter().all(|r| r.passed),
            measured: dev,
            bound: crate::lifting::TRANSFER_TOL,
        },
        Check::at_most(bound_name, ratio, first.bound),
    ]
}

fn odd_checks(field: &Arc<FiniteField>, d: usize) -> Result<Vec<Check>> {
    let q = field.order() as f64;
    let cone = Variety::homogeneous_cone(field.clone(), d)?;
    let h1 = Variety::homogeneous_sphere(field.clone(), d, FieldElement::ONE)?;
    let lower = 0.5 * q.powf(-((d - 1) as f64) / 2.0);
    Ok(vec![
        Check::at_least(
            "enumerate-C",
            (cone.verify() && cone.cardinality() > 0) as u8 as f64,
            1.0,
        ),
        Check::at_least("enumerate-H1", (h1.verify() && h1.cardinality() > 0) as u8 as f64, 1.0),
        Check::at_least("slow-decay-C", decay_max(&cone)?.max_nonzero_modulus, lower),
        Check::at_least("slow-decay-H1", decay_max(&h1)?.max_nonzero_modulus, lower),
    ])
}

/// Every check that applies to (q, d): the even-d battery or the odd-d one,
/// plus field, transform and calibration checks.
pub fn battery(field: Arc<FiniteField>, d: usize, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let space = Space::new(field.clone(), d)?;
    let mut out = field_checks(&field)?;
    out.extend(fourier_checks(&space, trials, seed)?);
    if d.is_multiple_of(2) {
        out.extend(even_checks(&field, d, trials, seed)?);
    } else {
        out.extend(odd_checks(&field, d)?);
    }
    let whole = Variety::whole_space(field, d)?;
    let n = r2_operator_norm(&whole)?;
    out.push(Check {
        name: "r2-calibration".into(),
        passed: n.converged && (n.value - 1.0).abs() <= 1e-9,
        measured: n.value,
        bound: 1.0,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_battery_passes() {
        let f = Arc::new(FiniteField::from_order(3).unwrap());
        for d in [2, 3] {
            let checks = battery(f.clone(), d, 3, 1).unwrap();
            for c in &checks {
                assert!(c.passed, "{}", c.line());
            }
        }
    }
}
