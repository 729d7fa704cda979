//! Restriction and extension ratios, lower bounds for R(p -> r), and the
//! numerical checks behind the Stein-Tomas argument and the sharpness
//! examples.

mod chain;
mod estimate;
mod sweep;

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lifting::{self, FunctionClass};
use crate::space::{lp_norm_weighted, random_function, Counting, Distribution, GridFunction};
use crate::varieties::{extension, restrict_hat_via_transform, Variety, VarietyKind};

pub use chain::{stein_tomas_chain_check, ChainReport, Inequality, SteinTomas, CHAIN_TOL};
pub use estimate::{derive_seed, estimate_r, Estimate, EstimateParams, Strategy, ASCENT_PATIENCE, ASCENT_START_SEEDS};
pub use sweep::{
    conjecture_scan, fit_slope, predicted_slope, sharpness_sweep, ScanKind, SharpnessReport, SharpnessRow,
    SHARP_SLOPE_MAX, UNBOUNDED_SLOPE_MIN,
};

/// Which inequality a ratio measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Restriction,
    Extension,
}

/// How a test function was produced; enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum Provenance {
    Delta,
    Constant,
    Subspace,
    Random { seed: u64 },
    Ascent { seed: u64, iterations: usize },
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Delta => "delta",
            Provenance::Constant => "constant",
            Provenance::Subspace => "subspace",
            Provenance::Random { .. } => "random",
            Provenance::Ascent { .. } => "ascent",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Provenance::Random { seed } | Provenance::Ascent { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

/// One measured ratio.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRecord {
    pub variety: String,
    pub q: u32,
    pub d: usize,
    pub p: f64,
    pub r: f64,
    pub class: FunctionClass,
    pub provenance: Provenance,
    pub ratio: f64,
    pub side: Side,
    pub upper_bound: Option<f64>,
    pub elapsed_ms: u64,
}

impl RatioRecord {
    pub const CSV_HEADER: &'static str = "kind,q,d,p,r,class,strategy,seed,ratio,upper_bound,elapsed_ms";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.variety,
            self.q,
            self.d,
            self.p,
            self.r,
            self.class.label(),
            self.provenance.label(),
            self.provenance.seed().map(|s| s.to_string()).unwrap_or_default(),
            self.ratio,
            self.upper_bound.map(|b| b.to_string()).unwrap_or_default(),
            self.elapsed_ms
        )
    }
}

pub(crate) fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Hoelder conjugate p' with 1/p + 1/p' = 1.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// ||g^||_{L^r(V, d sigma)} / ||g||_{L^p(dm)}.
pub fn restriction_ratio(g: &GridFunction<Counting>, v: &Variety, p: f64, r: f64) -> Result<f64> {
    let den = g.lp_norm(p)?;
    if den == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(restrict_hat_via_transform(g, v)?.norm(r)? / den)
}

/// ||(f d sigma)^vee||_{L^{p'}(dm)} / ||f||_{L^{r'}(V, d sigma)} for f given on the points of V.
pub fn extension_ratio(values_on_v: &[Complex64], v: &Variety, p: f64, r: f64) -> Result<f64> {
    let den = lp_norm_weighted(values_on_v, conjugate(r), v.surface_measure().point_mass())?;
    if den == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(extension(values_on_v, v)?.lp_norm(conjugate(p))? / den)
}

/// sqrt(q^n / |V|), the exact L^2(dm) -> L^2(V, d sigma) norm of g -> g^|_V.
pub fn r2_exact(v: &Variety) -> f64 {
    (v.space().len() as f64 / v.cardinality() as f64).sqrt()
}

/// Result of the power iteration in [`r2_operator_norm`].
#[derive(Clone, Debug, Serialize)]
pub struct OperatorNorm {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub const POWER_TOL: f64 = 1e-10;
pub const POWER_MAX_ITER: usize = 10_000;

/// Norm of g -> g^|_V from L^2(dm) to L^2(V, d sigma), by power iteration
/// on extension after restriction.
pub fn r2_operator_norm(v: &Variety) -> Result<OperatorNorm> {
    let mut g = random_function(v.space().clone(), 0x5eed, Distribution::ComplexGaussian);
    let mut norm = g.lp_norm(2.0)?;
    g = g.scaled(Complex64::new(1.0 / norm, 0.0));
    let mut previous = f64::NEG_INFINITY;
    for it in 1..=POWER_MAX_ITER {
        let h = extension(&restrict_hat_via_transform(&g, v)?.values, v)?;
        let rayleigh: f64 = h.values().iter().zip(g.values()).map(|(a, b)| (a * b.conj()).re).sum();
        if (rayleigh - previous).abs() < POWER_TOL {
            return Ok(OperatorNorm {
                value: rayleigh.max(0.0).sqrt(),
                iterations: it,
                converged: true,
            });
        }
        previous = rayleigh;
        norm = h.lp_norm(2.0)?;
        if norm == 0.0 {
            break;
        }
        g = h.scaled(Complex64::new(1.0 / norm, 0.0));
    }
    Ok(OperatorNorm {
        value: previous.max(0.0).sqrt(),
        iterations: POWER_MAX_ITER,
        converged: false,
    })
}

/// Upper bound for R(p -> r) on V within `class` that follows from the
/// tracked constants, when one is available.
pub fn upper_bound(v: &Variety, p: f64, r: f64, class: FunctionClass) -> Option<f64> {
    const EPS: f64 = 1e-12;
    if (p - 2.0).abs() < EPS && (r - 2.0).abs() < EPS {
        return Some(r2_exact(v));
    }
    let d = v.param_dim();
    if d % 2 == 1 || (p - lifting::alpha(d)).abs() > EPS || (r - 2.0).abs() > EPS {
        return None;
    }
    let q = v.field().order() as f64;
    match (v.kind(), class) {
        (VarietyKind::HomogeneousCone | VarietyKind::HomogeneousSphere { .. }, _) => Some(2f64.sqrt()),
        (VarietyKind::Paraboloid, FunctionClass::Lay) => Some(lifting::lay_bound(q, d)),
        (VarietyKind::Sphere { .. }, FunctionClass::Hom) => Some(lifting::hom_bound(q, d, v.cardinality())),
        _ => None,
    }
}

/// `|v|^{e-2} v`, with `e = inf` mapped to a unit spike at the first maximizer.
pub(crate) fn duality_map(values: &[Complex64], e: f64) -> Vec<Complex64> {
    if e.is_infinite() {
        let (idx, _) = values
            .iter()
            .enumerate()
            .fold((0, -1.0), |b, (i, v)| if v.norm() > b.1 { (i, v.norm()) } else { b });
        let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
        let z = values[idx];
        out[idx] = if z.norm() > 0.0 {
            z / z.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        return out;
    }
    values
        .iter()
        .map(|&z| {
            let a = z.norm();
            if a == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                z * a.powf(e - 2.0)
            }
        })
        .collect()
}
