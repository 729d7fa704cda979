//! Sweeps over q: the subspace sharpness test and the scan of restriction
//! ratios at the endpoint exponent.

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use super::{elapsed_ms, estimate_r, extension_ratio, EstimateParams, Provenance, RatioRecord, Side, Strategy};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::lifting::{alpha, FunctionClass};
use crate::varieties::{max_affine_subspace, SubspaceHost, Variety};

/// Fitted slopes at or below this count as bounded in q.
pub const SHARP_SLOPE_MAX: f64 = 0.02;
/// Fitted slopes at or above this count as growing in q.
pub const UNBOUNDED_SLOPE_MIN: f64 = 0.05;

/// The two non-homogeneous varieties a scan can run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    Paraboloid,
    Sphere(u32),
}

impl ScanKind {
    pub fn build(self, field: Arc<FiniteField>, d: usize) -> Result<Variety> {
        match self {
            ScanKind::Paraboloid => Variety::paraboloid(field, d),
            ScanKind::Sphere(j) => Variety::sphere(field.clone(), d, field.from_int(j as i64)),
        }
    }

    pub fn host(self, field: &FiniteField) -> SubspaceHost {
        match self {
            ScanKind::Paraboloid => SubspaceHost::Paraboloid,
            ScanKind::Sphere(j) => SubspaceHost::Sphere(field.from_int(j as i64)),
        }
    }
}

/// Least-squares slope of log(ratio) against log(q).
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|(q, _)| q.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, r)| r.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Growth exponent of the extension ratio of 1_H with r = 2:
/// (|H|/|V|) (q^d/|H|)^{1/p'} / (|H|/|V|)^{1/2}, as a power of q.
pub fn predicted_slope(d: usize, p: f64, log_h: f64, log_v: f64) -> f64 {
    let p_dual = super::conjugate(p);
    (log_h - log_v) / 2.0 + (d as f64 - log_h) / p_dual
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpnessRow {
    pub record: RatioRecord,
    pub subspace_size: usize,
    pub variety_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpnessReport {
    pub rows: Vec<SharpnessRow>,
    pub slope: f64,
}

/// Extension ratio of 1_H on V, H the largest affine subspace inside V,
/// for each q, with the log-log slope across q.
pub fn sharpness_sweep(kind: ScanKind, d: usize, p: f64, qs: &[u64]) -> Result<SharpnessReport> {
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    let fields = qs
        .iter()
        .map(|&q| {
            let f = Arc::new(FiniteField::from_order(q)?);
            if f.sqrt_of_minus_one().is_none() {
                return Err(Error::MinusOneNotSquare(f.order()));
            }
            Ok(f)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(fields.len());
    for f in fields {
        let start = Instant::now();
        let v = kind.build(f.clone(), d)?;
        let h = max_affine_subspace(f.clone(), d, kind.host(&f))?;
        let mut on_v = vec![Complex64::new(0.0, 0.0); v.cardinality()];
        for &pt in h.points() {
            let pos = v
                .position(pt)
                .ok_or_else(|| Error::UnsupportedVariety(format!("subspace point {pt} is not on {}", v.label())))?;
            on_v[pos] = Complex64::new(1.0, 0.0);
        }
        let ratio = extension_ratio(&on_v, &v, p, 2.0)?;
        rows.push(SharpnessRow {
            record: RatioRecord {
                variety: v.label(),
                q: f.order(),
                d,
                p,
                r: 2.0,
                class: FunctionClass::All,
                provenance: Provenance::Subspace,
                ratio,
                side: Side::Extension,
                upper_bound: None,
                elapsed_ms: elapsed_ms(start),
            },
            subspace_size: h.cardinality(),
            variety_size: v.cardinality(),
        });
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.record.q as f64, r.record.ratio)).collect();
    Ok(SharpnessReport {
        slope: fit_slope(&pts),
        rows,
    })
}

/// Best restriction ratio at p = (2d+4)/(d+4), r = 2 for each q.
pub fn conjecture_scan(
    kind: ScanKind,
    d: usize,
    qs: &[u64],
    class: FunctionClass,
    strategies: &[Strategy],
    budget: usize,
    seed: u64,
) -> Result<Vec<RatioRecord>> {
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    let params = EstimateParams {
        p: alpha(d),
        r: 2.0,
        class,
        strategies: strategies.to_vec(),
        budget,
        seed,
    };
    qs.iter()
        .map(|&q| {
            let f = Arc::new(FiniteField::from_order(q)?);
            if let ScanKind::Sphere(j) = kind {
                if f.from_int(j as i64) == FieldElement::ZERO {
                    return Err(Error::ZeroRadius);
                }
            }
            let v = kind.build(f, d)?;
            Ok(estimate_r(&v, &params)?.best)
        })
        .collect()
}
